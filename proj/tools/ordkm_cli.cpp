#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ordkm/bench.hpp"
#include "ordkm/centrum.hpp"
#include "ordkm/instance.hpp"
#include "ordkm/oracle.hpp"
#include "ordkm/ordered.hpp"

namespace {

using Fields = std::vector<std::pair<std::string, std::string>>;

std::string fm(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string join_centers(const std::vector<int>& centers) {
  std::string out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(centers[i]);
  }
  return out;
}

void emit(const Fields& fields, const std::string& format) {
  if (format == "jsonl") {
    nlohmann::ordered_json obj;
    for (const auto& [key, value] : fields) obj[key] = value;
    std::cout << obj.dump() << "\n";
  } else {
    for (const auto& [key, value] : fields) std::cout << key << '\t' << value << '\n';
  }
}

struct GenArgs {
  int n = 10, k = 3, dim = 2;
  std::uint64_t seed = 1;
  double scale = 100.0;
  std::string kind = "euclidean", out;
};

void run_gen(const GenArgs& a) {
  if (a.n < 2) throw ordkm::UsageError("gen: n must be at least 2");
  if (a.k < 1 || a.k >= a.n) throw ordkm::UsageError("gen: need 1 <= k < n");
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (a.out != "-") {
    file.open(a.out);
    if (!file) throw ordkm::UsageError("gen: cannot open " + a.out);
    os = &file;
  }
  if (a.kind == "euclidean") {
    if (a.dim < 1) throw ordkm::UsageError("gen: dim must be positive");
    ordkm::Rng rng(a.seed);
    std::vector<std::vector<double>> pts(a.n, std::vector<double>(a.dim));
    for (auto& p : pts)
      for (double& c : p) c = rng.uniform01() * a.scale;
    ordkm::write_instance_points(*os, pts, a.k);
  } else {
    ordkm::write_instance_matrix(*os, ordkm::gen_random_metric(a.n, a.k, a.seed, a.scale));
  }
}

struct SolveArgs {
  std::string instance, weights = "kmedian", algorithm = "auto", format = "tsv";
  double eps = 0.1;
  bool scan_b = false, oracle_check = false;
  int threads = 1;
  std::uint64_t seed = 0;
  std::int64_t guess_cap = 1000000;
};

void run_solve(const SolveArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  ordkm::MetricInstance inst = ordkm::read_instance_file(a.instance);
  const std::vector<double> w = ordkm::load_weights(a.weights, inst.n);
  const bool zero_one = ordkm::is_zero_one_weights(w);
  std::string algo = a.algorithm;
  if (algo == "auto") algo = zero_one ? "pd" : "general";

  Fields f;
  f.emplace_back("algorithm", algo + (a.scan_b && algo == "pd" ? "-scan" : ""));
  f.emplace_back("n", std::to_string(inst.n));
  f.emplace_back("k", std::to_string(inst.k));
  f.emplace_back("eps", fm(a.eps));
  f.emplace_back("seed", std::to_string(a.seed));

  ordkm::Solution sol;
  if (algo == "pd" || algo == "lp-reduce") {
    if (!zero_one)
      throw ordkm::UsageError("solve: algorithm " + algo + " needs 0/1 weights");
    int ell = 0;
    for (double e : w) ell += e > 0 ? 1 : 0;
    f.emplace_back("ell", std::to_string(ell));
    if (ell == 0) {  // zero weights price every placement at zero
      std::vector<int> centers(inst.k);
      for (int i = 0; i < inst.k; ++i) centers[std::size_t(i)] = i;
      sol = ordkm::nearest_assignment(inst, centers);
      sol.cost = 0.0;
      f.emplace_back("trivial", "1");
    } else if (algo == "pd") {
      ordkm::CentrumDiag diag;
      sol = a.scan_b ? ordkm::solve_centrum_pd_scan(inst, ell, a.eps, &diag)
                     : ordkm::solve_centrum_pd(inst, ell, a.eps, &diag);
      f.emplace_back("trivial", diag.trivial ? "1" : "0");
      f.emplace_back("Bbar", fm(diag.Bbar));
      f.emplace_back("exact_k", diag.exact_k ? "1" : "0");
    } else {
      ordkm::LpReduceDiag diag;
      sol = ordkm::solve_centrum_lp_reduce(inst, ell, a.eps,
                                           ordkm::make_kmed_pd_solver(a.eps), &diag);
      f.emplace_back("trivial", diag.trivial ? "1" : "0");
      f.emplace_back("Bbar", fm(diag.Bbar));
      f.emplace_back("core_size", std::to_string(diag.core_size));
      f.emplace_back("small_core", diag.small_core ? "1" : "0");
    }
  } else if (algo == "general") {
    ordkm::OrderedDiag diag;
    sol = ordkm::solve_ordered(inst, w, a.eps, a.guess_cap, a.threads, &diag);
    f.emplace_back("trivial", diag.trivial ? "1" : "0");
    f.emplace_back("guesses", std::to_string(diag.guess_count));
    f.emplace_back("best_guess", std::to_string(diag.best_guess));
    f.emplace_back("best_M", fm(diag.best_M));
  } else {
    throw ordkm::UsageError("solve: unknown algorithm " + a.algorithm);
  }

  f.emplace_back("centers", join_centers(sol.centers));
  f.emplace_back("cost", fm(sol.cost));
  if (a.oracle_check) {
    ordkm::BruteForceResult bf = ordkm::brute_force_ordered(inst, w);
    f.emplace_back("opt", fm(bf.opt));
    const double ratio = bf.opt > 0                ? sol.cost / bf.opt
                         : sol.cost <= 1e-12 * inst.n ? 1.0
                                                      : std::numeric_limits<double>::infinity();
    f.emplace_back("ratio", fm(ratio));
  }
  const auto t1 = std::chrono::steady_clock::now();
  f.emplace_back("elapsed_ms",
                 std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0)
                                    .count()));
  emit(f, a.format);
}

struct BenchArgs {
  std::string suite, format = "tsv";
  int trials = 100, threads = 1;
  std::uint64_t seed = 1;
};

void run_bench_cmd(const BenchArgs& a) {
  ordkm::BenchResult res = ordkm::run_bench(a.suite, a.trials, a.seed, a.threads);
  emit(res.fields, a.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordered k-median / l-centrum solver"};
  app.require_subcommand(1);

  GenArgs g;
  CLI::App* gen = app.add_subcommand("gen", "generate a metric instance");
  gen->add_option("--n", g.n, "number of points")->required();
  gen->add_option("--k", g.k, "number of centers")->required();
  gen->add_option("--seed", g.seed, "rng seed");
  gen->add_option("--kind", g.kind, "euclidean or random")
      ->check(CLI::IsMember({"euclidean", "random"}));
  gen->add_option("--dim", g.dim, "dimension for euclidean instances");
  gen->add_option("--scale", g.scale, "coordinate or distance scale");
  gen->add_option("--out", g.out, "output path, - for stdout")->required();

  SolveArgs s;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("--instance", s.instance, "instance file")->required();
  solve->add_option("--weights", s.weights, "weight spec or file");
  solve->add_option("--epsilon", s.eps, "approximation parameter");
  solve->add_option("--algorithm", s.algorithm, "pd, lp-reduce, general or auto")
      ->check(CLI::IsMember({"pd", "lp-reduce", "general", "auto"}));
  solve->add_flag("--scan-b", s.scan_b, "try every budget instead of the LP search");
  solve->add_flag("--oracle-check", s.oracle_check, "compare against exhaustive search");
  solve->add_option("--threads", s.threads, "worker threads for guess enumeration");
  solve->add_option("--seed", s.seed, "echoed into the report");
  solve->add_option("--guess-cap", s.guess_cap, "abort when the guess count exceeds this");
  solve->add_option("--format", s.format, "tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));

  BenchArgs b;
  CLI::App* bench = app.add_subcommand("bench", "run a randomized check suite");
  bench->add_option("--suite", b.suite, "claims, centrum, ordered or lpcheck")
      ->required()
      ->check(CLI::IsMember({"claims", "centrum", "ordered", "lpcheck"}));
  bench->add_option("--trials", b.trials, "trial count");
  bench->add_option("--seed", b.seed, "rng seed");
  bench->add_option("--threads", b.threads, "worker threads for the ordered suite");
  bench->add_option("--format", b.format, "tsv or jsonl")
      ->check(CLI::IsMember({"tsv", "jsonl"}));

  try {
    app.parse(argc, argv);
    if (gen->parsed()) run_gen(g);
    if (solve->parsed()) run_solve(s);
    if (bench->parsed()) run_bench_cmd(b);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ordkm::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ordkm::CertificateError& e) {
    std::cerr << "certificate error: " << e.what() << "\n";
    return 3;
  } catch (const ordkm::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
