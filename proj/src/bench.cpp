#include "ordkm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ordkm/bipoint.hpp"
#include "ordkm/centrum.hpp"
#include "ordkm/instance.hpp"
#include "ordkm/lp.hpp"
#include "ordkm/oracle.hpp"
#include "ordkm/ordered.hpp"
#include "ordkm/ordered_cost.hpp"
#include "ordkm/primal_dual.hpp"
#include "ordkm/proxy.hpp"

namespace ordkm {

namespace {

std::string fm(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
  return splitmix64(seed * 1000003ULL + std::uint64_t(trial) + 1ULL);
}

// Positive draw spread over several orders of magnitude.
double spread(Rng& rng) {
  return rng.positive(1.0) * std::pow(10.0, double(rng.uniform_int(-3, 3)));
}

bool rel_exceeds(double lhs, double rhs, double tol) {
  // true when lhs > rhs beyond tol relative to the larger magnitude
  return lhs - rhs > tol * (1.0 + std::max(std::fabs(lhs), std::fabs(rhs)));
}

}  // namespace

ClaimsStats claims_stats(int trials, std::uint64_t seed) {
  if (trials < 1) throw UsageError("claims_stats: trials must be positive");
  ClaimsStats st;
  st.trials = trials;
  Rng root(seed);
  auto note = [&](double err) { st.max_rel_err = std::max(st.max_rel_err, err); };
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.child(std::uint64_t(t));
    const double B = spread(rng);
    const int ell = 1 + int(rng.uniform_int(0, 11));
    const TruncatedCostParams p{B, ell};
    const TruncatedCostParams p3{3.0 * B, ell};
    const double x = spread(rng), y = spread(rng), z = spread(rng);

    const double lo = std::min(x, y), hi = std::max(x, y);
    if (truncated_cost(p, lo) > truncated_cost(p, hi)) ++st.trunc_monotone;

    const double triple = 3.0 * std::max({truncated_cost(p, x), truncated_cost(p, y),
                                          truncated_cost(p, z)});
    const double joined = truncated_cost(p3, x + y + z);
    if (rel_exceeds(joined, triple, 1e-12)) ++st.trunc_triple;

    const double sl = truncated_cost(p3, x);
    const double sr = 3.0 * truncated_cost(p, x / 3.0);
    note(std::fabs(sl - sr) / (1.0 + std::fabs(sl)));
    if (std::fabs(sl - sr) > 1e-12 * (1.0 + std::fabs(sl))) ++st.trunc_scale;

    SurrogateParams sp;
    sp.n = 2 + int(rng.uniform_int(0, 10));
    sp.eps = 0.05 + 0.95 * rng.uniform01();
    sp.M = spread(rng);
    sp.w1_trunc = spread(rng);
    sp.T = interval_count_T(sp.n, sp.eps);
    const std::vector<double> lv = weight_levels(sp.w1_trunc, sp.n, sp.eps);
    std::vector<int> pick(sp.T + 1);
    for (int& s : pick) s = int(rng.uniform_int(0, std::int64_t(lv.size()) - 1));
    std::sort(pick.begin(), pick.end(), std::greater<int>());
    sp.w_est.reserve(pick.size());
    for (int s : pick) sp.w_est.push_back(lv[std::size_t(s)]);

    const double gamma = t % 2 ? 3.0 : 1.0;
    const double s3 = x + y + z;
    const double gl = surrogate_cost(sp, 3.0 * gamma, s3);
    const double gr = 3.0 * surrogate_cost(sp, gamma, s3 / 3.0);
    note(std::fabs(gl - gr) / (1.0 + std::fabs(gl)));
    if (std::fabs(gl - gr) > 1e-12 * (1.0 + std::fabs(gl))) ++st.g_scale;

    if (rel_exceeds(surrogate_cost(sp, gamma, lo), surrogate_cost(sp, gamma, hi), 1e-12))
      ++st.g_monotone;

    const int wn = 3 + int(rng.uniform_int(0, 9));
    std::vector<double> w(wn), v(wn);
    for (double& e : w) e = rng.positive(1.0);
    std::sort(w.begin(), w.end(), std::greater<double>());
    if (t % 3 == 0)
      for (int i = wn / 2; i < wn; ++i) w[std::size_t(i)] = 0.0;
    for (double& e : v) e = spread(rng);
    const double epsw = 0.05 + 0.95 * rng.uniform01();
    const double cw = ordered_cost(w, v);
    const double cwt = ordered_cost(truncate_weights(w, epsw), v);
    if (rel_exceeds(cwt, cw, 1e-12) || rel_exceeds((1.0 - epsw) * cw, cwt, 1e-12))
      ++st.sandwich;
    note(std::max(0.0, cwt - cw) / (1.0 + cw));
  }
  return st;
}

CentrumStats centrum_stats(int trials, std::uint64_t seed, double eps) {
  if (trials < 1) throw UsageError("centrum_stats: trials must be positive");
  CentrumStats st;
  st.trials = trials;
  Rng root(seed);
  double ratio_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.child(std::uint64_t(t));
    const int n = 6 + int(rng.uniform_int(0, 6));
    const int k = 2 + int(rng.uniform_int(0, 2));
    const int ell = 1 + int(rng.uniform_int(0, n - 1));
    MetricInstance inst = gen_random_metric(n, k, trial_seed(seed, t), 100.0);
    CentrumDiag diag;
    solve_centrum_pd(inst, ell, eps, &diag);
    const double ratio = diag.trivial ? 0.0 : diag.cost / diag.Bbar;
    ratio_sum += ratio;
    st.max_ratio = std::max(st.max_ratio, ratio);
    if (ratio > (12.0 + 4.0 * eps) * (1.0 + 1e-9)) ++st.ratio_violations;
    BruteForceResult bf = brute_force_ordered(inst, centrum_weights(n, ell));
    if (!diag.trivial && bf.opt > 0) {
      const double br = diag.Bbar / bf.opt;
      st.max_budget_ratio = std::max(st.max_budget_ratio, br);
      if (br > (1.0 + eps) * (1.0 + 1e-9)) ++st.budget_violations;
    }
  }
  st.mean_ratio = ratio_sum / trials;
  return st;
}

OrderedStats ordered_stats(int trials, std::uint64_t seed, double eps, int threads) {
  if (trials < 1) throw UsageError("ordered_stats: trials must be positive");
  OrderedStats st;
  st.trials = trials;
  Rng root(seed);
  double ratio_sum = 0.0;
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.child(std::uint64_t(t));
    const int n = 5 + int(rng.uniform_int(0, 4));
    const int k = 2 + int(rng.uniform_int(0, 1));
    MetricInstance inst = gen_random_metric(n, k, trial_seed(seed, t), 100.0);
    std::vector<double> w(n);
    switch (t % 4) {
      case 0:
        for (double& e : w) e = rng.positive(1.0);
        std::sort(w.begin(), w.end(), std::greater<double>());
        break;
      case 1:
        w = centrum_weights(n, 1 + int(rng.uniform_int(0, n - 1)));
        break;
      case 2:
        w = centrum_weights(n, 1);
        break;
      default:
        for (int i = 0; i < n; ++i) w[std::size_t(i)] = std::pow(0.5, i);
        break;
    }
    OrderedDiag diag;
    Solution sol = solve_ordered(inst, w, eps, 1000000, threads, &diag);
    st.max_guesses = std::max(st.max_guesses, diag.guess_count);
    BruteForceResult bf = brute_force_ordered(inst, w);
    if (sol.cost < bf.opt * (1.0 - 1e-9)) ++st.beat_oracle;
    const double ratio = bf.opt > 0 ? sol.cost / bf.opt : 1.0;
    ratio_sum += ratio;
    st.max_ratio = std::max(st.max_ratio, ratio);
  }
  st.mean_ratio = ratio_sum / trials;
  return st;
}

LpCheckStats lpcheck_stats(int trials, std::uint64_t seed) {
  if (trials < 1) throw UsageError("lpcheck_stats: trials must be positive");
  LpCheckStats st;
  st.trials = trials;
  Rng root(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = root.child(std::uint64_t(t));
    const int n = 6 + int(rng.uniform_int(0, 4));
    const int k = 2 + int(rng.uniform_int(0, 2));
    MetricInstance inst = gen_random_metric(n, k, trial_seed(seed, t), 100.0);
    const double dmin = inst.min_positive_distance();
    const double top = n * inst.max_distance();
    const double B = dmin * std::pow(top / dmin, rng.uniform01());
    const int ell = 1 + int(rng.uniform_int(0, n - 1));
    const ProxySpec proxy = ProxySpec::truncated(B, ell);
    const std::vector<int> demands = unit_demands(n);

    DenseLP lp = build_pb_lp(inst, proxy, demands);
    LpSolution sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
      throw CertificateError("lpcheck: covering LP did not reach optimality");
    double dual_obj = 0.0;
    for (std::size_t r = 0; r < lp.rhs.size(); ++r) dual_obj += sol.dual[r] * lp.rhs[r];
    const double gap = std::fabs(sol.value - dual_obj) / (1.0 + std::fabs(sol.value));
    st.max_gap = std::max(st.max_gap, gap);
    if (gap > 1e-7) ++st.gap_violations;

    const double lambda = t % 7 == 0 ? 0.0 : rng.uniform01() * top;
    PDResult run = dual_ascent(inst, proxy, demands, lambda);
    const double excess =
        (run.dual_value(k) - sol.value) / (1.0 + std::fabs(sol.value));
    st.max_duality_excess = std::max(st.max_duality_excess, excess);
    if (excess > 1e-7) ++st.duality_violations;

    LambdaSearchResult ls = lambda_search(inst, proxy, demands, 0.01 * (1.0 + top) / n);
    if (ls.exact) continue;
    ++st.bipoints;
    BipointPair bp =
        make_bipoint(inst, proxy, demands, std::move(ls.below), std::move(ls.above));
    const PairKey key = t % 2 ? PairKey::MaxOfBoth : PairKey::SumOfBoth;
    const FallbackRule rule = t % 2 ? FallbackRule::TripleMax : FallbackRule::SiblingPath;
    Clustering cl = cluster_bipoint(bp, key);
    OpeningChoice oc = solve_opening(bp, cl, rule);
    double shift = 0.0;
    LpSolution os = solve_lp(build_opening_lp(bp, cl, rule, &shift));
    if (os.status != LpStatus::Optimal)
      throw CertificateError("lpcheck: opening LP did not reach optimality");
    const double ogap =
        std::fabs(oc.objective - (os.value + shift)) / (1.0 + std::fabs(oc.objective));
    st.max_opening_gap = std::max(st.max_opening_gap, ogap);
    if (ogap > 1e-9) ++st.opening_violations;
  }
  return st;
}

std::string BenchResult::text() const {
  std::string out;
  for (const auto& [key, value] : fields) {
    out += key;
    out += '=';
    out += value;
    out += '\n';
  }
  return out;
}

BenchResult run_bench(const std::string& suite, int trials, std::uint64_t seed, int threads) {
  BenchResult res;
  auto put = [&](const std::string& key, const std::string& value) {
    res.fields.emplace_back(key, value);
  };
  put("suite", suite);
  put("trials", std::to_string(trials));
  put("seed", std::to_string(seed));
  if (suite == "claims") {
    ClaimsStats st = claims_stats(trials, seed);
    put("trunc_monotone", std::to_string(st.trunc_monotone));
    put("trunc_triple", std::to_string(st.trunc_triple));
    put("trunc_scale", std::to_string(st.trunc_scale));
    put("g_scale", std::to_string(st.g_scale));
    put("g_monotone", std::to_string(st.g_monotone));
    put("sandwich", std::to_string(st.sandwich));
    put("max_rel_err", fm(st.max_rel_err));
    res.violations = st.total();
  } else if (suite == "centrum") {
    CentrumStats st = centrum_stats(trials, seed, 0.1);
    put("eps", fm(0.1));
    put("max_ratio", fm(st.max_ratio));
    put("mean_ratio", fm(st.mean_ratio));
    put("max_budget_ratio", fm(st.max_budget_ratio));
    put("ratio_violations", std::to_string(st.ratio_violations));
    put("budget_violations", std::to_string(st.budget_violations));
    res.violations = st.ratio_violations + st.budget_violations;
  } else if (suite == "ordered") {
    OrderedStats st = ordered_stats(trials, seed, 1.0, threads);
    put("eps", fm(1.0));
    put("max_ratio", fm(st.max_ratio));
    put("mean_ratio", fm(st.mean_ratio));
    put("max_guesses", std::to_string(st.max_guesses));
    put("beat_oracle", std::to_string(st.beat_oracle));
    res.violations = st.beat_oracle;
  } else if (suite == "lpcheck") {
    LpCheckStats st = lpcheck_stats(trials, seed);
    put("bipoints", std::to_string(st.bipoints));
    put("max_gap", fm(st.max_gap));
    put("max_duality_excess", fm(st.max_duality_excess));
    put("max_opening_gap", fm(st.max_opening_gap));
    put("gap_violations", std::to_string(st.gap_violations));
    put("duality_violations", std::to_string(st.duality_violations));
    put("opening_violations", std::to_string(st.opening_violations));
    res.violations = st.gap_violations + st.duality_violations + st.opening_violations;
  } else {
    throw UsageError("run_bench: unknown suite " + suite);
  }
  put("violations", std::to_string(res.violations));
  return res;
}

}  // namespace ordkm
