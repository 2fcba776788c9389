#include "ordkm/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ordkm {

double MetricInstance::max_distance() const {
  double m = 0;
  for (double d : dist) m = std::max(m, d);
  return m;
}

double MetricInstance::min_positive_distance() const {
  double m = 0;
  for (double d : dist)
    if (d > 0 && (m == 0 || d < m)) m = d;
  return m;
}

std::vector<int> MetricInstance::representatives() const {
  std::vector<int> reps;
  for (int i = 0; i < n; ++i) {
    bool dup = false;
    for (int r : reps)
      if ((*this)(r, i) == 0) { dup = true; break; }
    if (!dup) reps.push_back(i);
  }
  return reps;
}

static std::string idx2(const char* what, int i, int j) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s at (%d,%d)", what, i, j);
  return buf;
}

ValidationReport validate_metric(const MetricInstance& inst) {
  ValidationReport rep;
  auto fail = [&](std::string msg) {
    rep.ok = false;
    rep.message = std::move(msg);
    return rep;
  };
  if (inst.n <= 0) return fail("n must be positive");
  if (inst.dist.size() != std::size_t(inst.n) * inst.n)
    return fail("distance matrix size is not n*n");
  if (!(inst.k >= 1 && inst.k < inst.n))
    return fail("k must satisfy 1 <= k < n");
  const int n = inst.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double d = inst(i, j);
      if (std::isnan(d)) return fail(idx2("NaN entry", i, j));
      if (d < 0) return fail(idx2("negative entry", i, j));
    }
  for (int i = 0; i < n; ++i)
    if (inst(i, i) != 0) return fail(idx2("nonzero diagonal", i, i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (inst(i, j) != inst(j, i)) return fail(idx2("asymmetry", i, j));
  const double tol = 1e-9 * inst.max_distance();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h)
        if (inst(i, j) > inst(i, h) + inst(h, j) + tol) {
          char buf[160];
          std::snprintf(buf, sizeof buf,
                        "triangle violation d(%d,%d) > d(%d,%d) + d(%d,%d)", i, j,
                        i, h, h, j);
          return fail(buf);
        }
  return rep;
}

MetricInstance metric_from_points(const std::vector<std::vector<double>>& pts, int k) {
  const int n = int(pts.size());
  if (n == 0) throw UsageError("no points given");
  const std::size_t dim = pts[0].size();
  if (dim == 0) throw UsageError("points must have at least one coordinate");
  for (const auto& p : pts)
    if (p.size() != dim) throw UsageError("points have inconsistent dimensions");
  if (!(k >= 1 && k < n)) throw UsageError("k must satisfy 1 <= k < n");
  MetricInstance inst;
  inst.n = n;
  inst.k = k;
  inst.dist.assign(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double s = 0;
      for (std::size_t t = 0; t < dim; ++t) {
        double d = pts[i][t] - pts[j][t];
        s += d * d;
      }
      inst.at(i, j) = inst.at(j, i) = std::sqrt(s);
    }
  return inst;
}

MetricInstance gen_random_metric(int n, int k, std::uint64_t seed, double scale) {
  if (n < 2) throw UsageError("random metric needs n >= 2");
  if (!(k >= 1 && k < n)) throw UsageError("k must satisfy 1 <= k < n");
  if (!(scale > 0)) throw UsageError("scale must be positive");
  Rng rng(seed);
  MetricInstance inst;
  inst.n = n;
  inst.k = k;
  inst.dist.assign(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      inst.at(i, j) = inst.at(j, i) = rng.positive(scale);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        inst.at(i, j) = std::min(inst(i, j), inst(i, h) + inst(h, j));
  return inst;
}

Solution nearest_assignment(const MetricInstance& inst, std::vector<int> centers) {
  if (centers.empty()) throw UsageError("nearest_assignment: no centers");
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (int c : centers)
    if (c < 0 || c >= inst.n) throw UsageError("nearest_assignment: center out of range");
  Solution sol;
  sol.assign.resize(inst.n);
  for (int j = 0; j < inst.n; ++j) {
    int best = centers[0];
    for (int c : centers)
      if (inst(c, j) < inst(best, j)) best = c;  // ties keep the smaller index
    sol.assign[j] = best;
  }
  sol.centers = std::move(centers);
  return sol;
}

std::vector<double> assignment_costs(const MetricInstance& inst, const Solution& sol) {
  std::vector<double> c(inst.n);
  for (int j = 0; j < inst.n; ++j) c[j] = inst(sol.assign[j], j);
  return c;
}

MetricInstance read_instance(std::istream& in) {
  int n = 0, k = 0;
  if (!(in >> n >> k)) throw UsageError("instance: cannot read 'n k' header");
  std::string mode;
  if (!(in >> mode)) throw UsageError("instance: cannot read mode line");
  MetricInstance inst;
  if (mode == "matrix") {
    inst.n = n;
    inst.k = k;
    inst.dist.assign(std::size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(in >> inst.at(i, j)))
          throw UsageError("instance: truncated distance matrix");
  } else if (mode == "points") {
    int dim = 0;
    if (!(in >> dim) || dim <= 0) throw UsageError("instance: bad points dimension");
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (int i = 0; i < n; ++i)
      for (int t = 0; t < dim; ++t)
        if (!(in >> pts[i][t])) throw UsageError("instance: truncated point list");
    inst = metric_from_points(pts, k);
  } else {
    throw UsageError("instance: mode must be 'matrix' or 'points d'");
  }
  auto rep = validate_metric(inst);
  if (!rep.ok) throw UsageError("instance: " + rep.message);
  return inst;
}

MetricInstance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open instance file: " + path);
  return read_instance(in);
}

static void write_double(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void write_instance_matrix(std::ostream& out, const MetricInstance& inst) {
  out << inst.n << ' ' << inst.k << "\nmatrix\n";
  for (int i = 0; i < inst.n; ++i) {
    for (int j = 0; j < inst.n; ++j) {
      if (j) out << ' ';
      write_double(out, inst(i, j));
    }
    out << '\n';
  }
}

void write_instance_points(std::ostream& out, const std::vector<std::vector<double>>& pts,
                           int k) {
  if (pts.empty()) throw UsageError("no points to write");
  out << pts.size() << ' ' << k << "\npoints " << pts[0].size() << '\n';
  for (const auto& p : pts) {
    for (std::size_t t = 0; t < p.size(); ++t) {
      if (t) out << ' ';
      write_double(out, p[t]);
    }
    out << '\n';
  }
}

std::vector<double> centrum_weights(int n, int ell) {
  if (!(ell >= 1 && ell <= n)) throw UsageError("centrum L must satisfy 1 <= L <= n");
  std::vector<double> w(n, 0.0);
  for (int i = 0; i < ell; ++i) w[i] = 1.0;
  return w;
}

std::vector<double> parse_weight_spec(const std::string& text, int n) {
  std::istringstream in(text);
  std::string head;
  if (!(in >> head)) throw UsageError("empty weight spec");
  if (head == "kmedian") return std::vector<double>(n, 1.0);
  if (head == "kcenter") return centrum_weights(n, 1);
  if (head == "centrum") {
    int ell = 0;
    if (!(in >> ell)) throw UsageError("centrum spec needs L");
    return centrum_weights(n, ell);
  }
  std::vector<double> w;
  std::istringstream in2(text);
  double v;
  while (in2 >> v) w.push_back(v);
  if (!in2.eof()) throw UsageError("weight spec has non-numeric tokens");
  check_weights(w, n);
  return w;
}

std::vector<double> load_weights(const std::string& path_or_spec, int n) {
  std::istringstream probe(path_or_spec);
  std::string head;
  probe >> head;
  if (head == "centrum" || head == "kmedian" || head == "kcenter")
    return parse_weight_spec(path_or_spec, n);
  std::ifstream f(path_or_spec);
  if (f) {
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_weight_spec(buf.str(), n);
  }
  return parse_weight_spec(path_or_spec, n);
}

void check_weights(const std::vector<double>& w, int n) {
  if (int(w.size()) != n)
    throw UsageError("weight vector must have exactly n entries");
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::isnan(w[i]) || w[i] < 0)
      throw UsageError("weights must be nonnegative");
    if (i && w[i] > w[i - 1])
      throw UsageError("weights must be non-increasing");
  }
}

bool is_zero_one_weights(const std::vector<double>& w) {
  for (double v : w)
    if (v != 0.0 && v != 1.0) return false;
  return true;
}

}  // namespace ordkm
