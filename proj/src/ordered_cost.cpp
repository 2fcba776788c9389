#include "ordkm/ordered_cost.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace ordkm {

std::vector<double> sort_desc(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

double ordered_cost(const std::vector<double>& w, const std::vector<double>& c) {
  if (w.size() != c.size())
    throw UsageError("ordered_cost: weight and cost vectors differ in length");
  std::vector<double> s = sort_desc(c);
  double total = 0;
  for (std::size_t i = 0; i < s.size(); ++i) total += w[i] * s[i];
  return total;
}

double truncated_cost(const TruncatedCostParams& p, double d) {
  if (p.B < 0 || p.ell < 1) throw UsageError("truncated_cost: bad parameters");
  return d > p.B / p.ell ? d : 0.0;
}

std::vector<double> truncate_weights(const std::vector<double>& w, double eps) {
  if (!(eps > 0 && eps <= 1)) throw UsageError("truncate_weights: eps must be in (0,1]");
  if (w.empty()) return {};
  const double cut = eps * w[0] / double(w.size());
  std::vector<double> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i] >= cut ? w[i] : 0.0;
  return out;
}

int interval_count_T(int n, double eps) {
  if (n < 1 || !(eps > 0 && eps <= 1)) throw UsageError("interval_count_T: bad inputs");
  int T = 0;
  double v = (eps / n) * (1 + eps);
  while (v <= 1.0) {
    ++T;
    v *= (1 + eps);
  }
  return T;
}

std::vector<double> weight_levels(double w1_trunc, int n, double eps) {
  if (!(w1_trunc > 0)) throw UsageError("weight_levels: w1 must be positive");
  if (n < 1 || !(eps > 0 && eps <= 1)) throw UsageError("weight_levels: bad inputs");
  const double lo = eps * w1_trunc / n;
  const double hi = w1_trunc * (1 + eps);
  const int t0 = int(std::ceil(std::log(lo) / std::log1p(eps) - 1e-9));
  std::vector<double> levels;
  double v = std::pow(1 + eps, t0);
  while (v < hi) {
    levels.push_back(v);
    v *= (1 + eps);
  }
  return levels;
}

double SurrogateParams::threshold(int s) const {
  double v = floor_value();
  for (int i = 0; i < s; ++i) v *= (1 + eps);
  return v;
}

IntervalPos interval_of(const SurrogateParams& sp, double d) {
  if (d <= sp.floor_value()) return {IntervalKind::BelowFloor, -1};
  double bound = sp.floor_value();
  for (int s = 1; s <= sp.T + 1; ++s) {
    bound *= (1 + sp.eps);
    if (d <= bound) return {IntervalKind::Interval, sp.T - s + 1};
  }
  return {IntervalKind::AboveCeiling, -1};
}

double surrogate_cost(const SurrogateParams& sp, double gamma, double d) {
  if (!(gamma > 0)) throw UsageError("surrogate_cost: gamma must be positive");
  IntervalPos pos = interval_of(sp, d / gamma);
  switch (pos.kind) {
    case IntervalKind::BelowFloor:
      return 0.0;
    case IntervalKind::Interval:
      return sp.w_est[pos.r] * d;
    case IntervalKind::AboveCeiling:
      return sp.w1_trunc * (1 + sp.eps) * d;
  }
  return 0.0;
}

std::vector<double> wavg_from_opt(const std::vector<double>& o_sorted,
                                  const std::vector<double>& w_trunc,
                                  const SurrogateParams& sp) {
  if (o_sorted.size() != w_trunc.size())
    throw UsageError("wavg_from_opt: length mismatch");
  const int n = int(o_sorted.size());
  std::vector<std::vector<int>> bucket(sp.T + 1);
  for (int i = 0; i < n; ++i) {
    IntervalPos pos = interval_of(sp, o_sorted[i]);
    if (pos.kind == IntervalKind::Interval) bucket[pos.r].push_back(i);
  }
  std::vector<double> wavg(sp.T + 1, 0.0);
  for (int r = 0; r <= sp.T; ++r) {
    if (!bucket[r].empty()) {
      double s = 0;
      for (int i : bucket[r]) s += w_trunc[i];
      wavg[r] = s / double(bucket[r].size());
      continue;
    }
    bool found = false;
    double mn = 0;
    for (int s = 0; s < r; ++s)
      for (int i : bucket[s]) {
        if (!found || w_trunc[i] < mn) mn = w_trunc[i];
        found = true;
      }
    wavg[r] = found ? mn : w_trunc.empty() ? 0.0 : w_trunc[0];
  }
  return wavg;
}

}  // namespace ordkm
