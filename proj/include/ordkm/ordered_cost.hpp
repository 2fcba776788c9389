#pragma once

#include <vector>

#include "ordkm/common.hpp"

namespace ordkm {

std::vector<double> sort_desc(std::vector<double> v);

// w' * sort_desc(c) for a non-increasing nonnegative weight vector; equals the
// maximum of sum_i w_i * c_perm(i) over all permutations.
double ordered_cost(const std::vector<double>& w, const std::vector<double>& c);

struct TruncatedCostParams {
  double B = 0;  // threshold budget, B >= 0
  int ell = 1;   // 1 <= ell
};

// d when d > B/ell, else 0.
double truncated_cost(const TruncatedCostParams& p, double d);

// Entries below eps*w[0]/n are zeroed.
std::vector<double> truncate_weights(const std::vector<double>& w, double eps);

// Largest T >= 0 with (eps*M/n)*(1+eps)^T <= M, i.e. (eps/n)*(1+eps)^T <= 1.
int interval_count_T(int n, double eps);

// Ascending powers (1+eps)^t covering [eps*w1/n, w1*(1+eps)), anchored at
// integer exponents: t from ceil(log_{1+eps}(eps*w1/n)).
std::vector<double> weight_levels(double w1_trunc, int n, double eps);

struct SurrogateParams {
  double M = 0;     // distance-scale guess (estimate of the largest sorted cost)
  double eps = 0;   // in (0, 1]
  int T = 0;        // interval count minus one
  std::vector<double> w_est;  // length T+1, non-increasing
  double w1_trunc = 0;        // largest truncated weight
  int n = 0;

  double floor_value() const { return eps * M / n; }
  double threshold(int s) const;  // floor * (1+eps)^s, s in [0, T+1]
  double ceiling_value() const { return threshold(T + 1); }
};

enum class IntervalKind { BelowFloor, Interval, AboveCeiling };
struct IntervalPos {
  IntervalKind kind = IntervalKind::BelowFloor;
  int r = -1;  // valid when kind == Interval; I_r = (floor*(1+eps)^(T-r), floor*(1+eps)^(T-r+1)]
};

IntervalPos interval_of(const SurrogateParams& sp, double d);

// Piecewise-linear surrogate: dispatch on d/gamma, scale by d.
//   below floor -> 0, in I_r -> w_est[r]*d, above ceiling -> w1_trunc*(1+eps)*d.
double surrogate_cost(const SurrogateParams& sp, double gamma, double d);

// Per-interval weight summary of a sorted cost vector: mean of w_trunc over
// positions landing in I_r; if none, min over positions in earlier (larger)
// intervals; if none of those either, w_trunc[0].
std::vector<double> wavg_from_opt(const std::vector<double>& o_sorted,
                                  const std::vector<double>& w_trunc,
                                  const SurrogateParams& sp);

}  // namespace ordkm
