#pragma once

#include "ordkm/instance.hpp"
#include "ordkm/proxy.hpp"

namespace ordkm {

enum class RowSense { LE, GE, EQ };
enum class LpStatus { Optimal, Infeasible, Unbounded, IterLimit };

// min objective . x  subject to  rows[r] . x  (sense[r])  rhs[r],  x in [lo, hi].
// Lower bounds must be finite; upper bounds may be +infinity.
struct DenseLP {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<std::pair<double, double>> bounds;
};

// dual[r] is the multiplier of input row r, with signs such that the dual
// objective is sum_r dual[r]*rhs[r]: GE rows have dual >= 0, LE rows <= 0,
// EQ rows free. When status == Optimal the primal satisfies every constraint
// within 1e-7 and primal value == dual value within 1e-7*(1+|value|); the
// solver throws instead of returning a silently inaccurate Optimal.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;
  double value = 0;
  std::vector<double> dual;
};

LpSolution solve_lp(const DenseLP& lp, int iter_cap = 50000);

// The covering relaxation with facility variables: variables x_ij (i serves j,
// flattened i*n+j) then y_i; constraints sum_i x_ij >= 1 per client,
// x_ij <= y_i, sum_i y_i <= k; objective sum_j demand_j * proxy(c_ij) * x_ij.
// With proxy = Identity and unit demands this is the plain k-median LP.
DenseLP build_pb_lp(const MetricInstance& inst, const ProxySpec& proxy,
                    const std::vector<int>& demands);

// Optimal value of the LP above; throws on non-Optimal status.
double lp_opt_value(const MetricInstance& inst, const ProxySpec& proxy,
                    const std::vector<int>& demands);

std::vector<int> unit_demands(int n);

}  // namespace ordkm
