#pragma once

#include <functional>

#include "ordkm/bipoint.hpp"
#include "ordkm/instance.hpp"
#include "ordkm/lp.hpp"
#include "ordkm/primal_dual.hpp"

namespace ordkm {

// Smallest grid budget B (min positive distance times powers of 1+eps) whose
// truncated-cost covering LP has value at most B. Monotone predicate, so the
// grid is binary searched; the LP solution at the chosen budget is kept.
struct BbarResult {
  double Bbar = 0.0;
  LpSolution lp;
  int lp_solves = 0;
};
BbarResult find_Bbar(const MetricInstance& inst, int ell, double eps);

struct CentrumDiag {
  bool trivial = false;  // at most k distinct points, zero-cost solution
  bool exact_k = false;
  bool t2_shortcut = false;
  double Bbar = 0.0;
  double lambda_lo = 0.0, lambda_hi = 0.0;
  double a = 0.0, b = 0.0, C1 = 0.0, C2 = 0.0;
  double opening_objective = 0.0, frac_bound = 0.0;
  double cost = 0.0;  // sum of the ell largest assignment distances
};

// Primal-dual route: budget search, price search with tolerance eps*Bbar/n,
// bipoint rounding with the improved opening.
Solution solve_centrum_pd(const MetricInstance& inst, int ell, double eps,
                          CentrumDiag* diag = nullptr);

// LP-free variant: runs the price search and rounding at every grid budget
// and keeps the cheapest outcome (ties to the smaller budget).
Solution solve_centrum_pd_scan(const MetricInstance& inst, int ell, double eps,
                               CentrumDiag* diag = nullptr);

// Demand consolidation: clients visited by increasing LP cost fold into the
// smallest-index earlier member within distance 2*Bbar/ell; survivors form a
// weighted k-median instance over the original distances.
struct ReducedInstance {
  double Bbar = 0.0;
  int ell = 1;
  std::vector<double> lp_cost;  // per original client
  std::vector<int> sigma;       // original id now holding each client's demand
  std::vector<int> members;     // ascending original ids with demand left
  std::vector<int> demands;     // aligned with members
  double opt_prime = 0.0;       // sum of member demand * member LP cost
  MetricInstance sub;           // populated when |members| > k
};

ReducedInstance reduce_to_kmedian(const MetricInstance& inst, int ell, double Bbar,
                                  const LpSolution& lp);

// Fractional k-median solution for the reduced instance synthesized from the
// covering LP by routing through nearest members; its objective is at most
// twice opt_prime and it must be feasible up to max_violation.
struct ReducedWitness {
  double objective = 0.0;
  double max_violation = 0.0;
};
ReducedWitness reduced_lp_witness(const MetricInstance& inst, const ReducedInstance& red,
                                  const LpSolution& lp);

// Weighted k-median subroutine: centers in sub ids, cost = demand-weighted
// connection sum under nearest assignment.
using KMedSolver = std::function<Solution(const MetricInstance&, const std::vector<int>&)>;

Solution kmed_brute_solver(const MetricInstance& sub, const std::vector<int>& demands);
// Identity-proxy price search plus bipoint rounding at tolerance
// eps * max_distance / n of the subinstance.
KMedSolver make_kmed_pd_solver(double eps);

struct LpReduceDiag {
  bool trivial = false;
  bool small_core = false;  // |members| <= k, open all of them
  double Bbar = 0.0;
  double lp_value = 0.0;
  double opt_prime = 0.0;
  double kmed_cost = 0.0;
  int core_size = 0;
  double cost = 0.0;
};

Solution solve_centrum_lp_reduce(const MetricInstance& inst, int ell, double eps,
                                 const KMedSolver& kmed, LpReduceDiag* diag = nullptr);

// Shared zero-cost answer when at most k distinct points exist.
Solution trivial_zero_solution(const MetricInstance& inst);

}  // namespace ordkm
