#pragma once

#include <cstdint>
#include <vector>

#include "ordkm/instance.hpp"
#include "ordkm/proxy.hpp"

namespace ordkm {

// Outcome of one dual-ascent run at a fixed facility price lambda. `centers`
// is the conflict-pruned tight set: every client holds a positive bid on at
// most one of them. Clients with such a bid form S; `witness[j]` is the center
// holding it (-1 outside S). Every run is self-validated before it is
// returned: dual feasibility, the budget equality on tight facilities, the
// pruning properties and the factor-3 certificate below all hold or a
// CertificateError is thrown.
struct PDResult {
  double lambda = 0.0;
  std::vector<double> alpha;      // freeze value per client
  std::vector<double> open_time;  // per facility, +inf when never tight
  std::vector<int> tight_order;   // tight facilities in the order they opened
  std::vector<int> centers;       // pruned tight set, ascending
  std::vector<int> assign;        // nearest center, ties to the smaller index
  std::vector<int> witness;       // center holding j's positive bid, -1 if none
  std::vector<char> in_S;
  double alpha_demand_sum = 0.0;  // sum_j d_j * alpha_j

  double dual_value(int k) const { return alpha_demand_sum - double(k) * lambda; }
  int opened() const { return int(centers.size()); }
};

// Bid of client j on facility i under the ascent that produced r.
double pd_beta(const PDResult& r, double p_ij, int i, int j);

// Lagrangian dual ascent on the covering relaxation with facility price
// lambda. Prices are proxy(c_ij); client j's dual grows until a tight
// facility within reach freezes it. Demands scale both bids and objective.
PDResult dual_ascent(const MetricInstance& inst, const ProxySpec& proxy,
                     const std::vector<int>& demands, double lambda);

// Certificate accounting for a run:
//   lhs = 3*lambda*|T| + sum_{j in S} d_j * proxy(c(witness_j, j))
//                      + sum_{j not in S} d_j * proxy3(c(assign_j, j))
// for the identity and truncated proxies, and with proxy3 on every client for
// the surrogate proxy; rhs = 3 * sum_j d_j alpha_j. lhs <= rhs always holds.
struct CertificateSides {
  double lhs = 0.0, rhs = 0.0;
};
CertificateSides certificate_check(const MetricInstance& inst, const ProxySpec& proxy,
                                   const std::vector<int>& demands, const PDResult& r);

// Total dual_ascent completions in this process (each one fully validated).
std::uint64_t dual_ascent_runs();

// Price search bracketing k open centers. Either some probe opened exactly k
// (exact=true, result in at_k), or below/above hold runs with more and fewer
// than k centers whose prices differ by less than tol.
struct LambdaSearchResult {
  bool exact = false;
  PDResult at_k;
  PDResult below, above;
};

LambdaSearchResult lambda_search(const MetricInstance& inst, const ProxySpec& proxy,
                                 const std::vector<int>& demands, double tol);

}  // namespace ordkm
