#pragma once

#include "ordkm/instance.hpp"
#include "ordkm/proxy.hpp"

namespace ordkm {

struct BruteForceResult {
  Solution sol;
  std::vector<double> o_sorted;  // assignment costs of sol, sorted descending
  double opt = 0;                // ordered cost of sol under the given weights
};

// Exhaustive minimum of ordered_cost(w, assignment costs) over all k-subsets of
// centers, subsets in lexicographic order, first minimum kept. Throws
// ResourceCapError when C(n,k) exceeds cap.
BruteForceResult brute_force_ordered(const MetricInstance& inst,
                                     const std::vector<double>& w,
                                     std::size_t cap = 1000000);

struct ProxySumResult {
  Solution sol;
  double value = 0;  // sum_j demand_j * proxy(c(i(j), j))
};

// Exhaustive minimum of the demand-weighted proxy connection sum.
ProxySumResult brute_force_proxy_sum(const MetricInstance& inst, const ProxySpec& proxy,
                                     const std::vector<int>& demands,
                                     std::size_t cap = 1000000);

// max over permutations pi of sum_i w[i] * c[pi(i)]; reference for the seminorm
// form of ordered_cost. Exhaustive, so n <= 8.
double permutation_cost_max(const std::vector<double>& w, const std::vector<double>& c);

}  // namespace ordkm
