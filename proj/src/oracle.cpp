#include "ordkm/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "ordkm/ordered_cost.hpp"

namespace ordkm {

static double binomial(int n, int k) {
  double v = 1;
  for (int i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

// Calls fn(subset) for every k-subset of [0, n) in lexicographic order.
template <class Fn>
static void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    fn(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) break;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

static void check_cap(const MetricInstance& inst, std::size_t cap, const char* who) {
  if (binomial(inst.n, inst.k) > double(cap))
    throw ResourceCapError(std::string(who) + ": C(n,k) exceeds the subset cap");
}

BruteForceResult brute_force_ordered(const MetricInstance& inst,
                                     const std::vector<double>& w, std::size_t cap) {
  check_weights(w, inst.n);
  check_cap(inst, cap, "brute_force_ordered");
  BruteForceResult best;
  bool have = false;
  std::vector<double> costs(inst.n);
  for_each_subset(inst.n, inst.k, [&](const std::vector<int>& s) {
    for (int j = 0; j < inst.n; ++j) {
      double m = inst(s[0], j);
      for (int c : s) m = std::min(m, inst(c, j));
      costs[j] = m;
    }
    double v = ordered_cost(w, costs);
    if (!have || v < best.opt) {
      have = true;
      best.opt = v;
      best.sol = nearest_assignment(inst, s);
      best.sol.cost = v;
    }
  });
  best.o_sorted = sort_desc(assignment_costs(inst, best.sol));
  return best;
}

ProxySumResult brute_force_proxy_sum(const MetricInstance& inst, const ProxySpec& proxy,
                                     const std::vector<int>& demands, std::size_t cap) {
  if (int(demands.size()) != inst.n)
    throw UsageError("brute_force_proxy_sum: demand vector length mismatch");
  check_cap(inst, cap, "brute_force_proxy_sum");
  ProxySumResult best;
  bool have = false;
  for_each_subset(inst.n, inst.k, [&](const std::vector<int>& s) {
    double v = 0;
    for (int j = 0; j < inst.n; ++j) {
      double m = inst(s[0], j);
      for (int c : s) m = std::min(m, inst(c, j));
      v += demands[j] * proxy(m);
    }
    if (!have || v < best.value) {
      have = true;
      best.value = v;
      best.sol = nearest_assignment(inst, s);
    }
  });
  best.sol.cost = best.value;
  return best;
}

double permutation_cost_max(const std::vector<double>& w, const std::vector<double>& c) {
  if (w.size() != c.size()) throw UsageError("permutation_cost_max: length mismatch");
  if (c.size() > 8) throw UsageError("permutation_cost_max: n must be <= 8");
  std::vector<int> idx(c.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
  double best = -HUGE_VAL;
  do {
    double v = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) v += w[i] * c[idx[i]];
    best = std::max(best, v);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return c.empty() ? 0.0 : best;
}

}  // namespace ordkm
