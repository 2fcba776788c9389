#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ordkm {

// Randomized identity checks on the truncated and surrogate cost functions and
// on weight truncation; each counter is a violation count.
struct ClaimsStats {
  int trials = 0;
  int trunc_monotone = 0;
  int trunc_triple = 0;  // 3 max{f(x),f(y),f(z)} >= f_3B(x+y+z)
  int trunc_scale = 0;   // f_3B(x) = 3 f_B(x/3)
  int g_scale = 0;       // g(3g; s) = 3 g(g; s/3)
  int g_monotone = 0;
  int sandwich = 0;  // (1-eps) cost(w) <= cost(w_trunc) <= cost(w)
  double max_rel_err = 0.0;
  int total() const {
    return trunc_monotone + trunc_triple + trunc_scale + g_scale + g_monotone + sandwich;
  }
};
ClaimsStats claims_stats(int trials, std::uint64_t seed);

// Random small instances solved with the primal-dual route; ratios are cost
// over budget and budget over the exhaustive optimum.
struct CentrumStats {
  int trials = 0;
  int ratio_violations = 0;   // cost above (12 + 4 eps) * Bbar
  int budget_violations = 0;  // Bbar above (1 + eps) * optimum
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double max_budget_ratio = 0.0;
};
CentrumStats centrum_stats(int trials, std::uint64_t seed, double eps);

struct OrderedStats {
  int trials = 0;
  int beat_oracle = 0;  // candidate strictly below the exhaustive optimum
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::int64_t max_guesses = 0;
};
OrderedStats ordered_stats(int trials, std::uint64_t seed, double eps, int threads);

struct LpCheckStats {
  int trials = 0;
  int bipoints = 0;            // trials that produced a two-run bracket
  int gap_violations = 0;      // |c*x - dual*rhs| beyond 1e-7 at the optimum
  int duality_violations = 0;  // ascent dual value above the LP optimum
  int opening_violations = 0;  // greedy opening vs LP optimum beyond 1e-9
  double max_gap = 0.0;
  double max_duality_excess = 0.0;
  double max_opening_gap = 0.0;
};
LpCheckStats lpcheck_stats(int trials, std::uint64_t seed);

struct BenchResult {
  std::vector<std::pair<std::string, std::string>> fields;  // insertion order
  int violations = 0;
  std::string text() const;  // one key=value line per field
};

// suite: claims, centrum, ordered or lpcheck. Reports carry no timing fields.
BenchResult run_bench(const std::string& suite, int trials, std::uint64_t seed, int threads);

}  // namespace ordkm
