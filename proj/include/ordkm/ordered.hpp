#pragma once

#include <cstdint>
#include <vector>

#include "ordkm/instance.hpp"
#include "ordkm/ordered_cost.hpp"

namespace ordkm {

// Guess space for the surrogate cost: the scale M ranges over the distinct
// positive distances, the per-interval estimates over non-increasing multisets
// of the weight levels. Guesses are indexed deterministically: M ascending,
// then estimate tuples with descending lead entry.
class GuessEnumerator {
 public:
  GuessEnumerator(const MetricInstance& inst, const std::vector<double>& w_trunc, double eps);

  struct Guess {
    double M = 0.0;
    std::vector<double> w_est;  // length T+1, non-increasing
  };

  std::int64_t count() const { return count_; }
  Guess at(std::int64_t idx) const;
  // Inverse of at(); M and every estimate must match the grids exactly.
  std::int64_t rank(double M, const std::vector<double>& w_est) const;

  const std::vector<double>& m_values() const { return m_; }
  const std::vector<double>& levels() const { return levels_; }
  int interval_count() const { return T_; }
  double eps() const { return eps_; }
  double w1() const { return w1_; }
  int n() const { return n_; }

 private:
  int level_index(double v) const;

  double eps_ = 0.0;
  double w1_ = 0.0;
  int n_ = 0;
  int T_ = 0;
  std::vector<double> m_;
  std::vector<double> levels_;
  std::int64_t per_m_ = 0;
  std::int64_t count_ = 0;
};

SurrogateParams make_surrogate(const GuessEnumerator& en, const GuessEnumerator::Guess& g);

// The guess a sorted optimal cost vector would produce: M is the top cost,
// each estimate the smallest level at or above the interval's weight average.
GuessEnumerator::Guess premise_guess(const GuessEnumerator& en,
                                     const std::vector<double>& o_sorted,
                                     const std::vector<double>& w_trunc);

struct FixedGuessResult {
  Solution sol;            // centers and nearest assignment; cost left at 0
  double g9_sum = 0.0;     // sum over clients of the gamma=9 surrogate cost
  bool zero_prices = false;  // every connection price 0, first k points opened
  bool exact_k = false;
  bool t2_shortcut = false;
  double lambda_lo = 0.0, lambda_hi = 0.0;
  double a = 0.0, b = 0.0, C1 = 0.0, C2 = 0.0;
  double opening_objective = 0.0, frac_bound = 0.0;
};

// Price search plus rounding under one surrogate guess; tolerance
// eps * w1 * M / n, max-key pairing, triple-max fallback, basic opening.
FixedGuessResult solve_fixed_guess(const MetricInstance& inst, const SurrogateParams& sp);

struct OrderedDiag {
  bool trivial = false;
  std::int64_t guess_count = 0;
  std::int64_t best_guess = -1;
  double best_M = 0.0;
  double cost = 0.0;
};

// Full solver for arbitrary non-increasing weights: truncates the weights,
// enumerates every guess (in parallel), keeps the candidate with the smallest
// cost under the original weights, ties to the lexicographically smallest
// center set. Throws ResourceCapError when the guess count exceeds guess_cap.
Solution solve_ordered(const MetricInstance& inst, const std::vector<double>& w, double eps,
                       std::int64_t guess_cap = 1000000, int threads = 1,
                       OrderedDiag* diag = nullptr);

}  // namespace ordkm
