#include "ordkm/ordered.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "ordkm/bipoint.hpp"
#include "ordkm/centrum.hpp"
#include "ordkm/parallel.hpp"
#include "ordkm/primal_dual.hpp"
#include "ordkm/proxy.hpp"

namespace ordkm {

namespace {

constexpr std::int64_t kCountCap = std::numeric_limits<std::int64_t>::max();

// Binomial coefficient, saturating at kCountCap instead of overflowing.
std::int64_t comb_sat(int a, int b) {
  if (b < 0 || b > a) return 0;
  b = std::min(b, a - b);
  unsigned __int128 res = 1;
  for (int i = 1; i <= b; ++i) {
    res = res * unsigned(a - b + i) / unsigned(i);
    if (res > static_cast<unsigned __int128>(kCountCap)) return kCountCap;
  }
  return std::int64_t(res);
}

// Non-increasing tuples of length m over L levels.
std::int64_t multiset_count(int m, int L) { return comb_sat(m + L - 1, L - 1); }

std::int64_t mul_sat(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountCap / b) return kCountCap;
  return a * b;
}

}  // namespace

GuessEnumerator::GuessEnumerator(const MetricInstance& inst,
                                 const std::vector<double>& w_trunc, double eps)
    : eps_(eps), n_(inst.n) {
  if (!(eps > 0 && eps <= 1)) throw UsageError("GuessEnumerator: eps must be in (0,1]");
  if (int(w_trunc.size()) != inst.n)
    throw UsageError("GuessEnumerator: weight length mismatch");
  if (w_trunc.empty() || !(w_trunc[0] > 0))
    throw UsageError("GuessEnumerator: weights are all zero");
  w1_ = w_trunc[0];
  for (double d : inst.dist)
    if (d > 0) m_.push_back(d);
  std::sort(m_.begin(), m_.end());
  m_.erase(std::unique(m_.begin(), m_.end()), m_.end());
  if (m_.empty()) throw UsageError("GuessEnumerator: no positive distances");
  T_ = interval_count_T(inst.n, eps);
  levels_ = weight_levels(w1_, inst.n, eps);
  per_m_ = multiset_count(T_ + 1, int(levels_.size()));
  count_ = mul_sat(per_m_, std::int64_t(m_.size()));
}

GuessEnumerator::Guess GuessEnumerator::at(std::int64_t idx) const {
  if (idx < 0 || idx >= count_) throw UsageError("GuessEnumerator: index out of range");
  Guess g;
  g.M = m_[std::size_t(idx / per_m_)];
  std::int64_t r = idx % per_m_;
  const int m = T_ + 1;
  int cap = int(levels_.size()) - 1;
  g.w_est.reserve(m);
  for (int slot = 0; slot < m; ++slot) {
    const int rem = m - slot - 1;
    for (int c = cap; c >= 0; --c) {
      const std::int64_t block = comb_sat(rem + c, c);
      if (r < block) {
        g.w_est.push_back(levels_[c]);
        cap = c;
        break;
      }
      r -= block;
    }
  }
  return g;
}

int GuessEnumerator::level_index(double v) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), v);
  if (it == levels_.end() || *it != v)
    throw UsageError("GuessEnumerator: estimate is not a grid level");
  return int(it - levels_.begin());
}

std::int64_t GuessEnumerator::rank(double M, const std::vector<double>& w_est) const {
  auto mit = std::lower_bound(m_.begin(), m_.end(), M);
  if (mit == m_.end() || *mit != M)
    throw UsageError("GuessEnumerator: M is not an instance distance");
  if (int(w_est.size()) != T_ + 1)
    throw UsageError("GuessEnumerator: estimate tuple has the wrong length");
  const int m = T_ + 1;
  int cap = int(levels_.size()) - 1;
  std::int64_t r = 0;
  for (int slot = 0; slot < m; ++slot) {
    const int rem = m - slot - 1;
    const int c = level_index(w_est[slot]);
    if (c > cap) throw UsageError("GuessEnumerator: estimates must be non-increasing");
    for (int v = cap; v > c; --v) r += comb_sat(rem + v, v);
    cap = c;
  }
  return std::int64_t(mit - m_.begin()) * per_m_ + r;
}

SurrogateParams make_surrogate(const GuessEnumerator& en, const GuessEnumerator::Guess& g) {
  SurrogateParams sp;
  sp.M = g.M;
  sp.eps = en.eps();
  sp.T = en.interval_count();
  sp.w_est = g.w_est;
  sp.w1_trunc = en.w1();
  sp.n = en.n();
  if (int(sp.w_est.size()) != sp.T + 1)
    throw UsageError("make_surrogate: estimate tuple has the wrong length");
  for (std::size_t s = 1; s < sp.w_est.size(); ++s)
    if (sp.w_est[s] > sp.w_est[s - 1])
      throw UsageError("make_surrogate: estimates must be non-increasing");
  return sp;
}

GuessEnumerator::Guess premise_guess(const GuessEnumerator& en,
                                     const std::vector<double>& o_sorted,
                                     const std::vector<double>& w_trunc) {
  if (o_sorted.empty() || !(o_sorted[0] > 0))
    throw UsageError("premise_guess: top cost must be positive");
  GuessEnumerator::Guess g;
  g.M = o_sorted[0];
  SurrogateParams sp;
  sp.M = g.M;
  sp.eps = en.eps();
  sp.T = en.interval_count();
  sp.w1_trunc = en.w1();
  sp.n = en.n();
  const std::vector<double> wavg = wavg_from_opt(o_sorted, w_trunc, sp);
  const std::vector<double>& lv = en.levels();
  g.w_est.reserve(wavg.size());
  for (double target : wavg) {
    int pick = -1;
    for (std::size_t s = 0; s < lv.size() && pick < 0; ++s)
      if (lv[s] >= target * (1.0 - 1e-12)) pick = int(s);
    if (pick < 0)
      throw CertificateError("premise_guess: interval average above every level");
    g.w_est.push_back(lv[std::size_t(pick)]);
  }
  return g;
}

FixedGuessResult solve_fixed_guess(const MetricInstance& inst, const SurrogateParams& sp) {
  FixedGuessResult out;
  const ProxySpec proxy = ProxySpec::surrogate(sp);
  const std::vector<int> demands = unit_demands(inst.n);
  if (inst.max_distance() <= sp.floor_value()) {
    out.zero_prices = true;
    std::vector<int> centers(inst.k);
    std::iota(centers.begin(), centers.end(), 0);
    out.sol = nearest_assignment(inst, centers);
  } else {
    const double tol = sp.eps * sp.w1_trunc * sp.M / sp.n;
    LambdaSearchResult ls = lambda_search(inst, proxy, demands, tol);
    if (ls.exact) {
      out.exact_k = true;
      out.lambda_lo = out.lambda_hi = ls.at_k.lambda;
      out.sol = nearest_assignment(inst, ls.at_k.centers);
    } else {
      out.lambda_lo = ls.below.lambda;
      out.lambda_hi = ls.above.lambda;
      BipointPair bp =
          make_bipoint(inst, proxy, demands, std::move(ls.below), std::move(ls.above));
      out.a = bp.a;
      out.b = bp.b;
      out.C1 = bp.C1;
      out.C2 = bp.C2;
      RoundPolicy policy;
      policy.key = PairKey::MaxOfBoth;
      policy.fallback = FallbackRule::TripleMax;
      policy.t2_shortcut_b = 1.0 / 3.0;
      policy.mode = RoundingMode::Basic;
      BipointRound r = round_bipoint(inst, proxy, bp, policy);
      out.t2_shortcut = r.t2_shortcut;
      out.opening_objective = r.opening.objective;
      out.frac_bound = r.frac_bound;
      out.sol = std::move(r.sol);
    }
  }
  for (int j = 0; j < inst.n; ++j)
    out.g9_sum += surrogate_cost(sp, 9.0, inst(out.sol.assign[j], j));
  return out;
}

Solution solve_ordered(const MetricInstance& inst, const std::vector<double>& w, double eps,
                       std::int64_t guess_cap, int threads, OrderedDiag* diag) {
  ValidationReport rep = validate_metric(inst);
  if (!rep.ok) throw UsageError("solve_ordered: " + rep.message);
  check_weights(w, inst.n);
  if (!(eps > 0 && eps <= 1)) throw UsageError("solve_ordered: eps must be in (0,1]");
  if (threads < 1) throw UsageError("solve_ordered: threads must be positive");
  OrderedDiag d;
  auto finish = [&](Solution sol) {
    d.cost = sol.cost;
    if (diag) *diag = d;
    return sol;
  };
  if (!(w[0] > 0)) {  // zero weights price every placement at zero
    d.trivial = true;
    std::vector<int> centers(inst.k);
    std::iota(centers.begin(), centers.end(), 0);
    Solution sol = nearest_assignment(inst, centers);
    sol.cost = 0.0;
    return finish(std::move(sol));
  }
  if (inst.distinct_point_count() <= inst.k) {
    d.trivial = true;
    return finish(trivial_zero_solution(inst));
  }
  const std::vector<double> w_trunc = truncate_weights(w, eps);
  GuessEnumerator en(inst, w_trunc, eps);
  d.guess_count = en.count();
  if (en.count() > guess_cap || en.count() > std::int64_t(std::numeric_limits<int>::max())) {
    std::ostringstream os;
    os << "solve_ordered: " << en.count() << " guesses exceed the cap " << guess_cap;
    throw ResourceCapError(os.str());
  }
  const int total = int(en.count());
  struct Slot {
    double cost = 0.0;
    std::vector<int> centers;
  };
  std::vector<Slot> slots(total);
  parallel_for(total, threads, [&](int idx) {
    FixedGuessResult r = solve_fixed_guess(inst, make_surrogate(en, en.at(idx)));
    slots[idx].cost = ordered_cost(w, assignment_costs(inst, r.sol));
    slots[idx].centers = std::move(r.sol.centers);
  });
  int best = 0;
  for (int idx = 1; idx < total; ++idx) {
    const Slot& s = slots[idx];
    const Slot& b = slots[best];
    if (s.cost < b.cost ||
        (s.cost == b.cost &&
         std::lexicographical_compare(s.centers.begin(), s.centers.end(), b.centers.begin(),
                                      b.centers.end())))
      best = idx;
  }
  d.best_guess = best;
  d.best_M = en.at(best).M;
  Solution sol = nearest_assignment(inst, slots[best].centers);
  sol.cost = slots[best].cost;
  return finish(std::move(sol));
}

}  // namespace ordkm
