#include <cmath>
#include <vector>

#include "doctest.h"
#include "ordkm/oracle.hpp"
#include "ordkm/ordered_cost.hpp"

using namespace ordkm;

TEST_SUITE("ordered_cost") {

TEST_CASE("weighted sorted sum against hand values") {
  CHECK(ordered_cost({1, 1, 0}, {5, 2, 7}) == 12.0);
  CHECK(ordered_cost({1, 0, 0}, {5, 2, 7}) == 7.0);
  CHECK(ordered_cost({1, 1, 1}, {5, 2, 7}) == 14.0);
  CHECK(ordered_cost({2, 1, 0.5}, {1, 4, 2}) == 2 * 4 + 1 * 2 + 0.5 * 1);
  CHECK_THROWS_AS(ordered_cost({1, 1}, {5, 2, 7}), UsageError);
}

TEST_CASE("seminorm form matches the permutation maximum") {
  CHECK(ordered_cost({3, 2, 1}, {1, 5, 2}) == permutation_cost_max({3, 2, 1}, {1, 5, 2}));
  Rng rng(42);
  for (int t = 0; t < 50; ++t) {
    int n = rng.uniform_int(1, 6);
    std::vector<double> w(n), c(n);
    for (double& v : w) v = rng.uniform01();
    w = sort_desc(w);
    for (double& v : c) v = rng.uniform(0, 10);
    CHECK(ordered_cost(w, c) == permutation_cost_max(w, c));
  }
}

TEST_CASE("truncated cost threshold is strict") {
  TruncatedCostParams p{12.0, 3};  // threshold 4
  CHECK(truncated_cost(p, 4.0) == 0.0);
  CHECK(truncated_cost(p, 4.0 + 1e-12) == 4.0 + 1e-12);
  CHECK(truncated_cost(p, 3.0) == 0.0);
  CHECK(truncated_cost(p, 100.0) == 100.0);
  TruncatedCostParams zero{0.0, 1};  // B = 0 is the identity on positive values
  CHECK(truncated_cost(zero, 0.0) == 0.0);
  CHECK(truncated_cost(zero, 0.7) == 0.7);
}

TEST_CASE("weight truncation zeroes small entries only") {
  CHECK(truncate_weights({8, 4, 0.01}, 0.3) == std::vector<double>{8, 4, 0});  // cut 0.8
  CHECK(truncate_weights({1, 1, 1}, 0.5) == std::vector<double>{1, 1, 1});
  CHECK(truncate_weights({1, 0.5, 0.25, 0.125}, 1.0) ==
        std::vector<double>{1, 0.5, 0.25, 0});  // cut 0.25 keeps ties
}

TEST_CASE("interval count satisfies its defining inequality") {
  CHECK(interval_count_T(10, 1.0) == 3);  // 0.1 * 2^3 = 0.8 <= 1 < 1.6
  CHECK(interval_count_T(8, 1.0) == 3);   // 0.125 * 8 = 1 exactly
  CHECK(interval_count_T(4, 1.0) == 2);
  for (int n = 2; n <= 20; ++n)
    for (double eps : {0.05, 0.1, 0.3, 0.5, 1.0}) {
      int T = interval_count_T(n, eps);
      REQUIRE(T >= 0);
      CHECK((eps / n) * std::pow(1 + eps, T) <= 1.0 + 1e-12);
      CHECK((eps / n) * std::pow(1 + eps, T + 1) > 1.0 - 1e-12);
    }
}

TEST_CASE("weight levels are integer powers covering the truncation band") {
  std::vector<double> lv = weight_levels(1.0, 4, 1.0);
  CHECK(lv == std::vector<double>{0.25, 0.5, 1.0});  // exact powers of two
  for (double w1 : {0.37, 1.0, 250.0})
    for (double eps : {0.1, 0.5, 1.0}) {
      std::vector<double> v = weight_levels(w1, 9, eps);
      REQUIRE(!v.empty());
      CHECK(v.front() <= eps * w1 / 9 * (1 + eps) * (1 + 1e-12));
      CHECK(v.back() >= w1 / (1 + eps) * (1 - 1e-12));
      CHECK(v.back() < w1 * (1 + eps));
      for (std::size_t i = 1; i < v.size(); ++i)
        CHECK(v[i] == doctest::Approx(v[i - 1] * (1 + eps)).epsilon(1e-12));
    }
}

TEST_CASE("surrogate interval dispatch against a hand-built table") {
  SurrogateParams sp;
  sp.M = 100;
  sp.eps = 1.0;
  sp.n = 10;
  sp.T = interval_count_T(sp.n, sp.eps);
  REQUIRE(sp.T == 3);
  sp.w_est = {2.0, 1.0, 0.5, 0.25};
  sp.w1_trunc = 2.0;

  CHECK(sp.floor_value() == 10.0);
  CHECK(sp.ceiling_value() == 160.0);
  // I_0=(80,160], I_1=(40,80], I_2=(20,40], I_3=(10,20]
  CHECK(interval_of(sp, 5.0).kind == IntervalKind::BelowFloor);
  CHECK(interval_of(sp, 10.0).kind == IntervalKind::BelowFloor);  // strict lower edge
  CHECK(interval_of(sp, 15.0).r == 3);
  CHECK(interval_of(sp, 20.0).r == 3);  // closed upper edge
  CHECK(interval_of(sp, 50.0).r == 1);
  CHECK(interval_of(sp, 160.0).r == 0);
  CHECK(interval_of(sp, 200.0).kind == IntervalKind::AboveCeiling);

  CHECK(surrogate_cost(sp, 1.0, 5.0) == 0.0);
  CHECK(surrogate_cost(sp, 1.0, 50.0) == 1.0 * 50.0);
  CHECK(surrogate_cost(sp, 1.0, 15.0) == 0.25 * 15.0);
  CHECK(surrogate_cost(sp, 1.0, 200.0) == 2.0 * 2.0 * 200.0);  // above ceiling
  // gamma scales the dispatch point, not the charged distance
  CHECK(surrogate_cost(sp, 3.0, 150.0) == 1.0 * 150.0);   // 150/3 = 50 in I_1
  CHECK(surrogate_cost(sp, 3.0, 25.0) == 0.0);            // 25/3 below floor
  CHECK(surrogate_cost(sp, 9.0, 1800.0) == 2.0 * 2.0 * 1800.0);
}

TEST_CASE("interval weight averages with gaps") {
  SurrogateParams sp;
  sp.M = 100;
  sp.eps = 1.0;
  sp.n = 10;
  sp.T = 3;
  sp.w_est = {2.0, 2.0, 2.0, 2.0};  // irrelevant here
  sp.w1_trunc = 2.0;

  std::vector<double> o = {100, 50, 15, 5, 0, 0, 0, 0, 0, 0};
  std::vector<double> w = {2.0, 1.0, 1.0, 0.5, 0.5, 0.25, 0.25, 0.1, 0.1, 0.1};
  std::vector<double> avg = wavg_from_opt(o, w, sp);
  REQUIRE(avg.size() == 4);
  CHECK(avg[0] == 2.0);   // o_0 = 100 in I_0
  CHECK(avg[1] == 1.0);   // o_1 = 50 in I_1
  CHECK(avg[2] == 1.0);   // I_2 empty: min over earlier intervals
  CHECK(avg[3] == 1.0);   // o_2 = 15 in I_3

  std::vector<double> pair = {60, 50, 0, 0, 0, 0, 0, 0, 0, 0};
  std::vector<double> avg2 = wavg_from_opt(pair, w, sp);
  CHECK(avg2[0] == 2.0);  // I_0 empty and nothing earlier: w[0]
  CHECK(avg2[1] == 1.5);  // mean of w_0, w_1
  CHECK(avg2[2] == 1.0);  // empty: min weight over earlier positions
  CHECK(avg2[3] == 1.0);
}

TEST_CASE("non-increasing averages for sorted inputs") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    int n = rng.uniform_int(2, 12);
    double eps = rng.uniform(0.05, 1.0);
    std::vector<double> o(n), w(n);
    for (double& v : o) v = rng.uniform(0, 100);
    for (double& v : w) v = rng.uniform01();
    o = sort_desc(o);
    w = sort_desc(w);
    if (w[0] == 0) continue;
    SurrogateParams sp;
    sp.M = o[0] > 0 ? o[0] : 1.0;
    sp.eps = eps;
    sp.n = n;
    sp.T = interval_count_T(n, eps);
    sp.w_est.assign(sp.T + 1, w[0]);
    sp.w1_trunc = w[0];
    std::vector<double> avg = wavg_from_opt(o, w, sp);
    REQUIRE(int(avg.size()) == sp.T + 1);
    for (std::size_t i = 1; i < avg.size(); ++i) CHECK(avg[i] <= avg[i - 1] + 1e-12);
  }
}

}  // TEST_SUITE
