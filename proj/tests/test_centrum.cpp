#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ordkm/centrum.hpp"
#include "ordkm/oracle.hpp"
#include "ordkm/ordered_cost.hpp"

using namespace ordkm;

namespace {

MetricInstance line_metric(const std::vector<double>& xs, int k) {
  std::vector<std::vector<double>> pts;
  for (double x : xs) pts.push_back({x});
  return metric_from_points(pts, k);
}

double centrum_cost(const MetricInstance& inst, const Solution& sol, int ell) {
  return ordered_cost(centrum_weights(inst.n, ell), assignment_costs(inst, sol));
}

}  // namespace

TEST_SUITE("centrum") {

TEST_CASE("budget search lands on the first feasible grid point") {
  MetricInstance inst = line_metric({0, 1, 10}, 1);
  BbarResult bb = find_Bbar(inst, 1, 0.1);
  // Best single center pays max distance 9; the grid is 1 * 1.1^t and the
  // truncated LP value drops to 0 once the budget clears 9.
  double expect = 1.0;
  while (expect <= 9.0) expect *= 1.1;
  CHECK(bb.Bbar == doctest::Approx(expect).epsilon(1e-12));
  CHECK(bb.Bbar <= (1.0 + 0.1) * 9.0 * (1.0 + 1e-9));
  CHECK(bb.lp.status == LpStatus::Optimal);
  CHECK(bb.lp.value <= bb.Bbar + 1e-9 * (1.0 + bb.Bbar));
  CHECK(bb.lp_solves >= 2);
}

TEST_CASE("budget search over random instances stays near the optimum") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    MetricInstance inst = gen_random_metric(8, 3, seed, 40.0);
    for (int ell : {1, 3, 8}) {
      BbarResult bb = find_Bbar(inst, ell, 0.1);
      double opt = brute_force_ordered(inst, centrum_weights(8, ell)).opt;
      CHECK(bb.Bbar <= (1.0 + 0.1) * opt * (1.0 + 1e-9));
      CHECK(bb.lp.value <= bb.Bbar + 1e-9 * (1.0 + bb.Bbar));
      // One grid step below the pick the LP must exceed the budget.
      double below = bb.Bbar / 1.1;
      if (below > inst.min_positive_distance() * 1.05) {
        double v = lp_opt_value(inst, ProxySpec::truncated(below, ell),
                                unit_demands(inst.n));
        CHECK(v > below + 1e-9 * (1.0 + below));
      }
    }
  }
}

TEST_CASE("duplicate-heavy instances take the zero-cost path") {
  MetricInstance inst = line_metric({0, 0, 5}, 2);
  BbarResult bb = find_Bbar(inst, 1, 0.1);
  CHECK(bb.Bbar == 0.0);
  CHECK(bb.lp.status == LpStatus::Optimal);
  CHECK(bb.lp_solves == 0);

  CentrumDiag diag;
  Solution sol = solve_centrum_pd(inst, 1, 0.1, &diag);
  CHECK(diag.trivial);
  CHECK(sol.cost == 0.0);
  CHECK(centrum_cost(inst, sol, 1) == 0.0);

  Solution tz = trivial_zero_solution(inst);
  CHECK(centrum_cost(inst, tz, 3) == 0.0);
  CHECK(int(tz.centers.size()) <= inst.k);
}

TEST_CASE("primal-dual route meets the provable factor") {
  const double eps = 0.1;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    int n = 6 + int(seed % 5);
    int k = 2 + int(seed % 2);
    MetricInstance inst = gen_random_metric(n, k, seed, 100.0);
    for (int ell : {1, (n + 1) / 2, n}) {
      CentrumDiag diag;
      Solution sol = solve_centrum_pd(inst, ell, eps, &diag);
      CHECK(int(sol.centers.size()) <= k);
      CHECK(sol.cost == doctest::Approx(centrum_cost(inst, sol, ell)).epsilon(1e-12));
      CHECK(diag.cost == sol.cost);
      double opt = brute_force_ordered(inst, centrum_weights(n, ell)).opt;
      CHECK(sol.cost >= opt - 1e-9 * (1.0 + opt));
      if (!diag.trivial) {
        CHECK(sol.cost <= (12.0 + 6.0 * eps) * diag.Bbar * (1.0 + 1e-9));
        CHECK(diag.Bbar <= (1.0 + eps) * opt * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("budget scan never loses to the LP-guided budget") {
  for (std::uint64_t seed = 3; seed <= 8; ++seed) {
    MetricInstance inst = gen_random_metric(7, 2, seed, 30.0);
    CentrumDiag pd, scan;
    Solution a = solve_centrum_pd(inst, 3, 0.1, &pd);
    Solution b = solve_centrum_pd_scan(inst, 3, 0.1, &scan);
    CHECK(b.cost <= a.cost + 1e-9 * (1.0 + a.cost));
    CHECK(b.cost >= brute_force_ordered(inst, centrum_weights(7, 3)).opt -
                        1e-9 * (1.0 + b.cost));
  }
}

TEST_CASE("argument validation") {
  MetricInstance inst = line_metric({0, 1, 10}, 2);
  CHECK_THROWS_AS(solve_centrum_pd(inst, 0, 0.1), UsageError);
  CHECK_THROWS_AS(solve_centrum_pd(inst, 4, 0.1), UsageError);
  CHECK_THROWS_AS(solve_centrum_pd(inst, 1, 0.0), UsageError);
  CHECK_THROWS_AS(solve_centrum_pd(inst, 1, 1.5), UsageError);
  CHECK_THROWS_AS(find_Bbar(inst, 0, 0.1), UsageError);
}

TEST_CASE("demand consolidation yields a separated weighted core") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    int n = 6 + int(seed % 7);
    int k = 2 + int(seed % 3);
    if (k >= n) continue;
    MetricInstance inst = gen_random_metric(n, k, seed, 60.0);
    int ell = 1 + int(seed % n);
    BbarResult bb = find_Bbar(inst, ell, 0.1);
    if (bb.Bbar == 0.0) continue;
    ReducedInstance red = reduce_to_kmedian(inst, ell, bb.Bbar, bb.lp);

    const double radius = 2.0 * bb.Bbar / ell;
    int demand_total = 0;
    REQUIRE(red.members.size() == red.demands.size());
    for (std::size_t a = 0; a < red.members.size(); ++a) {
      CHECK(red.demands[a] >= 1);
      demand_total += red.demands[a];
      for (std::size_t b = a + 1; b < red.members.size(); ++b)
        CHECK(inst(red.members[a], red.members[b]) > radius);
    }
    CHECK(demand_total == n);
    CHECK(std::is_sorted(red.members.begin(), red.members.end()));

    double opt_prime = 0.0;
    for (int j = 0; j < n; ++j) {
      int host = red.sigma[j];
      CHECK(std::binary_search(red.members.begin(), red.members.end(), host));
      CHECK(inst(host, j) <= radius * (1.0 + 1e-12));
    }
    for (std::size_t a = 0; a < red.members.size(); ++a)
      opt_prime += red.demands[a] * red.lp_cost[red.members[a]];
    CHECK(red.opt_prime == doctest::Approx(opt_prime).epsilon(1e-12));
    CHECK(red.opt_prime <= bb.lp.value + 1e-9 * (1.0 + std::fabs(bb.lp.value)));

    ReducedWitness wit = reduced_lp_witness(inst, red, bb.lp);
    CHECK(wit.max_violation <= 1e-9);
    CHECK(wit.objective <= 2.0 * red.opt_prime + 1e-9 * (1.0 + red.opt_prime));

    if (int(red.members.size()) > k) {
      CHECK(red.sub.n == int(red.members.size()));
      CHECK(red.sub.k == k);
      for (std::size_t a = 0; a < red.members.size(); ++a)
        for (std::size_t b = 0; b < red.members.size(); ++b)
          CHECK(red.sub(int(a), int(b)) == inst(red.members[a], red.members[b]));
    }
  }
}

TEST_CASE("brute k-median subroutine on a hand instance") {
  MetricInstance sub = line_metric({0, 1, 10}, 2);
  Solution sol = kmed_brute_solver(sub, {1, 1, 1});
  CHECK(sol.centers == std::vector<int>{0, 2});
  CHECK(sol.cost == 1.0);
  Solution wsol = kmed_brute_solver(sub, {1, 5, 1});
  CHECK(wsol.centers == std::vector<int>{1, 2});  // heavy middle point
  CHECK(wsol.cost == 1.0);
}

TEST_CASE("primal-dual k-median subroutine stays feasible and consistent") {
  KMedSolver kmed = make_kmed_pd_solver(0.1);
  for (std::uint64_t seed = 2; seed <= 8; ++seed) {
    MetricInstance sub = gen_random_metric(7, 3, seed, 25.0);
    std::vector<int> demands = {1, 2, 1, 3, 1, 1, 2};
    Solution sol = kmed(sub, demands);
    CHECK(int(sol.centers.size()) <= 3);
    double recomputed = 0.0;
    for (int j = 0; j < 7; ++j) recomputed += demands[j] * sub(sol.assign[j], j);
    CHECK(sol.cost == doctest::Approx(recomputed).epsilon(1e-12));
    double opt = brute_force_proxy_sum(sub, ProxySpec::identity(), demands).value;
    CHECK(sol.cost >= opt - 1e-9 * (1.0 + opt));
  }
}

TEST_CASE("reduction route end to end with both subroutines") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    int n = 7 + int(seed % 4);
    MetricInstance inst = gen_random_metric(n, 3, seed, 45.0);
    int ell = 1 + int(seed % n);
    double opt = brute_force_ordered(inst, centrum_weights(n, ell)).opt;
    for (bool use_brute : {true, false}) {
      LpReduceDiag diag;
      KMedSolver kmed = use_brute ? KMedSolver(kmed_brute_solver)
                                  : make_kmed_pd_solver(0.1);
      Solution sol = solve_centrum_lp_reduce(inst, ell, 0.1, kmed, &diag);
      CHECK(int(sol.centers.size()) <= 3);
      double cost = centrum_cost(inst, sol, ell);
      CHECK(sol.cost == doctest::Approx(cost).epsilon(1e-12));
      CHECK(sol.cost >= opt - 1e-9 * (1.0 + opt));
      if (!diag.trivial) {
        CHECK(diag.core_size >= 1);
        CHECK(sol.cost <=
              diag.kmed_cost + 2.0 * diag.Bbar + 1e-9 * (1.0 + diag.kmed_cost));
        if (diag.small_core) CHECK(diag.kmed_cost == 0.0);
      }
    }
  }
}

}  // TEST_SUITE
