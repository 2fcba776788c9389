#include "ordkm/centrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <utility>

#include "ordkm/oracle.hpp"
#include "ordkm/ordered_cost.hpp"

namespace ordkm {

namespace {

// Budgets from the smallest positive distance up to n * max distance, spaced
// by factors of 1+eps; the top entry always admits a zero-cost truncated LP.
std::vector<double> budget_grid(const MetricInstance& inst, double eps) {
  const double top = double(inst.n) * inst.max_distance();
  std::vector<double> grid{inst.min_positive_distance()};
  while (grid.back() < top) grid.push_back(grid.back() * (1.0 + eps));
  return grid;
}

struct BudgetOutcome {
  Solution sol;
  CentrumDiag diag;
};

BudgetOutcome centrum_at_budget(const MetricInstance& inst, int ell, double eps, double B) {
  BudgetOutcome out;
  out.diag.Bbar = B;
  const ProxySpec proxy = ProxySpec::truncated(B, ell);
  const std::vector<int> demands = unit_demands(inst.n);
  LambdaSearchResult ls = lambda_search(inst, proxy, demands, eps * B / inst.n);
  if (ls.exact) {
    out.diag.exact_k = true;
    out.diag.lambda_lo = out.diag.lambda_hi = ls.at_k.lambda;
    out.sol = nearest_assignment(inst, ls.at_k.centers);
  } else {
    out.diag.lambda_lo = ls.below.lambda;
    out.diag.lambda_hi = ls.above.lambda;
    BipointPair bp =
        make_bipoint(inst, proxy, demands, std::move(ls.below), std::move(ls.above));
    out.diag.a = bp.a;
    out.diag.b = bp.b;
    out.diag.C1 = bp.C1;
    out.diag.C2 = bp.C2;
    BipointRound r = round_bipoint(inst, proxy, bp, RoundPolicy{});
    out.diag.t2_shortcut = r.t2_shortcut;
    out.diag.opening_objective = r.opening.objective;
    out.diag.frac_bound = r.frac_bound;
    out.sol = std::move(r.sol);
  }
  out.sol.cost = ordered_cost(centrum_weights(inst.n, ell), assignment_costs(inst, out.sol));
  out.diag.cost = out.sol.cost;
  return out;
}

void check_centrum_args(const MetricInstance& inst, int ell, double eps, const char* who) {
  ValidationReport rep = validate_metric(inst);
  if (!rep.ok) throw UsageError(std::string(who) + ": " + rep.message);
  if (ell < 1 || ell > inst.n) throw UsageError(std::string(who) + ": ell out of range");
  if (eps <= 0.0 || eps > 1.0)
    throw UsageError(std::string(who) + ": eps must lie in (0, 1]");
}

}  // namespace

Solution trivial_zero_solution(const MetricInstance& inst) {
  Solution sol = nearest_assignment(inst, inst.representatives());
  sol.cost = 0.0;
  return sol;
}

BbarResult find_Bbar(const MetricInstance& inst, int ell, double eps) {
  check_centrum_args(inst, ell, eps, "find_Bbar");
  BbarResult out;
  if (inst.distinct_point_count() <= inst.k) {
    out.lp.status = LpStatus::Optimal;
    return out;  // zero-cost instance, budget 0 with an empty LP
  }
  const std::vector<double> grid = budget_grid(inst, eps);
  const std::vector<int> demands = unit_demands(inst.n);
  auto eval = [&](double B) {
    LpSolution s = solve_lp(build_pb_lp(inst, ProxySpec::truncated(B, ell), demands));
    if (s.status != LpStatus::Optimal)
      throw CertificateError("find_Bbar: covering LP did not reach optimality");
    ++out.lp_solves;
    return s;
  };
  auto fits = [](const LpSolution& s, double B) { return s.value <= B + 1e-9 * (1.0 + B); };
  LpSolution s0 = eval(grid.front());
  if (fits(s0, grid.front())) {
    out.Bbar = grid.front();
    out.lp = std::move(s0);
    return out;
  }
  std::size_t lo = 0, hi = grid.size() - 1;
  LpSolution at_hi = eval(grid[hi]);
  if (!fits(at_hi, grid[hi]))
    throw CertificateError("find_Bbar: top budget rejected, grid construction broken");
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    LpSolution at_mid = eval(grid[mid]);
    if (fits(at_mid, grid[mid])) {
      hi = mid;
      at_hi = std::move(at_mid);
    } else {
      lo = mid;
    }
  }
  out.Bbar = grid[hi];
  out.lp = std::move(at_hi);
  return out;
}

Solution solve_centrum_pd(const MetricInstance& inst, int ell, double eps, CentrumDiag* diag) {
  check_centrum_args(inst, ell, eps, "solve_centrum_pd");
  if (inst.distinct_point_count() <= inst.k) {
    if (diag) {
      *diag = CentrumDiag{};
      diag->trivial = true;
    }
    return trivial_zero_solution(inst);
  }
  BbarResult bb = find_Bbar(inst, ell, eps);
  BudgetOutcome oc = centrum_at_budget(inst, ell, eps, bb.Bbar);
  if (diag) *diag = oc.diag;
  return oc.sol;
}

Solution solve_centrum_pd_scan(const MetricInstance& inst, int ell, double eps,
                               CentrumDiag* diag) {
  check_centrum_args(inst, ell, eps, "solve_centrum_pd_scan");
  if (inst.distinct_point_count() <= inst.k) {
    if (diag) {
      *diag = CentrumDiag{};
      diag->trivial = true;
    }
    return trivial_zero_solution(inst);
  }
  std::optional<BudgetOutcome> best;
  for (double B : budget_grid(inst, eps)) {
    BudgetOutcome oc = centrum_at_budget(inst, ell, eps, B);
    if (!best || oc.sol.cost < best->sol.cost) best = std::move(oc);
  }
  if (diag) *diag = best->diag;
  return best->sol;
}

ReducedInstance reduce_to_kmedian(const MetricInstance& inst, int ell, double Bbar,
                                  const LpSolution& lp) {
  const int n = inst.n;
  const std::size_t nx = std::size_t(n) * n;
  if (lp.status != LpStatus::Optimal || lp.x.size() != nx + std::size_t(n))
    throw UsageError("reduce_to_kmedian: LP solution does not match the instance");
  ReducedInstance red;
  red.Bbar = Bbar;
  red.ell = ell;
  const ProxySpec proxy = ProxySpec::truncated(Bbar, ell);
  red.lp_cost.assign(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += proxy(inst(i, j)) * lp.x[std::size_t(i) * n + j];
    red.lp_cost[j] = acc;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return red.lp_cost[a] < red.lp_cost[b]; });
  const double radius = 2.0 * Bbar / ell;
  std::vector<int> demand_at(n, 0);
  red.sigma.assign(n, -1);
  for (int idx : order) {
    int host = -1;
    for (int j = 0; j < n && host < 0; ++j)
      if (demand_at[j] > 0 && inst(j, idx) <= radius) host = j;
    if (host < 0) host = idx;
    ++demand_at[host];
    red.sigma[idx] = host;
  }
  for (int j = 0; j < n; ++j)
    if (demand_at[j] > 0) {
      red.members.push_back(j);
      red.demands.push_back(demand_at[j]);
      red.opt_prime += demand_at[j] * red.lp_cost[j];
    }
  const int m = int(red.members.size());
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      if (!(inst(red.members[a], red.members[b]) > radius))
        throw CertificateError("reduce_to_kmedian: members not pairwise separated");
  if (red.opt_prime > lp.value + 1e-9 * (1.0 + std::fabs(lp.value)))
    throw CertificateError("reduce_to_kmedian: consolidated mass exceeded the LP optimum");
  if (m > inst.k) {
    red.sub.n = m;
    red.sub.k = inst.k;
    red.sub.dist.assign(std::size_t(m) * m, 0.0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) red.sub.at(a, b) = inst(red.members[a], red.members[b]);
  }
  return red;
}

ReducedWitness reduced_lp_witness(const MetricInstance& inst, const ReducedInstance& red,
                                  const LpSolution& lp) {
  const int n = inst.n;
  const int m = int(red.members.size());
  const std::size_t nx = std::size_t(n) * n;
  std::vector<int> group(n, 0);
  for (int i = 0; i < n; ++i)
    for (int a = 1; a < m; ++a)
      if (inst(i, red.members[a]) < inst(i, red.members[group[i]])) group[i] = a;
  std::vector<double> Y(m, 0.0);
  for (int i = 0; i < n; ++i) Y[group[i]] += lp.x[nx + i];
  std::vector<double> X(std::size_t(m) * m, 0.0);
  for (int b = 0; b < m; ++b) {
    const int jb = red.members[b];
    for (int i = 0; i < n; ++i)
      X[std::size_t(group[i]) * m + b] += lp.x[std::size_t(i) * n + jb];
    X[std::size_t(b) * m + b] = Y[b];
  }
  ReducedWitness w;
  double opened = 0.0;
  for (int a = 0; a < m; ++a) {
    opened += Y[a];
    w.max_violation = std::max(w.max_violation, -Y[a]);
  }
  w.max_violation = std::max(w.max_violation, opened - inst.k);
  for (int b = 0; b < m; ++b) {
    double cover = 0.0;
    for (int a = 0; a < m; ++a) {
      const double v = X[std::size_t(a) * m + b];
      cover += v;
      w.max_violation = std::max(w.max_violation, -v);
      w.max_violation = std::max(w.max_violation, v - Y[a]);
      w.objective += red.demands[b] * inst(red.members[a], red.members[b]) * v;
    }
    w.max_violation = std::max(w.max_violation, 1.0 - cover);
  }
  return w;
}

Solution kmed_brute_solver(const MetricInstance& sub, const std::vector<int>& demands) {
  ProxySumResult r = brute_force_proxy_sum(sub, ProxySpec::identity(), demands);
  r.sol.cost = r.value;
  return r.sol;
}

KMedSolver make_kmed_pd_solver(double eps) {
  if (eps <= 0.0) throw UsageError("make_kmed_pd_solver: eps must be positive");
  return [eps](const MetricInstance& sub, const std::vector<int>& demands) {
    const ProxySpec proxy = ProxySpec::identity();
    Solution sol;
    if (sub.distinct_point_count() <= sub.k) {
      sol = trivial_zero_solution(sub);
    } else {
      LambdaSearchResult ls =
          lambda_search(sub, proxy, demands, eps * sub.max_distance() / sub.n);
      if (ls.exact) {
        sol = nearest_assignment(sub, ls.at_k.centers);
      } else {
        BipointPair bp =
            make_bipoint(sub, proxy, demands, std::move(ls.below), std::move(ls.above));
        sol = round_bipoint(sub, proxy, bp, RoundPolicy{}).sol;
      }
    }
    const std::vector<double> costs = assignment_costs(sub, sol);
    double total = 0.0;
    for (int j = 0; j < sub.n; ++j) total += demands[j] * costs[j];
    sol.cost = total;
    return sol;
  };
}

Solution solve_centrum_lp_reduce(const MetricInstance& inst, int ell, double eps,
                                 const KMedSolver& kmed, LpReduceDiag* diag) {
  check_centrum_args(inst, ell, eps, "solve_centrum_lp_reduce");
  if (!kmed) throw UsageError("solve_centrum_lp_reduce: missing k-median subroutine");
  LpReduceDiag d;
  if (inst.distinct_point_count() <= inst.k) {
    d.trivial = true;
    if (diag) *diag = d;
    return trivial_zero_solution(inst);
  }
  BbarResult bb = find_Bbar(inst, ell, eps);
  d.Bbar = bb.Bbar;
  d.lp_value = bb.lp.value;
  ReducedInstance red = reduce_to_kmedian(inst, ell, bb.Bbar, bb.lp);
  d.opt_prime = red.opt_prime;
  d.core_size = int(red.members.size());
  std::vector<int> centers;
  if (d.core_size <= inst.k) {
    d.small_core = true;
    centers = red.members;
  } else {
    Solution subsol = kmed(red.sub, red.demands);
    d.kmed_cost = subsol.cost;
    centers.reserve(subsol.centers.size());
    for (int c : subsol.centers) centers.push_back(red.members[c]);
    std::sort(centers.begin(), centers.end());
  }
  Solution sol = nearest_assignment(inst, centers);
  sol.cost = ordered_cost(centrum_weights(inst.n, ell), assignment_costs(inst, sol));
  const double bound = d.kmed_cost + 2.0 * bb.Bbar;
  if (sol.cost > bound + 1e-9 * (1.0 + std::fabs(bound)))
    throw CertificateError("solve_centrum_lp_reduce: final cost exceeded the transfer bound");
  d.cost = sol.cost;
  if (diag) *diag = d;
  return sol;
}

}  // namespace ordkm
