#include "ordkm/bipoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ordkm {

namespace {

double client_key(const BipointPair& bp, PairKey key, int j) {
  return key == PairKey::SumOfBoth ? bp.d1[j] + bp.d2[j]
                                   : std::max(bp.d1[j], bp.d2[j]);
}

// theta coefficient and per-facility z savings of the opening program.
struct OpeningTerms {
  double theta_coef = 0.0;
  double constant = 0.0;
  std::vector<int> candidates;     // unmatched T1 facilities, ascending
  std::vector<double> delta;       // aligned with candidates
};

OpeningTerms opening_terms(const BipointPair& bp, const Clustering& cl, FallbackRule rule) {
  OpeningTerms t;
  const int n = int(bp.d1.size());
  std::vector<double> alt = fallback_costs(bp, cl, rule);
  for (int i : bp.r1.centers)
    if (!cl.matched_t1[i]) t.candidates.push_back(i);
  t.delta.assign(t.candidates.size(), 0.0);
  std::vector<int> slot(n, -1);
  for (std::size_t s = 0; s < t.candidates.size(); ++s) slot[t.candidates[s]] = int(s);
  for (int j = 0; j < n; ++j) {
    double dj = bp.demands[j];
    if (cl.in_S[j]) {
      t.theta_coef += dj * (bp.d1[j] - bp.d2[j]);
      t.constant += dj * bp.d2[j];
    } else {
      int s = slot[bp.r1.assign[j]];
      if (s < 0) throw CertificateError("bipoint: client outside S has a matched T1 center");
      t.delta[s] += dj * (bp.d1[j] - alt[j]);
      t.constant += dj * alt[j];
    }
  }
  return t;
}

}  // namespace

BipointPair make_bipoint(const MetricInstance& inst, const ProxySpec& proxy,
                         const std::vector<int>& demands, PDResult below, PDResult above) {
  BipointPair bp;
  bp.k = inst.k;
  bp.k1 = below.opened();
  bp.k2 = above.opened();
  if (!(bp.k1 > bp.k && bp.k > bp.k2))
    throw UsageError("make_bipoint: runs do not bracket k");
  bp.r1 = std::move(below);
  bp.r2 = std::move(above);
  bp.a = double(bp.k - bp.k2) / double(bp.k1 - bp.k2);
  bp.b = 1.0 - bp.a;
  bp.demands = demands;
  ProxySpec proxy3 = proxy.scaled3();
  const int n = inst.n;
  bp.d1.resize(n);
  bp.d2.resize(n);
  for (int j = 0; j < n; ++j) {
    bp.d1[j] = proxy3(inst(bp.r1.assign[j], j));
    bp.d2[j] = proxy3(inst(bp.r2.assign[j], j));
    bp.C1 += demands[j] * bp.d1[j];
    bp.C2 += demands[j] * bp.d2[j];
  }
  return bp;
}

Clustering cluster_bipoint(const BipointPair& bp, PairKey key) {
  const int n = int(bp.d1.size());
  Clustering cl;
  cl.sigma.assign(n, -1);
  cl.in_S.assign(n, 0);
  cl.matched_t1.assign(n, 0);
  std::vector<char> matched_t2(n, 0), alive(n, 1);
  int left = n;
  while (left > 0) {
    int best = -1;
    for (int j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      if (best < 0 || client_key(bp, key, j) < client_key(bp, key, best)) best = j;
    }
    cl.A.push_back(best);
    int f1 = bp.r1.assign[best], f2 = bp.r2.assign[best];
    cl.pairs.emplace_back(f1, f2);
    cl.matched_t1[f1] = 1;
    matched_t2[f2] = 1;
    for (int j = 0; j < n; ++j) {
      if (!alive[j]) continue;
      if (bp.r1.assign[j] == f1 || bp.r2.assign[j] == f2) {
        alive[j] = 0;
        cl.sigma[j] = best;
        --left;
      }
    }
  }
  cl.witnessed = int(cl.pairs.size());
  for (int i2 : bp.r2.centers) {
    if (matched_t2[i2]) continue;
    int partner = -1;
    for (int i1 : bp.r1.centers)
      if (!cl.matched_t1[i1]) {
        partner = i1;
        break;
      }
    if (partner < 0) throw CertificateError("bipoint: ran out of T1 partners");
    cl.pairs.emplace_back(partner, i2);
    cl.matched_t1[partner] = 1;
    matched_t2[i2] = 1;
  }
  if (int(cl.pairs.size()) != bp.k2)
    throw CertificateError("bipoint: matching does not cover T2");
  for (int j = 0; j < n; ++j) cl.in_S[j] = cl.matched_t1[bp.r1.assign[j]];
  return cl;
}

std::vector<double> fallback_costs(const BipointPair& bp, const Clustering& cl,
                                   FallbackRule rule) {
  const int n = int(bp.d1.size());
  std::vector<double> alt(n, 0.0);
  for (int j = 0; j < n; ++j) {
    if (cl.in_S[j]) continue;
    if (rule == FallbackRule::TripleMax) {
      alt[j] = 3.0 * std::max(bp.d1[j], bp.d2[j]);
    } else {
      int s = cl.sigma[j];
      alt[j] = bp.d2[j] + bp.d1[s] + bp.d2[s];
    }
  }
  return alt;
}

OpeningChoice solve_opening(const BipointPair& bp, const Clustering& cl, FallbackRule rule) {
  OpeningTerms t = opening_terms(bp, cl, rule);
  OpeningChoice oc;
  oc.theta = t.theta_coef <= 0.0 ? 1 : 0;
  oc.objective = t.constant + (oc.theta ? t.theta_coef : 0.0);
  std::vector<int> order(t.candidates.size());
  for (std::size_t s = 0; s < order.size(); ++s) order[s] = int(s);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return t.delta[x] != t.delta[y] ? t.delta[x] < t.delta[y]
                                    : t.candidates[x] < t.candidates[y];
  });
  int budget = bp.k - bp.k2;
  for (int s : order) {
    if (int(oc.z.size()) >= budget || t.delta[s] >= 0.0) break;
    oc.z.push_back(t.candidates[s]);
    oc.objective += t.delta[s];
  }
  std::sort(oc.z.begin(), oc.z.end());
  return oc;
}

DenseLP build_opening_lp(const BipointPair& bp, const Clustering& cl, FallbackRule rule,
                         double* constant) {
  OpeningTerms t = opening_terms(bp, cl, rule);
  if (constant) *constant = t.constant;
  const int u = int(t.candidates.size());
  DenseLP lp;
  lp.objective.assign(1 + u, 0.0);
  lp.objective[0] = t.theta_coef;
  for (int s = 0; s < u; ++s) lp.objective[1 + s] = t.delta[s];
  lp.bounds.assign(1 + u, {0.0, 1.0});
  std::vector<double> row(1 + u, 0.0);
  for (int s = 0; s < u; ++s) row[1 + s] = 1.0;
  lp.rows.push_back(std::move(row));
  lp.senses.push_back(RowSense::LE);
  lp.rhs.push_back(double(bp.k - bp.k2));
  return lp;
}

BipointRound round_bipoint(const MetricInstance& inst, const ProxySpec& proxy,
                           const BipointPair& bp, const RoundPolicy& policy) {
  if (policy.fallback == FallbackRule::TripleMax && policy.key != PairKey::MaxOfBoth)
    throw UsageError("round_bipoint: triple-max fallback needs the max pairing key");
  if (policy.fallback == FallbackRule::SiblingPath && policy.key != PairKey::SumOfBoth)
    throw UsageError("round_bipoint: sibling-path fallback needs the sum pairing key");
  if (policy.mode == RoundingMode::Improved && policy.fallback != FallbackRule::SiblingPath)
    throw UsageError("round_bipoint: improved opening needs the sibling-path fallback");

  const int n = inst.n;
  ProxySpec proxy3 = proxy.scaled3();
  ProxySpec proxy9 = proxy3.scaled3();
  const bool surrogate = proxy.kind == ProxySpec::Kind::Surrogate;
  const double unit =
      proxy.kind == ProxySpec::Kind::Truncated ? 3.0 * proxy.trunc.B / proxy.trunc.ell : 0.0;
  const double dtol = 1e-9 * (1.0 + inst.max_distance());

  BipointRound out;
  if (bp.b >= policy.t2_shortcut_b) {
    out.t2_shortcut = true;
    out.sol = nearest_assignment(inst, bp.r2.centers);
    for (int j = 0; j < n; ++j) {
      double cj = inst(out.sol.assign[j], j);
      double lhs = surrogate ? proxy9(cj) : proxy3(cj);
      if (lhs > bp.d2[j] + dtol)
        throw CertificateError("round_bipoint: T2 shortcut exceeded its per-client bound");
    }
    return out;
  }

  out.clustering = cluster_bipoint(bp, policy.key);
  const Clustering& cl = out.clustering;
  out.opening = solve_opening(bp, cl, policy.fallback);
  const OpeningChoice& oc = out.opening;

  {
    OpeningTerms t = opening_terms(bp, cl, policy.fallback);
    out.frac_bound = t.constant + bp.a * t.theta_coef;
    for (double d : t.delta) out.frac_bound += bp.a * d;
    if (oc.objective > out.frac_bound + 1e-9 * (1.0 + std::fabs(out.frac_bound)))
      throw CertificateError("round_bipoint: opening choice above its fractional bound");
  }

  std::vector<int> centers = oc.z;
  if (policy.mode == RoundingMode::Basic) {
    if (oc.theta)
      for (const auto& pr : cl.pairs) centers.push_back(pr.first);
    else
      centers.insert(centers.end(), bp.r2.centers.begin(), bp.r2.centers.end());
  } else {
    for (int p = cl.witnessed; p < int(cl.pairs.size()); ++p)
      centers.push_back(oc.theta ? cl.pairs[p].first : cl.pairs[p].second);
    for (int p = 0; p < cl.witnessed; ++p) {
      int j = cl.A[p];
      double v = oc.theta ? bp.d1[j] : bp.d2[j];
      if (v == 0.0)
        centers.push_back(j);
      else
        centers.push_back(oc.theta ? bp.r1.assign[j] : bp.r2.assign[j]);
    }
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  if (int(centers.size()) > bp.k)
    throw CertificateError("round_bipoint: opened more than k centers");
  out.sol = nearest_assignment(inst, centers);

  std::vector<char> z_open(n, 0);
  for (int i : oc.z) z_open[i] = 1;
  std::vector<double> alt = fallback_costs(bp, cl, policy.fallback);
  const bool improved = policy.mode == RoundingMode::Improved;
  for (int j = 0; j < n; ++j) {
    double cj = inst(out.sol.assign[j], j);
    double base, slack_units;
    if (cl.in_S[j]) {
      base = oc.theta ? bp.d1[j] : bp.d2[j];
      slack_units = improved ? 2.0 : 1.0;
    } else if (z_open[bp.r1.assign[j]]) {
      base = bp.d1[j];
      slack_units = 1.0;
    } else {
      base = alt[j];
      slack_units = improved ? 2.0 : 3.0;
    }
    bool ok = surrogate ? proxy9(cj) <= base + dtol
                        : cj <= base + slack_units * unit + dtol;
    if (!ok) {
      std::ostringstream os;
      os << "round_bipoint: client " << j << " exceeded its per-client bound";
      throw CertificateError(os.str());
    }
  }
  return out;
}

}  // namespace ordkm
