#include "ordkm/primal_dual.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ordkm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::atomic<std::uint64_t> g_runs{0};

// Kinetic simulation of the ascent. All client duals grow at unit rate; a
// facility is tight once the demand-weighted bids on it reach lambda; a
// client freezes the first moment a tight facility is within its price.
class AscentSim {
 public:
  AscentSim(const MetricInstance& inst, const ProxySpec& proxy,
            const std::vector<int>& demands, double lambda)
      : d_(demands), lambda_(lambda), n_(inst.n) {
    p_.resize(std::size_t(n_) * n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) p_[idx(i, j)] = proxy(inst(i, j));
    order_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      order_[i].resize(n_);
      std::iota(order_[i].begin(), order_[i].end(), 0);
      std::sort(order_[i].begin(), order_[i].end(), [&](int a, int b) {
        double pa = p_[idx(i, a)], pb = p_[idx(i, b)];
        return pa != pb ? pa < pb : a < b;
      });
    }
  }

  void run(PDResult& out) {
    frozen_.assign(n_, 0);
    alpha_.assign(n_, 0.0);
    open_.assign(n_, 0);
    open_time_.assign(n_, kInf);
    frozen_bids_.assign(n_, 0.0);
    minp_open_.assign(n_, kInf);
    int active = n_;
    double now = 0.0;
    std::vector<double> times(n_);
    while (active > 0) {
      double tf = kInf;
      for (int i = 0; i < n_; ++i) {
        times[i] = open_[i] ? kInf : tight_time(i, now);
        tf = std::min(tf, times[i]);
      }
      double tc = kInf;
      for (int j = 0; j < n_; ++j)
        if (!frozen_[j]) tc = std::min(tc, minp_open_[j]);
      double t = std::min(tf, tc);
      if (!std::isfinite(t))
        throw CertificateError("dual_ascent: stalled with active clients");
      for (int i = 0; i < n_; ++i) {
        if (open_[i] || times[i] != t) continue;
        open_[i] = 1;
        open_time_[i] = t;
        out.tight_order.push_back(i);
        for (int j = 0; j < n_; ++j)
          minp_open_[j] = std::min(minp_open_[j], p_[idx(i, j)]);
      }
      for (int j = 0; j < n_; ++j) {
        if (frozen_[j] || minp_open_[j] > t) continue;
        frozen_[j] = 1;
        alpha_[j] = t;
        --active;
        for (int i = 0; i < n_; ++i)
          if (!open_[i]) frozen_bids_[i] += d_[j] * std::max(0.0, t - p_[idx(i, j)]);
      }
      now = t;
    }
    out.alpha = alpha_;
    out.open_time = open_time_;
  }

  double price(int i, int j) const { return p_[idx(i, j)]; }

 private:
  std::size_t idx(int i, int j) const { return std::size_t(i) * n_ + j; }

  // Earliest t with frozen bids + sum over active j of d_j*max(0, t - p_ij)
  // equal to lambda, or +inf if the bids can no longer get there.
  double tight_time(int i, double now) const {
    double val = frozen_bids_[i];
    if (val >= lambda_) return now;
    double slope = 0.0, t0 = 0.0;
    for (int j : order_[i]) {
      if (frozen_[j]) continue;
      double q = p_[idx(i, j)];
      if (slope > 0.0 && val + slope * (q - t0) >= lambda_)
        return std::max(now, t0 + (lambda_ - val) / slope);
      val += slope * (q - t0);
      t0 = q;
      slope += d_[j];
    }
    if (slope > 0.0) return std::max(now, t0 + (lambda_ - val) / slope);
    return kInf;
  }

  const std::vector<int>& d_;
  double lambda_;
  int n_;
  std::vector<double> p_;
  std::vector<std::vector<int>> order_;
  std::vector<char> frozen_, open_;
  std::vector<double> alpha_, open_time_, frozen_bids_, minp_open_;
};

void validate_run(const MetricInstance& inst, const ProxySpec& proxy,
                  const std::vector<int>& demands, const PDResult& r) {
  const int n = inst.n;
  double amax = 0.0;
  for (double a : r.alpha) amax = std::max(amax, a);
  const double tol = 1e-9 * (1.0 + std::max(r.lambda, amax));
  const double btol = 1e-9 * (1.0 + r.lambda + r.alpha_demand_sum);

  for (int i = 0; i < n; ++i) {
    double bids = 0.0;
    for (int j = 0; j < n; ++j) {
      double pij = proxy(inst(i, j));
      double beta = pd_beta(r, pij, i, j);
      if (r.alpha[j] > pij + beta + tol) {
        std::ostringstream os;
        os << "dual_ascent: infeasible dual at facility " << i << " client " << j;
        throw CertificateError(os.str());
      }
      bids += demands[j] * beta;
    }
    bool tight = std::isfinite(r.open_time[i]);
    if (tight ? std::fabs(bids - r.lambda) > btol : bids > r.lambda + btol) {
      std::ostringstream os;
      os << "dual_ascent: bid budget violated at facility " << i << " (bids " << bids
         << " lambda " << r.lambda << ")";
      throw CertificateError(os.str());
    }
  }

  std::vector<int> pos_centers(n, 0);
  for (int j = 0; j < n; ++j) {
    for (int i : r.centers)
      if (pd_beta(r, proxy(inst(i, j)), i, j) > 0.0) ++pos_centers[j];
    if (pos_centers[j] > 1)
      throw CertificateError("dual_ascent: client bids on two pruned centers");
    if ((pos_centers[j] == 1) != bool(r.in_S[j]))
      throw CertificateError("dual_ascent: S membership mismatch");
  }
  std::vector<char> in_T(n, 0);
  for (int i : r.centers) in_T[i] = 1;
  for (int i : r.tight_order) {
    if (in_T[i]) continue;
    bool conflict = false;
    for (int j = 0; j < n && !conflict; ++j) {
      if (pd_beta(r, proxy(inst(i, j)), i, j) <= 0.0) continue;
      for (int c : r.centers)
        if (pd_beta(r, proxy(inst(c, j)), c, j) > 0.0) {
          conflict = true;
          break;
        }
    }
    if (!conflict)
      throw CertificateError("dual_ascent: pruning dropped a conflict-free facility");
  }

  const double dtol = 1e-9 * (1.0 + inst.max_distance());
  for (int j = 0; j < n; ++j) {
    if (!r.in_S[j]) continue;
    if (inst(r.witness[j], j) > inst(r.assign[j], j) + dtol)
      throw CertificateError("dual_ascent: witness center is not nearest");
  }

  CertificateSides cs = certificate_check(inst, proxy, demands, r);
  if (cs.lhs > cs.rhs + 1e-9 * (1.0 + std::fabs(cs.rhs))) {
    std::ostringstream os;
    os << "dual_ascent: certificate failed (lhs " << cs.lhs << " rhs " << cs.rhs << ")";
    throw CertificateError(os.str());
  }
}

}  // namespace

double pd_beta(const PDResult& r, double p_ij, int i, int j) {
  return std::max(0.0, std::min(r.alpha[j], r.open_time[i]) - p_ij);
}

PDResult dual_ascent(const MetricInstance& inst, const ProxySpec& proxy,
                     const std::vector<int>& demands, double lambda) {
  const int n = inst.n;
  if (int(demands.size()) != n) throw UsageError("dual_ascent: demand length mismatch");
  long long dsum = 0;
  for (int v : demands) {
    if (v < 0) throw UsageError("dual_ascent: negative demand");
    dsum += v;
  }
  if (lambda > 0 && dsum == 0)
    throw UsageError("dual_ascent: positive price needs positive demand");
  if (!(lambda >= 0) || !std::isfinite(lambda))
    throw UsageError("dual_ascent: price must be finite and nonnegative");

  PDResult r;
  r.lambda = lambda;
  AscentSim sim(inst, proxy, demands, lambda);
  sim.run(r);

  // Conflict pruning in opening order: keep a tight facility unless some
  // client already bids positively on a kept one and on it.
  const int nn = n;
  std::vector<char> has_bid(nn, 0);
  r.witness.assign(nn, -1);
  r.in_S.assign(nn, 0);
  for (int i : r.tight_order) {
    bool conflict = false;
    for (int j = 0; j < nn && !conflict; ++j)
      conflict = has_bid[j] && pd_beta(r, sim.price(i, j), i, j) > 0.0;
    if (conflict) continue;
    r.centers.push_back(i);
    for (int j = 0; j < nn; ++j)
      if (pd_beta(r, sim.price(i, j), i, j) > 0.0) {
        has_bid[j] = 1;
        r.witness[j] = i;
        r.in_S[j] = 1;
      }
  }
  std::sort(r.centers.begin(), r.centers.end());
  r.assign = nearest_assignment(inst, r.centers).assign;
  r.alpha_demand_sum = 0.0;
  for (int j = 0; j < nn; ++j) r.alpha_demand_sum += demands[j] * r.alpha[j];

  validate_run(inst, proxy, demands, r);
  g_runs.fetch_add(1, std::memory_order_relaxed);
  return r;
}

CertificateSides certificate_check(const MetricInstance& inst, const ProxySpec& proxy,
                                   const std::vector<int>& demands, const PDResult& r) {
  ProxySpec proxy3 = proxy.scaled3();
  CertificateSides cs;
  cs.lhs = 3.0 * r.lambda * double(r.centers.size());
  for (int j = 0; j < inst.n; ++j) {
    if (r.in_S[j]) {
      double c = inst(r.witness[j], j);
      cs.lhs += demands[j] * (proxy.kind == ProxySpec::Kind::Surrogate ? proxy3(c) : proxy(c));
    } else {
      cs.lhs += demands[j] * proxy3(inst(r.assign[j], j));
    }
  }
  cs.rhs = 3.0 * r.alpha_demand_sum;
  return cs;
}

std::uint64_t dual_ascent_runs() { return g_runs.load(std::memory_order_relaxed); }

LambdaSearchResult lambda_search(const MetricInstance& inst, const ProxySpec& proxy,
                                 const std::vector<int>& demands, double tol) {
  if (!(tol > 0) || !std::isfinite(tol))
    throw UsageError("lambda_search: tolerance must be positive");
  const int k = inst.k;
  LambdaSearchResult out;

  PDResult lo = dual_ascent(inst, proxy, demands, 0.0);
  if (lo.opened() == k) {
    out.exact = true;
    out.at_k = std::move(lo);
    return out;
  }
  if (lo.opened() < k)
    throw CertificateError("lambda_search: price 0 opened fewer than k centers");

  double hi = 1.0;
  PDResult rhi;
  for (;;) {
    rhi = dual_ascent(inst, proxy, demands, hi);
    if (rhi.opened() == k) {
      out.exact = true;
      out.at_k = std::move(rhi);
      return out;
    }
    if (rhi.opened() < k) break;
    lo = std::move(rhi);
    hi *= 2.0;
    if (hi > 1.8e19)
      throw ResourceCapError("lambda_search: no price below 2^64 opens at most k centers");
  }

  while (rhi.lambda - lo.lambda >= tol) {
    double mid = 0.5 * (lo.lambda + rhi.lambda);
    if (!(mid > lo.lambda && mid < rhi.lambda)) break;  // doubles exhausted
    PDResult r = dual_ascent(inst, proxy, demands, mid);
    if (r.opened() == k) {
      out.exact = true;
      out.at_k = std::move(r);
      return out;
    }
    (r.opened() > k ? lo : rhi) = std::move(r);
  }
  out.below = std::move(lo);
  out.above = std::move(rhi);
  return out;
}

}  // namespace ordkm
