#include "ordkm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ordkm {

namespace {

constexpr double kPivTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense tableau simplex, two phases, Bland's entering/leaving rule throughout.
// Columns: [0,nv) structural (shifted to lower bound 0), [nv,nv+m) slack or
// surplus, [nv+m,nv+2m) artificials. Artificials start basic on GE/EQ rows and
// are never allowed to enter again, so after phase 1 their tableau block holds
// the basis inverse; that block is used to refresh the reduced costs and the
// rhs column from the original data before optimality is declared.
class Simplex {
 public:
  Simplex(const DenseLP& lp, int iter_cap) : in_(lp), iter_cap_(iter_cap) {}

  LpSolution run() {
    validate();
    setup();
    LpSolution out;
    LpStatus st = phase1();
    if (st != LpStatus::Optimal) {
      out.status = st;
      return out;
    }
    st = phase2();
    out.status = st;
    if (st != LpStatus::Optimal) return out;
    extract(out);
    self_check(out);
    return out;
  }

 private:
  const DenseLP& in_;
  int iter_cap_ = 0;
  int nv_ = 0;       // structural vars
  int m_ = 0;        // internal rows (input rows + finite upper bounds)
  int m0_ = 0;       // input rows
  int cols_ = 0;
  double offset_ = 0;  // objective shift from lower bounds
  std::vector<double> lo_;
  std::vector<std::vector<double>> tab_, a0_;
  std::vector<double> b_, b0_, z_, cost_;
  std::vector<int> basis_;
  std::vector<char> flipped_;
  std::vector<RowSense> sense_;
  int iters_ = 0;

  void validate() const {
    const std::size_t n = in_.objective.size();
    if (in_.bounds.size() != n || in_.rows.size() != in_.rhs.size() ||
        in_.rows.size() != in_.senses.size())
      throw UsageError("solve_lp: inconsistent problem dimensions");
    for (const auto& r : in_.rows)
      if (r.size() != n) throw UsageError("solve_lp: row length mismatch");
    for (auto [lo, hi] : in_.bounds) {
      if (!std::isfinite(lo)) throw UsageError("solve_lp: lower bounds must be finite");
      if (hi < lo) throw UsageError("solve_lp: empty variable bound");
    }
  }

  void setup() {
    nv_ = int(in_.objective.size());
    m0_ = int(in_.rows.size());
    lo_.resize(nv_);
    for (int j = 0; j < nv_; ++j) lo_[j] = in_.bounds[j].first;

    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<RowSense> senses;
    rows.reserve(m0_ + nv_);
    for (int r = 0; r < m0_; ++r) {
      rows.push_back(in_.rows[r]);
      double b = in_.rhs[r];
      for (int j = 0; j < nv_; ++j) b -= in_.rows[r][j] * lo_[j];
      rhs.push_back(b);
      senses.push_back(in_.senses[r]);
    }
    for (int j = 0; j < nv_; ++j) {
      double hi = in_.bounds[j].second;
      if (std::isfinite(hi)) {
        std::vector<double> row(nv_, 0.0);
        row[j] = 1.0;
        rows.push_back(std::move(row));
        rhs.push_back(hi - lo_[j]);
        senses.push_back(RowSense::LE);
      }
    }
    m_ = int(rows.size());
    flipped_.assign(m_, 0);
    for (int r = 0; r < m_; ++r)
      if (rhs[r] < 0) {
        flipped_[r] = 1;
        rhs[r] = -rhs[r];
        for (double& v : rows[r]) v = -v;
        if (senses[r] == RowSense::LE) senses[r] = RowSense::GE;
        else if (senses[r] == RowSense::GE) senses[r] = RowSense::LE;
      }
    sense_ = senses;

    cols_ = nv_ + 2 * m_;
    tab_.assign(m_, std::vector<double>(cols_, 0.0));
    b_ = rhs;
    basis_.assign(m_, -1);
    for (int r = 0; r < m_; ++r) {
      for (int j = 0; j < nv_; ++j) tab_[r][j] = rows[r][j];
      if (senses[r] == RowSense::LE) {
        tab_[r][nv_ + r] = 1.0;
        basis_[r] = nv_ + r;
      } else if (senses[r] == RowSense::GE) {
        tab_[r][nv_ + r] = -1.0;
        basis_[r] = nv_ + m_ + r;
      } else {
        basis_[r] = nv_ + m_ + r;
      }
      tab_[r][nv_ + m_ + r] = 1.0;
    }
    a0_ = tab_;
    b0_ = b_;
    offset_ = 0;
    for (int j = 0; j < nv_; ++j) offset_ += in_.objective[j] * lo_[j];
  }

  bool artificial(int col) const { return col >= nv_ + m_; }

  void rebuild_z(const std::vector<double>& cost) {
    z_.assign(cols_, 0.0);
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r)
      for (int s = 0; s < m_; ++s) y[s] += cost[basis_[r]] * tab_[r][nv_ + m_ + s];
    for (int j = 0; j < cols_; ++j) {
      double v = cost[j];
      for (int s = 0; s < m_; ++s) v -= y[s] * a0_[s][j];
      z_[j] = v;
    }
    for (int r = 0; r < m_; ++r) {
      double v = 0;
      for (int s = 0; s < m_; ++s) v += tab_[r][nv_ + m_ + s] * b0_[s];
      b_[r] = (v < 0 && v > -1e-9) ? 0.0 : v;
    }
  }

  void pivot(int row, int col) {
    double p = tab_[row][col];
    for (double& v : tab_[row]) v /= p;
    b_[row] /= p;
    for (int r = 0; r < m_; ++r) {
      if (r == row) continue;
      double f = tab_[r][col];
      if (f == 0) continue;
      for (int j = 0; j < cols_; ++j) tab_[r][j] -= f * tab_[row][j];
      tab_[r][col] = 0;
      b_[r] -= f * b_[row];
      if (b_[r] < 0 && b_[r] > -1e-11) b_[r] = 0;
    }
    double f = z_[col];
    if (f != 0)
      for (int j = 0; j < cols_; ++j) z_[j] -= f * tab_[row][j];
    z_[col] = 0;
    basis_[row] = col;
  }

  // One Bland-rule simplex loop over the given cost vector. Refreshes the
  // reduced costs from the original data before accepting optimality.
  LpStatus iterate(const std::vector<double>& cost) {
    rebuild_z(cost);
    int refreshes = 0;
    for (;;) {
      int e = -1;
      for (int j = 0; j < cols_ && e < 0; ++j)
        if (!artificial(j) && z_[j] < -kPivTol) e = j;
      if (e < 0) {
        if (refreshes++ >= 3) return LpStatus::Optimal;
        rebuild_z(cost);
        bool clean = true;
        for (int j = 0; j < cols_ && clean; ++j)
          if (!artificial(j) && z_[j] < -kPivTol) clean = false;
        if (clean) return LpStatus::Optimal;
        continue;
      }
      int row = -1;
      double best = kInf;
      for (int r = 0; r < m_; ++r) {
        if (tab_[r][e] <= kPivTol) continue;
        double ratio = b_[r] / tab_[r][e];
        if (ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && (row < 0 || basis_[r] < basis_[row]))) {
          best = ratio;
          row = r;
        }
      }
      if (row < 0) return LpStatus::Unbounded;
      pivot(row, e);
      if (++iters_ > iter_cap_) return LpStatus::IterLimit;
    }
  }

  LpStatus phase1() {
    bool need = false;
    for (int r = 0; r < m_; ++r) need = need || artificial(basis_[r]);
    if (!need) return LpStatus::Optimal;
    std::vector<double> cost(cols_, 0.0);
    for (int j = nv_ + m_; j < cols_; ++j) cost[j] = 1.0;
    LpStatus st = iterate(cost);
    if (st == LpStatus::Unbounded)
      throw std::runtime_error("solve_lp: phase 1 unbounded");
    if (st != LpStatus::Optimal) return st;
    double v = 0;
    for (int r = 0; r < m_; ++r) v += cost[basis_[r]] * b_[r];
    if (v > 1e-7) return LpStatus::Infeasible;
    // Drive remaining artificials out of the basis; rows where no pivot exists
    // are redundant and keep a zero-valued artificial basic harmlessly.
    for (int r = 0; r < m_; ++r) {
      if (!artificial(basis_[r])) continue;
      for (int j = 0; j < nv_ + m_; ++j)
        if (std::fabs(tab_[r][j]) > kPivTol) {
          z_.assign(cols_, 0.0);
          pivot(r, j);
          break;
        }
    }
    return LpStatus::Optimal;
  }

  LpStatus phase2() {
    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < nv_; ++j) cost[j] = in_.objective[j];
    return iterate(cost);
  }

  void extract(LpSolution& out) {
    out.x.assign(nv_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < nv_) out.x[basis_[r]] = b_[r];
    for (int j = 0; j < nv_; ++j) out.x[j] += lo_[j];
    out.value = 0;
    for (int j = 0; j < nv_; ++j) out.value += in_.objective[j] * out.x[j];
    std::vector<double> cost(cols_, 0.0);
    for (int j = 0; j < nv_; ++j) cost[j] = in_.objective[j];
    std::vector<double> y(m_, 0.0);
    for (int r = 0; r < m_; ++r)
      for (int s = 0; s < m_; ++s) y[s] += cost[basis_[r]] * tab_[r][nv_ + m_ + s];
    dual_internal_ = y;
    out.dual.assign(m0_, 0.0);
    for (int r = 0; r < m0_; ++r) out.dual[r] = flipped_[r] ? -y[r] : y[r];
  }

  std::vector<double> dual_internal_;

  void self_check(const LpSolution& out) const {
    const double tol = 1e-7;
    for (int r = 0; r < m0_; ++r) {
      double v = 0;
      for (int j = 0; j < nv_; ++j) v += in_.rows[r][j] * out.x[j];
      double slack = v - in_.rhs[r];
      bool ok = in_.senses[r] == RowSense::LE   ? slack <= tol
                : in_.senses[r] == RowSense::GE ? slack >= -tol
                                                : std::fabs(slack) <= tol;
      if (!ok) throw std::runtime_error("solve_lp: primal constraint residual");
    }
    for (int j = 0; j < nv_; ++j)
      if (out.x[j] < in_.bounds[j].first - tol || out.x[j] > in_.bounds[j].second + tol)
        throw std::runtime_error("solve_lp: primal bound residual");
    double dual_obj = offset_;
    for (int r = 0; r < m_; ++r) dual_obj += dual_internal_[r] * b0_[r];
    if (std::fabs(dual_obj - out.value) > tol * (1 + std::fabs(out.value)))
      throw std::runtime_error("solve_lp: duality gap");
  }
};

}  // namespace

LpSolution solve_lp(const DenseLP& lp, int iter_cap) {
  Simplex s(lp, iter_cap);
  return s.run();
}

DenseLP build_pb_lp(const MetricInstance& inst, const ProxySpec& proxy,
                    const std::vector<int>& demands) {
  const int n = inst.n;
  if (int(demands.size()) != n) throw UsageError("build_pb_lp: demand length mismatch");
  DenseLP lp;
  const int nx = n * n;
  lp.objective.assign(nx + n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lp.objective[i * n + j] = demands[j] * proxy(inst(i, j));
  lp.bounds.assign(nx + n, {0.0, kInf});
  // client coverage
  for (int j = 0; j < n; ++j) {
    std::vector<double> row(nx + n, 0.0);
    for (int i = 0; i < n; ++i) row[i * n + j] = 1.0;
    lp.rows.push_back(std::move(row));
    lp.senses.push_back(RowSense::GE);
    lp.rhs.push_back(1.0);
  }
  // x_ij <= y_i
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<double> row(nx + n, 0.0);
      row[i * n + j] = 1.0;
      row[nx + i] = -1.0;
      lp.rows.push_back(std::move(row));
      lp.senses.push_back(RowSense::LE);
      lp.rhs.push_back(0.0);
    }
  // sum_i y_i <= k
  std::vector<double> row(nx + n, 0.0);
  for (int i = 0; i < n; ++i) row[nx + i] = 1.0;
  lp.rows.push_back(std::move(row));
  lp.senses.push_back(RowSense::LE);
  lp.rhs.push_back(inst.k);
  return lp;
}

double lp_opt_value(const MetricInstance& inst, const ProxySpec& proxy,
                    const std::vector<int>& demands) {
  LpSolution sol = solve_lp(build_pb_lp(inst, proxy, demands));
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("lp_opt_value: covering LP not optimal");
  return sol.value;
}

std::vector<int> unit_demands(int n) { return std::vector<int>(n, 1); }

}  // namespace ordkm
