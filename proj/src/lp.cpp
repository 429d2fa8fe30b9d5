#include "lovx/lp.hpp"

#include <gmpxx.h>

#include <cmath>

#include "lovx/error.hpp"

namespace lovx::lp {

int Problem::add_var(double lower, double upper, double cost) {
  require(std::isfinite(lower), "lower bounds must be finite");
  lo.push_back(lower);
  hi.push_back(upper);
  c.push_back(cost);
  for (auto& row : a) row.push_back(0.0);
  return vars() - 1;
}

void Problem::add_row(const std::vector<std::pair<int, double>>& coef, double rhs) {
  std::vector<double> row(vars(), 0.0);
  for (auto [j, v] : coef) row.at(j) += v;
  a.push_back(std::move(row));
  b.push_back(rhs);
}

namespace {

struct FloatOps {
  double eps;
  bool pos(double v) const { return v > eps; }
  bool neg(double v) const { return v < -eps; }
  bool zero(double v) const { return std::fabs(v) <= eps; }
  static double from(double v) { return v; }
  static double to(double v) { return v; }
};

struct ExactOps {
  bool pos(const mpq_class& v) const { return sgn(v) > 0; }
  bool neg(const mpq_class& v) const { return sgn(v) < 0; }
  bool zero(const mpq_class& v) const { return sgn(v) == 0; }
  static mpq_class from(double v) { return mpq_class(v); }
  static double to(const mpq_class& v) { return v.get_d(); }
};

template <class T, class Ops>
class Tableau {
 public:
  Tableau(const Problem& p, Ops ops) : ops_(ops) {
    const int n = p.vars();
    const int m = static_cast<int>(p.a.size());
    std::vector<int> bounded;
    for (int j = 0; j < n; ++j)
      if (std::isfinite(p.hi[j])) bounded.push_back(j);
    n_ = n;
    ns_ = static_cast<int>(bounded.size());
    na_ = m;
    cols_ = n_ + ns_ + na_;
    rows_ = m + ns_;
    t_.assign(rows_, std::vector<T>(cols_ + 1, T(0)));
    basis_.assign(rows_, -1);
    // Original rows in y = x - lo.
    for (int i = 0; i < m; ++i) {
      T rhs = Ops::from(p.b[i]);
      for (int j = 0; j < n; ++j) {
        if (p.a[i][j] == 0.0) continue;
        t_[i][j] = Ops::from(p.a[i][j]);
        rhs -= t_[i][j] * Ops::from(p.lo[j]);
      }
      if (ops_.neg(rhs)) {
        for (int j = 0; j < n; ++j) t_[i][j] = -t_[i][j];
        rhs = -rhs;
      }
      t_[i][cols_] = rhs;
      t_[i][n_ + ns_ + i] = T(1);
      basis_[i] = n_ + ns_ + i;
    }
    // Bound rows y_j + s = hi - lo.
    for (int r = 0; r < ns_; ++r) {
      const int j = bounded[r], i = m + r;
      t_[i][j] = T(1);
      t_[i][n_ + r] = T(1);
      t_[i][cols_] = Ops::from(p.hi[j]) - Ops::from(p.lo[j]);
      require(!ops_.neg(t_[i][cols_]), "variable has hi < lo");
      basis_[i] = n_ + r;
    }
  }

  Status run(const std::vector<T>& cost, bool allow_artificial) {
    // Reduced costs d_j = c_j - c_B B^-1 A_j.
    d_.assign(cols_ + 1, T(0));
    for (int j = 0; j < cols_; ++j) d_[j] = cost[j];
    for (int i = 0; i < rows_; ++i) {
      const T& cb = cost[basis_[i]];
      if (ops_.zero(cb)) continue;
      for (int j = 0; j <= cols_; ++j) d_[j] -= cb * t_[i][j];
    }
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (!allow_artificial && j >= n_ + ns_) continue;
        if (ops_.neg(d_[j])) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;
      int leave = -1;
      T best(0);
      for (int i = 0; i < rows_; ++i) {
        if (!ops_.pos(t_[i][enter])) continue;
        T ratio = t_[i][cols_] / t_[i][enter];
        if (leave < 0 || ratio < best || (!(best < ratio) && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
  }

  void pivot(int r, int c) {
    const T pv = t_[r][c];
    for (int j = 0; j <= cols_; ++j) t_[r][j] /= pv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r || ops_.zero(t_[i][c])) continue;
      const T f = t_[i][c];
      for (int j = 0; j <= cols_; ++j)
        if (!ops_.zero(t_[r][j])) t_[i][j] -= f * t_[r][j];
      t_[i][c] = T(0);
    }
    if (!ops_.zero(d_[c])) {
      const T f = d_[c];
      for (int j = 0; j <= cols_; ++j)
        if (!ops_.zero(t_[r][j])) d_[j] -= f * t_[r][j];
      d_[c] = T(0);
    }
    basis_[r] = c;
  }

  // Pivot basic artificials out where possible.
  void expel_artificials() {
    for (int i = 0; i < rows_; ++i) {
      if (basis_[i] < n_ + ns_) continue;
      for (int j = 0; j < n_ + ns_; ++j)
        if (!ops_.zero(t_[i][j])) {
          pivot(i, j);
          break;
        }
    }
  }

  Solution solve(const Problem& p) {
    Solution s;
    std::vector<T> phase1(cols_, T(0));
    for (int j = n_ + ns_; j < cols_; ++j) phase1[j] = T(1);
    run(phase1, true);
    if (ops_.pos(-d_[cols_])) {  // -d[rhs] is the phase-1 objective
      s.status = Status::Infeasible;
      return s;
    }
    expel_artificials();
    std::vector<T> cost(cols_, T(0));
    for (int j = 0; j < n_; ++j) cost[j] = Ops::from(p.c[j]);
    s.status = run(cost, false);
    std::vector<T> y(n_, T(0));
    for (int i = 0; i < rows_; ++i)
      if (basis_[i] < n_) y[basis_[i]] = t_[i][cols_];
    s.x.resize(n_);
    T obj(0);
    for (int j = 0; j < n_; ++j) {
      T xj = y[j] + Ops::from(p.lo[j]);
      obj += Ops::from(p.c[j]) * xj;
      s.x[j] = Ops::to(xj);
    }
    s.objective = Ops::to(obj);
    return s;
  }

 private:
  Ops ops_;
  int n_ = 0, ns_ = 0, na_ = 0, cols_ = 0, rows_ = 0;
  std::vector<std::vector<T>> t_;
  std::vector<T> d_;
  std::vector<int> basis_;
};

}  // namespace

Solution solve(const Problem& p, Arithmetic arith, double eps) {
  require(p.a.size() == p.b.size(), "row/rhs size mismatch");
  require(p.lo.size() == p.c.size() && p.hi.size() == p.c.size(), "bound size mismatch");
  for (const auto& row : p.a) require(static_cast<int>(row.size()) == p.vars(), "ragged row");
  if (arith == Arithmetic::Exact) {
    for (double v : p.b) require(std::isfinite(v), "non-finite rhs");
    Tableau<mpq_class, ExactOps> t(p, ExactOps{});
    Solution s = t.solve(p);
    s.used = Arithmetic::Exact;
    return s;
  }
  Tableau<double, FloatOps> t(p, FloatOps{eps});
  Solution s = t.solve(p);
  s.used = Arithmetic::Float;
  return s;
}

}  // namespace lovx::lp
