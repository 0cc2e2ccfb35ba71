#include "modalkit/simplex.hpp"

#include <optional>

#include "modalkit/error.hpp"

namespace modalkit {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, std::vector<Rational>(cols)), rhs_(rows), basis_(rows, 0) {}

  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return t_.empty() ? 0 : t_.front().size(); }
  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return rhs_[i]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }

  void pivot(std::size_t r, std::size_t e) {
    const Rational inv = t_[r][e].inverse();
    for (auto& x : t_[r]) {
      if (!x.is_zero()) x *= inv;
    }
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_[i][e].is_zero()) continue;
      const Rational f = t_[i][e];
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!t_[r][j].is_zero()) t_[i][j] -= f * t_[r][j];
      }
      rhs_[i] -= f * rhs_[r];
    }
    basis_[r] = e;
    ++pivots_;
  }

  void drop_row(std::size_t r) {
    t_.erase(t_.begin() + static_cast<std::ptrdiff_t>(r));
    rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
  }

  std::vector<Rational> reduced_costs(const std::vector<Rational>& cost) const {
    std::vector<Rational> rc = cost;
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (!t_[i][j].is_zero()) rc[j] -= cb * t_[i][j];
      }
    }
    return rc;
  }

  Rational value(const std::vector<Rational>& cost) const {
    Rational v;
    for (std::size_t i = 0; i < rows(); ++i) v += cost[basis_[i]] * rhs_[i];
    return v;
  }

  /// Runs Bland's rule over columns [0, allowed). Returns the entering column
  /// of an unbounded direction, or nullopt at optimality.
  std::optional<std::size_t> optimize(const std::vector<Rational>& cost, std::size_t allowed) {
    for (;;) {
      const auto rc = reduced_costs(cost);
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (rc[j].sign() > 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return std::nullopt;
      const std::size_t e = *entering;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][e].sign() <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][e];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return e;
      pivot(*leave, e);
    }
  }

  std::size_t pivot_count() const { return pivots_; }

 private:
  std::vector<std::vector<Rational>> t_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace

StandardLpSolution simplex_maximize(const StandardLp& lp) {
  const std::size_t m = lp.a.size();
  const std::size_t n = lp.c.size();
  if (lp.b.size() != m) throw DimensionMismatch("simplex: |b| differs from the row count");
  for (const auto& row : lp.a) {
    if (row.size() != n) throw DimensionMismatch("simplex: row length differs from |c|");
  }

  std::vector<std::size_t> flipped;
  for (std::size_t i = 0; i < m; ++i) {
    if (lp.b[i].sign() < 0) flipped.push_back(i);
  }
  const std::size_t slack0 = n;
  const std::size_t art0 = n + m;
  const std::size_t total = n + m + flipped.size();

  Tableau tab(m, total);
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = k < flipped.size() && flipped[k] == i;
    const Rational sgn = flip ? Rational(-1) : Rational(1);
    for (std::size_t j = 0; j < n; ++j) tab.at(i, j) = sgn * lp.a[i][j];
    tab.at(i, slack0 + i) = sgn;
    tab.rhs(i) = sgn * lp.b[i];
    if (flip) {
      tab.at(i, art0 + k) = Rational(1);
      tab.basic(i) = art0 + k;
      ++k;
    } else {
      tab.basic(i) = slack0 + i;
    }
  }

  StandardLpSolution sol;

  if (!flipped.empty()) {
    std::vector<Rational> phase1(total);
    for (std::size_t j = art0; j < total; ++j) phase1[j] = Rational(-1);
    tab.optimize(phase1, total);
    if (tab.value(phase1).sign() < 0) {
      sol.status = LpStatus::Infeasible;
      sol.pivots = tab.pivot_count();
      return sol;
    }
    // Remaining artificial basics sit at zero; pivot them onto real columns.
    for (std::size_t i = 0; i < tab.rows();) {
      if (tab.basic(i) < art0) {
        ++i;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < art0 && !col; ++j) {
        if (!tab.at(i, j).is_zero()) col = j;
      }
      if (col) {
        tab.pivot(i, *col);
        ++i;
      } else {
        tab.drop_row(i);
      }
    }
  }

  std::vector<Rational> cost(total);
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.c[j];
  const auto unbounded_col = tab.optimize(cost, art0);

  sol.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < tab.rows(); ++i) {
    if (tab.basic(i) < n) sol.x[tab.basic(i)] = tab.rhs(i);
  }
  sol.pivots = tab.pivot_count();

  if (unbounded_col) {
    sol.status = LpStatus::Unbounded;
    sol.ray.assign(n, Rational(0));
    const std::size_t e = *unbounded_col;
    if (e < n) sol.ray[e] = Rational(1);
    for (std::size_t i = 0; i < tab.rows(); ++i) {
      if (tab.basic(i) < n) sol.ray[tab.basic(i)] = -tab.at(i, e);
    }
    return sol;
  }

  sol.status = LpStatus::Optimal;
  sol.value = tab.value(cost);
  const auto rc = tab.reduced_costs(cost);
  sol.duals.reserve(m);
  for (std::size_t i = 0; i < m; ++i) sol.duals.push_back(-rc[slack0 + i]);
  return sol;
}

}  // namespace modalkit
