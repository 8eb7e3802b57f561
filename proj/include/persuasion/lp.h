// Copyright 2026 The Persuasion Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERSUASION_LP_H_
#define PERSUASION_LP_H_

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "persuasion/halfspace.h"
#include "persuasion/linalg.h"

namespace persuasion {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <typename Scalar>
struct LpRow {
  Vector<Scalar> coeffs;
  Relation relation;
  Scalar rhs;
};

// maximize objective . x subject to rows and per-variable bounds. Lower
// bounds default to 0; a missing lower bound makes the variable free below.
template <typename Scalar>
struct BasicLinearProgram {
  explicit BasicLinearProgram(Eigen::Index num_vars)
      : objective(Vector<Scalar>::Zero(num_vars)),
        lower(static_cast<std::size_t>(num_vars), Scalar(0)),
        upper(static_cast<std::size_t>(num_vars)) {}

  Eigen::Index num_vars() const { return objective.size(); }

  void add_row(Vector<Scalar> coeffs, Relation relation, Scalar rhs) {
    if (coeffs.size() != num_vars()) {
      throw std::invalid_argument("row length differs from variable count");
    }
    rows.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
  void set_free(Eigen::Index j) {
    lower[static_cast<std::size_t>(j)].reset();
    upper[static_cast<std::size_t>(j)].reset();
  }
  void set_bounds(Eigen::Index j, std::optional<Scalar> lo,
                  std::optional<Scalar> hi) {
    lower[static_cast<std::size_t>(j)] = std::move(lo);
    upper[static_cast<std::size_t>(j)] = std::move(hi);
  }

  Vector<Scalar> objective;
  std::vector<LpRow<Scalar>> rows;
  std::vector<std::optional<Scalar>> lower;
  std::vector<std::optional<Scalar>> upper;
};

template <typename Scalar>
struct BasicLpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Vector<Scalar> point;  // when optimal
  Scalar value{};        // when optimal
  // One multiplier per row of the program, when optimal. For a program with
  // only zero lower bounds and no upper bounds, value = sum rhs_i * duals_i.
  Vector<Scalar> duals;
};

using LinearProgram = BasicLinearProgram<Rational>;
using LpSolution = BasicLpSolution<Rational>;

namespace internal {

// Dense tableau simplex on min c.z, A z = b, z >= 0, b >= 0. Bland's rule
// for both entering and leaving choices.
template <typename Scalar>
class Tableau {
 public:
  // rows: m constraint rows plus one cost row; last column holds rhs.
  Tableau(Matrix<Scalar> t, std::vector<Eigen::Index> basis)
      : t_(std::move(t)), basis_(std::move(basis)) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index cols() const { return t_.cols() - 1; }
  const Matrix<Scalar>& data() const { return t_; }
  const std::vector<Eigen::Index>& basis() const { return basis_; }

  void set_costs(const Vector<Scalar>& c) {
    const Eigen::Index m = rows(), n = cols();
    for (Eigen::Index j = 0; j <= n; ++j) {
      Scalar r = j < n ? c(j) : Scalar(0);
      for (Eigen::Index i = 0; i < m; ++i) {
        const Scalar& cb = c(basis_[static_cast<std::size_t>(i)]);
        if (is_zero(cb) || is_zero(t_(i, j))) continue;
        r -= cb * t_(i, j);
      }
      t_(m, j) = r;
    }
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    const Eigen::Index m = rows(), n = cols();
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (allowed[static_cast<std::size_t>(j)] && t_(m, j) < Scalar(0)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      Scalar best_ratio;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (!(Scalar(0) < t_(i, enter))) continue;
        Scalar ratio = t_(i, n) / t_(i, enter);
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[static_cast<std::size_t>(i)] <
                                        basis_[static_cast<std::size_t>(leave)])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void pivot(Eigen::Index r, Eigen::Index c) {
    const Eigen::Index total_cols = t_.cols();
    Scalar inv = Scalar(1) / t_(r, c);
    for (Eigen::Index j = 0; j < total_cols; ++j) {
      if (!is_zero(t_(r, j))) t_(r, j) *= inv;
    }
    std::vector<Eigen::Index> nz;
    for (Eigen::Index j = 0; j < total_cols; ++j) {
      if (!is_zero(t_(r, j))) nz.push_back(j);
    }
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r || is_zero(t_(i, c))) continue;
      Scalar f = t_(i, c);
      for (Eigen::Index j : nz) t_(i, j) -= f * t_(r, j);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

 private:
  Matrix<Scalar> t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace internal

template <typename Scalar>
BasicLpSolution<Scalar> solve(const BasicLinearProgram<Scalar>& lp) {
  const Eigen::Index nv = lp.num_vars();
  // Substitution x_j = offset_j + sum sign * z_col.
  struct Part {
    Eigen::Index col;
    int sign;
  };
  std::vector<std::vector<Part>> parts(static_cast<std::size_t>(nv));
  Vector<Scalar> offset = Vector<Scalar>::Zero(nv);
  Eigen::Index nz = 0;
  // Extra rows z <= hi - lo for doubly bounded variables.
  std::vector<std::pair<Eigen::Index, Scalar>> bound_rows;
  for (Eigen::Index j = 0; j < nv; ++j) {
    const auto& lo = lp.lower[static_cast<std::size_t>(j)];
    const auto& hi = lp.upper[static_cast<std::size_t>(j)];
    auto& p = parts[static_cast<std::size_t>(j)];
    if (lo) {
      offset(j) = *lo;
      p.push_back({nz++, 1});
      if (hi) bound_rows.emplace_back(nz - 1, *hi - *lo);
    } else if (hi) {
      offset(j) = *hi;
      p.push_back({nz++, -1});
    } else {
      p.push_back({nz++, 1});
      p.push_back({nz++, -1});
    }
  }

  const Eigen::Index m0 = static_cast<Eigen::Index>(lp.rows.size());
  const Eigen::Index m = m0 + static_cast<Eigen::Index>(bound_rows.size());
  // Row data in z-space before slacks.
  Matrix<Scalar> a = Matrix<Scalar>::Zero(m, nz);
  Vector<Scalar> b(m);
  std::vector<Relation> rel(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m0; ++i) {
    const LpRow<Scalar>& row = lp.rows[static_cast<std::size_t>(i)];
    Scalar rhs = row.rhs;
    for (Eigen::Index j = 0; j < nv; ++j) {
      if (is_zero(row.coeffs(j))) continue;
      if (!is_zero(offset(j))) rhs -= row.coeffs(j) * offset(j);
      for (const Part& p : parts[static_cast<std::size_t>(j)]) {
        a(i, p.col) = p.sign > 0 ? row.coeffs(j) : Scalar(-row.coeffs(j));
      }
    }
    b(i) = rhs;
    rel[static_cast<std::size_t>(i)] = row.relation;
  }
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    const Eigen::Index i = m0 + static_cast<Eigen::Index>(k);
    a(i, bound_rows[k].first) = Scalar(1);
    b(i) = bound_rows[k].second;
    rel[static_cast<std::size_t>(i)] = Relation::kLessEqual;
  }

  // Slack columns, then artificial columns where no slack can start basic.
  std::vector<int> row_sign(static_cast<std::size_t>(m), 1);
  std::vector<Eigen::Index> slack_col(static_cast<std::size_t>(m), -1);
  Eigen::Index ncols = nz;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (rel[static_cast<std::size_t>(i)] != Relation::kEqual) {
      slack_col[static_cast<std::size_t>(i)] = ncols++;
    }
    if (b(i) < Scalar(0)) row_sign[static_cast<std::size_t>(i)] = -1;
  }
  std::vector<Eigen::Index> init_col(static_cast<std::size_t>(m), -1);
  const Eigen::Index first_artificial = ncols;
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto si = static_cast<std::size_t>(i);
    int slack_sign = rel[si] == Relation::kLessEqual ? 1 : -1;
    if (slack_col[si] >= 0 && slack_sign * row_sign[si] > 0) {
      init_col[si] = slack_col[si];
    } else {
      init_col[si] = ncols++;
    }
  }

  Matrix<Scalar> t = Matrix<Scalar>::Zero(m + 1, ncols + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto si = static_cast<std::size_t>(i);
    for (Eigen::Index j = 0; j < nz; ++j) {
      if (!is_zero(a(i, j))) t(i, j) = row_sign[si] > 0 ? a(i, j) : Scalar(-a(i, j));
    }
    if (slack_col[si] >= 0) {
      int slack_sign = rel[si] == Relation::kLessEqual ? 1 : -1;
      t(i, slack_col[si]) = Scalar(slack_sign * row_sign[si]);
    }
    if (init_col[si] >= first_artificial) t(i, init_col[si]) = Scalar(1);
    t(i, ncols) = row_sign[si] > 0 ? b(i) : Scalar(-b(i));
  }

  internal::Tableau<Scalar> tab(std::move(t), init_col);
  BasicLpSolution<Scalar> sol;

  // Phase 1.
  if (ncols > first_artificial) {
    Vector<Scalar> c1 = Vector<Scalar>::Zero(ncols);
    for (Eigen::Index j = first_artificial; j < ncols; ++j) c1(j) = Scalar(1);
    tab.set_costs(c1);
    std::vector<bool> all(static_cast<std::size_t>(ncols), true);
    tab.optimize(all);
    if (!is_zero(tab.data()(m, ncols))) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Pivot artificials out of the basis where a structural column allows.
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < first_artificial) continue;
      for (Eigen::Index j = 0; j < first_artificial; ++j) {
        if (!is_zero(tab.data()(i, j))) {
          tab.pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2: minimize -objective.
  Vector<Scalar> c2 = Vector<Scalar>::Zero(ncols);
  for (Eigen::Index j = 0; j < nv; ++j) {
    if (is_zero(lp.objective(j))) continue;
    for (const Part& p : parts[static_cast<std::size_t>(j)]) {
      c2(p.col) = p.sign > 0 ? Scalar(-lp.objective(j)) : lp.objective(j);
    }
  }
  tab.set_costs(c2);
  std::vector<bool> allowed(static_cast<std::size_t>(ncols), true);
  for (Eigen::Index j = first_artificial; j < ncols; ++j) {
    allowed[static_cast<std::size_t>(j)] = false;
  }
  if (!tab.optimize(allowed)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  Vector<Scalar> z = Vector<Scalar>::Zero(ncols);
  for (Eigen::Index i = 0; i < m; ++i) {
    z(tab.basis()[static_cast<std::size_t>(i)]) = tab.data()(i, ncols);
  }
  sol.status = LpStatus::kOptimal;
  sol.point = offset;
  for (Eigen::Index j = 0; j < nv; ++j) {
    for (const Part& p : parts[static_cast<std::size_t>(j)]) {
      if (p.sign > 0) {
        sol.point(j) += z(p.col);
      } else {
        sol.point(j) -= z(p.col);
      }
    }
  }
  sol.value = dot(lp.objective, sol.point);
  sol.duals = Vector<Scalar>(m0);
  for (Eigen::Index i = 0; i < m0; ++i) {
    const auto si = static_cast<std::size_t>(i);
    const Eigen::Index col = init_col[si];
    // The starting basis column of row i is the unit vector e_i.
    Scalar internal_dual = c2(col) - tab.data()(m, col);
    sol.duals(i) = row_sign[si] > 0 ? Scalar(-internal_dual) : internal_dual;
  }
  return sol;
}

// Point maximizing a uniform slack t in [0, 1] over c.x >= b + t for every
// halfspace, with the equalities exact and x boxed in [-2, 2]^d. Returned
// only when the optimal t is strictly positive.
std::optional<RVector> interior_point(const std::vector<Halfspace>& halfspaces,
                                      const std::vector<Hyperplane>& equalities);

// True when dropping halfspaces[row_index] leaves the feasible set
// unchanged: the row's minimum over the remaining constraints still meets
// its offset.
bool is_redundant(std::size_t row_index,
                  const std::vector<Halfspace>& halfspaces,
                  const std::vector<Hyperplane>& equalities = {});

// Any feasible point of the constraint system.
std::optional<RVector> feasible_point(const std::vector<Halfspace>& halfspaces,
                                      const std::vector<Hyperplane>& equalities,
                                      Eigen::Index dim);

}  // namespace persuasion

#endif  // PERSUASION_LP_H_
