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

#include "persuasion/lp.h"

namespace persuasion {
namespace {

Eigen::Index system_dim(const std::vector<Halfspace>& halfspaces,
                        const std::vector<Hyperplane>& equalities) {
  if (!halfspaces.empty()) return halfspaces.front().dim();
  if (!equalities.empty()) return equalities.front().dim();
  throw std::invalid_argument("constraint system without constraints");
}

void add_equalities(const std::vector<Hyperplane>& equalities,
                    LinearProgram* lp) {
  for (const Hyperplane& h : equalities) {
    RVector row = RVector::Zero(lp->num_vars());
    row.head(h.dim()) = h.coeffs();
    lp->add_row(std::move(row), Relation::kEqual, h.offset());
  }
}

}  // namespace

std::optional<RVector> interior_point(
    const std::vector<Halfspace>& halfspaces,
    const std::vector<Hyperplane>& equalities) {
  const Eigen::Index d = system_dim(halfspaces, equalities);
  // Variables: x (d entries) then the slack t.
  LinearProgram lp(d + 1);
  for (Eigen::Index j = 0; j < d; ++j) lp.set_bounds(j, Rational(-2), Rational(2));
  lp.set_bounds(d, Rational(0), Rational(1));
  lp.objective(d) = Rational(1);
  for (const Halfspace& h : halfspaces) {
    RVector row(d + 1);
    row.head(d) = h.coeffs();
    row(d) = Rational(-1);
    lp.add_row(std::move(row), Relation::kGreaterEqual, h.offset());
  }
  add_equalities(equalities, &lp);
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal || sol.value.sign() <= 0) {
    return std::nullopt;
  }
  return RVector(sol.point.head(d));
}

bool is_redundant(std::size_t row_index,
                  const std::vector<Halfspace>& halfspaces,
                  const std::vector<Hyperplane>& equalities) {
  if (row_index >= halfspaces.size()) {
    throw std::out_of_range("is_redundant: row index");
  }
  const Eigen::Index d = halfspaces[row_index].dim();
  LinearProgram lp(d);
  for (Eigen::Index j = 0; j < d; ++j) lp.set_free(j);
  // Minimize the removed row's left-hand side.
  lp.objective = -halfspaces[row_index].coeffs();
  for (std::size_t k = 0; k < halfspaces.size(); ++k) {
    if (k == row_index) continue;
    lp.add_row(halfspaces[k].coeffs(), Relation::kGreaterEqual,
               halfspaces[k].offset());
  }
  add_equalities(equalities, &lp);
  LpSolution sol = solve(lp);
  if (sol.status == LpStatus::kInfeasible) return true;
  if (sol.status == LpStatus::kUnbounded) return false;
  return !(-sol.value < halfspaces[row_index].offset());
}

std::optional<RVector> feasible_point(const std::vector<Halfspace>& halfspaces,
                                      const std::vector<Hyperplane>& equalities,
                                      Eigen::Index dim) {
  LinearProgram lp(dim);
  for (Eigen::Index j = 0; j < dim; ++j) lp.set_free(j);
  for (const Halfspace& h : halfspaces) {
    lp.add_row(h.coeffs(), Relation::kGreaterEqual, h.offset());
  }
  add_equalities(equalities, &lp);
  LpSolution sol = solve(lp);
  if (sol.status == LpStatus::kInfeasible) return std::nullopt;
  if (sol.status == LpStatus::kOptimal) return sol.point;
  throw std::logic_error("feasibility program reported unbounded");
}

}  // namespace persuasion
