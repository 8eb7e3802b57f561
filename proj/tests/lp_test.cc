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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "persuasion/lp.h"

namespace persuasion {
namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

RVector vec(std::initializer_list<Rational> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

// Optimum of max c.x, A x <= b, x >= 0 by enumerating all basic points.
std::optional<Rational> vertex_oracle(const RMatrix& a, const RVector& b,
                                      const RVector& c) {
  const Eigen::Index n = a.cols(), m = a.rows();
  RMatrix all(m + n, n);
  RVector rhs(m + n);
  all.topRows(m) = a;
  rhs.head(m) = b;
  all.bottomRows(n) = RMatrix(-RMatrix::Identity(n, n));
  rhs.tail(n) = RVector::Zero(n);
  std::optional<Rational> best;
  const Eigen::Index total = m + n;
  for (unsigned mask = 0; mask < (1u << total); ++mask) {
    if (__builtin_popcount(mask) != n) continue;
    RMatrix sub(n, n);
    RVector sb(n);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < total; ++i) {
      if (mask & (1u << i)) {
        sub.row(r) = all.row(i);
        sb(r++) = rhs(i);
      }
    }
    auto x = solve_unique(sub, sb);
    if (!x) continue;
    bool ok = true;
    for (Eigen::Index i = 0; i < total && ok; ++i) {
      ok = !(rhs(i) < dot(RVector(all.row(i).transpose()), *x));
    }
    if (!ok) continue;
    Rational v = dot(c, *x);
    if (!best || *best < v) best = v;
  }
  return best;
}

TEST_CASE("trivial programs") {
  LinearProgram lp(1);
  lp.objective(0) = R(1);
  lp.add_row(vec({R(1)}), Relation::kLessEqual, R(1));
  LpSolution s = solve(lp);
  CHECK(s.status == LpStatus::kOptimal);
  CHECK(s.value == R(1));

  LinearProgram bad(1);
  bad.objective(0) = R(1);
  bad.add_row(vec({R(1)}), Relation::kLessEqual, R(0));
  bad.add_row(vec({R(1)}), Relation::kGreaterEqual, R(1));
  CHECK(solve(bad).status == LpStatus::kInfeasible);

  LinearProgram unb(1);
  unb.objective(0) = R(1);
  unb.add_row(vec({R(1)}), Relation::kGreaterEqual, R(1));
  CHECK(solve(unb).status == LpStatus::kUnbounded);
}

TEST_CASE("bounds, free variables and equalities") {
  // max x - y, x in [-3, 2], y free, x + y = 1, y >= -5.
  LinearProgram lp(2);
  lp.objective = vec({R(1), R(-1)});
  lp.set_bounds(0, R(-3), R(2));
  lp.set_free(1);
  lp.add_row(vec({R(1), R(1)}), Relation::kEqual, R(1));
  lp.add_row(vec({R(0), R(1)}), Relation::kGreaterEqual, R(-5));
  LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.point(0) == R(2));
  CHECK(s.point(1) == R(-1));
  CHECK(s.value == R(3));

  // Upper bound only.
  LinearProgram up(1);
  up.objective(0) = R(-1);
  up.set_bounds(0, std::nullopt, R(7, 2));
  up.add_row(vec({R(1)}), Relation::kGreaterEqual, R(-1, 3));
  LpSolution u = solve(up);
  REQUIRE(u.status == LpStatus::kOptimal);
  CHECK(u.point(0) == R(-1, 3));
}

TEST_CASE("Beale's cycling example terminates under Bland's rule") {
  // min -3/4 x1 + 20 x2 - 1/2 x3 + 6 x4, written as a maximization.
  LinearProgram lp(4);
  lp.objective = vec({R(3, 4), R(-20), R(1, 2), R(-6)});
  lp.add_row(vec({R(1, 4), R(-8), R(-1), R(9)}), Relation::kLessEqual, R(0));
  lp.add_row(vec({R(1, 2), R(-12), R(-1, 2), R(3)}), Relation::kLessEqual,
             R(0));
  lp.add_row(vec({R(0), R(0), R(1), R(0)}), Relation::kLessEqual, R(1));
  LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == R(5, 4));
}

TEST_CASE("degenerate programs with repeated constraints") {
  LinearProgram lp(3);
  lp.objective = vec({R(1), R(1), R(1)});
  for (int k = 0; k < 4; ++k) {
    lp.add_row(vec({R(1), R(1), R(0)}), Relation::kLessEqual, R(1));
    lp.add_row(vec({R(0), R(1), R(1)}), Relation::kLessEqual, R(1));
    lp.add_row(vec({R(1), R(0), R(1)}), Relation::kLessEqual, R(1));
    lp.add_row(vec({R(1), R(1), R(1)}), Relation::kLessEqual, R(3, 2));
  }
  LpSolution s = solve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == R(3, 2));
}

TEST_CASE("random programs: vertex oracle, duality, determinism") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> coef(-4, 6), pos(1, 9), den(1, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const Eigen::Index n = 2 + trial % 2, m = 2 + trial % 3;
    RMatrix a(m + 1, n);
    RVector b(m + 1), c(n);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Rational(coef(rng), den(rng));
      b(i) = Rational(pos(rng), den(rng));
    }
    for (Eigen::Index j = 0; j < n; ++j) a(m, j) = R(1);
    b(m) = R(10);
    for (Eigen::Index j = 0; j < n; ++j) c(j) = Rational(coef(rng), den(rng));

    LinearProgram lp(n);
    lp.objective = c;
    for (Eigen::Index i = 0; i <= m; ++i) {
      lp.add_row(RVector(a.row(i).transpose()), Relation::kLessEqual, b(i));
    }
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::kOptimal);
    auto oracle = vertex_oracle(a, b, c);
    REQUIRE(oracle);
    CHECK(s.value == *oracle);
    for (Eigen::Index i = 0; i <= m; ++i) {
      CHECK_FALSE(b(i) < dot(RVector(a.row(i).transpose()), s.point));
    }
    // Dual certificate: y >= 0, A^T y >= c, b.y = value.
    REQUIRE(s.duals.size() == m + 1);
    for (Eigen::Index i = 0; i <= m; ++i) CHECK(s.duals(i).sign() >= 0);
    for (Eigen::Index j = 0; j < n; ++j) {
      CHECK_FALSE(dot(RVector(a.col(j)), s.duals) < c(j));
    }
    CHECK(dot(b, s.duals) == s.value);
    LpSolution again = solve(lp);
    CHECK(equal_vectors(again.point, s.point));
  }
}

TEST_CASE("interior point") {
  std::vector<Halfspace> simplex{Halfspace(vec({R(1), R(0)}), R(0)),
                                 Halfspace(vec({R(0), R(1)}), R(0))};
  std::vector<Hyperplane> norm{Hyperplane(vec({R(1), R(1)}), R(1))};
  auto p = interior_point(simplex, norm);
  REQUIRE(p);
  CHECK((*p)(0).sign() > 0);
  CHECK((*p)(1).sign() > 0);
  CHECK((*p)(0) + (*p)(1) == R(1));

  std::vector<Halfspace> empty{Halfspace(vec({R(1)}), R(1)),
                               Halfspace(vec({R(-1)}), R(0))};
  CHECK_FALSE(interior_point(empty, {}));

  // The a1 region of the lower-bound instance: x1 >= x2 inside the simplex,
  // cut by 5/8 x1 + 3/8 x2 >= 1/4.
  std::vector<Halfspace> region = simplex;
  region.emplace_back(vec({R(1), R(-1)}), R(0));
  region.emplace_back(vec({R(5, 8), R(3, 8)}), R(1, 4));
  auto q = interior_point(region, norm);
  REQUIRE(q);
  CHECK((*q)(0) > (*q)(1));
  CHECK((*q)(1).sign() > 0);
  CHECK((*q)(0) + (*q)(1) == R(1));
  CHECK(R(5, 8) * (*q)(0) + R(3, 8) * (*q)(1) > R(1, 4));

  // A segment has no interior.
  std::vector<Halfspace> flat = simplex;
  flat.emplace_back(vec({R(1), R(-1)}), R(0));
  flat.emplace_back(vec({R(-1), R(1)}), R(0));
  CHECK_FALSE(interior_point(flat, norm));
}

TEST_CASE("redundancy") {
  std::vector<Halfspace> rows{Halfspace(vec({R(-1)}), R(-2)),   // x <= 2
                              Halfspace(vec({R(-1)}), R(-1)),   // x <= 1
                              Halfspace(vec({R(1)}), R(0))};
  CHECK(is_redundant(0, rows));
  CHECK_FALSE(is_redundant(1, rows));
  std::vector<Halfspace> dup{Halfspace(vec({R(1)}), R(0)),
                             Halfspace(vec({R(1)}), R(0)),
                             Halfspace(vec({R(-1)}), R(-1))};
  CHECK(is_redundant(0, dup));
  CHECK(is_redundant(1, dup));
  CHECK_FALSE(is_redundant(2, dup));
}

}  // namespace
}  // namespace persuasion
