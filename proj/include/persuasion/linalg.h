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

#ifndef PERSUASION_LINALG_H_
#define PERSUASION_LINALG_H_

#include <Eigen/Core>
#include <algorithm>
#include <optional>
#include <vector>

#include "persuasion/rational.h"

namespace Eigen {

template <>
struct NumTraits<persuasion::Rational> : GenericNumTraits<persuasion::Rational> {
  typedef persuasion::Rational Real;
  typedef persuasion::Rational NonInteger;
  typedef persuasion::Rational Nested;
  typedef persuasion::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 50,
    MulCost = 100
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace persuasion {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RVector = Vector<Rational>;
using RMatrix = Matrix<Rational>;

template <typename Scalar>
bool is_zero(const Scalar& v) {
  return v == Scalar(0);
}

// Reduced row echelon form of an exact matrix, computed in place.
template <typename Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column per leading row
};

template <typename Derived>
RowEchelon<typename Derived::Scalar> row_echelon(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{a, {}};
  Matrix<Scalar>& m = out.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (!is_zero(m(r, col))) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != row) m.row(pivot).swap(m.row(row));
    Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || is_zero(m(r, col))) continue;
      Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& a) {
  return static_cast<Eigen::Index>(row_echelon(a).pivots.size());
}

// Unique solution of a x = b, or nullopt when the system is inconsistent or
// underdetermined.
template <typename DerivedA, typename DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_unique(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  const Eigen::Index n = a.cols();
  Matrix<Scalar> aug(a.rows(), n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  RowEchelon<Scalar> e = row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == n) return std::nullopt;
  if (static_cast<Eigen::Index>(e.pivots.size()) != n) return std::nullopt;
  Vector<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = e.reduced(i, n);
  return x;
}

// Basis of {x : a x = 0}, one column per free variable.
template <typename Derived>
Matrix<typename Derived::Scalar> null_space(
    const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> e = row_echelon(a);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (Eigen::Index p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < n; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  Matrix<Scalar> basis =
      Matrix<Scalar>::Zero(n, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index f = free_cols[k];
    basis(f, static_cast<Eigen::Index>(k)) = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      basis(e.pivots[r], static_cast<Eigen::Index>(k)) =
          -e.reduced(static_cast<Eigen::Index>(r), f);
    }
  }
  return basis;
}

// Lexicographic order on vectors, used for deterministic vertex lists.
template <typename Scalar>
bool lex_less(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                      b.data() + b.size());
}

struct LexLess {
  template <typename Scalar>
  bool operator()(const Vector<Scalar>& a, const Vector<Scalar>& b) const {
    return lex_less(a, b);
  }
};

template <typename Scalar>
bool equal_vectors(const Vector<Scalar>& a, const Vector<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!(a(i) == b(i))) return false;
  }
  return true;
}

// Exact dot product without Eigen's reduction machinery.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar dot(const Eigen::MatrixBase<DerivedA>& a,
                              const Eigen::MatrixBase<DerivedB>& b) {
  typename DerivedA::Scalar s(0);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (is_zero(a(i))) continue;
    s += a(i) * b(i);
  }
  return s;
}

// Least common multiple of the denominators of v.
mpz_class common_denominator(const RVector& v);

RVector parse_vector(const std::vector<std::string>& entries);
std::vector<std::string> format_vector(const RVector& v);

}  // namespace persuasion

#endif  // PERSUASION_LINALG_H_
