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

#ifndef PERSUASION_HALFSPACE_H_
#define PERSUASION_HALFSPACE_H_

#include <stdexcept>
#include <string>

#include "persuasion/linalg.h"

namespace persuasion {

// {x : coeffs . x = offset}, stored with the first nonzero coefficient
// equal to +1 so that equal sets compare equal.
template <typename Scalar>
class BasicHyperplane {
 public:
  BasicHyperplane(Vector<Scalar> coeffs, Scalar offset)
      : coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
    Eigen::Index lead = -1;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      if (!is_zero(coeffs_(i))) {
        lead = i;
        break;
      }
    }
    if (lead < 0) throw std::invalid_argument("hyperplane with zero normal");
    Scalar inv = Scalar(1) / coeffs_(lead);
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) *= inv;
    offset_ *= inv;
  }

  const Vector<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& offset() const { return offset_; }
  Eigen::Index dim() const { return coeffs_.size(); }

  // coeffs . x - offset
  Scalar residual(const Vector<Scalar>& x) const {
    return dot(coeffs_, x) - offset_;
  }
  bool contains(const Vector<Scalar>& x) const {
    return is_zero(residual(x));
  }

  friend bool operator==(const BasicHyperplane& a, const BasicHyperplane& b) {
    return a.offset_ == b.offset_ && equal_vectors(a.coeffs_, b.coeffs_);
  }
  friend bool operator<(const BasicHyperplane& a, const BasicHyperplane& b) {
    if (lex_less(a.coeffs_, b.coeffs_)) return true;
    if (lex_less(b.coeffs_, a.coeffs_)) return false;
    return a.offset_ < b.offset_;
  }

 private:
  Vector<Scalar> coeffs_;
  Scalar offset_;
};

// {x : coeffs . x >= offset}. Scaled so the first nonzero coefficient has
// absolute value 1; orientation is preserved.
template <typename Scalar>
class BasicHalfspace {
 public:
  BasicHalfspace(Vector<Scalar> coeffs, Scalar offset)
      : coeffs_(std::move(coeffs)), offset_(std::move(offset)) {
    Eigen::Index lead = -1;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      if (!is_zero(coeffs_(i))) {
        lead = i;
        break;
      }
    }
    if (lead < 0) throw std::invalid_argument("halfspace with zero normal");
    Scalar scale = abs(coeffs_(lead));
    Scalar inv = Scalar(1) / scale;
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) coeffs_(i) *= inv;
    offset_ *= inv;
  }

  const Vector<Scalar>& coeffs() const { return coeffs_; }
  const Scalar& offset() const { return offset_; }
  Eigen::Index dim() const { return coeffs_.size(); }

  // coeffs . x - offset; nonnegative exactly on the halfspace.
  Scalar slack(const Vector<Scalar>& x) const {
    return dot(coeffs_, x) - offset_;
  }
  bool contains(const Vector<Scalar>& x) const {
    return !(slack(x) < Scalar(0));
  }
  bool strictly_contains(const Vector<Scalar>& x) const {
    return Scalar(0) < slack(x);
  }
  BasicHyperplane<Scalar> boundary() const {
    return BasicHyperplane<Scalar>(coeffs_, offset_);
  }
  BasicHalfspace opposite() const {
    return BasicHalfspace(Vector<Scalar>(-coeffs_), -offset_);
  }

  friend bool operator==(const BasicHalfspace& a, const BasicHalfspace& b) {
    return a.offset_ == b.offset_ && equal_vectors(a.coeffs_, b.coeffs_);
  }

 private:
  Vector<Scalar> coeffs_;
  Scalar offset_;
};

using Hyperplane = BasicHyperplane<Rational>;
using Halfspace = BasicHalfspace<Rational>;

}  // namespace persuasion

#endif  // PERSUASION_HALFSPACE_H_
