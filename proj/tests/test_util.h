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

// Small builders shared by the test binaries.

#ifndef PERSUASION_TESTS_TEST_UTIL_H_
#define PERSUASION_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "persuasion/model.h"

namespace persuasion::testing {

inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline RVector vec(std::initializer_list<Rational> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v(i++) = x;
  return v;
}

inline RMatrix mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  RMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const Rational& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Instance make(RVector prior, RMatrix receiver, RMatrix sender) {
  Instance inst;
  inst.d = static_cast<std::size_t>(prior.size());
  inst.n = static_cast<std::size_t>(receiver.cols());
  inst.prior = std::move(prior);
  inst.receiver = std::move(receiver);
  inst.sender = std::move(sender);
  inst.validate();
  return inst;
}

// mu = (1/2, 1/2), u(a1) = (1, 0), u(a2) = (0, 1); sender gets 1 for a1.
inline Instance symmetric_instance() {
  return make(vec({R(1, 2), R(1, 2)}), mat({{R(1), R(0)}, {R(0), R(1)}}),
              mat({{R(1), R(0)}, {R(1), R(0)}}));
}

// Order-insensitive.
inline bool same_points(std::vector<RVector> a, std::vector<RVector> b) {
  if (a.size() != b.size()) return false;
  std::sort(a.begin(), a.end(), LexLess{});
  std::sort(b.begin(), b.end(), LexLess{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal_vectors(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace persuasion::testing

#endif  // PERSUASION_TESTS_TEST_UTIL_H_
