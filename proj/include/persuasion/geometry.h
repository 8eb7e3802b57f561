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

#ifndef PERSUASION_GEOMETRY_H_
#define PERSUASION_GEOMETRY_H_

#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <vector>

#include "persuasion/halfspace.h"
#include "persuasion/linalg.h"
#include "persuasion/profile.h"

namespace persuasion {

class EmptyPolytope : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DegenerateVertexSet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class RankDeficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bounded polytope {x : E x = e, A x >= b}. Constraint lists are fixed at
// construction; the vertex list is computed once on first use and shared by
// copies.
class Polytope {
 public:
  explicit Polytope(Eigen::Index dim, std::vector<Hyperplane> equalities = {},
                    std::vector<Halfspace> inequalities = {});

  // {x >= 0, sum x = 1}.
  static Polytope simplex(Eigen::Index dim);
  // [0, 1]^dim.
  static Polytope unit_box(Eigen::Index dim);
  // A polytope known to contain no point.
  static Polytope empty(Eigen::Index dim);

  Eigen::Index dim() const { return dim_; }
  bool known_empty() const { return known_empty_; }
  const std::vector<Hyperplane>& equalities() const { return equalities_; }
  const std::vector<Halfspace>& inequalities() const { return inequalities_; }

  Polytope with(const Halfspace& h) const;
  Polytope with(const Hyperplane& h) const;

  bool contains(const RVector& x) const;
  // Equalities exact and every inequality strictly slack.
  bool strictly_contains(const RVector& x) const;

  // Lexicographically sorted, deduplicated vertex list.
  const std::vector<RVector>& vertices() const&;
  // A copy, so temporaries do not hand out a dangling reference.
  std::vector<RVector> vertices() &&;

 private:
  struct VertexCache {
    std::once_flag once;
    std::vector<RVector> vertices;
  };

  Eigen::Index dim_;
  bool known_empty_ = false;
  std::vector<Hyperplane> equalities_;
  std::vector<Halfspace> inequalities_;
  std::shared_ptr<VertexCache> cache_;
};

// The hyperplane {sum x = 1}.
Hyperplane normalization_hyperplane(Eigen::Index dim);

// Brute force over d-subsets of constraint boundaries, equalities always
// included. Sorted lexicographically, without duplicates.
std::vector<RVector> enumerate_vertices(const Polytope& p);

// Drops every inequality implied by the others, scanning in order.
// Throws EmptyPolytope when p has no point.
Polytope minimal_h_representation(const Polytope& p);

// True iff p has positive (d-1)-volume inside {sum x = 1}: the only
// equality allowed is the normalization itself.
bool is_full_dimensional(const Polytope& p);

// Sample-Int. Bits of the search problem (B + B_eps + B_muhat) enter the
// theoretical step length only.
struct SampleFrame {
  RVector center;
  Rational step;    // rho
  mpz_class grid;   // M; offsets are k / M with k in [-M, M]
};

SampleFrame sample_frame(const Polytope& p, const Rational& delta,
                         const ConstantProfile& profile,
                         std::size_t problem_bits);

// center_i + step * k_i / M for i < d - 1, last coordinate fills the sum.
RVector grid_point(const SampleFrame& frame, const std::vector<mpz_class>& k);

RVector sample_int(const Polytope& p, const Rational& delta,
                   const ConstantProfile& profile, std::size_t problem_bits,
                   std::mt19937_64& rng);

// Uniform integer in [0, n], by rejection on whole 64-bit words.
mpz_class uniform_integer(const mpz_class& n, std::mt19937_64& rng);

// Hyperplane through the origin and the d-1 given points.
Hyperplane fit_homogeneous_hyperplane(const std::vector<RVector>& points);

struct Cell {
  std::vector<int> signs;  // +1: coeffs . x > offset, -1: below
  RVector point;           // strictly inside the cell
  Polytope region;
};

// Full-dimensional cells of the arrangement inside `within`, built by
// splitting one hyperplane at a time; + side before - side.
std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hyperplanes,
                                  const Polytope& within);

// 9 d^2 (B + B_eps + B_muhat).
std::size_t vertex_bits_bound(Eigen::Index dim, std::size_t problem_bits);

}  // namespace persuasion

#endif  // PERSUASION_GEOMETRY_H_
