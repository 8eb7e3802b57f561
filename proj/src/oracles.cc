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

#include "persuasion/oracles.h"

#include "persuasion/lp.h"

namespace persuasion {

Polytope true_region(const Instance& inst, const Polytope& space, Action a) {
  Polytope region = space;
  for (Action b = 0; b < inst.n; ++b) {
    if (b != a) region = region.with(true_halfspace(inst, a, b));
  }
  return region;
}

std::vector<Polytope> true_regions(const Instance& inst,
                                   const Polytope& space) {
  std::vector<Polytope> out;
  for (Action a = 0; a < inst.n; ++a) out.push_back(true_region(inst, space, a));
  return out;
}

std::vector<Hyperplane> true_hyperplanes(const Instance& inst) {
  std::vector<Hyperplane> out;
  for (Action i = 0; i < inst.n; ++i) {
    for (Action j = i + 1; j < inst.n; ++j) {
      out.push_back(true_separating_hyperplane(inst, i, j));
    }
  }
  return out;
}

std::vector<TaggedVertex> true_region_vertices(const Instance& inst,
                                               const Polytope& space) {
  std::vector<TaggedVertex> out;
  for (Action a = 0; a < inst.n; ++a) {
    for (const RVector& v : true_region(inst, space, a).vertices()) {
      out.emplace_back(v, a);
    }
  }
  return out;
}

Rational lp_vertices_oracle(const Instance& inst,
                            const std::vector<TaggedVertex>& vertices) {
  const auto d = static_cast<Eigen::Index>(inst.d);
  const auto m = static_cast<Eigen::Index>(vertices.size());
  LinearProgram lp(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    const auto& [v, a] = vertices[static_cast<std::size_t>(k)];
    Rational w(0);
    for (Eigen::Index s = 0; s < d; ++s) {
      w += inst.prior(s) * v(s) * inst.sender(s, static_cast<Eigen::Index>(a));
    }
    lp.objective(k) = w;
  }
  for (Eigen::Index s = 0; s < d; ++s) {
    RVector row(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      row(k) = vertices[static_cast<std::size_t>(k)].first(s);
    }
    lp.add_row(std::move(row), Relation::kLessEqual, Rational(1));
  }
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("vertex program not optimal");
  }
  return sol.value;
}

Rational lp_vertices_oracle(const Instance& inst, const Polytope& space) {
  return lp_vertices_oracle(inst, true_region_vertices(inst, space));
}

std::map<RVector, Rational, LexLess> decompose_slice(const Instance& inst,
                                                     const Polytope& space,
                                                     const RVector& x) {
  const Polytope region = true_region(inst, space, chosen_action(inst, x));
  if (!region.contains(x)) {
    throw MembershipViolation("slice lies outside its region");
  }
  const std::vector<RVector>& verts = region.vertices();
  const auto d = static_cast<Eigen::Index>(inst.d);
  const auto m = static_cast<Eigen::Index>(verts.size());
  LinearProgram lp(m);
  for (Eigen::Index s = 0; s < d; ++s) {
    RVector row(m);
    for (Eigen::Index k = 0; k < m; ++k) {
      row(k) = verts[static_cast<std::size_t>(k)](s);
    }
    lp.add_row(std::move(row), Relation::kEqual, x(s));
  }
  lp.add_row(RVector::Constant(m, Rational(1)), Relation::kEqual, Rational(1));
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw MembershipViolation("slice is not a mixture of region vertices");
  }
  std::map<RVector, Rational, LexLess> out;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (!sol.point(k).is_zero()) {
      out.emplace(verts[static_cast<std::size_t>(k)], sol.point(k));
    }
  }
  return out;
}

}  // namespace persuasion
