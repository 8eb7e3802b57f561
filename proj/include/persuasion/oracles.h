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

// Ground-truth constructions for tests and evaluation. Nothing here is
// visible to the learner.

#ifndef PERSUASION_ORACLES_H_
#define PERSUASION_ORACLES_H_

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "persuasion/geometry.h"
#include "persuasion/model.h"

namespace persuasion {

class MembershipViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// space cut by every halfspace where a weakly beats another action.
Polytope true_region(const Instance& inst, const Polytope& space, Action a);
std::vector<Polytope> true_regions(const Instance& inst, const Polytope& space);

// Every canonical separating hyperplane, i < j.
std::vector<Hyperplane> true_hyperplanes(const Instance& inst);

using TaggedVertex = std::pair<RVector, Action>;

// Vertices of every true region, tagged with the region's action.
std::vector<TaggedVertex> true_region_vertices(const Instance& inst,
                                               const Polytope& space);

// max sum_v alpha_v sum_s mu_s v_s sender(s, a_v)
//   s.t. sum_v alpha_v v_s <= 1, alpha >= 0.
Rational lp_vertices_oracle(const Instance& inst,
                            const std::vector<TaggedVertex>& vertices);
Rational lp_vertices_oracle(const Instance& inst, const Polytope& space);

// Convex weights on the vertices of x's own region reproducing x, with at
// most d + 1 of them positive.
std::map<RVector, Rational, LexLess> decompose_slice(const Instance& inst,
                                                     const Polytope& space,
                                                     const RVector& x);

}  // namespace persuasion

#endif  // PERSUASION_ORACLES_H_
