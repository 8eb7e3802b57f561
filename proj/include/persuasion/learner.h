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

#ifndef PERSUASION_LEARNER_H_
#define PERSUASION_LEARNER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "persuasion/environment.h"
#include "persuasion/geometry.h"
#include "persuasion/model.h"
#include "persuasion/profile.h"

namespace persuasion {

enum class AbortReason {
  kNone,
  kEmptyThetaTilde,
  kBudgetExhausted,
  kRankDeficient,
  kNoRationalWithinDepth,
  kInconsistentOracle,
  kOracleCallCap,
};

std::string_view to_string(AbortReason reason);

// A clean-event failure. The trial stops and reports the reason.
class TrialAborted : public std::runtime_error {
 public:
  TrialAborted(AbortReason reason, const std::string& what)
      : std::runtime_error(what), reason_(reason) {}
  AbortReason reason() const { return reason_; }

 private:
  AbortReason reason_;
};
class EmptyThetaTilde : public TrialAborted {
 public:
  explicit EmptyThetaTilde(const std::string& what)
      : TrialAborted(AbortReason::kEmptyThetaTilde, what) {}
};
class BudgetExhausted : public TrialAborted {
 public:
  explicit BudgetExhausted(const std::string& what)
      : TrialAborted(AbortReason::kBudgetExhausted, what) {}
};

// The slices the learner restricts itself to: the simplex cut by
// sum_{kept states} mu_hat_s x_s >= 2 eps.
struct SearchSpace {
  Rational epsilon;
  std::vector<State> kept_states;
  RVector mu_hat;  // frozen estimate
  Halfspace cut;
  Polytope polytope;

  Eigen::Index dim() const { return mu_hat.size(); }
  // bits(eps) + bits(mu_hat).
  std::size_t extra_bits() const;
};

// Throws EmptyThetaTilde when no state clears the 2 eps threshold.
SearchSpace make_search_space(const RVector& mu_hat, const Rational& epsilon);

// Commits the uninformative scheme for rounds 1..t1, then builds the space
// from the empirical prior. Requires eps in (0, 1 / (6d)).
SearchSpace build_search_space(Environment& env, std::uint64_t t1,
                               const Rational& epsilon);

struct LearnedHyperplane {
  Hyperplane plane;
  Action inside;   // action on the side that was being closed
  Action outside;  // action observed across the boundary
};

struct RegionCollection {
  std::vector<Polytope> regions;   // one per action; empty when never played
  std::vector<bool> closed;        // full-dimensional regions
  std::vector<LearnedHyperplane> hyperplanes;

  std::vector<Action> closed_actions() const;
};

struct ProbeStats {
  std::uint64_t oracle_calls = 0;
  std::uint64_t rounds = 0;
  std::uint64_t binary_searches = 0;
  std::uint64_t hyperplane_attempts = 0;
  std::uint64_t vertices_checked = 0;
  std::uint64_t vertex_bits_violations = 0;
  std::size_t max_vertex_bits = 0;
};

// State shared by the phase-2 procedures.
struct ProbeContext {
  ProbeContext(Environment& env, const SearchSpace& space,
               const ConstantProfile& profile, std::mt19937_64& rng,
               const Rational& zeta,
               std::uint64_t oracle_call_cap = 1000000);

  Environment& env;
  const SearchSpace& space;
  ConstantProfile profile;
  std::mt19937_64& rng;
  Rational zeta;
  Rational delta;                // sampling resolution
  std::uint64_t oracle_call_cap;
  std::uint64_t round_budget;    // per action-oracle call
  std::size_t problem_bits;      // b_bound + bits(eps) + bits(mu_hat)
  // When set, every vertex of every probed polytope is checked against
  // 9 d^2 (value + bits(eps) + bits(mu_hat)).
  std::optional<std::size_t> vertex_bits_b;
  std::map<RVector, Action, LexLess> vertex_answers;
  ProbeStats stats;

  void check_vertices(const Polytope& p);
};

// Bits of v written over one common denominator: that denominator's bits
// plus the largest scaled numerator's bits.
std::size_t common_denominator_bits(const RVector& v);

// Two-signal commitment until the slice's signal is sent (Simulated), or a
// direct query. Throws BudgetExhausted.
Action action_oracle(ProbeContext& ctx, const RVector& x);

// Exact boundary point on the segment from x1 (answer a_j) to x2 (another
// answer).
RVector binary_search(ProbeContext& ctx, Action a_j, const RVector& x1,
                      const RVector& x2);

// A separating hyperplane through the boundary of a_j's region between the
// interior point and the vertex v.
LearnedHyperplane find_hyperplane(ProbeContext& ctx, Action a_j,
                                  const Polytope& upper, const RVector& x_int,
                                  const RVector& v);

struct FullRegions {
  std::vector<Action> closed;             // in closing order
  std::map<Action, Polytope> regions;
  std::vector<LearnedHyperplane> hyperplanes;
};

FullRegions find_fully_dimensional_regions(ProbeContext& ctx);

// Face of the zero-volume region of a_j holding every vertex where a_j was
// observed; empty when a_j never shows up.
Polytope find_face(ProbeContext& ctx, const FullRegions& full, Action a_j);

RegionCollection find_polytopes(ProbeContext& ctx);

// Cone over the region cut by the unit box; {0} for an empty region.
Polytope lift_to_box(const Polytope& region);

struct SignalingResult {
  SignalingScheme scheme;  // signals s*, then one per action
  Rational value;          // objective of the program
  std::vector<RVector> slices;  // per action
};

SignalingResult compute_signaling(const std::vector<Polytope>& lifted,
                                  const RVector& mu_hat,
                                  const RMatrix& sender_utility);
SignalingResult compute_signaling(const RegionCollection& regions,
                                  const RVector& mu_hat,
                                  const RMatrix& sender_utility);

struct LearnerConfig {
  ConstantProfile profile;
  std::optional<Rational> epsilon;  // overrides the default schedule
  std::uint64_t stride = 1;         // rounds between re-solves in phase 3
  std::uint64_t oracle_call_cap = 1000000;
  std::uint64_t seed = 0;           // learner randomness
  std::optional<std::size_t> vertex_bits_b;
};

// min(ceil(sqrt(b_bound n) d^4) / ceil(sqrt(T)), 1 / (6d + 1)).
Rational default_epsilon(std::size_t d, std::size_t n, std::size_t b_bound,
                         std::uint64_t horizon);
// ceil((12 / eps) ln(2d / delta)).
std::uint64_t regret_phase1_rounds(std::size_t d, const Rational& epsilon,
                                   const Rational& delta);
// safety * ceil(ln(2 C / zeta) / eps).
std::uint64_t oracle_round_budget(const Rational& epsilon, const Rational& zeta,
                                  std::uint64_t oracle_call_cap,
                                  std::size_t safety_factor);

std::mt19937_64 learner_rng(std::uint64_t seed);

struct RegretRun {
  std::uint64_t horizon = 0;
  Rational epsilon;
  std::uint64_t t1 = 0;
  std::uint64_t phase1_end = 0;  // last round of each phase, 0 if not reached
  std::uint64_t phase2_end = 0;
  std::uint64_t rounds_played = 0;
  AbortReason abort = AbortReason::kNone;
  std::string abort_detail;
  std::optional<SearchSpace> space;
  std::optional<RegionCollection> regions;
  std::vector<Rational> realized;  // sender payoff per round
  ProbeStats stats;

  int phase_of(std::uint64_t t) const {
    if (t <= phase1_end) return 1;
    if (t <= phase2_end) return 2;
    return 3;
  }
};

// The full explore-then-commit learner on env, which must be fresh and
// carry horizon T.
RegretRun run_regret(Environment& env, const LearnerConfig& config);

struct TraceRecord {
  std::uint64_t t = 0;
  int phase = 1;
  Rational expected;  // of the committed scheme
  Rational realized;
};

struct RegretTrace {
  std::vector<TraceRecord> records;
  Rational opt;

  // t * OPT - sum of expected utilities over the first t rounds.
  Rational cumulative_regret(std::size_t t) const;
};

}  // namespace persuasion

#endif  // PERSUASION_LEARNER_H_
