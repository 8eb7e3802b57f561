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

#ifndef PERSUASION_PAC_H_
#define PERSUASION_PAC_H_

#include <cstdint>
#include <optional>
#include <string>

#include "persuasion/environment.h"
#include "persuasion/learner.h"

namespace persuasion {

struct PacConfig {
  Rational gamma;  // target suboptimality, in (0, 1)
  Rational eta;    // failure probability, in (0, 1)
  std::uint64_t oracle_call_cap = 1000000;
  std::uint64_t seed = 0;
  std::optional<std::size_t> vertex_bits_b;

  void validate() const;
  Rational delta() const { return eta / Rational(2); }
  Rational zeta() const { return eta / Rational(2); }
};

// Halves from 1 while the value is still >= eps1.
Rational compute_threshold(const Rational& eps1);

// ceil(ln(2d / delta) / (2 eps^2)).
std::uint64_t pac_phase1_rounds(std::size_t d, const Rational& epsilon,
                                const Rational& delta);

struct PacRun {
  SignalingScheme scheme;  // uninformative when aborted
  Rational epsilon;
  std::uint64_t t1 = 0;
  std::uint64_t rounds_used = 0;
  Rational value;  // objective of the final signaling program
  AbortReason abort = AbortReason::kNone;
  std::string abort_detail;
  std::optional<SearchSpace> space;
  std::optional<RegionCollection> regions;
  ProbeStats stats;
};

// Unknown prior: estimate, map the regions, solve once with the estimate.
PacRun run_pac(Environment& env, const PacConfig& cfg,
               const ConstantProfile& profile);

// Known prior: no estimation phase; the regions are mapped with failure
// budget eta and the program is solved with the true prior.
PacRun run_pac_known_prior(Environment& env, const RVector& prior,
                           const PacConfig& cfg,
                           const ConstantProfile& profile);

}  // namespace persuasion

#endif  // PERSUASION_PAC_H_
