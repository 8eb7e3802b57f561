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

#ifndef PERSUASION_HARNESS_H_
#define PERSUASION_HARNESS_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "persuasion/environment.h"
#include "persuasion/learner.h"
#include "persuasion/model.h"
#include "persuasion/pac.h"

namespace persuasion {

class GenerationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every rational (prior, both utilities) has bit complexity <= bit_cap.
// Redraws on identical receiver columns, at most 100 times.
Instance gen_random_instance(std::size_t d, std::size_t n, std::size_t bit_cap,
                             std::uint64_t seed);

// d even, p a 0/1 vector with d / 2 ones. Uniform prior, n = d + 2.
Instance gen_hardness1(std::size_t d, const std::vector<int>& p);

// The two-state, four-action pair with priors (1/2 +- eps); which in {1, 2}.
Instance gen_hardness3(int which, const Rational& eps);

// The two-state, three-action pair sharing prior (4 gamma, 1 - 4 gamma).
Instance gen_hardness2_known(const Rational& gamma, int which);

// "p/q", an integer, or a finite decimal such as "0.05", read exactly.
Rational parse_rational_arg(std::string_view text);

enum class ExperimentMode { kRegret, kPac, kPacKnown, kGeometryOnly };

std::string_view to_string(ExperimentMode mode);
ExperimentMode parse_experiment_mode(std::string_view text);

struct InstanceSource {
  std::string path;                  // wins when nonempty
  std::string generator = "random";  // random, hardness1, hardness3, hardness2-known
  std::size_t d = 2;
  std::size_t n = 3;
  std::size_t bit_cap = 6;
  std::uint64_t seed = 0;
  int which = 1;
  Rational param = Rational(1, 10);  // eps for hardness3, gamma for hardness2-known
  std::vector<int> p;                // hardness1

  Instance resolve() const;
};

struct ExperimentConfig {
  ExperimentMode mode = ExperimentMode::kRegret;
  InstanceSource source;
  std::vector<std::uint64_t> seeds{0};
  std::uint64_t rounds = 0;  // regret horizon
  Rational gamma = Rational(1, 10);
  Rational eta = Rational(1, 10);
  ConstantProfile profile;
  OracleMode oracle = OracleMode::kSimulated;
  std::optional<Rational> epsilon;
  std::uint64_t stride = 1;
  unsigned threads = 1;
  std::string out_dir = "out";
  bool check_vertex_bits = false;

  // Throws std::invalid_argument on an inconsistent combination.
  void validate() const;
};

// Keys mirror the command-line flags.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

// Per-round record built from the environment's log, outside the learner.
RegretTrace regret_trace(const Environment& env, const RegretRun& run,
                         const Rational& opt);
// t, phase, expected_utility, realized, cum_regret, cum_regret_float.
std::string trace_csv(const RegretTrace& trace);

struct RegretTrial {
  std::uint64_t seed = 0;
  RegretRun run;
  RegretTrace trace;
  Rational regret;  // at the last round played
};

RegretTrial run_regret_trial(const Instance& inst, std::uint64_t seed,
                             std::uint64_t horizon, OracleMode mode,
                             const LearnerConfig& config);

struct PacTrial {
  std::uint64_t seed = 0;
  PacRun run;
  Rational opt;
  Rational achieved;
  bool success = false;
};

PacTrial run_pac_trial(const Instance& inst, std::uint64_t seed,
                       const PacConfig& cfg, const ConstantProfile& profile,
                       OracleMode mode, bool known_prior);

// Direct-mode region mapping with the true prior as the estimate.
struct GeometryTrial {
  std::uint64_t seed = 0;
  AbortReason abort = AbortReason::kNone;
  std::string abort_detail;
  std::vector<Action> closed;
  std::size_t hyperplanes = 0;
  bool hyperplanes_exact = false;  // each one is a true separating hyperplane
  bool regions_exact = false;      // closed set and vertex sets match
  std::uint64_t rounds = 0;
  ProbeStats stats;
};

GeometryTrial run_geometry_trial(const Instance& inst, std::uint64_t seed,
                                 const Rational& epsilon, const Rational& zeta,
                                 const ConstantProfile& profile,
                                 std::optional<std::size_t> vertex_bits_b);

struct ExperimentReport {
  std::vector<std::string> files;
  std::size_t trials = 0;
  std::size_t aborted = 0;
  std::string summary;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace persuasion

#endif  // PERSUASION_HARNESS_H_
