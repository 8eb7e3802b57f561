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

#ifndef PERSUASION_ENVIRONMENT_H_
#define PERSUASION_ENVIRONMENT_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "persuasion/model.h"

namespace persuasion {

enum class OracleMode { kSimulated, kDirect };

std::string_view to_string(OracleMode mode);
OracleMode parse_oracle_mode(std::string_view text);

class ModeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class NoObservations : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};
class HorizonReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RoundOutcome {
  std::uint64_t t = 0;
  State theta = 0;
  std::size_t signal = 0;
  Action action = 0;
  Rational u_s;
};

struct PriorEstimate {
  std::vector<std::uint64_t> counts;
  std::uint64_t t = 1;  // counts cover rounds 1 .. t - 1
  RVector mu_hat;
};

// A scheme checked and tabulated once, so repeated commitments are cheap.
class PreparedScheme {
 public:
  const SignalingScheme& scheme() const { return scheme_; }

 private:
  friend class Environment;
  SignalingScheme scheme_;
  std::size_t id_ = 0;
};

// The repeated interaction. The instance stays private: a learner sees the
// round counter, the feedback of each round, its own payoffs and, in Direct
// mode, a best-response query.
class Environment {
 public:
  static constexpr std::uint64_t kNoHorizon =
      std::numeric_limits<std::uint64_t>::max();

  Environment(Instance instance, std::uint64_t seed,
              OracleMode mode = OracleMode::kSimulated,
              std::uint64_t horizon = kNoHorizon);

  std::size_t num_states() const { return inst_.d; }
  std::size_t num_actions() const { return inst_.n; }
  // The sender knows its own payoffs.
  const RMatrix& sender_utility() const { return inst_.sender; }
  OracleMode mode() const { return mode_; }
  // Index of the next round, starting at 1.
  std::uint64_t t() const { return t_; }
  std::uint64_t horizon() const { return horizon_; }
  std::uint64_t rounds_left() const {
    return horizon_ == kNoHorizon ? kNoHorizon : horizon_ - (t_ - 1);
  }

  PreparedScheme prepare(const SignalingScheme& phi);
  // Throws HorizonReached once the horizon has been played out.
  RoundOutcome commit_and_play(const PreparedScheme& phi);
  RoundOutcome commit_and_play(const SignalingScheme& phi);

  // Throws NoObservations before the first round.
  PriorEstimate prior_estimate() const;

  // Direct mode only; consumes no rounds.
  Action direct_action_query(const RVector& x) const;

  std::size_t transcript_size() const { return log_.size(); }
  RoundOutcome round(std::uint64_t t) const;
  // Columns t, theta, signal, action, u_s; states and actions 1-based.
  std::string transcript_csv() const;

 private:
  friend class EnvironmentAudit;

  struct Tabulated {
    SignalingScheme scheme;
    // thresholds[state][k] = ceil(cumulative weight of signals <= k * 2^64).
    std::vector<std::vector<unsigned __int128>> thresholds;
    std::vector<Action> actions;  // per signal; unused for zero slices
    Rational expected_utility;
  };
  struct Entry {
    std::uint32_t theta;
    std::uint32_t signal;
    std::uint32_t action;
    std::uint32_t scheme;
  };

  static std::size_t pick(const std::vector<unsigned __int128>& cum,
                          std::uint64_t draw);

  Instance inst_;
  std::mt19937_64 rng_;
  OracleMode mode_;
  std::uint64_t horizon_;
  std::uint64_t t_ = 1;
  std::vector<unsigned __int128> prior_cum_;
  std::vector<std::uint64_t> counts_;
  std::vector<Tabulated> schemes_;
  std::vector<Entry> log_;
};

// Ground-truth access for evaluation code that sits outside the learner.
class EnvironmentAudit {
 public:
  static const Instance& instance(const Environment& env) { return env.inst_; }
  // Expected sender utility of the scheme committed in round t.
  static const Rational& expected_utility(const Environment& env,
                                          std::uint64_t t);
  static std::size_t scheme_id(const Environment& env, std::uint64_t t);
  static std::size_t num_schemes(const Environment& env) {
    return env.schemes_.size();
  }
};

}  // namespace persuasion

#endif  // PERSUASION_ENVIRONMENT_H_
