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

#ifndef PERSUASION_MODEL_H_
#define PERSUASION_MODEL_H_

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "persuasion/geometry.h"
#include "persuasion/halfspace.h"
#include "persuasion/linalg.h"

namespace persuasion {

using Action = std::size_t;
using State = std::size_t;

class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class UnknownSignal : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};
class ZeroSlice : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};
class EqualActions : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class InvalidScheme : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// d states, n receiver actions. Utility tables are d x n, indexed
// (state, action).
struct Instance {
  std::size_t d = 0;
  std::size_t n = 0;
  RVector prior;
  RMatrix receiver;
  RMatrix sender;

  // Throws InvalidInstance naming the first violated requirement.
  void validate() const;
  // Everything except the distinct-actions requirement.
  void validate_values() const;

  // Largest bit complexity of prior(s) * receiver(s, a).
  std::size_t product_bits() const;
  // Bits of the prior plus bits of the receiver utilities.
  std::size_t encoding_bits() const;
};

Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::string& path);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

// Per-state distributions over signals: table(state, signal).
struct SignalingScheme {
  RMatrix table;
  std::vector<std::string> labels;

  std::size_t num_signals() const {
    return static_cast<std::size_t>(table.cols());
  }
  // Throws InvalidScheme unless entries are nonnegative and rows sum to 1.
  void validate() const;
  std::size_t signal_index(const std::string& label) const;

  friend bool operator==(const SignalingScheme& a, const SignalingScheme& b);
};

SignalingScheme uninformative_scheme(std::size_t d);
SignalingScheme full_revelation_scheme(std::size_t d);
// Signal s1 carries slice x, s2 the complement.
SignalingScheme two_signal_scheme(const RVector& x);

RVector slice_of(const SignalingScheme& phi, std::size_t signal);
RVector slice_of(const SignalingScheme& phi, const std::string& label);

// Receiver payoff of each action at slice x: sum_s prior_s x_s u(s, a).
RVector receiver_values(const Instance& inst, const RVector& x);

// Ascending action indices attaining the maximum. Throws ZeroSlice.
std::vector<Action> best_response_set(const Instance& inst, const RVector& x);

// Sender-preferred best response, lowest index among sender ties.
Action chosen_action(const Instance& inst, const RVector& x);

Rational sender_expected_utility(const Instance& inst,
                                 const SignalingScheme& phi);

struct OptResult {
  Rational value;
  SignalingScheme witness;  // one signal per action
};

// Optimum over persuasive direct schemes.
OptResult compute_opt(const Instance& inst);

// Canonical {x : sum_s prior_s (u(s, i) - u(s, j)) x_s = 0}.
Hyperplane true_separating_hyperplane(const Instance& inst, Action i,
                                      Action j);
// Slices where action i is weakly better than j for the receiver.
Halfspace true_halfspace(const Instance& inst, Action i, Action j);

using PosteriorForm = std::map<RVector, Rational, LexLess>;
PosteriorForm posterior_form(const Instance& inst, const SignalingScheme& phi);

}  // namespace persuasion

#endif  // PERSUASION_MODEL_H_
