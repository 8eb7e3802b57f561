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

#ifndef PERSUASION_PROFILE_H_
#define PERSUASION_PROFILE_H_

#include <cstddef>
#include <string>
#include <string_view>

namespace persuasion {

enum class ProfileMode { kTheoretical, kPractical };

// How the learner sizes its step lengths and search budgets. b_bound is an
// upper bound on the bit complexity of every product prior(s) * u(s, a).
struct ConstantProfile {
  ProfileMode mode = ProfileMode::kPractical;
  std::size_t b_bound = 16;
  std::size_t safety_factor = 2;

  // b_bound scaled by the safety factor.
  std::size_t effective_bits() const { return safety_factor * b_bound; }
};

std::string_view to_string(ProfileMode mode);
ProfileMode parse_profile_mode(std::string_view text);

}  // namespace persuasion

#endif  // PERSUASION_PROFILE_H_
