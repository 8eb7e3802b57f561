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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "persuasion/environment.h"
#include "persuasion/harness.h"
#include "test_util.h"

namespace persuasion {
namespace {

using testing::R;
using testing::mat;
using testing::vec;

template <class E>
concept ExposesInstance = requires(const E& e) { e.instance(); };
template <class E>
concept ExposesPrior = requires(const E& e) { e.prior(); };
template <class E>
concept ExposesReceiver = requires(const E& e) { e.receiver_utility(); };
template <class E>
concept ExposesMembers = requires(const E& e) { e.inst_; };
template <class E>
concept ExposesRng = requires(E& e) { e.rng_(); };

static_assert(!ExposesInstance<Environment>);
static_assert(!ExposesPrior<Environment>);
static_assert(!ExposesReceiver<Environment>);
static_assert(!ExposesMembers<Environment>);
static_assert(!ExposesRng<Environment>);

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Instance skewed_instance() {
  return testing::make(vec({R(3, 4), R(1, 4)}), mat({{R(1), R(0)}, {R(0), R(1)}}),
                       mat({{R(1), R(0)}, {R(0), R(1)}}));
}

// Inverse CDF on the exact value draw / 2^64.
std::size_t reference_pick(const std::vector<Rational>& weights, std::uint64_t draw) {
  const Rational u(mpz_class(static_cast<unsigned long>(draw)), mpz_class(1) << 64);
  Rational acc(0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    acc += weights[k];
    if (u < acc) return k;
  }
  return weights.size() - 1;
}

TEST_CASE("golden transcript, seed 42") {
  Environment env(gen_hardness3(1, R(1, 8)), 42);
  for (int t = 0; t < 40; ++t) env.commit_and_play(uninformative_scheme(2));
  Environment env2(gen_hardness3(2, R(1, 8)), 42);
  std::mt19937_64 rng(7);
  for (int t = 0; t < 40; ++t) {
    SignalingScheme phi = (t % 3 == 0) ? full_revelation_scheme(2)
                                       : two_signal_scheme(vec({R(t % 5, 4), R(1, 3)}));
    env2.commit_and_play(phi);
  }
  CHECK(env.transcript_csv() == read_file("golden/transcript_seed42_uninformative.csv"));
  CHECK(env2.transcript_csv() == read_file("golden/transcript_seed42_mixed.csv"));

  Environment again(gen_hardness3(1, R(1, 8)), 42);
  for (int t = 0; t < 40; ++t) again.commit_and_play(uninformative_scheme(2));
  CHECK(again.transcript_csv() == env.transcript_csv());
}

TEST_CASE("draws follow the exact inverse CDF") {
  const Instance inst = gen_random_instance(3, 3, 6, 5);
  std::vector<Rational> prior(inst.prior.data(), inst.prior.data() + 3);
  SignalingScheme phi = full_revelation_scheme(3);
  phi.table = mat({{R(1, 3), R(2, 3), R(0)}, {R(0), R(1, 7), R(6, 7)}, {R(1, 2), R(0), R(1, 2)}});
  Environment env(inst, 99);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 500; ++t) {
    RoundOutcome out = env.commit_and_play(phi);
    const std::size_t theta = reference_pick(prior, rng());
    const auto row = static_cast<Eigen::Index>(theta);
    std::vector<Rational> w{phi.table(row, 0), phi.table(row, 1), phi.table(row, 2)};
    const std::size_t signal = reference_pick(w, rng());
    CHECK(out.theta == theta);
    CHECK(out.signal == signal);
    CHECK(out.action == chosen_action(inst, slice_of(phi, signal)));
    CHECK(out.u_s == inst.sender(row, static_cast<Eigen::Index>(out.action)));
  }
}

TEST_CASE("round protocol") {
  const Instance inst = gen_random_instance(3, 4, 6, 3);
  Environment env(inst, 1, OracleMode::kSimulated, 5);
  CHECK_THROWS_AS(env.prior_estimate(), NoObservations);
  CHECK_THROWS_AS(env.direct_action_query(vec({R(1), R(0), R(0)})), ModeViolation);
  for (std::uint64_t t = 1; t <= 5; ++t) {
    CHECK(env.t() == t);
    CHECK(env.transcript_size() == t - 1);
    CHECK(env.commit_and_play(full_revelation_scheme(3)).t == t);
  }
  CHECK_THROWS_AS(env.commit_and_play(full_revelation_scheme(3)), HorizonReached);

  // Full revelation: the receiver best-responds to the realized state.
  for (std::uint64_t t = 1; t <= 5; ++t) {
    RoundOutcome r = env.round(t);
    const auto s = static_cast<Eigen::Index>(r.theta);
    const auto a = static_cast<Eigen::Index>(r.action);
    for (Eigen::Index b = 0; b < 4; ++b) {
      CHECK(inst.receiver(s, b) <= inst.receiver(s, a));
      if (inst.receiver(s, b) == inst.receiver(s, a)) {
        CHECK(inst.sender(s, b) <= inst.sender(s, a));
      }
    }
  }
  const std::string csv = env.transcript_csv();
  CHECK(csv.rfind("t,theta,signal,action,u_s\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK_THROWS_AS(Environment(testing::make(vec({R(1, 2), R(1, 2)}), mat({{R(1), R(0)}, {R(0), R(1)}}),
                                           mat({{R(0), R(0)}, {R(0), R(0)}})),
                              0)
                      .commit_and_play(two_signal_scheme(vec({R(3, 2), R(0)}))),
                  InvalidScheme);
}

TEST_CASE("degenerate prior rejected") {
  Instance bad;
  bad.d = 2;
  bad.n = 2;
  bad.prior = vec({R(1), R(0)});
  bad.receiver = mat({{R(1), R(0)}, {R(0), R(1)}});
  bad.sender = bad.receiver;
  CHECK_THROWS_AS(Environment(bad, 0), InvalidInstance);
}

TEST_CASE("prior_estimate") {
  // A seed whose first three states are theta1, theta1, theta2.
  bool found = false;
  for (std::uint64_t seed = 0; seed < 200 && !found; ++seed) {
    Environment env(testing::symmetric_instance(), seed);
    for (int k = 0; k < 3; ++k) env.commit_and_play(uninformative_scheme(2));
    if (env.round(1).theta == 0 && env.round(2).theta == 0 && env.round(3).theta == 1) {
      found = true;
      PriorEstimate est = env.prior_estimate();
      CHECK(equal_vectors(est.mu_hat, vec({R(2, 3), R(1, 3)})));
      CHECK(est.t == 4);
    }
  }
  CHECK(found);

  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Environment env(skewed_instance(), seed);
    const PreparedScheme phi = env.prepare(uninformative_scheme(2));
    for (int k = 0; k < 10000; ++k) env.commit_and_play(phi);
    PriorEstimate est = env.prior_estimate();
    CHECK(est.mu_hat(0) + est.mu_hat(1) == R(1));
    CHECK(est.counts[0] + est.counts[1] == 10000);
    const double err = std::abs(est.mu_hat(0).to_double() - 0.75);
    good += err <= 0.05 ? 1 : 0;
  }
  CHECK(good >= 99);
}

TEST_CASE("signal frequency within three standard deviations") {
  Environment env(skewed_instance(), 2024);
  const PreparedScheme phi = env.prepare(two_signal_scheme(vec({R(1, 3), R(2, 3)})));
  const int rounds = 100000;
  int hits = 0;
  for (int k = 0; k < rounds; ++k) hits += env.commit_and_play(phi).signal == 0 ? 1 : 0;
  const double p = 5.0 / 12.0;  // 3/4 * 1/3 + 1/4 * 2/3
  const double sigma = std::sqrt(p * (1 - p) / rounds);
  CHECK(std::abs(hits / double(rounds) - p) <= 3 * sigma);
}

TEST_CASE("direct queries") {
  Environment env(gen_hardness3(1, R(1, 8)), 0, OracleMode::kDirect);
  CHECK(env.direct_action_query(vec({R(1, 2), R(1, 2)})) == 2);
  CHECK(env.direct_action_query(vec({R(0), R(1)})) == 3);
  CHECK(env.t() == 1);

  const Instance inst = gen_random_instance(3, 4, 6, 8);
  Environment direct(inst, 0, OracleMode::kDirect);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> w(1, 12);
  for (int k = 0; k < 100; ++k) {
    RVector x = vec({R(w(rng)), R(w(rng)), R(w(rng))});
    x /= x.sum();
    CHECK(direct.direct_action_query(x) == chosen_action(inst, x));
  }
}

}  // namespace
}  // namespace persuasion
