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

#include <cmath>
#include <random>

#include "persuasion/harness.h"
#include "persuasion/pac.h"
#include "test_util.h"

namespace persuasion {
namespace {

using testing::R;
using testing::vec;

ConstantProfile practical() {
  ConstantProfile p;
  p.b_bound = 14;
  return p;
}

PacConfig config(const Rational& gamma, const Rational& eta, std::uint64_t seed) {
  PacConfig cfg;
  cfg.gamma = gamma;
  cfg.eta = eta;
  cfg.seed = seed;
  return cfg;
}

bool is_power_of_two_fraction(const Rational& q) {
  if (q.num() != 1) return false;
  mpz_class den = q.den();
  return mpz_popcount(den.get_mpz_t()) == 1;
}

TEST_CASE("compute_threshold") {
  CHECK(compute_threshold(R(3, 10)) == R(1, 4));
  // The loop halves while eps >= eps1, so a power of two is halved once more.
  CHECK(compute_threshold(R(1, 4)) == R(1, 8));
  CHECK(compute_threshold(R(1)) == R(1, 2));
  CHECK_THROWS(compute_threshold(R(0)));
  CHECK_THROWS(compute_threshold(R(3, 2)));

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(1, 1000), den(1001, 100000);
  for (int k = 0; k < 500; ++k) {
    const Rational eps1(num(rng), den(rng));
    const Rational eps = compute_threshold(eps1);
    CHECK(is_power_of_two_fraction(eps));
    CHECK(eps < eps1);
    CHECK(eps1 <= eps * R(2));
  }
}

TEST_CASE("phase-one length") {
  // ceil(ln(80) * 32) = ceil(140.22...) = 141.
  CHECK(pac_phase1_rounds(2, R(1, 8), R(1, 20)) == 141);
  // ceil(ln(120) * 2^19) with eps = 2^-10.
  CHECK(pac_phase1_rounds(3, R(1, 1024), R(1, 20)) ==
        static_cast<std::uint64_t>(std::ceil(std::log(120.0) * 524288.0)));
}

TEST_CASE("config ranges") {
  CHECK_THROWS(config(R(0), R(1, 10), 0).validate());
  CHECK_THROWS(config(R(1, 10), R(1), 0).validate());
  CHECK_NOTHROW(config(R(1, 10), R(1, 10), 0).validate());
  CHECK(config(R(1, 10), R(1, 10), 0).delta() == R(1, 20));
}

TEST_CASE("prior estimate accuracy after the PAC phase one") {
  // gamma = eta = 1/2 keeps this cheap: eps1 = 1/144, eps = 1/256, delta = 1/4.
  const Instance inst = gen_random_instance(2, 3, 6, 2);
  const PacConfig cfg = config(R(1, 2), R(1, 2), 0);
  const Rational eps = compute_threshold(cfg.gamma / R(12 * 3 * 2));
  CHECK(eps == R(1, 256));
  const std::uint64_t t1 = pac_phase1_rounds(2, eps, cfg.delta());
  int accurate = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Environment env(inst, seed);
    const PreparedScheme phi = env.prepare(uninformative_scheme(2));
    for (std::uint64_t t = 0; t < t1; ++t) env.commit_and_play(phi);
    const RVector mu_hat = env.prior_estimate().mu_hat;
    bool ok = true;
    for (Eigen::Index s = 0; s < 2; ++s) {
      Rational gap = mu_hat(s) - inst.prior(s);
      if (gap.sign() < 0) gap = -gap;
      ok = ok && gap <= eps;
    }
    accurate += ok ? 1 : 0;
  }
  CHECK(accurate >= 150);
}

TEST_CASE("run_pac on the hardness instance") {
  const Instance inst = gen_hardness3(1, R(1, 8));
  const Rational opt = compute_opt(inst).value;
  int success = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Environment env(inst, seed, OracleMode::kDirect);
    const PacRun run = run_pac(env, config(R(1, 10), R(1, 10), seed), practical());
    CHECK(run.rounds_used == run.t1);
    CHECK(env.t() == run.t1 + 1);
    run.scheme.validate();
    if (run.abort == AbortReason::kNone) {
      // Non-s* slices sit in their lifted regions.
      for (std::size_t a = 0; a < inst.n; ++a) {
        CHECK(lift_to_box(run.regions->regions[a]).contains(slice_of(run.scheme, a + 1)));
      }
    }
    success += sender_expected_utility(inst, run.scheme) >= opt - R(1, 10) ? 1 : 0;
  }
  CHECK(success >= 27);
}

TEST_CASE("known prior") {
  SUBCASE("aligned utilities") {
    Instance inst = gen_random_instance(2, 3, 6, 14);
    inst.sender = inst.receiver;
    Environment env(inst, 0, OracleMode::kDirect);
    const PacRun run = run_pac_known_prior(env, inst.prior, config(R(1, 10), R(1, 10), 0), practical());
    CHECK(run.abort == AbortReason::kNone);
    CHECK(run.rounds_used == 0);
    CHECK(sender_expected_utility(inst, run.scheme) >= compute_opt(inst).value - R(1, 10));
  }
  SUBCASE("hardness pair") {
    for (int which : {1, 2}) {
      const Instance inst = gen_hardness2_known(R(1, 16), which);
      Environment env(inst, 0, OracleMode::kDirect);
      const PacRun run = run_pac_known_prior(env, inst.prior, config(R(1, 10), R(1, 10), 0), practical());
      CHECK(run.abort == AbortReason::kNone);
      CHECK(sender_expected_utility(inst, run.scheme) >= compute_opt(inst).value - R(1, 10));
    }
  }
  SUBCASE("phase-two rounds grow at most linearly in 1/eps") {
    // Phase one costs ~1/eps^2 without the prior; phase two alone is
    // bounded by ~1/eps per query.
    const Instance inst = gen_random_instance(2, 3, 6, 7);
    std::vector<double> rounds;
    for (long k : {8, 16, 32}) {
      double total = 0;
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Environment env(inst, seed);
        const SearchSpace space = make_search_space(inst.prior, R(1, k));
        std::mt19937_64 rng = learner_rng(seed);
        ProbeContext ctx(env, space, practical(), rng, R(1, 10));
        find_polytopes(ctx);
        total += static_cast<double>(ctx.stats.rounds);
      }
      rounds.push_back(total / 20);
    }
    CHECK(rounds[1] <= 2.6 * rounds[0]);
    CHECK(rounds[2] <= 2.6 * rounds[1]);
    const double t1a = static_cast<double>(pac_phase1_rounds(2, R(1, 16), R(1, 20)));
    const double t1b = static_cast<double>(pac_phase1_rounds(2, R(1, 32), R(1, 20)));
    CHECK(t1b / t1a == doctest::Approx(4.0).epsilon(0.01));
  }
}

}  // namespace
}  // namespace persuasion
