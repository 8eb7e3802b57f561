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

#include "persuasion/pac.h"

#include <cmath>

namespace persuasion {
namespace {

bool in_unit_interval(const Rational& q) {
  return q.sign() > 0 && q < Rational(1);
}

// Phase 2 and the final program, shared by both variants.
void map_and_solve(Environment& env, const PacConfig& cfg,
                   const ConstantProfile& profile, const Rational& zeta,
                   const RVector& mu_for_program, PacRun& run) {
  std::mt19937_64 rng = learner_rng(cfg.seed);
  ProbeContext ctx(env, *run.space, profile, rng, zeta, cfg.oracle_call_cap);
  ctx.vertex_bits_b = cfg.vertex_bits_b;
  try {
    run.regions = find_polytopes(ctx);
  } catch (...) {
    run.stats = ctx.stats;
    throw;
  }
  run.stats = ctx.stats;
  SignalingResult sig =
      compute_signaling(*run.regions, mu_for_program, env.sender_utility());
  run.scheme = std::move(sig.scheme);
  run.value = sig.value;
}

}  // namespace

void PacConfig::validate() const {
  if (!in_unit_interval(gamma)) throw std::invalid_argument("gamma not in (0, 1)");
  if (!in_unit_interval(eta)) throw std::invalid_argument("eta not in (0, 1)");
}

Rational compute_threshold(const Rational& eps1) {
  if (eps1.sign() <= 0 || Rational(1) < eps1) {
    throw std::invalid_argument("threshold input not in (0, 1]");
  }
  Rational eps(1);
  while (!(eps < eps1)) eps /= Rational(2);
  return eps;
}

std::uint64_t pac_phase1_rounds(std::size_t d, const Rational& epsilon,
                                const Rational& delta) {
  const double e = epsilon.to_double();
  const double rounds = std::ceil(
      std::log(2.0 * static_cast<double>(d) / delta.to_double()) / (2 * e * e));
  return static_cast<std::uint64_t>(rounds);
}

PacRun run_pac(Environment& env, const PacConfig& cfg,
               const ConstantProfile& profile) {
  cfg.validate();
  if (env.t() != 1) throw std::invalid_argument("environment already used");
  const std::size_t d = env.num_states(), n = env.num_actions();
  PacRun run;
  run.scheme = uninformative_scheme(d);
  run.epsilon = compute_threshold(
      cfg.gamma / Rational(12 * static_cast<long>(n * d)));
  run.t1 = pac_phase1_rounds(d, run.epsilon, cfg.delta());
  try {
    run.space = build_search_space(env, run.t1, run.epsilon);
    map_and_solve(env, cfg, profile, cfg.zeta(), run.space->mu_hat, run);
  } catch (const TrialAborted& e) {
    run.abort = e.reason();
    run.abort_detail = e.what();
    run.scheme = uninformative_scheme(d);
  }
  run.rounds_used = env.t() - 1;
  return run;
}

PacRun run_pac_known_prior(Environment& env, const RVector& prior,
                           const PacConfig& cfg,
                           const ConstantProfile& profile) {
  cfg.validate();
  if (env.t() != 1) throw std::invalid_argument("environment already used");
  const std::size_t d = env.num_states(), n = env.num_actions();
  PacRun run;
  run.scheme = uninformative_scheme(d);
  run.epsilon = compute_threshold(
      cfg.gamma / Rational(10 * static_cast<long>(n * d)));
  try {
    run.space = make_search_space(prior, run.epsilon);
    map_and_solve(env, cfg, profile, cfg.eta, prior, run);
  } catch (const TrialAborted& e) {
    run.abort = e.reason();
    run.abort_detail = e.what();
    run.scheme = uninformative_scheme(d);
  }
  run.rounds_used = env.t() - 1;
  return run;
}

}  // namespace persuasion
