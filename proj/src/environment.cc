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

#include "persuasion/environment.h"

#include <sstream>

namespace persuasion {
namespace {

// ceil(w * 2^64) for w in [0, 1].
unsigned __int128 scaled_threshold(const Rational& w) {
  mpz_class scaled = w.num() << 64;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), w.den_ref().get_mpz_t());
  mpz_class hi = q >> 64;
  mpz_class lo = q - (hi << 64);
  auto limb = [](const mpz_class& z) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, z.get_mpz_t());
    return v;
  };
  return (static_cast<unsigned __int128>(limb(hi)) << 64) | limb(lo);
}

std::vector<unsigned __int128> cumulative(const std::vector<Rational>& w) {
  std::vector<unsigned __int128> out;
  Rational acc(0);
  for (const Rational& x : w) {
    acc += x;
    out.push_back(scaled_threshold(acc));
  }
  return out;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

std::string_view to_string(OracleMode mode) {
  return mode == OracleMode::kDirect ? "direct" : "simulated";
}

OracleMode parse_oracle_mode(std::string_view text) {
  if (text == "direct") return OracleMode::kDirect;
  if (text == "simulated") return OracleMode::kSimulated;
  throw std::invalid_argument("unknown oracle mode: " + std::string(text));
}

Environment::Environment(Instance instance, std::uint64_t seed,
                         OracleMode mode, std::uint64_t horizon)
    : inst_(std::move(instance)), rng_(seed), mode_(mode), horizon_(horizon) {
  inst_.validate();
  std::vector<Rational> prior(inst_.prior.data(),
                              inst_.prior.data() + inst_.prior.size());
  prior_cum_ = cumulative(prior);
  counts_.assign(inst_.d, 0);
}

std::size_t Environment::pick(const std::vector<unsigned __int128>& cum,
                              std::uint64_t draw) {
  for (std::size_t k = 0; k < cum.size(); ++k) {
    if (draw < cum[k]) return k;
  }
  return cum.size() - 1;  // unreachable: the last threshold is 2^64
}

PreparedScheme Environment::prepare(const SignalingScheme& phi) {
  if (phi.table.rows() != static_cast<Eigen::Index>(inst_.d)) {
    throw InvalidScheme("scheme has the wrong number of states");
  }
  PreparedScheme out;
  out.scheme_ = phi;
  for (std::size_t id = schemes_.size(); id-- > 0;) {
    if (schemes_[id].scheme == phi) {
      out.id_ = id;
      return out;
    }
  }
  phi.validate();
  Tabulated tab;
  tab.scheme = phi;
  for (Eigen::Index s = 0; s < phi.table.rows(); ++s) {
    std::vector<Rational> row(phi.table.cols());
    for (Eigen::Index k = 0; k < phi.table.cols(); ++k) {
      row[static_cast<std::size_t>(k)] = phi.table(s, k);
    }
    tab.thresholds.push_back(cumulative(row));
  }
  for (std::size_t k = 0; k < phi.num_signals(); ++k) {
    RVector x = slice_of(phi, k);
    bool zero = true;
    for (Eigen::Index s = 0; s < x.size() && zero; ++s) zero = x(s).is_zero();
    tab.actions.push_back(zero ? kNone : chosen_action(inst_, x));
  }
  tab.expected_utility = sender_expected_utility(inst_, phi);
  out.id_ = schemes_.size();
  schemes_.push_back(std::move(tab));
  return out;
}

RoundOutcome Environment::commit_and_play(const PreparedScheme& phi) {
  if (t_ > horizon_) throw HorizonReached("horizon reached");
  const Tabulated& tab = schemes_.at(phi.id_);
  const std::size_t theta = pick(prior_cum_, rng_());
  const std::size_t signal = pick(tab.thresholds[theta], rng_());
  const Action action = tab.actions[signal];
  ++counts_[theta];
  log_.push_back({static_cast<std::uint32_t>(theta),
                  static_cast<std::uint32_t>(signal),
                  static_cast<std::uint32_t>(action),
                  static_cast<std::uint32_t>(phi.id_)});
  RoundOutcome out;
  out.t = t_++;
  out.theta = theta;
  out.signal = signal;
  out.action = action;
  out.u_s = inst_.sender(static_cast<Eigen::Index>(theta),
                         static_cast<Eigen::Index>(action));
  return out;
}

RoundOutcome Environment::commit_and_play(const SignalingScheme& phi) {
  return commit_and_play(prepare(phi));
}

PriorEstimate Environment::prior_estimate() const {
  if (t_ == 1) throw NoObservations("no rounds played yet");
  PriorEstimate est;
  est.counts = counts_;
  est.t = t_;
  est.mu_hat = RVector(static_cast<Eigen::Index>(inst_.d));
  const auto total = static_cast<unsigned long>(t_ - 1);
  for (std::size_t s = 0; s < inst_.d; ++s) {
    est.mu_hat(static_cast<Eigen::Index>(s)) =
        Rational(mpz_class(static_cast<unsigned long>(counts_[s])),
                 mpz_class(total));
  }
  return est;
}

Action Environment::direct_action_query(const RVector& x) const {
  if (mode_ != OracleMode::kDirect) {
    throw ModeViolation("direct queries need Direct mode");
  }
  return chosen_action(inst_, x);
}

RoundOutcome Environment::round(std::uint64_t t) const {
  if (t < 1 || t > log_.size()) throw std::out_of_range("no such round");
  const Entry& e = log_[t - 1];
  RoundOutcome out;
  out.t = t;
  out.theta = e.theta;
  out.signal = e.signal;
  out.action = e.action;
  out.u_s = inst_.sender(e.theta, e.action);
  return out;
}

std::string Environment::transcript_csv() const {
  std::ostringstream out;
  out << "t,theta,signal,action,u_s\n";
  for (std::size_t i = 0; i < log_.size(); ++i) {
    const Entry& e = log_[i];
    out << i + 1 << ',' << e.theta + 1 << ','
        << schemes_[e.scheme].scheme.labels[e.signal] << ',' << e.action + 1
        << ',' << inst_.sender(e.theta, e.action).str() << '\n';
  }
  return out.str();
}

const Rational& EnvironmentAudit::expected_utility(const Environment& env,
                                                   std::uint64_t t) {
  return env.schemes_[scheme_id(env, t)].expected_utility;
}

std::size_t EnvironmentAudit::scheme_id(const Environment& env,
                                        std::uint64_t t) {
  if (t < 1 || t > env.log_.size()) throw std::out_of_range("no such round");
  return env.log_[t - 1].scheme;
}

}  // namespace persuasion
