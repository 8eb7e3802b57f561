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

// Acceptance run: one PASS or FAIL line per criterion, nonzero exit when
// any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "persuasion/harness.h"
#include "persuasion/learner.h"
#include "persuasion/lp.h"
#include "persuasion/oracles.h"
#include "persuasion/pac.h"

namespace persuasion {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double x, int digits = 4) {
  std::ostringstream out;
  out << std::setprecision(digits) << x;
  return out.str();
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RVector vec2(const Rational& a, const Rational& b) {
  RVector v(2);
  v << a, b;
  return v;
}

ConstantProfile practical(std::size_t b_bound) {
  ConstantProfile p;
  p.b_bound = b_bound;
  return p;
}

// Instances of criterion 1: d alternates, n cycles through 2, 3, 4.
Instance recovery_instance(std::uint64_t i) {
  return gen_random_instance(2 + i % 2, 2 + (i / 2) % 3, 6, 100 + i);
}

std::size_t bits_b(const Instance& inst) { return std::max<std::size_t>(14, inst.product_bits()); }

Outcome exact_recovery(std::size_t& violations, std::size_t& checked) {
  const auto start = Clock::now();
  int exact = 0, aborted = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Instance inst = recovery_instance(i);
    const GeometryTrial t = run_geometry_trial(inst, i, Rational(1, 20), Rational(1, 50),
                                               practical(bits_b(inst)), inst.product_bits());
    exact += t.hyperplanes_exact && t.regions_exact ? 1 : 0;
    aborted += t.abort != AbortReason::kNone ? 1 : 0;
    violations += t.stats.vertex_bits_violations;
    checked += t.stats.vertices_checked;
  }
  const double secs = seconds_since(start);
  return {exact >= 48 && secs <= 300,
          std::to_string(exact) + "/50 exact, " + std::to_string(aborted) + " aborted, " +
              fmt(secs) + " s"};
}

Outcome paper_values() {
  bool ok = compute_opt(gen_hardness1(2, {1, 0})).value == Rational(1, 2);
  const Rational gamma(1, 16);
  ok = ok && compute_opt(gen_hardness2_known(gamma, 1)).value ==
                 (Rational(1) + Rational(4) * gamma) / Rational(2);
  ok = ok && compute_opt(gen_hardness2_known(gamma, 2)).value == Rational(1, 2);
  int mismatches = 0, cells = 0;
  for (int which : {1, 2}) {
    const Instance inst = gen_hardness3(which, Rational(1, 8));
    for (int i = 0; i < 50; ++i) {
      for (int j = 0; j < 50; ++j) {
        if (i == 0 && j == 0) continue;
        const RVector x = vec2(Rational(i, 49), Rational(j, 49));
        Action want = i > j ? 0 : (i == j ? 2 : 1);
        if (i == 0) want = 3;
        ++cells;
        mismatches += chosen_action(inst, x) != want ? 1 : 0;
      }
    }
  }
  return {ok && mismatches == 0, "OPT values exact: " + std::string(ok ? "yes" : "no") +
                                     ", feedback grid mismatches " + std::to_string(mismatches) +
                                     "/" + std::to_string(cells)};
}

Outcome lp_chain() {
  const auto start = Clock::now();
  int good = 0;
  for (std::uint64_t i = 0; i < 30; ++i) {
    const std::size_t d = 2 + i % 2, n = 2 + i % 3;
    const Instance inst = gen_random_instance(d, n, 6, 300 + i);
    const Rational eps(1, 20);
    Environment env(inst, i, OracleMode::kDirect);
    const SearchSpace space = make_search_space(inst.prior, eps);
    std::mt19937_64 rng = learner_rng(i);
    ProbeContext ctx(env, space, practical(bits_b(inst)), rng, Rational(1, 50));
    const RegionCollection rc = find_polytopes(ctx);
    const SignalingResult res = compute_signaling(rc, inst.prior, inst.sender);
    const Rational oracle = lp_vertices_oracle(inst, space.polytope);
    const Rational opt = compute_opt(inst).value;
    const Rational bound = opt - eps * Rational(10 * static_cast<long>(n * d));
    good += (res.value >= oracle && sender_expected_utility(inst, res.scheme) >= bound) ? 1 : 0;
  }
  const double secs = seconds_since(start);
  return {good == 30 && secs <= 120, std::to_string(good) + "/30 instances, " + fmt(secs) + " s"};
}

Rational prior_mass_extreme(const Instance& inst, const Halfspace& h, bool maximize) {
  const auto d = static_cast<Eigen::Index>(inst.d);
  LinearProgram lp(d);
  lp.objective = maximize ? RVector(inst.prior) : RVector(-inst.prior);
  lp.add_row(RVector::Constant(d, Rational(1)), Relation::kEqual, Rational(1));
  lp.add_row(h.coeffs(), Relation::kGreaterEqual, h.offset());
  const LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) return maximize ? Rational(-1) : Rational(2);
  return maximize ? sol.value : Rational(-sol.value);
}

Outcome clean_events() {
  const Instance inst = gen_hardness3(1, Rational(1, 8));
  const Rational delta(1, 20);
  const Rational eps = default_epsilon(2, 4, 14, 1 << 14);
  const std::uint64_t t1 = regret_phase1_rounds(2, eps, delta);
  int regret_clean = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Environment env(inst, seed);
    const SearchSpace space = build_search_space(env, t1, eps);
    const Halfspace outside(RVector(-space.cut.coeffs()), -space.cut.offset());
    const bool inside_ok = prior_mass_extreme(inst, space.cut, false) >= eps;
    const bool outside_ok = prior_mass_extreme(inst, outside, true) <= eps * Rational(10);
    regret_clean += inside_ok && outside_ok ? 1 : 0;
  }
  // PAC phase one at gamma = eta = 1/10.
  const Rational pac_eps = compute_threshold(Rational(1, 10) / Rational(12 * 4 * 2));
  const std::uint64_t pac_t1 = pac_phase1_rounds(2, pac_eps, delta);
  int pac_clean = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Environment env(inst, seed);
    const PreparedScheme phi = env.prepare(uninformative_scheme(2));
    for (std::uint64_t t = 0; t < pac_t1; ++t) env.commit_and_play(phi);
    const RVector mu_hat = env.prior_estimate().mu_hat;
    bool ok = true;
    for (Eigen::Index s = 0; s < 2; ++s) {
      Rational gap = mu_hat(s) - inst.prior(s);
      if (gap.sign() < 0) gap = -gap;
      ok = ok && gap <= pac_eps;
    }
    pac_clean += ok ? 1 : 0;
  }
  // 1 - 2 delta = 9/10 of 200.
  return {regret_clean >= 180 && pac_clean >= 180,
          "regret phase one " + std::to_string(regret_clean) + "/200 (eps " + eps.str() +
              ", T1 " + std::to_string(t1) + "), PAC phase one " + std::to_string(pac_clean) +
              "/200 (eps " + pac_eps.str() + ", T1 " + std::to_string(pac_t1) + ")"};
}

Outcome pac_end_to_end(std::size_t& violations, std::size_t& checked) {
  const auto start = Clock::now();
  std::vector<Instance> instances{gen_hardness3(1, Rational(1, 8))};
  for (std::uint64_t g = 1; g <= 10; ++g) instances.push_back(gen_random_instance(2, 3, 6, g));
  int worst = 30;
  std::string per;
  for (const Instance& inst : instances) {
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      PacConfig cfg;
      cfg.gamma = Rational(1, 10);
      cfg.eta = Rational(1, 10);
      cfg.seed = seed;
      cfg.vertex_bits_b = inst.product_bits();
      const PacTrial t = run_pac_trial(inst, seed, cfg, practical(bits_b(inst)),
                                       OracleMode::kDirect, false);
      wins += t.success ? 1 : 0;
      violations += t.run.stats.vertex_bits_violations;
      checked += t.run.stats.vertices_checked;
    }
    worst = std::min(worst, wins);
    per += (per.empty() ? "" : " ") + std::to_string(wins);
  }
  const double secs = seconds_since(start);
  return {worst >= 26 && secs <= 600,
          "successes per instance [" + per + "] of 30, min " + std::to_string(worst) + ", " +
              fmt(secs) + " s"};
}

Outcome regret_sublinearity() {
  const auto start = Clock::now();
  const Instance inst = gen_hardness3(1, Rational(1, 8));
  std::vector<double> mean;
  std::vector<std::uint64_t> horizons{1 << 10, 1 << 12, 1 << 14};
  int aborted = 0;
  for (std::uint64_t horizon : horizons) {
    Rational total(0);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      LearnerConfig cfg;
      cfg.profile = practical(14);
      cfg.seed = seed;
      const RegretTrial t = run_regret_trial(inst, seed, horizon, OracleMode::kSimulated, cfg);
      aborted += t.run.abort != AbortReason::kNone ? 1 : 0;
      total += t.regret;
    }
    mean.push_back((total / Rational(20)).to_double());
  }
  const double inf = std::numeric_limits<double>::infinity();
  auto ratio = [&](std::size_t k) { return mean[k] > 0 ? mean[k + 1] / mean[k] : inf; };
  const double r1 = ratio(0), r2 = ratio(1);
  std::vector<double> per_round;
  for (std::size_t k = 0; k < 3; ++k) per_round.push_back(mean[k] / static_cast<double>(horizons[k]));
  const bool decreasing = per_round[0] > per_round[1] && per_round[1] > per_round[2];
  const double secs = seconds_since(start);
  std::string detail = "mean R_T " + fmt(mean[0]) + ", " + fmt(mean[1]) + ", " + fmt(mean[2]) +
                       "; ratios " + fmt(r1) + ", " + fmt(r2) + "; R_T/T " + fmt(per_round[0]) +
                       ", " + fmt(per_round[1]) + ", " + fmt(per_round[2]) + "; " +
                       std::to_string(aborted) + " aborted; " + fmt(secs) + " s";
  return {r1 <= 2.6 && r2 <= 2.6 && decreasing && secs <= 1800, detail};
}

// Minimum-denominator rational strictly inside (lo, hi) by enumeration.
std::optional<Rational> brute_simplest(const Rational& lo, const Rational& hi, long max_q) {
  for (long q = 1; q <= max_q; ++q) {
    for (long p = 0; p <= q; ++p) {
      const Rational c(p, q);
      if (lo < c && c < hi) return c;
    }
  }
  return std::nullopt;
}

Outcome search_exactness() {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> den(2, 64);
  int exact = 0;
  for (int k = 0; k < 50; ++k) {
    const long q = den(rng);
    const long p = std::uniform_int_distribution<long>(1, q - 1)(rng);
    const Rational lambda(p, q);
    // Segment from x1 to x2; receiver a1 = (alpha, 0, ..), a2 = (0, beta, ..)
    // with alpha x*_1 = beta (1 - x*_1) at the crossing x*.
    const bool three = k % 2 == 1;
    const Eigen::Index d = three ? 3 : 2;
    RVector x1 = RVector::Zero(d), x2 = RVector::Zero(d);
    if (three) {
      x1 << Rational(2, 3), Rational(1, 3), Rational(0);
      x2 << Rational(0), Rational(1, 4), Rational(3, 4);
    } else {
      x1 << Rational(1), Rational(0);
      x2 << Rational(0), Rational(1);
    }
    const RVector target = x1 + (x2 - x1) * lambda;
    const Rational first = target(0), rest = Rational(1) - target(0);
    const Rational scale = first < rest ? rest : first;
    Instance inst;
    inst.d = static_cast<std::size_t>(d);
    inst.n = 2;
    inst.prior = RVector::Constant(d, Rational(1, static_cast<long>(d)));
    inst.receiver = RMatrix::Zero(d, 2);
    inst.sender = RMatrix::Zero(d, 2);
    inst.receiver(0, 0) = rest / scale;
    for (Eigen::Index s = 1; s < d; ++s) inst.receiver(s, 1) = first / scale;
    inst.validate();
    Environment env(inst, static_cast<std::uint64_t>(k), OracleMode::kDirect);
    const SearchSpace space = make_search_space(inst.prior, Rational(1, 100));
    std::mt19937_64 lrng = learner_rng(static_cast<std::uint64_t>(k));
    ProbeContext ctx(env, space, practical(std::max<std::size_t>(4, inst.product_bits())), lrng,
                     Rational(1, 50));
    const RVector got = binary_search(ctx, 0, x1, x2);
    exact += equal_vectors(got, target) ? 1 : 0;
  }
  int agree = 0, trials = 0;
  std::uniform_int_distribution<long> big(1, 5000);
  for (int k = 0; k < 2000; ++k) {
    Rational a(big(rng), 5000), b(big(rng), 5000);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    const auto brute = brute_simplest(a, b, 64);
    if (!brute) continue;
    ++trials;
    agree += stern_brocot_search(a, b, 1u << 20) == *brute ? 1 : 0;
  }
  return {exact == 50 && agree == trials,
          std::to_string(exact) + "/50 crossings exact, Stern-Brocot matches enumeration on " +
              std::to_string(agree) + "/" + std::to_string(trials) + " intervals"};
}

Outcome geometry_assertions(std::size_t violations, std::size_t checked) {
  ConstantProfile prof = practical(14);
  int interior = 0, draws = 0;
  std::mt19937_64 rng(5);
  const Instance inst = gen_random_instance(3, 4, 6, 9);
  const SearchSpace space = make_search_space(inst.prior, Rational(1, 20));
  std::vector<Polytope> shapes;
  for (const Polytope& region : true_regions(inst, space.polytope)) {
    if (is_full_dimensional(region)) shapes.push_back(region);
  }
  shapes.push_back(Polytope::simplex(4));
  const int per = 10000 / static_cast<int>(shapes.size()) + 1;
  for (const Polytope& p : shapes) {
    for (int k = 0; k < per; ++k) {
      ++draws;
      interior += p.strictly_contains(sample_int(p, Rational(1, 100), prof, 14, rng)) ? 1 : 0;
    }
  }
  return {violations == 0 && checked > 0 && interior == draws && draws >= 10000,
          std::to_string(violations) + " vertex-bit violations over " + std::to_string(checked) +
              " vertices; " + std::to_string(interior) + "/" + std::to_string(draws) +
              " samples strictly interior"};
}

ExperimentConfig regret_golden_config(const fs::path& out, unsigned threads) {
  return parse_experiment_config(R"({
    "mode": "regret",
    "generator": {"name": "random", "d": 2, "n": 3, "bit_cap": 6, "seed": 5},
    "seeds": [1, 2, 3], "rounds": 4096, "epsilon": "1/13",
    "profile": "practical", "b_bound": 14, "oracle": "simulated",
    "threads": )" + std::to_string(threads) + R"(, "out": ")" + out.string() + R"("})");
}

ExperimentConfig pac_config(const fs::path& out, unsigned threads) {
  return parse_experiment_config(R"({
    "mode": "pac", "gamma": "1/10", "eta": "1/10", "seeds": [1, 2, 3, 4],
    "generator": {"name": "random", "d": 2, "n": 3, "bit_cap": 6, "seed": 3},
    "profile": "practical", "b_bound": 14, "oracle": "direct",
    "threads": )" + std::to_string(threads) + R"(, "out": ")" + out.string() + R"("})");
}

Outcome determinism() {
  bool ok = true;
  Environment env(gen_hardness3(1, Rational(1, 8)), 42);
  for (int t = 0; t < 40; ++t) env.commit_and_play(uninformative_scheme(2));
  ok = ok && env.transcript_csv() == read_file("golden/transcript_seed42_uninformative.csv");

  const fs::path root = fs::temp_directory_path() / "persuasion_acceptance";
  fs::remove_all(root);
  int compared = 0;
  for (unsigned threads : {1u, 4u}) {
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / ("regret_" + std::to_string(threads) + "_" + std::to_string(run));
      run_experiment(regret_golden_config(dir, threads));
      for (const char* name : {"trace_seed_1.csv", "trace_seed_2.csv", "trace_seed_3.csv", "summary.csv"}) {
        ok = ok && read_file(dir / name) == read_file(fs::path("golden/regret") / name);
        ++compared;
      }
      const fs::path pac = root / ("pac_" + std::to_string(threads) + "_" + std::to_string(run));
      run_experiment(pac_config(pac, threads));
      ok = ok && read_file(pac / "pac.csv") == read_file(root / "pac_1_0" / "pac.csv");
      ++compared;
    }
  }
  fs::remove_all(root);
  return {ok, "golden transcript and " + std::to_string(compared) +
                  " CSV comparisons across two runs and thread counts 1, 4"};
}

}  // namespace
}  // namespace persuasion

int main() {
  using namespace persuasion;
  std::size_t violations = 0, checked = 0;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 exact hyperplane recovery", [&] { return exact_recovery(violations, checked); }},
      {"2 paper-value reproduction", [] { return paper_values(); }},
      {"3 LP chain", [] { return lp_chain(); }},
      {"4 clean-event frequencies", [] { return clean_events(); }},
      {"5 PAC end-to-end", [&] { return pac_end_to_end(violations, checked); }},
      {"6 regret sublinearity", [] { return regret_sublinearity(); }},
      {"7 binary-search exactness", [] { return search_exactness(); }},
      {"8 geometry assertions", [&] { return geometry_assertions(violations, checked); }},
      {"9 determinism", [] { return determinism(); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    failed += out.pass ? 0 : 1;
    std::cout << (out.pass ? "PASS" : "FAIL") << " criterion " << name << ": " << out.detail
              << std::endl;
  }
  std::cout << (9 - failed) << "/9 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
