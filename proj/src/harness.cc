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

#include "persuasion/harness.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "persuasion/oracles.h"

namespace persuasion {
namespace {

using json = nlohmann::json;

constexpr int kMaxDraws = 100;

std::size_t draw_index(std::size_t bound, std::mt19937_64& rng) {
  return static_cast<std::size_t>(
      uniform_integer(mpz_class(static_cast<unsigned long>(bound)), rng)
          .get_ui());
}

// Reduced p / q in [0, 1] with bit complexity <= cap, by rejection.
Rational draw_unit(std::size_t cap, std::mt19937_64& rng) {
  const std::size_t top = std::size_t{1} << ((cap + 1) / 2);
  while (true) {
    const auto q = static_cast<long>(1 + draw_index(top - 1, rng));
    const auto p = static_cast<long>(draw_index(static_cast<std::size_t>(q), rng));
    Rational r(p, q);
    if (bit_complexity(r) <= cap) return r;
  }
}

// Interior prior k / D from a random composition of D into d parts.
std::optional<RVector> draw_prior(std::size_t d, std::size_t cap,
                                  std::mt19937_64& rng) {
  const std::size_t top = std::max(d, std::size_t{1} << ((cap + 1) / 2));
  const std::size_t den = d + draw_index(top - d, rng);
  std::vector<std::size_t> cuts(den - 1);
  for (std::size_t i = 0; i < cuts.size(); ++i) cuts[i] = i + 1;
  for (std::size_t i = 0; i + 1 < d; ++i) {
    std::size_t j = i + draw_index(cuts.size() - 1 - i, rng);
    std::swap(cuts[i], cuts[j]);
  }
  cuts.resize(d - 1);
  std::sort(cuts.begin(), cuts.end());
  RVector prior(static_cast<Eigen::Index>(d));
  std::size_t prev = 0;
  for (std::size_t s = 0; s < d; ++s) {
    const std::size_t next = s + 1 < d ? cuts[s] : den;
    prior(static_cast<Eigen::Index>(s)) =
        Rational(static_cast<long>(next - prev), static_cast<long>(den));
    if (bit_complexity(prior(static_cast<Eigen::Index>(s))) > cap) {
      return std::nullopt;
    }
    prev = next;
  }
  return prior;
}

bool distinct_columns(const RMatrix& u) {
  for (Eigen::Index a = 0; a < u.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < u.cols(); ++b) {
      if (equal_vectors(RVector(u.col(a)), RVector(u.col(b)))) return false;
    }
  }
  return true;
}

Instance make_instance(RVector prior, RMatrix receiver, RMatrix sender) {
  Instance inst;
  inst.d = static_cast<std::size_t>(prior.size());
  inst.n = static_cast<std::size_t>(receiver.cols());
  inst.prior = std::move(prior);
  inst.receiver = std::move(receiver);
  inst.sender = std::move(sender);
  inst.validate();
  return inst;
}

Rational json_rational(const json& v) {
  if (v.is_string()) return parse_rational_arg(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number_float()) return parse_rational_arg(v.dump());
  throw std::invalid_argument("expected a rational, got " + v.dump());
}

std::string fixed(double v) {
  std::ostringstream out;
  out << std::setprecision(10) << v;
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& text,
                ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
  report.files.push_back(path.string());
}

struct MeanCi {
  double mean = 0, half_width = 0;
};

MeanCi mean_ci(const std::vector<double>& xs) {
  MeanCi out;
  if (xs.empty()) return out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() < 2) return out;
  double ss = 0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  out.half_width = 1.96 * sd / std::sqrt(static_cast<double>(xs.size()));
  return out;
}

// Wilson score interval at 95%.
std::pair<double, double> wilson(std::size_t wins, std::size_t total) {
  if (total == 0) return {0, 1};
  const double z = 1.96, k = static_cast<double>(total);
  const double p = static_cast<double>(wins) / k;
  const double centre = (p + z * z / (2 * k)) / (1 + z * z / k);
  const double half =
      z * std::sqrt(p * (1 - p) / k + z * z / (4 * k * k)) / (1 + z * z / k);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

std::string instance_label(const ExperimentConfig& cfg, const Instance& inst) {
  std::ostringstream out;
  out << (cfg.source.path.empty() ? cfg.source.generator : cfg.source.path)
      << " (d=" << inst.d << ", n=" << inst.n << ")";
  return out.str();
}

LearnerConfig learner_config(const ExperimentConfig& cfg, const Instance& inst) {
  LearnerConfig lc;
  lc.profile = cfg.profile;
  lc.epsilon = cfg.epsilon;
  lc.stride = cfg.stride;
  if (cfg.check_vertex_bits) lc.vertex_bits_b = inst.product_bits();
  return lc;
}

}  // namespace

Instance gen_random_instance(std::size_t d, std::size_t n, std::size_t bit_cap,
                             std::uint64_t seed) {
  if (d < 2 || n < 2 || bit_cap < 2) {
    throw std::invalid_argument("need d >= 2, n >= 2, bit_cap >= 2");
  }
  std::mt19937_64 rng(seed);
  const auto rows = static_cast<Eigen::Index>(d);
  const auto cols = static_cast<Eigen::Index>(n);
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::optional<RVector> prior = draw_prior(d, bit_cap, rng);
    if (!prior) continue;
    RMatrix receiver(rows, cols), sender(rows, cols);
    for (Eigen::Index s = 0; s < rows; ++s) {
      for (Eigen::Index a = 0; a < cols; ++a) {
        receiver(s, a) = draw_unit(bit_cap, rng);
      }
    }
    for (Eigen::Index s = 0; s < rows; ++s) {
      for (Eigen::Index a = 0; a < cols; ++a) {
        sender(s, a) = draw_unit(bit_cap, rng);
      }
    }
    if (!distinct_columns(receiver)) continue;
    return make_instance(std::move(*prior), std::move(receiver),
                         std::move(sender));
  }
  throw GenerationExhausted("no valid instance after 100 draws");
}

Instance gen_hardness1(std::size_t d, const std::vector<int>& p) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("d must be even");
  if (p.size() != d) throw std::invalid_argument("p must have d entries");
  std::size_t ones = 0;
  for (int v : p) {
    if (v != 0 && v != 1) throw std::invalid_argument("p must be 0/1");
    ones += static_cast<std::size_t>(v);
  }
  if (ones != d / 2) throw std::invalid_argument("p must have d/2 ones");
  const auto rows = static_cast<Eigen::Index>(d);
  const Rational two_over_d(2, static_cast<long>(d));
  RVector prior = RVector::Constant(rows, Rational(1, static_cast<long>(d)));
  RMatrix receiver = RMatrix::Zero(rows, rows + 2);
  RMatrix sender = RMatrix::Zero(rows, rows + 2);
  for (Eigen::Index i = 0; i < rows; ++i) {
    receiver(i, i) = Rational(1);
    receiver(i, rows) = p[static_cast<std::size_t>(i)] ? two_over_d : Rational(0);
    receiver(i, rows + 1) = two_over_d;
    sender(i, rows) = Rational(1);
  }
  // At d = 2 the (d+1)-th column repeats a unit column, so only the value
  // invariants are checked.
  Instance inst;
  inst.d = d;
  inst.n = d + 2;
  inst.prior = std::move(prior);
  inst.receiver = std::move(receiver);
  inst.sender = std::move(sender);
  inst.validate_values();
  return inst;
}

Instance gen_hardness3(int which, const Rational& eps) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  if (eps.sign() <= 0 || !(eps < Rational(1, 4))) {
    throw std::invalid_argument("eps must lie in (0, 1/4)");
  }
  const Rational one(1), half(1, 2);
  // sg = +1 in the first instance, -1 in the mirrored one.
  const Rational sg(which == 1 ? 1 : -1);
  const Rational e = sg * eps;
  RVector prior(2);
  prior << half + e, half - e;
  RMatrix u(2, 4);
  u(0, 0) = one / (Rational(2) + Rational(4) * e);
  u(1, 0) = one / (Rational(10) - Rational(20) * e);
  u(0, 1) = one / (Rational(10) + Rational(20) * e);
  u(1, 1) = one / (Rational(2) - Rational(4) * e);
  u(0, 2) = Rational(3, 10);
  u(1, 2) = Rational(3, 10);
  u(0, 3) = Rational(0);
  u(1, 3) = one / (Rational(2) - Rational(4) * e);
  RMatrix us = RMatrix::Zero(2, 4);
  us(0, 2) = one;
  us(1, 3) = one;
  return make_instance(std::move(prior), std::move(u), std::move(us));
}

Instance gen_hardness2_known(const Rational& gamma, int which) {
  if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
  if (gamma.sign() <= 0 || Rational(1, 5) < gamma) {
    throw std::invalid_argument("gamma must lie in (0, 1/5]");
  }
  const Rational half(1, 2);
  RVector prior(2);
  prior << Rational(4) * gamma, Rational(1) - Rational(4) * gamma;
  RMatrix u(2, 3);
  u(0, 0) = Rational(1);
  u(1, 0) = half;
  u(0, 1) = half;
  u(1, 1) = Rational(1);
  u(0, 2) = which == 1 ? Rational(1) : half;
  u(1, 2) = Rational(0);
  RMatrix us(2, 3);
  for (Eigen::Index s = 0; s < 2; ++s) {
    us(s, 0) = Rational(0);
    us(s, 1) = half;
    us(s, 2) = Rational(1);
  }
  return make_instance(std::move(prior), std::move(u), std::move(us));
}

Rational parse_rational_arg(std::string_view text) {
  const std::size_t dot = text.find('.');
  if (dot == std::string_view::npos) return Rational::parse(text);
  std::string whole(text.substr(0, dot)), frac(text.substr(dot + 1));
  bool negative = !whole.empty() && whole[0] == '-';
  if (negative || (!whole.empty() && whole[0] == '+')) whole.erase(0, 1);
  if (whole.empty()) whole = "0";
  auto digits = [](const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (!digits(whole) || !digits(frac)) {
    throw std::invalid_argument("malformed number: '" + std::string(text) + "'");
  }
  mpz_class num(whole + frac), den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  if (negative) num = -num;
  return Rational(num, den);
}

std::string_view to_string(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kRegret:
      return "regret";
    case ExperimentMode::kPac:
      return "pac";
    case ExperimentMode::kPacKnown:
      return "pac_known";
    case ExperimentMode::kGeometryOnly:
      return "geometry_only";
  }
  return "unknown";
}

ExperimentMode parse_experiment_mode(std::string_view text) {
  if (text == "regret") return ExperimentMode::kRegret;
  if (text == "pac") return ExperimentMode::kPac;
  if (text == "pac_known") return ExperimentMode::kPacKnown;
  if (text == "geometry_only") return ExperimentMode::kGeometryOnly;
  throw std::invalid_argument("unknown experiment mode: " + std::string(text));
}

Instance InstanceSource::resolve() const {
  if (!path.empty()) return load_instance(path);
  if (generator == "random") return gen_random_instance(d, n, bit_cap, seed);
  if (generator == "hardness1") {
    std::vector<int> bits = p;
    if (bits.empty()) {
      bits.assign(d, 0);
      for (std::size_t i = 0; i < d / 2; ++i) bits[i] = 1;
    }
    return gen_hardness1(d, bits);
  }
  if (generator == "hardness3") return gen_hardness3(which, param);
  if (generator == "hardness2-known") return gen_hardness2_known(param, which);
  throw std::invalid_argument("unknown generator: " + generator);
}

void ExperimentConfig::validate() const {
  if (seeds.empty()) throw std::invalid_argument("no seeds given");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (stride < 1) throw std::invalid_argument("stride must be >= 1");
  if (profile.safety_factor < 1) {
    throw std::invalid_argument("safety factor must be >= 1");
  }
  switch (mode) {
    case ExperimentMode::kRegret:
      if (rounds < 1) throw std::invalid_argument("regret mode needs rounds >= 1");
      break;
    case ExperimentMode::kPac:
    case ExperimentMode::kPacKnown:
      {
        PacConfig pc;
        pc.gamma = gamma;
        pc.eta = eta;
        pc.validate();
      }
      break;
    case ExperimentMode::kGeometryOnly:
      break;
  }
  if (epsilon && epsilon->sign() <= 0) {
    throw std::invalid_argument("epsilon must be positive");
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json j = json::parse(json_text);
  ExperimentConfig cfg;
  if (j.contains("mode")) cfg.mode = parse_experiment_mode(j["mode"].get<std::string>());
  if (j.contains("instance")) cfg.source.path = j["instance"].get<std::string>();
  if (j.contains("generator")) {
    const json& g = j["generator"];
    InstanceSource& src = cfg.source;
    src.generator = g.value("name", src.generator);
    src.d = g.value("d", src.d);
    src.n = g.value("n", src.n);
    src.bit_cap = g.value("bit_cap", src.bit_cap);
    src.seed = g.value("seed", src.seed);
    src.which = g.value("which", src.which);
    if (g.contains("eps")) src.param = json_rational(g["eps"]);
    if (g.contains("gamma")) src.param = json_rational(g["gamma"]);
    if (g.contains("p")) src.p = g["p"].get<std::vector<int>>();
  }
  if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
  if (j.contains("seed")) cfg.seeds = {j["seed"].get<std::uint64_t>()};
  cfg.rounds = j.value("rounds", cfg.rounds);
  if (j.contains("gamma")) cfg.gamma = json_rational(j["gamma"]);
  if (j.contains("eta")) cfg.eta = json_rational(j["eta"]);
  if (j.contains("profile")) {
    cfg.profile.mode = parse_profile_mode(j["profile"].get<std::string>());
  }
  cfg.profile.b_bound = j.value("b_bound", cfg.profile.b_bound);
  cfg.profile.safety_factor = j.value("safety_factor", cfg.profile.safety_factor);
  if (j.contains("oracle")) cfg.oracle = parse_oracle_mode(j["oracle"].get<std::string>());
  if (j.contains("epsilon")) cfg.epsilon = json_rational(j["epsilon"]);
  cfg.stride = j.value("stride", cfg.stride);
  cfg.threads = j.value("threads", cfg.threads);
  cfg.out_dir = j.value("out", cfg.out_dir);
  cfg.check_vertex_bits = j.value("check_vertex_bits", cfg.check_vertex_bits);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

RegretTrace regret_trace(const Environment& env, const RegretRun& run,
                         const Rational& opt) {
  RegretTrace trace;
  trace.opt = opt;
  trace.records.reserve(run.rounds_played);
  for (std::uint64_t t = 1; t <= run.rounds_played; ++t) {
    trace.records.push_back({t, run.phase_of(t),
                             EnvironmentAudit::expected_utility(env, t),
                             run.realized[t - 1]});
  }
  return trace;
}

std::string trace_csv(const RegretTrace& trace) {
  std::ostringstream out;
  out << "t,phase,expected_utility,realized,cum_regret,cum_regret_float\n";
  Rational regret(0);
  for (const TraceRecord& r : trace.records) {
    regret += trace.opt - r.expected;
    out << r.t << ',' << r.phase << ',' << r.expected.str() << ','
        << r.realized.str() << ',' << regret.str() << ','
        << fixed(regret.to_double()) << '\n';
  }
  return out.str();
}

RegretTrial run_regret_trial(const Instance& inst, std::uint64_t seed,
                             std::uint64_t horizon, OracleMode mode,
                             const LearnerConfig& config) {
  Environment env(inst, seed, mode, horizon);
  LearnerConfig lc = config;
  lc.seed = seed;
  RegretTrial trial;
  trial.seed = seed;
  trial.run = run_regret(env, lc);
  trial.trace = regret_trace(env, trial.run, compute_opt(inst).value);
  trial.regret = trial.trace.cumulative_regret(trial.run.rounds_played);
  return trial;
}

PacTrial run_pac_trial(const Instance& inst, std::uint64_t seed,
                       const PacConfig& cfg, const ConstantProfile& profile,
                       OracleMode mode, bool known_prior) {
  Environment env(inst, seed, mode);
  PacConfig pc = cfg;
  pc.seed = seed;
  PacTrial trial;
  trial.seed = seed;
  trial.run = known_prior ? run_pac_known_prior(env, inst.prior, pc, profile)
                          : run_pac(env, pc, profile);
  trial.opt = compute_opt(inst).value;
  trial.achieved = sender_expected_utility(inst, trial.run.scheme);
  trial.success = !(trial.achieved < trial.opt - cfg.gamma);
  return trial;
}

GeometryTrial run_geometry_trial(const Instance& inst, std::uint64_t seed,
                                 const Rational& epsilon, const Rational& zeta,
                                 const ConstantProfile& profile,
                                 std::optional<std::size_t> vertex_bits_b) {
  GeometryTrial trial;
  trial.seed = seed;
  Environment env(inst, seed, OracleMode::kDirect);
  std::optional<SearchSpace> space;
  std::optional<RegionCollection> regions;
  std::mt19937_64 rng = learner_rng(seed);
  try {
    space = make_search_space(inst.prior, epsilon);
    ProbeContext ctx(env, *space, profile, rng, zeta);
    ctx.vertex_bits_b = vertex_bits_b;
    try {
      regions = find_polytopes(ctx);
    } catch (...) {
      trial.stats = ctx.stats;
      throw;
    }
    trial.stats = ctx.stats;
  } catch (const TrialAborted& e) {
    trial.abort = e.reason();
    trial.abort_detail = e.what();
  }
  trial.rounds = env.t() - 1;
  if (!regions) return trial;

  trial.closed = regions->closed_actions();
  trial.hyperplanes = regions->hyperplanes.size();
  const std::vector<Hyperplane> truth = true_hyperplanes(inst);
  trial.hyperplanes_exact = true;
  for (const LearnedHyperplane& h : regions->hyperplanes) {
    if (std::find(truth.begin(), truth.end(), h.plane) == truth.end()) {
      trial.hyperplanes_exact = false;
    }
  }
  std::vector<Action> expected;
  bool vertices_match = true;
  for (Action a = 0; a < inst.n; ++a) {
    const Polytope region = true_region(inst, space->polytope, a);
    if (!is_full_dimensional(region)) continue;
    expected.push_back(a);
    if (!regions->closed[a]) continue;
    const auto& want = region.vertices();
    const auto& got = regions->regions[a].vertices();
    if (want.size() != got.size()) {
      vertices_match = false;
      continue;
    }
    for (std::size_t k = 0; k < want.size(); ++k) {
      if (!equal_vectors(want[k], got[k])) vertices_match = false;
    }
  }
  trial.regions_exact = vertices_match && expected == trial.closed;
  return trial;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const Instance inst = cfg.source.resolve();
  const std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  ExperimentReport report;
  report.trials = cfg.seeds.size();
  std::ostringstream text;
  text << "mode: " << to_string(cfg.mode) << '\n'
       << "instance: " << instance_label(cfg, inst) << '\n'
       << "profile: " << to_string(cfg.profile.mode)
       << " (b_bound " << cfg.profile.b_bound << ", safety "
       << cfg.profile.safety_factor << ")\n"
       << "trials: " << cfg.seeds.size() << '\n';

  switch (cfg.mode) {
    case ExperimentMode::kRegret: {
      std::vector<RegretTrial> trials(cfg.seeds.size());
      const LearnerConfig lc = learner_config(cfg, inst);
      parallel_for(trials.size(), cfg.threads, [&](std::size_t i) {
        trials[i] = run_regret_trial(inst, cfg.seeds[i], cfg.rounds, cfg.oracle, lc);
      });
      std::ostringstream summary;
      summary << "seed,rounds,phase1_end,phase2_end,regret,regret_float,abort_reason\n";
      std::vector<double> regrets;
      for (const RegretTrial& t : trials) {
        write_file(dir / ("trace_seed_" + std::to_string(t.seed) + ".csv"),
                   trace_csv(t.trace), report);
        summary << t.seed << ',' << t.run.rounds_played << ','
                << t.run.phase1_end << ',' << t.run.phase2_end << ','
                << t.regret.str() << ',' << fixed(t.regret.to_double()) << ','
                << to_string(t.run.abort) << '\n';
        if (t.run.abort != AbortReason::kNone) ++report.aborted;
        regrets.push_back(t.regret.to_double());
      }
      write_file(dir / "summary.csv", summary.str(), report);
      const MeanCi r = mean_ci(regrets);
      const double horizon = static_cast<double>(cfg.rounds);
      text << "horizon: " << cfg.rounds << '\n'
           << "OPT: " << compute_opt(inst).value.str() << '\n'
           << "mean R_T: " << fixed(r.mean) << " +- " << fixed(r.half_width)
           << " (95% CI)\n"
           << "R_T / sqrt(T): " << fixed(r.mean / std::sqrt(horizon)) << '\n'
           << "R_T / T: " << fixed(r.mean / horizon) << '\n';
      break;
    }
    case ExperimentMode::kPac:
    case ExperimentMode::kPacKnown: {
      const bool known = cfg.mode == ExperimentMode::kPacKnown;
      std::vector<PacTrial> trials(cfg.seeds.size());
      PacConfig pc;
      pc.gamma = cfg.gamma;
      pc.eta = cfg.eta;
      if (cfg.check_vertex_bits) pc.vertex_bits_b = inst.product_bits();
      parallel_for(trials.size(), cfg.threads, [&](std::size_t i) {
        trials[i] = run_pac_trial(inst, cfg.seeds[i], pc, cfg.profile, cfg.oracle, known);
      });
      std::ostringstream csv;
      csv << "seed,gamma,eta,rounds_used,opt,achieved,gap,success,abort_reason\n";
      std::size_t wins = 0;
      std::vector<double> rounds;
      for (const PacTrial& t : trials) {
        csv << t.seed << ',' << cfg.gamma.str() << ',' << cfg.eta.str() << ','
            << t.run.rounds_used << ',' << t.opt.str() << ','
            << t.achieved.str() << ',' << (t.opt - t.achieved).str() << ','
            << (t.success ? "true" : "false") << ','
            << to_string(t.run.abort) << '\n';
        wins += t.success ? 1 : 0;
        if (t.run.abort != AbortReason::kNone) ++report.aborted;
        rounds.push_back(static_cast<double>(t.run.rounds_used));
      }
      write_file(dir / "pac.csv", csv.str(), report);
      const auto [lo, hi] = wilson(wins, trials.size());
      text << "gamma: " << cfg.gamma.str() << ", eta: " << cfg.eta.str() << '\n'
           << "success rate: " << wins << '/' << trials.size() << " (95% CI "
           << fixed(lo) << " .. " << fixed(hi) << ")\n"
           << "mean rounds used: " << fixed(mean_ci(rounds).mean) << '\n';
      break;
    }
    case ExperimentMode::kGeometryOnly: {
      std::vector<GeometryTrial> trials(cfg.seeds.size());
      const Rational eps = cfg.epsilon ? *cfg.epsilon : Rational(1, 20);
      std::optional<std::size_t> vb;
      if (cfg.check_vertex_bits) vb = inst.product_bits();
      parallel_for(trials.size(), cfg.threads, [&](std::size_t i) {
        trials[i] = run_geometry_trial(inst, cfg.seeds[i], eps, cfg.eta,
                                       cfg.profile, vb);
      });
      std::ostringstream csv;
      csv << "seed,closed,hyperplanes,hyperplanes_exact,regions_exact,rounds,"
             "abort_reason\n";
      std::size_t exact = 0;
      for (const GeometryTrial& t : trials) {
        std::string closed;
        for (Action a : t.closed) {
          closed += (closed.empty() ? "a" : " a") + std::to_string(a + 1);
        }
        csv << t.seed << ',' << closed << ',' << t.hyperplanes << ','
            << (t.hyperplanes_exact ? "true" : "false") << ','
            << (t.regions_exact ? "true" : "false") << ',' << t.rounds << ','
            << to_string(t.abort) << '\n';
        if (t.abort != AbortReason::kNone) ++report.aborted;
        exact += t.hyperplanes_exact && t.regions_exact ? 1 : 0;
      }
      write_file(dir / "geometry.csv", csv.str(), report);
      text << "exact recoveries: " << exact << '/' << trials.size() << '\n';
      break;
    }
  }
  text << "aborted: " << report.aborted << '\n';
  report.summary = text.str();
  write_file(dir / "summary.txt", report.summary, report);
  return report;
}

}  // namespace persuasion
