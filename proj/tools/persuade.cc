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

// Command-line front end: experiments, instance generation and checks.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "persuasion/harness.h"

namespace {

using namespace persuasion;

// "1,2,5" or "1-20" or a mix of both.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const std::size_t dash = part.find('-');
    if (dash == std::string::npos) {
      out.push_back(std::stoull(part));
    } else {
      const std::uint64_t lo = std::stoull(part.substr(0, dash));
      const std::uint64_t hi = std::stoull(part.substr(dash + 1));
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    }
  }
  if (out.empty()) throw std::invalid_argument("empty seed list");
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

struct SourceFlags {
  std::string instance, generator = "random", p;
  std::size_t d = 2, n = 3, bit_cap = 6;
  std::uint64_t gen_seed = 0;
  int which = 1;
  std::string param = "1/10";

  void add(CLI::App* app) {
    app->add_option("--instance", instance, "instance JSON file");
    app->add_option("--generator", generator,
                    "random, hardness1, hardness3 or hardness2-known");
    app->add_option("--d", d, "number of states");
    app->add_option("--n", n, "number of actions");
    app->add_option("--bit-cap", bit_cap, "bit cap of generated rationals");
    app->add_option("--gen-seed", gen_seed, "seed of the random generator");
    app->add_option("--which", which, "member of a hardness pair (1 or 2)");
    app->add_option("--param", param, "eps (hardness3) or gamma (hardness2-known)");
    app->add_option("--p", p, "hardness1 bit vector, e.g. 1,0");
  }

  void apply(CLI::App* app, InstanceSource& src) const {
    if (app->count("--instance")) src.path = instance;
    if (app->count("--generator")) src.generator = generator;
    if (app->count("--d")) src.d = d;
    if (app->count("--n")) src.n = n;
    if (app->count("--bit-cap")) src.bit_cap = bit_cap;
    if (app->count("--gen-seed")) src.seed = gen_seed;
    if (app->count("--which")) src.which = which;
    if (app->count("--param")) src.param = parse_rational_arg(param);
    if (app->count("--p")) {
      src.p.clear();
      for (const std::string& b : split(p, ',')) src.p.push_back(std::stoi(b));
    }
  }
};

struct RunFlags {
  SourceFlags source;
  std::string config, seeds = "0", gamma = "1/10", eta = "1/10", profile = "practical",
              oracle = "simulated", epsilon, out = "out";
  std::uint64_t seed = 0, rounds = 0, stride = 1;
  std::size_t b_bound = 16, safety = 2;
  unsigned threads = 1;
  bool strict = false, check_bits = false;

  void add(CLI::App* app) {
    source.add(app);
    app->add_option("--config", config, "experiment config JSON; flags override it");
    app->add_option("--seed", seed, "single trial seed");
    app->add_option("--seeds", seeds, "seed list, e.g. 1-20 or 1,4,9");
    app->add_option("--rounds", rounds, "horizon T (regret mode)");
    app->add_option("--gamma", gamma, "target suboptimality (PAC modes)");
    app->add_option("--eta", eta, "failure probability (PAC modes, geometry zeta)");
    app->add_option("--profile", profile, "theoretical or practical");
    app->add_option("--b-bound", b_bound, "assumed bit bound of prior * utility");
    app->add_option("--safety", safety, "safety factor of the practical profile");
    app->add_option("--oracle", oracle, "simulated or direct");
    app->add_option("--epsilon", epsilon, "override the search-space epsilon");
    app->add_option("--stride", stride, "rounds between phase-3 re-solves");
    app->add_option("--threads", threads, "worker threads");
    app->add_option("--out", out, "output directory");
    app->add_flag("--strict", strict, "exit with 2 when a trial aborts");
    app->add_flag("--check-vertex-bits", check_bits, "count vertex bit-bound violations");
  }

  ExperimentConfig build(CLI::App* app, ExperimentMode mode) const {
    ExperimentConfig cfg = config.empty() ? ExperimentConfig{} : load_experiment_config(config);
    cfg.mode = mode;  // the subcommand decides
    source.apply(app, cfg.source);
    if (app->count("--seed")) cfg.seeds = {seed};
    if (app->count("--seeds")) cfg.seeds = parse_seeds(seeds);
    if (app->count("--rounds")) cfg.rounds = rounds;
    if (app->count("--gamma")) cfg.gamma = parse_rational_arg(gamma);
    if (app->count("--eta")) cfg.eta = parse_rational_arg(eta);
    if (app->count("--profile")) cfg.profile.mode = parse_profile_mode(profile);
    if (app->count("--b-bound")) cfg.profile.b_bound = b_bound;
    if (app->count("--safety")) cfg.profile.safety_factor = safety;
    if (app->count("--oracle")) cfg.oracle = parse_oracle_mode(oracle);
    if (app->count("--epsilon")) cfg.epsilon = parse_rational_arg(epsilon);
    if (app->count("--stride")) cfg.stride = stride;
    if (app->count("--threads")) cfg.threads = threads;
    if (app->count("--out")) cfg.out_dir = out;
    if (check_bits) cfg.check_vertex_bits = true;
    cfg.validate();
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning to persuade without knowing the receiver"};
  app.require_subcommand(1);

  struct Mode {
    const char* name;
    const char* help;
    ExperimentMode mode;
  };
  const std::vector<Mode> modes = {
      {"run-regret", "explore-then-commit learner over a horizon", ExperimentMode::kRegret},
      {"run-pac", "PAC learner with an unknown prior", ExperimentMode::kPac},
      {"run-pac-known", "PAC learner with the prior exposed", ExperimentMode::kPacKnown},
      {"run-geometry", "direct-mode region mapping only", ExperimentMode::kGeometryOnly},
  };
  std::vector<RunFlags> run_flags(modes.size());
  std::vector<CLI::App*> run_apps;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    CLI::App* sub = app.add_subcommand(modes[i].name, modes[i].help);
    run_flags[i].add(sub);
    run_apps.push_back(sub);
  }

  SourceFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen-instance", "write a generated instance as JSON");
  gen_flags.add(gen);
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  std::string verify_path;
  CLI::App* verify = app.add_subcommand("verify-instance", "validate an instance and print OPT");
  verify->add_option("--instance", verify_path, "instance JSON file")->required();

  std::string check_path, check_slice;
  CLI::App* check = app.add_subcommand("oracle-check", "receiver response to one slice");
  check->add_option("--instance", check_path, "instance JSON file")->required();
  check->add_option("--slice", check_slice, "comma-separated slice, e.g. 1/2,1/2")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (!*run_apps[i]) continue;
      const ExperimentConfig cfg = run_flags[i].build(run_apps[i], modes[i].mode);
      const ExperimentReport report = run_experiment(cfg);
      std::cout << report.summary;
      for (const std::string& f : report.files) std::cout << "wrote " << f << '\n';
      return run_flags[i].strict && report.aborted > 0 ? 2 : 0;
    }
    if (*gen) {
      InstanceSource src;
      gen_flags.apply(gen, src);
      const Instance inst = src.resolve();
      if (gen_out.empty()) {
        std::cout << instance_to_json(inst);
      } else {
        save_instance(inst, gen_out);
      }
      return 0;
    }
    if (*verify) {
      const Instance inst = load_instance(verify_path);
      const OptResult opt = compute_opt(inst);
      std::cout << "valid instance: d=" << inst.d << " n=" << inst.n << '\n'
                << "product bits: " << inst.product_bits() << '\n'
                << "encoding bits: " << inst.encoding_bits() << '\n'
                << "OPT: " << opt.value.str() << " (" << opt.value.to_double() << ")\n";
      return 0;
    }
    if (*check) {
      const Instance inst = load_instance(check_path);
      const RVector x = parse_vector(split(check_slice, ','));
      std::cout << "best responses:";
      for (Action a : best_response_set(inst, x)) std::cout << " a" << a + 1;
      std::cout << "\nchosen: a" << chosen_action(inst, x) + 1 << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
