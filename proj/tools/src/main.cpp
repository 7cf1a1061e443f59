// Copyright 2026 The qvalab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "qvalab/errors.hpp"
#include "qvalab/tools/experiments.hpp"

namespace {

using namespace qvalab::tools;

// Flags as given on the command line; only options that were actually
// passed override the config file.
struct Flags {
  ExperimentConfig v;
  std::string config_path;
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>> bound;

  template <typename T>
  void add(CLI::App* app, const std::string& name, T ExperimentConfig::*field,
           const std::string& help) {
    CLI::Option* opt = app->add_option(name, v.*field, help);
    bound.emplace_back(opt, [this, field](ExperimentConfig& cfg) { cfg.*field = v.*field; });
  }
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON config or decode record");
  f.add(sub, "--code", &ExperimentConfig::code, "code spec k,n,m;octal generators");
  f.add(sub, "--n-steps", &ExperimentConfig::n_steps, "trellis length N");
  f.add(sub, "--epsilon", &ExperimentConfig::epsilon, "BSC crossover probability");
  f.add(sub, "--omega", &ExperimentConfig::omega, "phase unit in [0, pi]");
  f.add(sub, "--iterations", &ExperimentConfig::iterations, "amplification rounds (0: auto)");
  f.add(sub, "--trials", &ExperimentConfig::trials, "shots per block (0: auto)");
  f.add(sub, "--seed", &ExperimentConfig::seed, "master seed");
  f.add(sub, "--grid", &ExperimentConfig::grid, "omega grid step");
  f.add(sub, "--out", &ExperimentConfig::out, "output file (default stdout)");
  f.add(sub, "--reference", &ExperimentConfig::reference, "reference-table fixture");
}

int run(int argc, char** argv) {
  CLI::App app{"qvalab: quantum Viterbi experiments"};
  app.set_version_flag("--version", version_string());
  app.require_subcommand(1);

  std::map<std::string, Flags> flags;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s, flags[name]);
    return s;
  };

  CLI::App* table = sub("table", "omega* table over a range of N");
  flags["table"].add(table, "--n-min", &ExperimentConfig::n_min, "first N");
  flags["table"].add(table, "--n-max", &ExperimentConfig::n_max, "last N");

  CLI::App* sweep = sub("sweep", "Pr(optimum) against omega");
  flags["sweep"].add(sweep, "--received", &ExperimentConfig::received, "received bits");

  CLI::App* decode = sub("decode", "Monte Carlo decoding campaign");
  auto& fd = flags["decode"];
  fd.add(decode, "--mode", &ExperimentConfig::mode, "classical | iterated-qva | probabilistic-qva");
  fd.add(decode, "--blocks", &ExperimentConfig::blocks, "number of blocks");
  fd.add(decode, "--threads", &ExperimentConfig::threads, "worker threads (0: all cores)");
  fd.add(decode, "--max-errors", &ExperimentConfig::max_errors,
         "iterated-qva: decode through error classes 0..E");
  fd.add(decode, "--e0", &ExperimentConfig::e0, "probabilistic-qva: E0 in the trial formula");
  fd.add(decode, "--target-failure", &ExperimentConfig::target_failure,
         "probabilistic-qva: mode failure target");
  fd.add(decode, "--csv", &ExperimentConfig::csv, "also write the results table as CSV");

  CLI::App* verify = sub("verify", "cross-check circuits, path engine and oracles");
  flags["verify"].add(verify, "--fault", &ExperimentConfig::fault, "inject a fault: diffusion-sign");

  CLI::App* circuit = sub("circuit", "dump a unitary as CSV");
  flags["circuit"].add(circuit, "--circuit", &ExperimentConfig::circuit, "v00 | block | chain | diffusion");
  flags["circuit"].add(circuit, "--received", &ExperimentConfig::received, "received bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  Flags& f = flags[name];
  ExperimentConfig cfg;
  try {
    if (!f.config_path.empty()) {
      std::ifstream in(f.config_path);
      if (!in) throw ConfigError("cannot open config '" + f.config_path + "'");
      nlohmann::json doc;
      try {
        doc = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
      apply_json(cfg, doc);
    }
    for (auto& [opt, apply] : f.bound) {
      if (opt->count() > 0) apply(cfg);
    }
    if (!cfg.command.empty() && cfg.command != name) {
      throw ConfigError("config is for '" + cfg.command + "', not '" + name + "'");
    }
    cfg.command = name;
    cfg.validate();

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write '" + cfg.out + "'");
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;
    if (name == "table") return cmd_table(cfg, out);
    if (name == "sweep") return cmd_sweep(cfg, out);
    if (name == "decode") return cmd_decode(cfg, out);
    if (name == "verify") return cmd_verify(cfg, out);
    return cmd_circuit(cfg, out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "qvalab: %s\n", e.what());
    return kExitBadConfig;
  } catch (const qvalab::SizeLimitError& e) {
    std::fprintf(stderr, "qvalab: %s\n", e.what());
    return kExitBadConfig;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "qvalab: %s\n", e.what());
    return kExitBadConfig;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
