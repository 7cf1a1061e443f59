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

#include "qvalab/tools/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <thread>

#include "qvalab/errors.hpp"
#include "qvalab/gate_circuit.hpp"
#include "qvalab/prob_qva.hpp"
#include "qvalab/qva.hpp"
#include "qvalab/viterbi.hpp"

namespace qvalab::tools {

namespace {

using json = nlohmann::json;

const std::vector<std::string> kCommands{"table", "sweep", "decode", "verify", "circuit"};
const std::vector<std::string> kModes{"classical", "iterated-qva", "probabilistic-qva"};
const std::vector<std::string> kCircuits{"v00", "block", "chain", "diffusion"};
const std::vector<std::string> kFaults{"", "diffusion-sign"};

bool one_of(const std::string& v, const std::vector<std::string>& options) {
  return std::find(options.begin(), options.end(), v) != options.end();
}

template <typename T>
std::function<void(const json&)> setter(T& field) {
  return [&field](const json& v) { field = v.get<T>(); };
}

ConvCode parse_code(const std::string& spec) {
  try {
    return ConvCode::parse(spec);
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("code: ") + e.what());
  }
}

// Received word as blocks; the zero word of `steps` blocks when empty.
std::vector<Symbol> received_blocks(const ConvCode& code, const std::string& bits, int steps) {
  if (bits.empty()) return std::vector<Symbol>(static_cast<std::size_t>(steps), 0);
  try {
    return pack_blocks(parse_bits(bits), code.n());
  } catch (const std::domain_error& e) {
    throw ConfigError(std::string("received: ") + e.what());
  }
}

std::size_t path_count(const ConvCode& code, int steps) {
  const int bits = code.k() * steps;
  if (bits > 24) throw ConfigError("n_steps: path space exceeds 2^24 paths");
  return std::size_t{1} << bits;
}

std::size_t index_of(const Bits& message) {
  std::size_t idx = 0;
  for (auto b : message) idx = (idx << 1) | b;
  return idx;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!command.empty() && !one_of(command, kCommands)) {
    throw ConfigError("unknown command '" + command + "'");
  }
  const ConvCode c = parse_code(code);
  if (n_steps < 1) throw ConfigError("n_steps must be >= 1");
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw ConfigError("epsilon must be in [0, 0.5)");
  if (!one_of(mode, kModes)) throw ConfigError("unknown mode '" + mode + "'");
  if (!(omega < 0.0 || omega <= std::numbers::pi)) throw ConfigError("omega must be in [0, pi]");
  if (iterations < 0) throw ConfigError("iterations must be >= 0");
  if (trials < 0) throw ConfigError("trials must be >= 0");
  if (max_errors < -1) throw ConfigError("max_errors must be >= -1");
  if (!(e0 > 0.0 && e0 < 1.0)) throw ConfigError("e0 must be in (0, 1)");
  if (!(target_failure > 0.0 && target_failure <= 1.0)) {
    throw ConfigError("target_failure must be in (0, 1]");
  }
  if (!(grid > 0.0 && grid < 1.0)) throw ConfigError("grid must be in (0, 1)");
  if (blocks < 0) throw ConfigError("blocks must be >= 0");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (!one_of(circuit, kCircuits)) throw ConfigError("unknown circuit '" + circuit + "'");
  if (!one_of(fault, kFaults)) throw ConfigError("unknown fault '" + fault + "'");
  if (!received.empty()) {
    const auto rx = received_blocks(c, received, 0);
    if (parse_bits(received).size() % static_cast<std::size_t>(c.n()) != 0 || rx.empty()) {
      throw ConfigError("received: length must be a positive multiple of n");
    }
  }
  if (command == "decode" && mode == "probabilistic-qva" && epsilon <= 0.0) {
    throw ConfigError("probabilistic-qva needs epsilon > 0 to load amplitudes");
  }
  if (command == "table" && n_min <= n_max && (n_min < 3 || n_max > 12)) {
    throw ConfigError("table range must lie in [3, 12]");
  }
}

void apply_json(ExperimentConfig& cfg, const json& doc_in) {
  const json& doc = doc_in.contains("config") && doc_in.at("config").is_object()
                        ? doc_in.at("config")
                        : doc_in;
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  const std::map<std::string, std::function<void(const json&)>> fields{
      {"command", setter(cfg.command)},
      {"code", setter(cfg.code)},
      {"n_steps", setter(cfg.n_steps)},
      {"n_min", setter(cfg.n_min)},
      {"n_max", setter(cfg.n_max)},
      {"epsilon", setter(cfg.epsilon)},
      {"mode", setter(cfg.mode)},
      {"omega", setter(cfg.omega)},
      {"iterations", setter(cfg.iterations)},
      {"trials", setter(cfg.trials)},
      {"max_errors", setter(cfg.max_errors)},
      {"e0", setter(cfg.e0)},
      {"target_failure", setter(cfg.target_failure)},
      {"seed", setter(cfg.seed)},
      {"grid", setter(cfg.grid)},
      {"blocks", setter(cfg.blocks)},
      {"threads", setter(cfg.threads)},
      {"received", setter(cfg.received)},
      {"circuit", setter(cfg.circuit)},
      {"fault", setter(cfg.fault)},
      {"out", setter(cfg.out)},
      {"csv", setter(cfg.csv)},
      {"reference", setter(cfg.reference)},
  };
  for (const auto& [key, value] : doc.items()) {
    const auto it = fields.find(key);
    if (it == fields.end()) throw ConfigError("unknown config key '" + key + "'");
    try {
      it->second(value);
    } catch (const json::exception& e) {
      throw ConfigError("config key '" + key + "': " + e.what());
    }
  }
}

json to_json(const ExperimentConfig& cfg) {
  return json{{"command", cfg.command},
              {"code", cfg.code},
              {"n_steps", cfg.n_steps},
              {"n_min", cfg.n_min},
              {"n_max", cfg.n_max},
              {"epsilon", cfg.epsilon},
              {"mode", cfg.mode},
              {"omega", cfg.omega},
              {"iterations", cfg.iterations},
              {"trials", cfg.trials},
              {"max_errors", cfg.max_errors},
              {"e0", cfg.e0},
              {"target_failure", cfg.target_failure},
              {"seed", cfg.seed},
              {"grid", cfg.grid},
              {"blocks", cfg.blocks},
              {"threads", cfg.threads},
              {"received", cfg.received},
              {"circuit", cfg.circuit},
              {"fault", cfg.fault},
              {"reference", cfg.reference}};
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const ReferenceRow* ReferenceTable::find(int n_steps) const {
  for (const auto& r : rows) {
    if (r.n_steps == n_steps) return &r;
  }
  return nullptr;
}

ReferenceTable load_reference(const std::string& path_in) {
  const std::string path = path_in.empty() ? default_reference_path() : path_in;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open reference table '" + path + "'");
  ReferenceTable t;
  try {
    const json doc = json::parse(in);
    t.version = doc.at("version").get<int>();
    t.code = doc.at("code").get<std::string>();
    for (const auto& row : doc.at("table")) {
      t.rows.push_back({row.at("n_steps").get<int>(), row.at("iterations").get<int>(),
                        row.at("omega_star").get<double>(), row.at("prob").get<double>()});
    }
    if (doc.contains("zero_word_multiset")) {
      const auto& m = doc.at("zero_word_multiset");
      t.multiset_steps = m.at("n_steps").get<int>();
      for (const auto& [k, v] : m.at("counts").items()) {
        t.zero_word_multiset.emplace_back(std::stoi(k), v.get<std::uint64_t>());
      }
      std::sort(t.zero_word_multiset.begin(), t.zero_word_multiset.end());
    }
  } catch (const std::exception& e) {
    throw ConfigError("reference table '" + path + "': " + e.what());
  }
  if (t.version != 1) throw ConfigError("reference table: unsupported version");
  return t;
}

std::string default_reference_path() {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (fs::exists(QVALAB_REFERENCE_DEFAULT, ec)) return QVALAB_REFERENCE_DEFAULT;
  // installed layout: <prefix>/bin/qvalab next to <prefix>/share/qvalab
  const fs::path exe = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) {
    const fs::path installed = exe.parent_path().parent_path() / "share/qvalab/reference_table.json";
    if (fs::exists(installed, ec)) return installed.string();
  }
  return QVALAB_REFERENCE_DEFAULT;
}
std::string version_string() { return QVALAB_VERSION; }

// ---------------------------------------------------------------- table ----

int cmd_table(const ExperimentConfig& cfg, std::ostream& out) {
  const ConvCode code = parse_code(cfg.code);
  const ReferenceTable ref = load_reference(cfg.reference);
  out << "n_steps,ref_iterations,ref_omega_star,ref_prob,prob_at_ref,"
         "sweep_omega_star,sweep_prob,formula_iterations,formula_omega_star,"
         "formula_prob\n";
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    const std::size_t paths = path_count(code, n);
    const PathSpace ps = PathSpace::from_code(code, std::vector<Symbol>(static_cast<std::size_t>(n), 0));
    out << n;
    if (const ReferenceRow* r = ref.find(n)) {
      const double at_ref = run_qva(ps, {r->omega_star, r->iterations}).prob_top;
      const auto sw = sweep_omega(ps, r->iterations, cfg.grid);
      out << ',' << r->iterations << ',' << format_number(r->omega_star) << ','
          << format_number(r->prob) << ',' << format_number(at_ref) << ','
          << format_number(sw.omega_star) << ',' << format_number(sw.prob_at_star);
    } else {
      out << ",,,,,,";
    }
    const int it = grover_iterations(paths);
    const auto fsw = sweep_omega(ps, it, cfg.grid);
    out << ',' << it << ',' << format_number(fsw.omega_star) << ','
        << format_number(fsw.prob_at_star) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- sweep ----

int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const ConvCode code = parse_code(cfg.code);
  const auto rx = received_blocks(code, cfg.received, cfg.n_steps);
  const int steps = static_cast<int>(rx.size());
  const int it = cfg.iterations > 0 ? cfg.iterations : grover_iterations(path_count(code, steps));
  const PathSpace ps = PathSpace::from_code(code, rx);
  const auto sw = sweep_omega(ps, it, cfg.grid);
  out << "omega,iterations,prob_top,top_index\n";
  for (const auto& pt : sw.curve) {
    out << format_number(pt.omega) << ',' << it << ',' << format_number(pt.prob_top) << ','
        << pt.top_index << '\n';
  }
  return kExitOk;
}

// --------------------------------------------------------------- decode ----

double DecodeSummary::block_error_rate() const {
  return rows.empty() ? 0.0 : static_cast<double>(block_errors) / static_cast<double>(rows.size());
}

namespace {

struct Decoder {
  const ConvCode& code;
  const ExperimentConfig& cfg;  // resolved
  std::vector<ErrorClass> schedule;

  DecodeRow run(std::uint64_t block) const {
    DecodeRow row;
    row.block = block;
    row.seed = campaign_seed(cfg.seed, block);
    Rng rng(row.seed);
    Bits message(static_cast<std::size_t>(cfg.n_steps) * static_cast<std::size_t>(code.k()));
    for (auto& b : message) b = rng.bit();
    BscChannel channel(cfg.epsilon, rng.next());
    const auto tx = channel.transmit(code.encode(message));
    const auto rx = pack_blocks(tx.received, code.n());
    row.message = format_bits(message);
    row.received = format_bits(tx.received, code.n());
    row.flips = tx.flips;

    Bits decoded;
    int best = 0;
    if (cfg.mode == "classical") {
      const auto r = viterbi_decode(code, rx);
      decoded = r.message;
      best = *r.errors;
      row.trials = 1;
      row.mode = index_of(decoded);
      row.mode_count = 1;
    } else {
      const PathSpace ps = PathSpace::from_code(code, rx);
      best = *std::min_element(ps.errors().begin(), ps.errors().end());
      if (cfg.mode == "iterated-qva" && !schedule.empty()) {
        row.trials = static_cast<std::uint64_t>(cfg.trials);
        try {
          const auto r = adaptive_decode(code, rx, schedule, rng.next());
          row.mode = r.path_index;
          row.mode_count = r.mode_count;
          decoded = r.message;
        } catch (const DecodeFailure&) {
          row.failure = true;
        }
      } else {
        const PathStatevector state =
            cfg.mode == "iterated-qva"
                ? run_qva(ps, {cfg.omega, cfg.iterations}).state
                : amplitude_loaded_state(ps, cfg.epsilon);
        const DiscreteSampler sampler(state.probabilities());
        row.trials = static_cast<std::uint64_t>(cfg.trials);
        const auto t = run_trials(sampler, row.trials, rng);
        row.mode = t.mode;
        row.mode_count = t.mode_count;
        decoded = ps.message(t.mode);
      }
    }
    if (!row.failure) {
      row.decoded = format_bits(decoded);
      row.distance = hamming_distance(code.encode(decoded), tx.received);
      row.ml = row.distance == best;
      row.correct = decoded == message;
    }
    return row;
  }
};

ExperimentConfig resolve(const ExperimentConfig& cfg, const ConvCode& code) {
  ExperimentConfig r = cfg;
  r.command = "decode";
  if (r.mode == "classical") {
    r.trials = 1;
    return r;
  }
  const std::size_t paths = path_count(code, r.n_steps);
  if (r.mode == "iterated-qva") {
    if (r.iterations == 0) r.iterations = grover_iterations(paths);
    if (r.trials == 0) r.trials = 7;
    if (r.omega < 0.0 && r.max_errors < 0) {
      const PathSpace zero =
          PathSpace::from_code(code, std::vector<Symbol>(static_cast<std::size_t>(r.n_steps), 0));
      r.omega = sweep_omega(zero, r.iterations, r.grid).omega_star;
    }
  } else if (r.trials == 0) {
    r.trials = static_cast<int>(required_trials(r.n_steps, r.e0, r.target_failure));
  }
  return r;
}

}  // namespace

DecodeSummary run_decode(const ExperimentConfig& cfg_in) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConvCode code = parse_code(cfg_in.code);
  DecodeSummary s;
  s.resolved = resolve(cfg_in, code);
  Decoder dec{code, s.resolved, {}};
  if (s.resolved.mode == "iterated-qva" && s.resolved.max_errors >= 0) {
    ClassScheduleOptions opt;
    opt.grid = s.resolved.grid;
    dec.schedule = class_schedule(code, s.resolved.n_steps, s.resolved.max_errors,
                                  s.resolved.trials, opt);
  }

  const auto blocks = static_cast<std::size_t>(s.resolved.blocks);
  s.rows.resize(blocks);
  unsigned workers = s.resolved.threads > 0 ? static_cast<unsigned>(s.resolved.threads)
                                            : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(blocks, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t b = next++; b < blocks && !failed; b = next++) {
      try {
        s.rows[b] = dec.run(b);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  for (const auto& row : s.rows) {
    s.block_errors += !row.correct;
    s.failures += row.failure;
  }
  s.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return s;
}

void write_decode_csv(std::ostream& out, const std::vector<DecodeRow>& rows) {
  out << "campaign_id,seed,r,mode,mode_count,correct,message,received,decoded,"
         "flips,distance,ml,failure\n";
  for (const auto& r : rows) {
    out << r.block << ',' << r.seed << ',' << r.trials << ',' << r.mode << ','
        << r.mode_count << ',' << r.correct << ',' << r.message << ',' << r.received
        << ',' << r.decoded << ',' << r.flips << ',' << r.distance << ',' << r.ml << ','
        << r.failure << '\n';
  }
}

json decode_record(const DecodeSummary& s) {
  json results = json::array();
  json seeds = json::array();
  for (const auto& r : s.rows) {
    seeds.push_back(r.seed);
    results.push_back({{"campaign_id", r.block},
                       {"seed", r.seed},
                       {"r", r.trials},
                       {"mode", r.mode},
                       {"mode_count", r.mode_count},
                       {"correct", r.correct},
                       {"message", r.message},
                       {"received", r.received},
                       {"decoded", r.decoded},
                       {"flips", r.flips},
                       {"distance", r.distance},
                       {"ml", r.ml},
                       {"failure", r.failure}});
  }
  return json{{"kind", "qvalab-decode-record"},
              {"version", version_string()},
              {"config", to_json(s.resolved)},
              {"seeds", seeds},
              {"results", results},
              {"summary",
               {{"blocks", s.rows.size()},
                {"block_errors", s.block_errors},
                {"decode_failures", s.failures},
                {"block_error_rate", s.block_error_rate()}}},
              {"timing", {{"seconds", s.seconds}}}};
}

int cmd_decode(const ExperimentConfig& cfg, std::ostream& out) {
  const DecodeSummary s = run_decode(cfg);
  out << decode_record(s).dump(2) << '\n';
  if (!cfg.csv.empty()) {
    std::ofstream csv(cfg.csv, std::ios::binary);
    if (!csv) throw ConfigError("cannot write '" + cfg.csv + "'");
    write_decode_csv(csv, s.rows);
  }
  return kExitOk;
}

// --------------------------------------------------------------- verify ----

namespace {

std::vector<Symbol> word_blocks(std::size_t word, int steps, int n) {
  std::vector<Symbol> rx(static_cast<std::size_t>(steps));
  const Symbol mask = (Symbol{1} << n) - 1;
  for (int t = 0; t < steps; ++t) {
    rx[static_cast<std::size_t>(t)] =
        static_cast<Symbol>(word >> (n * (steps - 1 - t))) & mask;
  }
  return rx;
}

double omega_or(const ExperimentConfig& cfg, double fallback) {
  return cfg.omega >= 0.0 ? cfg.omega : fallback;
}

}  // namespace

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg) {
  const ConvCode code = parse_code(cfg.code);
  const ReferenceTable ref = load_reference(cfg.reference);
  const ConvCode ref_code = parse_code(ref.code);
  const double w = omega_or(cfg, 0.68);
  std::mt19937_64 gen(cfg.seed);
  std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
  std::vector<CheckResult> out;
  auto add = [&](std::string name, double value, double tol) {
    out.push_back({std::move(name), value, tol, value <= tol});
  };

  {
    int mismatches = 0;
    const int max_steps = std::max(1, std::min(8, 16 / code.k()));
    for (int trial = 0; trial < 300; ++trial) {
      const int n = 1 + static_cast<int>(gen() % static_cast<unsigned>(max_steps));
      std::vector<Symbol> rx(static_cast<std::size_t>(n));
      for (auto& y : rx) y = static_cast<Symbol>(gen() % (1u << code.n()));
      const auto v = viterbi_decode(code, rx);
      const auto b = brute_force_decode(code, rx);
      mismatches += *v.errors != *b.errors || v.path != b.path;
    }
    add("viterbi-vs-brute-force", mismatches, 0.0);
  }
  {
    double worst = 0.0;
    for (Symbol y = 0; y < (Symbol{1} << code.n()); ++y) {
      worst = std::max(worst, unitarity_defect(v_block(code, y, w)));
    }
    add("unitarity-v-block", worst, kUnitarityTolerance);
  }
  {
    std::normal_distribution<double> normal;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> t(2 + static_cast<std::size_t>(trial % 8));
      double n2 = 0.0;
      for (auto& x : t) {
        x = normal(gen);
        n2 += x * x;
      }
      for (auto& x : t) x /= std::sqrt(n2);
      const auto prep = u_psi(t);
      worst = std::max(worst, unitarity_defect(prep.unitary));
      for (std::size_t i = 0; i < t.size(); ++i) {
        worst = std::max(worst, std::abs(prep.unitary(static_cast<Eigen::Index>(i), 0) - t[i]));
      }
    }
    add("u-psi-first-column-and-unitarity", worst, kUnitarityTolerance);
  }
  {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 32; d *= 2) worst = std::max(worst, unitarity_defect(diffusion_unitary(d)));
    add("unitarity-diffusion", worst, kUnitarityTolerance);
  }
  if (ref_code.spec() == "1,2,2;5,7") {
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const double a = angle(gen);
      worst = std::max(worst, global_phase_distance(v00_circuit(a), v_block(ref_code, 0, a)));
    }
    add("v00-circuit-vs-v-block", worst, kUnitarityTolerance);
  }

  // Register-level chain against the path-level state, then the iterated
  // circuit (dense phases and U_psi-built diffusion) against the path engine.
  {
    const int b = code.register_bits();
    const int max_steps = std::min(3, kMaxDenseQubits / b - 1);
    const int iterations = cfg.iterations > 0 ? cfg.iterations : 3;
    double worst_chain = 0.0, worst_iter = 0.0;
    for (int n = 1; n <= max_steps; ++n) {
      for (std::size_t word = 0; word < (std::size_t{1} << (code.n() * n)); ++word) {
        const auto rx = word_blocks(word, n, code.n());
        const auto full = chain_state(code, rx, w);
        const PathSpace ps = PathSpace::from_code(code, rx);
        const auto path = g_phi(ps, h_superposition(ps), w);
        const auto l = static_cast<Eigen::Index>(ps.size());
        Eigen::VectorXcd circuit(l);
        double on_path = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
          const auto idx = register_index(ps.states(i), b);
          circuit(static_cast<Eigen::Index>(i)) = full[idx];
          on_path += std::norm(full[idx]);
          worst_chain = std::max(worst_chain, std::abs(full[idx] - path.amplitudes[i]));
        }
        worst_chain = std::max(worst_chain, std::abs(1.0 - on_path));

        const auto g = phase_vector(ps, w);
        Eigen::VectorXcd diag(l);
        for (Eigen::Index i = 0; i < l; ++i) diag(i) = g[static_cast<std::size_t>(i)];
        const DenseUnitary d = diffusion_unitary(ps.size());
        PathStatevector engine = path;
        for (int it = 0; it < iterations; ++it) {
          if (it > 0) {
            circuit = diag.cwiseProduct(circuit);
            engine = g_phi(ps, std::move(engine), w);
          }
          circuit = d * circuit;
          engine = g_diffusion(std::move(engine));
          if (cfg.fault == "diffusion-sign") {
            for (auto& a : engine.amplitudes) a = -a;
          }
        }
        for (Eigen::Index i = 0; i < l; ++i) {
          worst_iter = std::max(worst_iter, std::abs(circuit(i) - engine.amplitudes[static_cast<std::size_t>(i)]));
        }
      }
    }
    add("chain-vs-path", worst_chain, kUnitarityTolerance);
    add("circuit-vs-path-iterated", worst_iter, kUnitarityTolerance);
  }
  if (!ref.zero_word_multiset.empty()) {
    const auto got = path_metric_multiset(
        ref_code, std::vector<Symbol>(static_cast<std::size_t>(ref.multiset_steps), 0));
    const std::vector<std::pair<int, std::uint64_t>> flat(got.begin(), got.end());
    add("zero-word-multiset", flat == ref.zero_word_multiset ? 0.0 : 1.0, 0.0);
  }
  {
    double worst = 0.0;
    for (std::size_t l : {4u, 8u, 16u, 32u}) {
      for (int trial = 0; trial < 10; ++trial) {
        std::vector<Amplitude> g(l);
        for (auto& x : g) x = std::polar(1.0, 2.0 * angle(gen));
        const auto v = run_qva(g, 1);
        for (std::size_t t = 0; t < l; ++t) {
          worst = std::max(worst, std::abs(single_iteration_prob(g, t) - v.probability(t)));
        }
      }
    }
    add("single-iteration-formula", worst, 1e-12);
  }
  return out;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const auto checks = run_verify(cfg);
  bool ok = true;
  out << "check,value,tolerance,status\n";
  for (const auto& c : checks) {
    ok = ok && c.pass;
    out << c.name << ',' << format_number(c.value) << ',' << format_number(c.tolerance) << ','
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

// -------------------------------------------------------------- circuit ----

int cmd_circuit(const ExperimentConfig& cfg, std::ostream& out) {
  const ConvCode code = parse_code(cfg.code);
  const double w = omega_or(cfg, 0.68);
  DenseUnitary m;
  if (cfg.circuit == "v00") {
    m = v00_circuit(w);
  } else if (cfg.circuit == "block") {
    const auto rx = received_blocks(code, cfg.received, 1);
    m = v_block(code, rx.front(), w);
  } else if (cfg.circuit == "chain") {
    const auto rx = received_blocks(code, cfg.received, cfg.n_steps);
    try {
      m = chain_g_phi(code, rx, w);
    } catch (const SizeLimitError& e) {
      throw ConfigError(e.what());
    }
  } else {
    const std::size_t paths = path_count(code, cfg.n_steps);
    if (paths > 4096) throw ConfigError("diffusion: matrix too large to print");
    m = diffusion_unitary(paths);
  }
  write_matrix_csv(out, m);
  return kExitOk;
}

}  // namespace qvalab::tools
