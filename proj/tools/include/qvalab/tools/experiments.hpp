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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qvalab::tools {

/// Exit statuses shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadConfig = 2;

/// Invalid or inconsistent configuration; maps to kExitBadConfig.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string command;                 ///< table | sweep | decode | verify | circuit
  std::string code = "1,2,2;5,7";
  int n_steps = 4;
  int n_min = 3;
  int n_max = 10;
  double epsilon = 0.0;
  std::string mode = "classical";      ///< classical | iterated-qva | probabilistic-qva
  double omega = -1.0;                 ///< < 0: pick by sweeping the zero word
  int iterations = 0;                  ///< 0: ceil(pi/4 sqrt(F^N))
  int trials = 0;                      ///< 0: 7 for iterated, the trial formula for probabilistic
  int max_errors = -1;                 ///< >= 0 switches iterated decoding to error classes
  double e0 = 0.8;
  double target_failure = 0.1353352832366127;
  std::uint64_t seed = 1;
  double grid = 0.005;
  int blocks = 100;
  int threads = 0;                     ///< 0: hardware concurrency
  std::string received;                ///< bit string; empty means the zero word
  std::string circuit = "v00";         ///< v00 | block | chain | diffusion
  std::string fault;                   ///< verify only: "" | diffusion-sign
  std::string out;                     ///< empty: stdout
  std::string csv;                     ///< decode: optional results CSV path
  std::string reference;               ///< reference-table fixture

  /// Throws ConfigError on out-of-range or unknown values.
  void validate() const;
};

/// Overlays keys of `doc` onto `cfg`. Accepts a bare config object or an
/// ExperimentRecord, whose "config" member is used. Unknown keys and type
/// mismatches raise ConfigError.
void apply_json(ExperimentConfig& cfg, const nlohmann::json& doc);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// %.12g in the C locale.
std::string format_number(double x);

/// Reference values loaded from the versioned fixture.
struct ReferenceRow {
  int n_steps = 0;
  int iterations = 0;
  double omega_star = 0.0;
  double prob = 0.0;
};

struct ReferenceTable {
  int version = 0;
  std::string code;
  std::vector<ReferenceRow> rows;
  std::vector<std::pair<int, std::uint64_t>> zero_word_multiset;  ///< (errors, count)
  int multiset_steps = 0;

  const ReferenceRow* find(int n_steps) const;
};

ReferenceTable load_reference(const std::string& path);

/// Compiled-in fixture location.
std::string default_reference_path();
std::string version_string();

int cmd_table(const ExperimentConfig& cfg, std::ostream& out);
int cmd_sweep(const ExperimentConfig& cfg, std::ostream& out);

struct DecodeRow {
  std::uint64_t block = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1;
  std::uint64_t mode = 0;        ///< decoded path index
  std::uint64_t mode_count = 0;
  bool correct = false;          ///< decoded message equals the sent one
  std::string message;
  std::string received;
  std::string decoded;
  int flips = 0;
  int distance = 0;              ///< decoded codeword vs received word
  bool ml = false;               ///< distance is the minimum over all paths
  bool failure = false;          ///< decoder signalled failure
};

struct DecodeSummary {
  ExperimentConfig resolved;     ///< auto parameters filled in
  std::vector<DecodeRow> rows;   ///< ordered by block index
  std::uint64_t block_errors = 0;
  std::uint64_t failures = 0;
  double seconds = 0.0;

  double block_error_rate() const;
};

DecodeSummary run_decode(const ExperimentConfig& cfg);
void write_decode_csv(std::ostream& out, const std::vector<DecodeRow>& rows);
nlohmann::json decode_record(const DecodeSummary& s);
int cmd_decode(const ExperimentConfig& cfg, std::ostream& out);

struct CheckResult {
  std::string name;
  double value = 0.0;      ///< measured deviation or mismatch count
  double tolerance = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_verify(const ExperimentConfig& cfg);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

int cmd_circuit(const ExperimentConfig& cfg, std::ostream& out);

}  // namespace qvalab::tools
