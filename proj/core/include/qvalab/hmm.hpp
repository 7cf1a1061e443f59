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
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qvalab {

/// Probabilities are reals in [0, 1]; row sums are checked to this slack.
inline constexpr double kStochasticTolerance = 1e-12;

/// One sparse table entry: (from, to, emission) -> probability.
struct ProbEntry {
  int from = 0;
  int to = 0;
  int emission = 0;
  double p = 0.0;
};

/// Hidden Markov model with emissions attached to transitions.
///
/// trans(i, j, y) holds P(i, j | y) and emit(i, j, y) holds P(y | i, j).
/// Tables are sparse; entries that were never set read as 0. The object is
/// immutable once constructed and can be shared across threads.
class Hmm {
 public:
  /// Throws std::domain_error on out-of-range indices, probabilities outside
  /// [0, 1], or an initial vector that does not sum to 1. Row stochasticity
  /// is not enforced here; see check_row_stochastic.
  Hmm(int num_states, std::vector<std::string> emissions,
      std::span<const ProbEntry> trans, std::span<const ProbEntry> emit,
      std::vector<double> initial);

  /// Same as above with a point-mass initial distribution on `start`.
  static Hmm with_point_start(int num_states, std::vector<std::string> emissions,
                              std::span<const ProbEntry> trans,
                              std::span<const ProbEntry> emit, int start = 0);

  int num_states() const { return num_states_; }
  int num_emissions() const { return static_cast<int>(emissions_.size()); }
  const std::vector<std::string>& emissions() const { return emissions_; }
  const std::vector<double>& initial() const { return initial_; }

  double trans(int i, int j, int y) const;
  double emit(int i, int j, int y) const;

  /// States j with a nonzero transition from i under some emission, ascending.
  std::span<const int> successors(int i) const;

  /// Index of an emission label, or -1.
  int emission_index(const std::string& label) const;

  /// The stored tables as entry lists sorted by (from, to, emission).
  std::vector<ProbEntry> trans_entries() const;
  std::vector<ProbEntry> emit_entries() const;

  /// {"num_states", "emissions", "trans": [[i,j,y,p]...], "emit", "initial"}.
  static Hmm from_json(const nlohmann::json& doc);
  nlohmann::json to_json() const;

 private:
  void check_indices(int i, int j, int y) const;
  std::uint64_t key(int i, int j, int y) const;
  static std::vector<ProbEntry> entries(
      const std::unordered_map<std::uint64_t, double>& table, int num_states,
      int num_emissions);

  int num_states_;
  std::vector<std::string> emissions_;
  std::unordered_map<std::uint64_t, double> trans_;
  std::unordered_map<std::uint64_t, double> emit_;
  std::vector<double> initial_;
  std::vector<std::vector<int>> successors_;
};

/// P_{i,j}(y) = P(i,j|y) P(y|i,j). Out-of-range indices are a domain error.
double joint_prob(const Hmm& h, int i, int j, int y);

struct StochasticityReport {
  bool pass = true;
  double residual = 0.0;  ///< max |row sum - 1|
  int worst_state = -1;
  int worst_emission = -1;
};

/// Every (i, y) row of trans sums to 1.
StochasticityReport check_row_stochastic(const Hmm& h);

/// Every (i, y) row of the joint P_{i,j}(y) sums to 1. This is the condition
/// under which path probabilities can be loaded as amplitudes directly.
StochasticityReport check_doubly_normalized(const Hmm& h);

struct FanoutReport {
  std::vector<int> per_state;  ///< max over y of successors reachable under y
  int fanout = 0;              ///< max over states
};

FanoutReport fanout(const Hmm& h);

}  // namespace qvalab
