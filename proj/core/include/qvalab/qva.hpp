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

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qvalab/bits.hpp"
#include "qvalab/conv_code.hpp"
#include "qvalab/hmm.hpp"

namespace qvalab {

using Amplitude = std::complex<double>;

/// Path-space simulations refuse more than this many admissible paths.
inline constexpr std::size_t kMaxPathSpace = std::size_t{1} << 24;

/// Norm drift allowed after unitary steps.
inline constexpr double kUnitarityTolerance = 1e-10;

/// The admissible length-N paths through a trellis, each with the exponent of
/// the phase unit that marks it.
///
/// For code spaces the exponent is the path's total channel-error count and
/// path index i is the N*k input bits read as an integer, first block most
/// significant. From a fixed start state that order coincides with the
/// lexicographic order of state sequences. For general HMM spaces the
/// exponent is -ln prod P_{i,j}(y) and paths are listed lexicographically.
class PathSpace {
 public:
  /// Throws SizeLimitError when F^N > kMaxPathSpace and std::domain_error on
  /// an empty received sequence.
  static PathSpace from_code(const ConvCode& code,
                             std::span<const Symbol> received,
                             EncoderState initial = 0);
  static PathSpace from_hmm(const Hmm& h, std::span<const int> emissions,
                            int initial_state);

  std::size_t size() const { return weights_.size(); }
  std::size_t steps() const { return steps_; }
  bool is_code() const { return code_.has_value(); }
  const ConvCode& code() const;
  std::span<const Symbol> received() const { return received_; }
  int initial_state() const { return initial_; }

  std::span<const double> weights() const { return weights_; }
  /// Integer error counts; code spaces only.
  std::span<const int> errors() const;

  /// N + 1 states of path `index`.
  std::vector<int> states(std::size_t index) const;
  /// Input bits of path `index`; code spaces only.
  Bits message(std::size_t index) const;
  /// Smallest index with minimal weight (the classical Viterbi path).
  std::size_t optimal_index() const;

 private:
  PathSpace() = default;

  std::optional<ConvCode> code_;
  std::vector<Symbol> received_;
  int initial_ = 0;
  std::size_t steps_ = 0;
  std::vector<double> weights_;
  std::vector<int> errors_;
  std::vector<int> hmm_paths_;  // (N + 1) states per path, HMM spaces only
};

/// Complex amplitude per admissible path.
struct PathStatevector {
  std::vector<Amplitude> amplitudes;

  std::size_t size() const { return amplitudes.size(); }
  double norm() const;
  double probability(std::size_t i) const { return std::norm(amplitudes.at(i)); }
  std::vector<double> probabilities() const;
};

struct QvaParams {
  double omega = 0.0;  ///< phase unit, p = e^{i omega}
  int iterations = 1;  ///< applications of marking followed by diffusion

  /// omega in [0, pi], iterations >= 1.
  void validate() const;
};

/// Equal superposition, every amplitude 1/sqrt(L).
PathStatevector h_superposition(const PathSpace& ps);

/// Diagonal of the marking operator: e^{i omega w} per path.
std::vector<Amplitude> phase_vector(const PathSpace& ps, double omega);

/// Multiplies amplitude i by e^{i omega w_i}.
PathStatevector g_phi(const PathSpace& ps, PathStatevector v, double omega);

/// Inversion about the mean on the admissible subspace, 2|s><s| - I:
/// a_i <- (2/L) sum_j a_j - a_i. Its first row is (-(L-2)/L, 2/L, ..., 2/L).
PathStatevector g_diffusion(PathStatevector v);

struct QvaRun {
  PathStatevector state;
  double prob_top = 0.0;          ///< probability of the classical optimum
  std::size_t optimal_index = 0;  ///< classical optimum (Viterbi path)
  std::size_t top_index = 0;      ///< argmax of the output distribution
};

/// Equal superposition, then `iterations` rounds of g_phi and g_diffusion.
QvaRun run_qva(const PathSpace& ps, const QvaParams& params);

/// Same iteration applied to an arbitrary marking diagonal; exposed so the
/// closed-form single-iteration probability can be checked against it.
PathStatevector run_qva(std::span<const Amplitude> diagonal, int iterations);

/// Probability of measuring `target` after one marking + diffusion round
/// from the equal superposition:
/// |g_t (L - 2) - 2 sum_{i != t} g_i|^2 / L^3. Requires L >= 2.
double single_iteration_prob(std::span<const Amplitude> g, std::size_t target);

/// ceil(pi/4 sqrt(L)).
int grover_iterations(std::size_t num_paths);

struct SweepPoint {
  double omega = 0.0;
  double prob_top = 0.0;
  std::size_t top_index = 0;
};

struct SweepResult {
  int iterations = 0;
  double omega_star = 0.0;
  double prob_at_star = 0.0;
  std::vector<SweepPoint> curve;  ///< grid points only, ascending omega
};

/// Grid search over (0, pi) with step `grid`, then golden-section refinement
/// around the best grid point to 1e-4. The objective is the probability of
/// the classical optimum after `iterations` rounds.
SweepResult sweep_omega(const PathSpace& ps, int iterations, double grid = 0.005);

/// Samples `shots` measurements; returns counts per path index.
std::vector<std::uint64_t> measure(const PathStatevector& v, std::uint64_t seed,
                                   std::uint64_t shots);

/// One entry of an adaptive decoding schedule.
struct ErrorClass {
  int error_budget = 0;  ///< accepted re-encoding distance
  double omega = 0.0;
  int iterations = 1;
  int trials = 1;
};

struct AdaptiveResult {
  Bits message;
  std::size_t path_index = 0;
  std::size_t accepted_class = 0;  ///< index into the schedule
  int error_budget = 0;
  int distance = 0;  ///< Hamming distance of the re-encoded message
  std::uint64_t mode_count = 0;
};

/// For each class in order: `trials` independent runs measured once each,
/// take the mode (ties to the smaller index), accept when the re-encoded
/// mode is within the class's error budget of the received word. Throws
/// DecodeFailure when every class is rejected, std::domain_error on empty
/// input.
AdaptiveResult adaptive_decode(const ConvCode& code,
                               std::span<const Symbol> received,
                               std::span<const ErrorClass> schedule,
                               std::uint64_t seed, EncoderState initial = 0);

struct ClassScheduleOptions {
  double grid = 0.005;
  std::size_t max_patterns = 16;  ///< representative error patterns per class
};

/// One ErrorClass per error count e = 0..max_errors. Each class's omega
/// maximizes the mean probability of the classical optimum over
/// representative received words carrying e flips on the zero codeword, at
/// grover_iterations(2^{kN}) rounds.
std::vector<ErrorClass> class_schedule(const ConvCode& code, int steps,
                                       int max_errors, int trials,
                                       const ClassScheduleOptions& options = {});

}  // namespace qvalab
