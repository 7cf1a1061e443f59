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
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qvalab/bits.hpp"
#include "qvalab/conv_code.hpp"
#include "qvalab/hmm.hpp"

namespace qvalab {

/// Exhaustive enumeration refuses trellises with more than this many paths.
inline constexpr std::uint64_t kMaxEnumeratedPaths = std::uint64_t{1} << 24;

/// Slack for comparing negative log-probability metrics of general HMMs.
inline constexpr double kMetricSlack = 1e-12;

struct DecodeResult {
  std::vector<int> path;      ///< N + 1 states, starting with the initial state
  Bits message;               ///< decoded input bits (code decoding only)
  double metric = 0.0;        ///< error count, or -log P for general HMMs
  std::optional<int> errors;  ///< integer error count (code decoding only)
  std::uint64_t ties = 0;     ///< number of co-optimal paths (saturating)
};

/// Most probable state sequence given the emissions, starting from
/// `initial_state`. The metric is -log prod P_{i,j}(y). Among co-optimal
/// paths the lexicographically smallest state sequence is returned.
/// Throws NoPathError when no admissible path exists.
DecodeResult viterbi_decode(const Hmm& h, std::span<const int> emissions,
                            int initial_state);

/// Hard-decision decoding of a convolutional code: minimizes the total
/// Hamming distance to the received blocks with exact integer metrics.
DecodeResult viterbi_decode(const ConvCode& code,
                            std::span<const Symbol> received,
                            EncoderState initial = 0);

/// Exhaustive search over every admissible path. Test oracle; throws
/// SizeLimitError beyond kMaxEnumeratedPaths.
DecodeResult brute_force_decode(const Hmm& h, std::span<const int> emissions,
                                int initial_state);
DecodeResult brute_force_decode(const ConvCode& code,
                                std::span<const Symbol> received,
                                EncoderState initial = 0);

/// Multiset {error count of p : p admissible} as error count -> multiplicity.
std::map<int, std::uint64_t> path_metric_multiset(
    const ConvCode& code, std::span<const Symbol> received,
    EncoderState initial = 0);

}  // namespace qvalab
