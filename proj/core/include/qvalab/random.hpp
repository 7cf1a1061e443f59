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
#include <random>
#include <span>

namespace qvalab {

/// Seeded generator with a pinned output mapping.
///
/// The standard distributions are implementation-defined, so everything that
/// feeds a persisted result draws through these members instead. Streams for
/// parallel work are derived from (seed, stream) through std::seed_seq, whose
/// algorithm is fixed by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Fair coin.
  std::uint8_t bit();
  /// Uniform on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Inverse-CDF sampler over a fixed discrete distribution.
class DiscreteSampler {
 public:
  /// Weights need not be normalized; at least one must be positive.
  explicit DiscreteSampler(std::span<const double> weights);

  std::size_t draw(Rng& rng) const;
  std::size_t size() const { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

}  // namespace qvalab
