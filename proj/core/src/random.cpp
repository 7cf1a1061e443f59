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

#include "qvalab/random.hpp"

#include <algorithm>
#include <stdexcept>

namespace qvalab {

namespace {

std::mt19937_64 seeded(std::uint64_t seed, std::uint64_t stream, bool split) {
  if (!split) return std::mt19937_64(seed);
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded(seed, 0, false)) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(seeded(seed, stream, true)) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint8_t Rng::bit() { return static_cast<std::uint8_t>(engine_() >> 63); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::domain_error("Rng::below: n must be positive");
  // Rejection keeps the result exactly uniform.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

DiscreteSampler::DiscreteSampler(std::span<const double> weights) {
  cdf_.reserve(weights.size());
  double acc = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw std::domain_error("DiscreteSampler: negative or NaN weight");
    }
    acc += w;
    cdf_.push_back(acc);
  }
  if (!(acc > 0.0)) {
    throw std::domain_error("DiscreteSampler: total weight must be positive");
  }
  std::size_t last = 0;
  for (std::size_t i = 0; i < cdf_.size(); ++i) {
    cdf_[i] /= acc;
    if (weights[i] > 0.0) last = i;
  }
  // Pin the tail so rounding can never select a trailing zero-weight entry.
  std::fill(cdf_.begin() + static_cast<std::ptrdiff_t>(last), cdf_.end(), 1.0);
}

std::size_t DiscreteSampler::draw(Rng& rng) const {
  const double u = rng.uniform();
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  // u < 1 == cdf_.back(), so it never reaches end().
  return static_cast<std::size_t>(it - cdf_.begin());
}

}  // namespace qvalab
