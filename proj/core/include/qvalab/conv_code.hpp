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
#include <string_view>
#include <vector>

#include "qvalab/bits.hpp"
#include "qvalab/hmm.hpp"
#include "qvalab/random.hpp"

namespace qvalab {

/// Encoder shift-register contents, k*m bits.
///
/// Layout: the most recent message block sits in the most significant k bits,
/// and within a block the first input line is the more significant bit. For a
/// (2,1) code with m = 2 the state "c1 c2" has cell 1 (newest) as the MSB, so
/// from 00 an input 1 leads to 10.
using EncoderState = std::uint32_t;

struct Transition {
  EncoderState from = 0;
  Symbol input = 0;   ///< k bits
  EncoderState to = 0;
  Symbol output = 0;  ///< n bits, first code bit is the MSB

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Binary (n, k) convolutional code with memory m.
class ConvCode {
 public:
  /// `generators` is the k x n generator matrix in row-major order; entry
  /// (i, j) is a polynomial bitmask whose bit d is the coefficient of x^d.
  /// Every degree must be <= m and at least one must equal m.
  ConvCode(int k, int n, int m, std::vector<std::uint32_t> generators);

  /// Parses "k,n,m;g11,g12,..." with octal polynomial masks, e.g. "1,2,2;5,7"
  /// for G(x) = [1 + x^2, 1 + x + x^2].
  static ConvCode parse(std::string_view spec);
  /// Inverse of parse.
  std::string spec() const;

  int k() const { return k_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int register_bits() const { return k_ * m_; }
  int num_states() const { return 1 << (k_ * m_); }
  int fanout() const { return 1 << k_; }
  std::uint32_t generator(int input_line, int output_line) const;

  /// Deterministic successor and output block.
  Transition step(EncoderState from, Symbol input) const;
  EncoderState next_state(EncoderState from, Symbol input) const;

  /// All num_states * 2^k transitions ordered by (from, input).
  std::vector<Transition> state_diagram() const;

  /// Walks the state diagram; message length must be a multiple of k.
  Bits encode(std::span<const std::uint8_t> message,
              EncoderState initial = 0) const;

  /// HMM over encoder states with n-bit receive blocks as emissions, a uniform
  /// 2^-k message prior and BSC emission probabilities
  /// eps^d (1 - eps)^(n - d). Requires 0 < eps < 0.5.
  Hmm to_hmm(double epsilon, EncoderState initial = 0) const;

  /// k*m-character '0'/'1' label for a state.
  std::string format_state(EncoderState s) const;

 private:
  int k_;
  int n_;
  int m_;
  std::vector<std::uint32_t> generators_;
};

/// Hamming distance between the edge output and a received block; this is
/// the number of channel errors the edge implies.
int error_count(const Transition& t, Symbol received_block);
/// Bit-string form; the block must have exactly `n` bits.
int error_count(const Transition& t, std::span<const std::uint8_t> received_block,
                int n);

struct TransmitResult {
  Bits received;
  int flips = 0;
};

/// Memoryless binary symmetric channel. Owns its generator, so one instance
/// must not be shared between threads; clone with distinct seeds instead.
class BscChannel {
 public:
  /// epsilon in [0, 0.5); 0 is a noiseless channel.
  BscChannel(double epsilon, std::uint64_t seed);

  double epsilon() const { return epsilon_; }
  std::uint64_t seed() const { return seed_; }

  TransmitResult transmit(std::span<const std::uint8_t> codeword);

 private:
  double epsilon_;
  std::uint64_t seed_;
  Rng rng_;
};

}  // namespace qvalab
