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

#include "qvalab/conv_code.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qvalab {

namespace {

constexpr int kMaxRegisterBits = 24;
constexpr int kMaxBlockBits = 16;

int degree(std::uint32_t poly) {
  return poly == 0 ? -1 : 31 - std::countl_zero(poly);
}

}  // namespace

ConvCode::ConvCode(int k, int n, int m, std::vector<std::uint32_t> generators)
    : k_(k), n_(n), m_(m), generators_(std::move(generators)) {
  if (k_ < 1 || n_ < 1 || m_ < 1) {
    throw std::domain_error("ConvCode: k, n, m must be positive");
  }
  if (n_ > kMaxBlockBits || k_ > kMaxBlockBits) {
    throw std::domain_error("ConvCode: block width too large");
  }
  if (k_ * m_ > kMaxRegisterBits) {
    throw std::domain_error("ConvCode: k*m exceeds the supported register size");
  }
  if (generators_.size() != static_cast<std::size_t>(k_ * n_)) {
    throw std::domain_error("ConvCode: expected k*n generator polynomials");
  }
  int max_degree = -1;
  for (std::uint32_t g : generators_) {
    if (degree(g) > m_) {
      throw std::domain_error("ConvCode: generator degree exceeds memory m");
    }
    max_degree = std::max(max_degree, degree(g));
  }
  if (max_degree != m_) {
    throw std::domain_error("ConvCode: no generator has degree exactly m");
  }
}

ConvCode ConvCode::parse(std::string_view spec) {
  const auto semi = spec.find(';');
  if (semi == std::string_view::npos) {
    throw std::domain_error("ConvCode::parse: expected 'k,n,m;g...'");
  }
  auto split = [](std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        out.push_back(cur);
        cur.clear();
      } else if (c != ' ') {
        cur.push_back(c);
      }
    }
    out.push_back(cur);
    return out;
  };
  auto to_int = [&](const std::string& s, int base) {
    if (s.empty()) throw std::domain_error("ConvCode::parse: empty field");
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &used, base);
    } catch (const std::exception&) {
      throw std::domain_error("ConvCode::parse: bad number '" + s + "'");
    }
    if (used != s.size() || v > 0xffffffffUL) {
      throw std::domain_error("ConvCode::parse: bad number '" + s + "'");
    }
    return static_cast<std::uint32_t>(v);
  };
  const auto head = split(spec.substr(0, semi));
  if (head.size() != 3) {
    throw std::domain_error("ConvCode::parse: header must be 'k,n,m'");
  }
  std::vector<std::uint32_t> gens;
  for (const auto& g : split(spec.substr(semi + 1))) gens.push_back(to_int(g, 8));
  return ConvCode(static_cast<int>(to_int(head[0], 10)),
                  static_cast<int>(to_int(head[1], 10)),
                  static_cast<int>(to_int(head[2], 10)), std::move(gens));
}

std::string ConvCode::spec() const {
  std::ostringstream os;
  os << k_ << ',' << n_ << ',' << m_ << ';';
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (i) os << ',';
    os << std::oct << generators_[i] << std::dec;
  }
  return os.str();
}

std::uint32_t ConvCode::generator(int input_line, int output_line) const {
  if (input_line < 0 || input_line >= k_ || output_line < 0 ||
      output_line >= n_) {
    throw std::domain_error("ConvCode::generator: index out of range");
  }
  return generators_[static_cast<std::size_t>(input_line * n_ + output_line)];
}

EncoderState ConvCode::next_state(EncoderState from, Symbol input) const {
  return (input << (k_ * (m_ - 1))) | (from >> k_);
}

Transition ConvCode::step(EncoderState from, Symbol input) const {
  if (from >= static_cast<EncoderState>(num_states())) {
    throw std::domain_error("ConvCode::step: state out of range");
  }
  if (input >= static_cast<Symbol>(fanout())) {
    throw std::domain_error("ConvCode::step: input block out of range");
  }
  Symbol output = 0;
  for (int j = 0; j < n_; ++j) {
    unsigned bit = 0;
    for (int i = 0; i < k_; ++i) {
      const std::uint32_t g = generators_[static_cast<std::size_t>(i * n_ + j)];
      const int line_bit = k_ - 1 - i;
      // delay 0 is the incoming block, delay d >= 1 is register cell d
      for (int d = 0; d <= m_; ++d) {
        if (!((g >> d) & 1u)) continue;
        const unsigned x = d == 0 ? (input >> line_bit) & 1u
                                  : (from >> ((m_ - d) * k_ + line_bit)) & 1u;
        bit ^= x;
      }
    }
    output |= bit << (n_ - 1 - j);
  }
  return {from, input, next_state(from, input), output};
}

std::vector<Transition> ConvCode::state_diagram() const {
  std::vector<Transition> out;
  out.reserve(static_cast<std::size_t>(num_states()) * fanout());
  for (EncoderState s = 0; s < static_cast<EncoderState>(num_states()); ++s) {
    for (Symbol u = 0; u < static_cast<Symbol>(fanout()); ++u) {
      out.push_back(step(s, u));
    }
  }
  return out;
}

Bits ConvCode::encode(std::span<const std::uint8_t> message,
                      EncoderState initial) const {
  if (message.size() % static_cast<std::size_t>(k_) != 0) {
    throw std::domain_error("ConvCode::encode: message length not divisible by k");
  }
  const auto inputs = pack_blocks(message, k_);
  std::vector<Symbol> outputs;
  outputs.reserve(inputs.size());
  EncoderState s = initial;
  for (Symbol u : inputs) {
    const Transition t = step(s, u);
    outputs.push_back(t.output);
    s = t.to;
  }
  return unpack_blocks(outputs, n_);
}

Hmm ConvCode::to_hmm(double epsilon, EncoderState initial) const {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::domain_error("ConvCode::to_hmm: epsilon must be in (0, 0.5)");
  }
  const int num_symbols = 1 << n_;
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(num_symbols));
  for (Symbol y = 0; y < static_cast<Symbol>(num_symbols); ++y) {
    const Symbol one = y;
    labels.push_back(format_bits(unpack_blocks(std::span(&one, 1), n_)));
  }
  const double prior = std::ldexp(1.0, -k_);
  std::vector<ProbEntry> trans;
  std::vector<ProbEntry> emit;
  for (const Transition& t : state_diagram()) {
    for (Symbol y = 0; y < static_cast<Symbol>(num_symbols); ++y) {
      const int d = error_count(t, y);
      const int from = static_cast<int>(t.from);
      const int to = static_cast<int>(t.to);
      const int sym = static_cast<int>(y);
      trans.push_back({from, to, sym, prior});
      emit.push_back({from, to, sym,
                      std::pow(epsilon, d) * std::pow(1.0 - epsilon, n_ - d)});
    }
  }
  return Hmm::with_point_start(num_states(), std::move(labels), trans, emit,
                               static_cast<int>(initial));
}

std::string ConvCode::format_state(EncoderState s) const {
  std::string out(static_cast<std::size_t>(register_bits()), '0');
  for (int b = 0; b < register_bits(); ++b) {
    if ((s >> (register_bits() - 1 - b)) & 1u) out[static_cast<std::size_t>(b)] = '1';
  }
  return out;
}

int error_count(const Transition& t, Symbol received_block) {
  return hamming_distance(t.output, received_block);
}

int error_count(const Transition& t, std::span<const std::uint8_t> received_block,
                int n) {
  if (static_cast<int>(received_block.size()) != n) {
    throw std::domain_error("error_count: received block length != n");
  }
  return error_count(t, pack_blocks(received_block, n).front());
}

BscChannel::BscChannel(double epsilon, std::uint64_t seed)
    : epsilon_(epsilon), seed_(seed), rng_(seed) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) {
    throw std::domain_error("BscChannel: epsilon must be in [0, 0.5)");
  }
}

TransmitResult BscChannel::transmit(std::span<const std::uint8_t> codeword) {
  TransmitResult out{Bits(codeword.begin(), codeword.end()), 0};
  for (auto& b : out.received) {
    if (rng_.uniform() < epsilon_) {
      b ^= 1u;
      ++out.flips;
    }
  }
  return out;
}

}  // namespace qvalab
