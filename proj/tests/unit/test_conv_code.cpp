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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "qvalab/conv_code.hpp"

namespace qvalab {
namespace {

const ConvCode& ref_code() {
  static const ConvCode code = ConvCode::parse("1,2,2;5,7");
  return code;
}

Bits random_bits(std::mt19937_64& gen, std::size_t n) {
  Bits b(n);
  for (auto& x : b) x = static_cast<std::uint8_t>(gen() & 1u);
  return b;
}

// k-input oracle: out_j[t] = XOR_i XOR_d g_ij[d] u_i[t - d], u_i[t] = msg[t k + i].
Bits multi_input_oracle(const ConvCode& c, const Bits& msg) {
  const std::size_t k = static_cast<std::size_t>(c.k());
  const std::size_t steps = msg.size() / k;
  Bits out;
  for (std::size_t t = 0; t < steps; ++t) {
    for (int j = 0; j < c.n(); ++j) {
      unsigned bit = 0;
      for (std::size_t i = 0; i < k; ++i) {
        const auto g = c.generator(static_cast<int>(i), j);
        for (std::size_t d = 0; d <= t && d <= static_cast<std::size_t>(c.m()); ++d) {
          if ((g >> d) & 1u) bit ^= msg[(t - d) * k + i];
        }
      }
      out.push_back(static_cast<std::uint8_t>(bit));
    }
  }
  return out;
}

TEST(ConvCode, ParseAndSpecRoundTrip) {
  const ConvCode& c = ref_code();
  EXPECT_EQ(c.k(), 1);
  EXPECT_EQ(c.n(), 2);
  EXPECT_EQ(c.m(), 2);
  EXPECT_EQ(c.num_states(), 4);
  EXPECT_EQ(c.generator(0, 0), 05u);
  EXPECT_EQ(c.generator(0, 1), 07u);
  EXPECT_EQ(c.spec(), "1,2,2;5,7");
  EXPECT_EQ(ConvCode::parse(" 1, 3 ,3 ; 13,15,17").spec(), "1,3,3;13,15,17");
}

TEST(ConvCode, RejectsBadParameters) {
  EXPECT_THROW(ConvCode::parse("1,2,2;5"), std::domain_error);
  EXPECT_THROW(ConvCode::parse("1,2,2;5,9"), std::domain_error);   // not octal
  EXPECT_THROW(ConvCode::parse("1,2;5,7"), std::domain_error);
  EXPECT_THROW(ConvCode::parse("1,2,2;5,17"), std::domain_error);  // degree 3 > m
  EXPECT_THROW(ConvCode::parse("1,2,2;1,3"), std::domain_error);   // no degree m
  EXPECT_THROW(ConvCode(0, 2, 2, {5, 7}), std::domain_error);
  EXPECT_THROW(ConvCode(1, 2, 25, {1u << 25, 1}), std::domain_error);
}

TEST(ConvCode, ReferenceStateDiagram) {
  // (from, input, to, output) with states written as register bits, newest first
  const std::vector<Transition> expected{
      {0b00, 0, 0b00, 0b00}, {0b00, 1, 0b10, 0b11}, {0b01, 0, 0b00, 0b11},
      {0b01, 1, 0b10, 0b00}, {0b10, 0, 0b01, 0b01}, {0b10, 1, 0b11, 0b10},
      {0b11, 0, 0b01, 0b10}, {0b11, 1, 0b11, 0b01}};
  EXPECT_EQ(ref_code().state_diagram(), expected);
  EXPECT_EQ(ref_code().format_state(0b10), "10");
}

TEST(ConvCode, EncodeExamples) {
  const ConvCode& c = ref_code();
  EXPECT_EQ(format_bits(c.encode(parse_bits("1000")), 2), "11 01 11 00");
  EXPECT_EQ(format_bits(c.encode(parse_bits("0010")), 2), "00 00 11 01");
  EXPECT_EQ(format_bits(c.encode(parse_bits("0001")), 2), "00 00 00 11");
}

TEST(ConvCode, EncodeMatchesConvolutionOracle) {
  std::mt19937_64 gen(5);
  const std::vector<std::vector<std::uint32_t>> codes{
      {05, 07}, {013, 015, 017}, {023, 035}, {0133, 0171}};
  for (const auto& gens : codes) {
    int m = 0;
    for (auto g : gens) m = std::max(m, static_cast<int>(std::bit_width(g)) - 1);
    const ConvCode c(1, static_cast<int>(gens.size()), m, gens);
    for (int trial = 0; trial < 50; ++trial) {
      const Bits msg = random_bits(gen, 1 + gen() % 40);
      EXPECT_EQ(c.encode(msg), oracle::convolve_encode(gens, msg));
    }
  }
}

TEST(ConvCode, MultiInputEncodeMatchesOracle) {
  std::mt19937_64 gen(8);
  for (const char* spec : {"2,3,1;1,2,3,2,1,3", "2,3,2;7,1,4,2,5,3", "3,4,1;1,0,0,1,0,1,0,1,0,0,1,3"}) {
    const ConvCode c = ConvCode::parse(spec);
    for (int trial = 0; trial < 50; ++trial) {
      const Bits msg = random_bits(gen, static_cast<std::size_t>(c.k()) * (1 + gen() % 12));
      EXPECT_EQ(c.encode(msg), multi_input_oracle(c, msg)) << spec;
    }
  }
}

TEST(ConvCode, EncodeIsLinear) {
  std::mt19937_64 gen(9);
  const ConvCode& c = ref_code();
  for (int trial = 0; trial < 100; ++trial) {
    const Bits a = random_bits(gen, 16), b = random_bits(gen, 16);
    Bits sum(16);
    for (std::size_t i = 0; i < 16; ++i) sum[i] = a[i] ^ b[i];
    const Bits ea = c.encode(a), eb = c.encode(b), es = c.encode(sum);
    for (std::size_t i = 0; i < es.size(); ++i) ASSERT_EQ(es[i], ea[i] ^ eb[i]);
  }
  EXPECT_EQ(c.encode(Bits(10, 0)), Bits(20, 0));
}

TEST(ConvCode, DiagramIsComplete) {
  const ConvCode c = ConvCode::parse("2,3,2;7,1,4,2,5,3");
  const auto diagram = c.state_diagram();
  ASSERT_EQ(diagram.size(), static_cast<std::size_t>(c.num_states() * c.fanout()));
  std::vector<int> in_degree(static_cast<std::size_t>(c.num_states()), 0);
  for (const auto& t : diagram) ++in_degree[t.to];
  for (int d : in_degree) EXPECT_EQ(d, c.fanout());
}

TEST(ConvCode, ToHmmEmissionTable) {
  const Hmm h = ref_code().to_hmm(0.1);
  EXPECT_EQ(h.num_emissions(), 4);
  EXPECT_EQ(h.emissions(), (std::vector<std::string>{"00", "01", "10", "11"}));
  // 00 -> 10 emits 11
  EXPECT_NEAR(h.emit(0b00, 0b10, h.emission_index("11")), 0.81, 1e-15);
  EXPECT_NEAR(h.emit(0b00, 0b10, h.emission_index("01")), 0.09, 1e-15);
  EXPECT_NEAR(h.emit(0b00, 0b10, h.emission_index("00")), 0.01, 1e-15);
  EXPECT_DOUBLE_EQ(h.trans(0b00, 0b10, 0), 0.5);
  EXPECT_EQ(h.trans(0b00, 0b01, 0), 0.0);
  EXPECT_THROW(ref_code().to_hmm(0.0), std::domain_error);
  EXPECT_THROW(ref_code().to_hmm(0.5), std::domain_error);
}

TEST(ErrorCount, Examples) {
  const Transition edge = ref_code().step(0b00, 1);  // output 11
  EXPECT_EQ(error_count(edge, Symbol{0b11}), 0);
  EXPECT_EQ(error_count(edge, Symbol{0b00}), 2);
  EXPECT_EQ(error_count(edge, Bits{0, 1}, 2), 1);
  EXPECT_THROW(error_count(edge, Bits{0, 1, 1}, 2), std::domain_error);
}

TEST(BscChannel, FlipRateMatchesEpsilon) {
  BscChannel ch(0.1, 2024);
  const Bits zeros(1'000'000, 0);
  const auto r = ch.transmit(zeros);
  int ones = 0;
  for (auto b : r.received) ones += b;
  EXPECT_EQ(ones, r.flips);
  EXPECT_NEAR(r.flips / 1e6, 0.1, 0.001);
}

TEST(BscChannel, PinnedOutputForSeed) {
  // Regression pin for the mt19937_64 stream and the uniform() < eps rule.
  BscChannel ch(0.1, 2);
  const auto r = ch.transmit(parse_bits("11011100"));
  EXPECT_EQ(format_bits(r.received), "11011101");
  EXPECT_EQ(r.flips, 1);
}

TEST(BscChannel, DeterministicPerSeedAndNoiselessAtZero) {
  const Bits word(64, 0);
  BscChannel a(0.2, 17), b(0.2, 17), c(0.2, 18);
  const auto ra = a.transmit(word);
  EXPECT_EQ(ra.received, b.transmit(word).received);
  EXPECT_NE(ra.received, c.transmit(word).received);
  BscChannel clean(0.0, 1);
  EXPECT_EQ(clean.transmit(word).flips, 0);
  EXPECT_THROW(BscChannel(0.5, 1), std::domain_error);
  EXPECT_THROW(BscChannel(-0.1, 1), std::domain_error);
}

}  // namespace
}  // namespace qvalab
