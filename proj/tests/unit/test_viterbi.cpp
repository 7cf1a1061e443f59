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

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qvalab/errors.hpp"
#include "qvalab/viterbi.hpp"

namespace qvalab {
namespace {

const ConvCode& ref_code() {
  static const ConvCode code = ConvCode::parse("1,2,2;5,7");
  return code;
}

std::vector<Symbol> blocks(const char* text, int n = 2) {
  return pack_blocks(parse_bits(text), n);
}

TEST(Viterbi, WorkedExamples) {
  const ConvCode& c = ref_code();
  auto r = viterbi_decode(c, blocks("00 00 00 00"));
  EXPECT_EQ(format_bits(r.message), "0000");
  EXPECT_EQ(r.errors, 0);

  r = viterbi_decode(c, blocks("11 01 11 00"));
  EXPECT_EQ(format_bits(r.message), "1000");
  EXPECT_EQ(r.errors, 0);
  EXPECT_EQ(r.path, (std::vector<int>{0b00, 0b10, 0b01, 0b00, 0b00}));

  r = viterbi_decode(c, blocks("10 01 11 00"));
  EXPECT_EQ(format_bits(r.message), "1000");
  EXPECT_EQ(r.errors, 1);
  EXPECT_DOUBLE_EQ(r.metric, 1.0);
}

TEST(BruteForce, SmallExamples) {
  EXPECT_EQ(brute_force_decode(ref_code(), blocks("00 00")).errors, 0);
  // 0001 encodes to exactly this word
  const auto r = brute_force_decode(ref_code(), blocks("00 00 00 11"));
  EXPECT_EQ(r.errors, 0);
  EXPECT_EQ(format_bits(r.message), "0001");
  EXPECT_EQ(r.ties, 1u);
}

TEST(Viterbi, MetricEqualsEdgeErrorSum) {
  std::mt19937_64 gen(3);
  const ConvCode& c = ref_code();
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Symbol> rx(8);
    for (auto& y : rx) y = static_cast<Symbol>(gen() % 4);
    const auto r = viterbi_decode(c, rx);
    ASSERT_EQ(r.path.size(), rx.size() + 1);
    int sum = 0;
    for (std::size_t t = 0; t < rx.size(); ++t) {
      const Symbol u = r.message[t];
      const Transition edge = c.step(static_cast<EncoderState>(r.path[t]), u);
      ASSERT_EQ(static_cast<int>(edge.to), r.path[t + 1]);
      sum += error_count(edge, rx[t]);
    }
    EXPECT_EQ(r.errors, sum);
  }
}

TEST(Viterbi, AgreesWithBruteForceOnCodes) {
  std::mt19937_64 gen(1234);
  const std::vector<const char*> specs{"1,2,2;5,7", "1,3,3;13,15,17", "2,3,1;1,2,3,2,1,3"};
  for (int trial = 0; trial < 300; ++trial) {
    const ConvCode c = ConvCode::parse(specs[trial % specs.size()]);
    const int steps = 1 + static_cast<int>(gen() % (c.k() == 1 ? 10 : 6));
    std::vector<Symbol> rx(static_cast<std::size_t>(steps));
    for (auto& y : rx) y = static_cast<Symbol>(gen() % (1u << c.n()));
    const auto v = viterbi_decode(c, rx);
    const auto b = brute_force_decode(c, rx);
    ASSERT_EQ(v.errors, b.errors);
    ASSERT_EQ(v.path, b.path) << "lexicographic tie-break differs";
    ASSERT_EQ(v.ties, b.ties);
    ASSERT_EQ(v.message, b.message);
  }
}

TEST(Viterbi, AgreesWithConvolutionOracle) {
  std::mt19937_64 gen(77);
  const std::vector<std::uint32_t> gens{05, 07};
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t steps = 1 + gen() % 10;
    Bits rx(2 * steps);
    for (auto& b : rx) b = static_cast<std::uint8_t>(gen() & 1u);
    const auto errs = oracle::message_errors(gens, rx, steps);
    const int best = *std::min_element(errs.begin(), errs.end());
    const auto first = static_cast<std::size_t>(
        std::find(errs.begin(), errs.end(), best) - errs.begin());
    const auto r = viterbi_decode(ref_code(), pack_blocks(rx, 2));
    ASSERT_EQ(r.errors, best);
    ASSERT_EQ(r.ties, static_cast<std::uint64_t>(std::count(errs.begin(), errs.end(), best)));
    // With a point start, smallest state sequence is smallest message.
    ASSERT_EQ(r.message, oracle::index_bits(first, steps));
  }
}

Hmm random_hmm(std::mt19937_64& gen, int q, int z, double density) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<ProbEntry> trans, emit;
  for (int i = 0; i < q; ++i) {
    for (int j = 0; j < q; ++j) {
      for (int y = 0; y < z; ++y) {
        if (unit(gen) > density) continue;
        trans.push_back({i, j, y, unit(gen)});
        emit.push_back({i, j, y, 0.05 + 0.95 * unit(gen)});
      }
    }
  }
  std::vector<std::string> labels;
  for (int y = 0; y < z; ++y) labels.push_back("y" + std::to_string(y));
  return Hmm::with_point_start(q, labels, trans, emit);
}

TEST(Viterbi, AgreesWithBruteForceOnGeneralHmms) {
  std::mt19937_64 gen(99);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Hmm h = random_hmm(gen, 2 + static_cast<int>(gen() % 4), 2, 0.6);
    std::vector<int> ys(1 + gen() % 7);
    for (auto& y : ys) y = static_cast<int>(gen() % 2);
    DecodeResult b;
    try {
      b = brute_force_decode(h, ys, 0);
    } catch (const NoPathError&) {
      EXPECT_THROW(viterbi_decode(h, ys, 0), NoPathError);
      continue;
    }
    const auto v = viterbi_decode(h, ys, 0);
    ASSERT_NEAR(v.metric, b.metric, 1e-9 * std::max(1.0, b.metric));
    ASSERT_EQ(v.path, b.path);
    EXPECT_FALSE(v.errors.has_value());
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Viterbi, UnreachableTrellisRaises) {
  const std::vector<ProbEntry> t{{0, 1, 0, 1.0}, {1, 0, 0, 1.0}};
  const Hmm h = Hmm::with_point_start(2, {"a", "b"}, t, t);
  const std::vector<int> ys{0, 1};
  EXPECT_THROW(viterbi_decode(h, ys, 0), NoPathError);
  EXPECT_THROW(brute_force_decode(h, ys, 0), NoPathError);
  EXPECT_THROW(viterbi_decode(h, std::vector<int>{}, 0), std::domain_error);
  EXPECT_THROW(viterbi_decode(h, ys, 5), std::domain_error);
  EXPECT_THROW(viterbi_decode(h, std::vector<int>{2}, 0), std::domain_error);
}

TEST(BruteForce, GuardRaises) {
  const std::vector<Symbol> rx(25, 0);
  EXPECT_THROW(brute_force_decode(ref_code(), rx), SizeLimitError);
  EXPECT_THROW(path_metric_multiset(ref_code(), rx), SizeLimitError);
  EXPECT_EQ(viterbi_decode(ref_code(), rx).errors, 0);
}

TEST(PathMetricMultiset, FourStepAllZero) {
  const auto ms = path_metric_multiset(ref_code(), std::vector<Symbol>(4, 0));
  const std::map<int, std::uint64_t> expected{{0, 1}, {2, 1}, {3, 3}, {4, 5},
                                              {5, 4}, {6, 1}, {7, 1}};
  EXPECT_EQ(ms, expected);
}

TEST(PathMetricMultiset, SingleStep) {
  const auto ms = path_metric_multiset(ref_code(), std::vector<Symbol>{0});
  EXPECT_EQ(ms, (std::map<int, std::uint64_t>{{0, 1}, {2, 1}}));
}

TEST(PathMetricMultiset, MatchesOracleAndCountsAllPaths) {
  std::mt19937_64 gen(4);
  const std::vector<std::uint32_t> gens{05, 07};
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t steps = 1 + gen() % 9;
    Bits rx(2 * steps);
    for (auto& b : rx) b = static_cast<std::uint8_t>(gen() & 1u);
    std::map<int, std::uint64_t> expected;
    for (int e : oracle::message_errors(gens, rx, steps)) ++expected[e];
    const auto ms = path_metric_multiset(ref_code(), pack_blocks(rx, 2));
    EXPECT_EQ(ms, expected);
    std::uint64_t total = 0;
    for (const auto& [e, count] : ms) total += count;
    EXPECT_EQ(total, std::uint64_t{1} << steps);
  }
}

TEST(Viterbi, ErrorsNeverExceedFlipsAndGrowWithNoise) {
  // Decoded distance is at most the channel's flip count, since the sent
  // codeword is itself a candidate.
  std::mt19937_64 gen(21);
  const ConvCode& c = ref_code();
  double mean_low = 0.0, mean_high = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Bits msg(10);
    for (auto& b : msg) b = static_cast<std::uint8_t>(gen() & 1u);
    const Bits word = c.encode(msg);
    BscChannel low(0.02, gen()), high(0.2, gen());
    const auto rl = low.transmit(word), rh = high.transmit(word);
    const auto dl = viterbi_decode(c, pack_blocks(rl.received, 2));
    const auto dh = viterbi_decode(c, pack_blocks(rh.received, 2));
    ASSERT_LE(*dl.errors, rl.flips);
    ASSERT_LE(*dh.errors, rh.flips);
    mean_low += *dl.errors;
    mean_high += *dh.errors;
  }
  EXPECT_LT(mean_low, mean_high);
}

}  // namespace
}  // namespace qvalab
