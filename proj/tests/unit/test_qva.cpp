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
#include <complex>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qvalab/errors.hpp"
#include "qvalab/qva.hpp"
#include "qvalab/viterbi.hpp"

namespace qvalab {
namespace {

using cd = std::complex<double>;

const ConvCode& ref_code() {
  static const ConvCode code = ConvCode::parse("1,2,2;5,7");
  return code;
}

PathSpace zero_space(int steps) {
  return PathSpace::from_code(ref_code(), std::vector<Symbol>(static_cast<std::size_t>(steps), 0));
}

std::vector<cd> random_phases(std::mt19937_64& gen, std::size_t l) {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<cd> g(l);
  for (auto& x : g) x = std::polar(1.0, angle(gen));
  return g;
}

TEST(PathSpace, IndexIsMessageBits) {
  const PathSpace ps = zero_space(4);
  ASSERT_EQ(ps.size(), 16u);
  EXPECT_EQ(ps.steps(), 4u);
  EXPECT_TRUE(ps.is_code());
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_EQ(ps.message(i), oracle::index_bits(i, 4));
  }
  EXPECT_EQ(ps.states(0b1000), (std::vector<int>{0b00, 0b10, 0b01, 0b00, 0b00}));
  EXPECT_EQ(ps.optimal_index(), 0u);
  EXPECT_THROW(ps.message(16), std::domain_error);
}

TEST(PathSpace, ErrorsMatchOracle) {
  std::mt19937_64 gen(6);
  const std::vector<std::uint32_t> gens{05, 07};
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t steps = 1 + gen() % 10;
    Bits rx(2 * steps);
    for (auto& b : rx) b = static_cast<std::uint8_t>(gen() & 1u);
    const auto ps = PathSpace::from_code(ref_code(), pack_blocks(rx, 2));
    const auto expected = oracle::message_errors(gens, rx, steps);
    ASSERT_TRUE(std::equal(expected.begin(), expected.end(), ps.errors().begin(),
                           ps.errors().end()));
  }
}

TEST(PathSpace, Guards) {
  EXPECT_THROW(zero_space(25), SizeLimitError);
  EXPECT_THROW(PathSpace::from_code(ref_code(), std::vector<Symbol>{}), std::domain_error);
  EXPECT_THROW(PathSpace::from_code(ref_code(), std::vector<Symbol>{4}), std::domain_error);
  EXPECT_NO_THROW(zero_space(24));
}

TEST(PathSpace, HmmSpaceOptimumIsViterbiPath) {
  std::mt19937_64 gen(31);
  const Hmm h = ref_code().to_hmm(0.1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<int> ys(1 + gen() % 6);
    for (auto& y : ys) y = static_cast<int>(gen() % 4);
    const auto ps = PathSpace::from_hmm(h, ys, 0);
    EXPECT_FALSE(ps.is_code());
    EXPECT_EQ(ps.size(), std::size_t{1} << ys.size());
    EXPECT_EQ(ps.states(ps.optimal_index()), viterbi_decode(h, ys, 0).path);
    EXPECT_THROW(ps.errors(), std::logic_error);
  }
}

TEST(HSuperposition, UniformAndNormalized) {
  const auto v = h_superposition(zero_space(4));
  ASSERT_EQ(v.size(), 16u);
  for (const auto& a : v.amplitudes) EXPECT_NEAR(std::abs(a - cd(0.25, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(v.norm(), 1.0, 1e-15);
}

TEST(GPhi, AppliesErrorPhases) {
  const PathSpace ps = zero_space(4);
  const auto g = phase_vector(ps, 0.3);
  const auto v = g_phi(ps, h_superposition(ps), 0.3);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    EXPECT_NEAR(std::abs(g[i] - std::polar(1.0, 0.3 * ps.errors()[i])), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(v.amplitudes[i] - 0.25 * g[i]), 0.0, 1e-15);
  }
}

TEST(Diffusion, Examples) {
  // Uniform state is a +1 eigenvector.
  PathStatevector u{std::vector<cd>(8, cd(1.0 / std::sqrt(8.0)))};
  const auto du = g_diffusion(u);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(du.amplitudes[i] - u.amplitudes[i]), 0.0, 1e-15);

  PathStatevector e0{{cd(1), cd(0), cd(0), cd(0)}};
  const auto d0 = g_diffusion(e0);
  EXPECT_NEAR(d0.amplitudes[0].real(), -0.5, 1e-15);
  EXPECT_NEAR(d0.amplitudes[3].real(), 0.5, 1e-15);
}

TEST(Diffusion, MatchesDenseOracleAndPreservesNorm) {
  std::mt19937_64 gen(12);
  std::normal_distribution<double> normal;
  for (std::size_t l : {2u, 3u, 8u, 17u, 64u}) {
    std::vector<cd> a(l);
    for (auto& x : a) x = {normal(gen), normal(gen)};
    const auto expected = oracle::dense_diffusion(a);
    const auto got = g_diffusion(PathStatevector{a});
    double before = 0.0, after = 0.0;
    for (std::size_t i = 0; i < l; ++i) {
      EXPECT_NEAR(std::abs(got.amplitudes[i] - expected[i]), 0.0, 1e-12);
      before += std::norm(a[i]);
      after += std::norm(got.amplitudes[i]);
    }
    EXPECT_NEAR(after, before, 1e-12 * before);
  }
}

TEST(RunQva, GroverLimit) {
  std::vector<cd> g(16, cd(1.0));
  g[5] = -1.0;
  EXPECT_NEAR(run_qva(g, 1).probability(5), 1936.0 / 4096.0, 1e-14);
  for (std::size_t l : {4u, 16u, 64u, 256u}) {
    std::vector<cd> d(l, cd(1.0));
    d[l - 1] = -1.0;
    for (int it = 0; it <= 6; ++it) {
      EXPECT_NEAR(run_qva(d, it).probability(l - 1), oracle::grover_success(l, it), 1e-12);
    }
  }
}

TEST(RunQva, SingleIterationMatchesClosedForm) {
  std::mt19937_64 gen(2);
  for (std::size_t l : {2u, 4u, 8u, 16u, 32u, 100u}) {
    for (int trial = 0; trial < 25; ++trial) {
      const auto g = random_phases(gen, l);
      const auto v = run_qva(g, 1);
      const std::size_t t = gen() % l;
      EXPECT_NEAR(single_iteration_prob(g, t), v.probability(t), 1e-12);
      // |g_t (L - 2) - 2 sum| <= 3L - 4, so L * Pr < 9
      EXPECT_LT(single_iteration_prob(g, t) * static_cast<double>(l), 9.0);
    }
  }
  EXPECT_THROW(single_iteration_prob(std::vector<cd>{cd(1)}, 0), std::domain_error);
}

TEST(RunQva, FourStepExample) {
  const auto run = run_qva(zero_space(4), {0.68, 3});
  EXPECT_NEAR(run.prob_top, 0.673, 0.005);
  EXPECT_EQ(run.optimal_index, 0u);
  EXPECT_EQ(run.top_index, 0u);
  const cd a0 = run.state.amplitudes[0];
  EXPECT_NEAR(a0.real(), -0.76, 0.01);
  EXPECT_NEAR(a0.imag(), 0.29, 0.01);
  // Amplitudes depend only on the error count; the listed basis states are
  // the 2-error and 7-error paths in sorted order.
  const PathSpace ps = zero_space(4);
  const auto errs = ps.errors();
  const auto two = static_cast<std::size_t>(std::find(errs.begin(), errs.end(), 2) - errs.begin());
  const auto seven = static_cast<std::size_t>(std::find(errs.begin(), errs.end(), 7) - errs.begin());
  EXPECT_NEAR(std::abs(run.state.amplitudes[two] - cd(0.16, -0.05)), 0.0, 0.015);
  EXPECT_NEAR(std::abs(run.state.amplitudes[seven] - cd(0.37, -0.04)), 0.0, 0.015);
  EXPECT_NEAR(run.state.norm(), 1.0, 1e-12);
}

TEST(RunQva, ThreeStepEntry) {
  EXPECT_NEAR(run_qva(zero_space(3), {0.84, 2}).prob_top, 0.73, 0.01);
}

TEST(RunQva, ZeroPhaseLeavesUniform) {
  const auto run = run_qva(zero_space(5), {0.0, 4});
  for (double p : run.state.probabilities()) EXPECT_NEAR(p, 1.0 / 32.0, 1e-14);
}

TEST(RunQva, ParamValidation) {
  EXPECT_THROW(run_qva(zero_space(3), {-0.1, 1}), std::domain_error);
  EXPECT_THROW(run_qva(zero_space(3), {3.2, 1}), std::domain_error);
  EXPECT_THROW(run_qva(zero_space(3), {0.5, 0}), std::domain_error);
  EXPECT_NO_THROW(run_qva(zero_space(3), {std::numbers::pi, 1}));
}

TEST(RunQva, RelabelingPermutesOutput) {
  std::mt19937_64 gen(40);
  const PathSpace ps = zero_space(5);
  const auto g = phase_vector(ps, 0.6);
  std::vector<std::size_t> perm(g.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), gen);
  std::vector<cd> shuffled(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) shuffled[perm[i]] = g[i];
  const auto a = run_qva(g, 4), b = run_qva(shuffled, 4);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_NEAR(b.probability(perm[i]), a.probability(i), 1e-13);
  }
}

TEST(GroverIterations, Values) {
  EXPECT_EQ(grover_iterations(16), 4);
  EXPECT_EQ(grover_iterations(8), 3);
  EXPECT_EQ(grover_iterations(1024), 26);
}

TEST(SweepOmega, RecoversTableEntries) {
  const auto s4 = sweep_omega(zero_space(4), 3);
  EXPECT_NEAR(s4.omega_star, 0.68, 0.01);
  EXPECT_NEAR(s4.prob_at_star, 0.673, 0.005);
  EXPECT_FALSE(s4.curve.empty());
  EXPECT_TRUE(std::is_sorted(s4.curve.begin(), s4.curve.end(),
                             [](const auto& a, const auto& b) { return a.omega < b.omega; }));
  for (const auto& pt : s4.curve) EXPECT_LE(pt.prob_top, s4.prob_at_star + 1e-12);

  const auto s6 = sweep_omega(zero_space(6), 7);
  EXPECT_NEAR(s6.omega_star, 0.51, 0.01);
  EXPECT_NEAR(s6.prob_at_star, 0.76, 0.01);
}

TEST(SweepOmega, OptimumDecreasesWithSteps) {
  const std::vector<int> iterations{2, 3, 5, 7, 9};
  double previous = 10.0;
  for (int n = 3; n <= 7; ++n) {
    const auto s = sweep_omega(zero_space(n), iterations[static_cast<std::size_t>(n - 3)]);
    EXPECT_LT(s.omega_star, previous) << "N=" << n;
    previous = s.omega_star;
  }
}

TEST(Measure, HistogramTracksProbabilities) {
  const auto run = run_qva(zero_space(4), {0.68, 3});
  const auto hist = measure(run.state, 5, 200000);
  std::uint64_t total = 0;
  for (auto h : hist) total += h;
  EXPECT_EQ(total, 200000u);
  EXPECT_NEAR(hist[0] / 200000.0, run.prob_top, 0.005);
  EXPECT_EQ(hist, measure(run.state, 5, 200000));
}

TEST(ClassSchedule, ShapeAndZeroClass) {
  const auto sched = class_schedule(ref_code(), 4, 2, 9);
  ASSERT_EQ(sched.size(), 3u);
  for (std::size_t e = 0; e < sched.size(); ++e) {
    EXPECT_EQ(sched[e].error_budget, static_cast<int>(e));
    EXPECT_EQ(sched[e].iterations, grover_iterations(16));
    EXPECT_EQ(sched[e].trials, 9);
    EXPECT_GE(sched[e].omega, 0.0);
    EXPECT_LE(sched[e].omega, std::numbers::pi);
  }
}

TEST(AdaptiveDecode, NoiselessWordsDecodeInFirstClass) {
  const ConvCode& c = ref_code();
  const auto sched = class_schedule(c, 5, 2, 9);
  std::mt19937_64 gen(50);
  int ok = 0;
  const int runs = 60;
  for (int r = 0; r < runs; ++r) {
    Bits msg(5);
    for (auto& b : msg) b = static_cast<std::uint8_t>(gen() & 1u);
    const auto rx = pack_blocks(c.encode(msg), 2);
    try {
      const auto res = adaptive_decode(c, rx, sched, gen());
      ok += res.accepted_class == 0 && res.message == msg && res.distance == 0;
    } catch (const DecodeFailure&) {
    }
  }
  EXPECT_GE(ok, static_cast<int>(0.95 * runs));
}

TEST(AdaptiveDecode, SingleErrorAcceptedByBudgetOne) {
  const ConvCode& c = ref_code();
  const auto sched = class_schedule(c, 5, 2, 9);
  std::mt19937_64 gen(51);
  int ok = 0;
  const int runs = 60;
  for (int r = 0; r < runs; ++r) {
    Bits msg(5);
    for (auto& b : msg) b = static_cast<std::uint8_t>(gen() & 1u);
    Bits word = c.encode(msg);
    word[gen() % word.size()] ^= 1u;
    try {
      const auto res = adaptive_decode(c, pack_blocks(word, 2), sched, gen());
      // no codeword sits at distance 0, so the zero class must reject
      EXPECT_GE(res.accepted_class, 1u);
      EXPECT_LE(res.distance, res.error_budget);
      ok += res.accepted_class == 1 && res.distance == 1;
    } catch (const DecodeFailure&) {
    }
  }
  // The optimum carries only about 0.38 probability in the one-error class at
  // N = 5, so a 9-shot mode lands on it in roughly two thirds of the blocks.
  EXPECT_GE(ok, runs / 2);
}

TEST(AdaptiveDecode, RejectsEverythingWhenBudgetsTooSmall) {
  const ConvCode& c = ref_code();
  const std::vector<Symbol> rx{0b11, 0b11, 0b11, 0b11};
  const std::vector<ErrorClass> only_zero{{0, 0.7, 3, 5}};
  EXPECT_THROW(adaptive_decode(c, rx, only_zero, 1), DecodeFailure);
  EXPECT_THROW(adaptive_decode(c, rx, std::vector<ErrorClass>{}, 1), std::domain_error);
}

}  // namespace
}  // namespace qvalab
