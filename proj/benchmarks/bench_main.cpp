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

#include <benchmark/benchmark.h>

#include <random>

#include "qvalab/gate_circuit.hpp"
#include "qvalab/prob_qva.hpp"
#include "qvalab/qva.hpp"
#include "qvalab/viterbi.hpp"

namespace {

using namespace qvalab;

const ConvCode& ref_code() {
  static const ConvCode code = ConvCode::parse("1,2,2;5,7");
  return code;
}

std::vector<Symbol> noisy_word(int steps, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<Symbol> rx(static_cast<std::size_t>(steps));
  for (auto& y : rx) y = static_cast<Symbol>(gen() % 4);
  return rx;
}

void BM_RunQva(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PathSpace ps = PathSpace::from_code(ref_code(), noisy_word(n, 1));
  const QvaParams params{0.5, grover_iterations(ps.size())};
  for (auto _ : state) benchmark::DoNotOptimize(run_qva(ps, params).prob_top);
  state.SetComplexityN(static_cast<benchmark::IterationCount>(ps.size()));
}
BENCHMARK(BM_RunQva)->DenseRange(4, 14, 2)->Complexity();

void BM_Viterbi(benchmark::State& state) {
  const auto rx = noisy_word(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(viterbi_decode(ref_code(), rx).metric);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Viterbi)->RangeMultiplier(4)->Range(16, 4096)->Complexity(benchmark::oN);

void BM_BruteForce(benchmark::State& state) {
  const auto rx = noisy_word(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_decode(ref_code(), rx).metric);
}
BENCHMARK(BM_BruteForce)->DenseRange(8, 16, 4);

void BM_SweepOmega(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PathSpace ps = PathSpace::from_code(ref_code(), std::vector<Symbol>(static_cast<std::size_t>(n), 0));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_omega(ps, grover_iterations(ps.size())).omega_star);
}
BENCHMARK(BM_SweepOmega)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ProbabilisticTrials(benchmark::State& state) {
  const PathSpace ps = PathSpace::from_code(ref_code(), noisy_word(8, 4));
  const auto loaded = amplitude_loaded_state(ps, 0.1);
  const auto r = required_trials(8, kDefaultE0, std::exp(-2.0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_trials(loaded, r, ++seed).mode);
}
BENCHMARK(BM_ProbabilisticTrials);

void BM_ChainState(benchmark::State& state) {
  const auto rx = noisy_word(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(chain_state(ref_code(), rx, 0.68).size());
}
BENCHMARK(BM_ChainState)->DenseRange(1, 4);

}  // namespace

BENCHMARK_MAIN();
