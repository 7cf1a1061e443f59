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
#include <utility>
#include <vector>

#include "qvalab/conv_code.hpp"
#include "qvalab/qva.hpp"
#include "qvalab/random.hpp"

namespace qvalab {

/// Default per-block no-error weight E0 used by the reduced trial formula.
inline constexpr double kDefaultE0 = 0.8;

/// Path probabilities loaded into amplitudes: a_p proportional to
/// sqrt(eps^e (1 - eps)^{Nn - e} 2^{-kN}), normalized over the admissible
/// paths. Needs a code path space and 0 < eps < 0.5.
PathStatevector amplitude_loaded_state(const PathSpace& ps, double epsilon);

/// Which denominator to use for the mode-selection rate.
enum class LambdaForm {
  /// b (1 - (b - b'))^2 + b' (1 + (b - b')^2)
  Printed,
  /// b (1 - (b - b'))^2 + b' (1 + (b - b'))^2
  Symmetric,
};

/// Large-r exponent of kappa(r), the probability that the most frequent of r
/// draws is not the b-outcome: (b - b')^2 / (2 [denominator]).
/// Requires 0 <= b' <= b <= 1 and a positive denominator.
double lambda_rate(double b, double b_prime, LambdaForm form = LambdaForm::Printed);

/// lambda for b = E0^N, b' = E1 E0^{N-1} in the reduced form
/// E0^N / (2 (6 - E0^N)).
double reduced_lambda(int steps, double e0);

/// (1 - eps)^n, an optional channel-derived choice of E0.
double e0_from_channel(double epsilon, int n);

/// Smallest r with exp(-lambda r) <= target_failure under the reduced
/// lambda; at least 1. For E0 = 0.8 and target e^-2 this is
/// ceil(24 * 1.25^N - 4).
std::uint64_t required_trials(int steps, double e0, double target_failure);

struct TrialPlan {
  std::uint64_t r = 1;
  double target_failure = 0.0;
  double b = 0.0;
  double b_prime = 0.0;
  double lambda = 0.0;
};

/// Trial count from the general rate for a known top-two pair.
TrialPlan plan_trials(double b, double b_prime, double target_failure,
                      LambdaForm form = LambdaForm::Printed);

struct TrialOutcome {
  std::size_t mode = 0;
  std::uint64_t mode_count = 0;
  /// (outcome, count) for every observed outcome, ascending outcome.
  std::vector<std::pair<std::size_t, std::uint64_t>> histogram;
};

/// r single-shot measurements of `state`; the r outcomes are sorted and the
/// mode found by one scan, ties to the smaller outcome.
TrialOutcome run_trials(const PathStatevector& state, std::uint64_t r,
                        std::uint64_t seed);
TrialOutcome run_trials(const DiscreteSampler& sampler, std::uint64_t r, Rng& rng);

struct CostRow {
  int steps = 0;
  std::uint64_t prob_trials = 0;  ///< r, one iteration each
  int qva_iterations = 0;         ///< ceil(pi/4 sqrt(F^N))
  int qva_trials = 1;
  std::uint64_t prob_cost = 0;
  std::uint64_t qva_cost = 0;
  double ratio = 0.0;  ///< prob_cost / qva_cost
};

/// Oracle-call totals of the probabilistic variant (required_trials x 1)
/// against the iterated one (qva_trials x grover_iterations) for N in
/// [n_min, n_max].
std::vector<CostRow> compare_costs(int n_min, int n_max, int fanout,
                                   double e0 = kDefaultE0,
                                   double target_failure = 0.1353352832366127,
                                   int qva_trials = 1);

struct CampaignRow {
  std::uint64_t campaign_id = 0;
  std::uint64_t seed = 0;  ///< reproduces this campaign alone
  std::uint64_t r = 0;
  std::size_t mode = 0;
  std::uint64_t mode_count = 0;
  bool correct = false;  ///< the mode is a most probable path
};

/// Random message, BSC transmission at eps, amplitude-loaded state, r trials
/// and mode extraction, once per campaign. Campaign c draws from the stream
/// (seed, c), so results do not depend on scheduling.
CampaignRow probabilistic_campaign(const ConvCode& code, int steps, double epsilon,
                                   std::uint64_t r, std::uint64_t campaign_seed,
                                   std::uint64_t campaign_id = 0);
std::vector<CampaignRow> probabilistic_campaigns(const ConvCode& code, int steps,
                                                 double epsilon, std::uint64_t r,
                                                 std::uint64_t campaigns,
                                                 std::uint64_t seed);

/// Per-campaign seed for campaign `id` of a run seeded with `seed`.
std::uint64_t campaign_seed(std::uint64_t seed, std::uint64_t id);

}  // namespace qvalab
