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

#include "qvalab/prob_qva.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qvalab {

PathStatevector amplitude_loaded_state(const PathSpace& ps, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 0.5)) {
    throw std::domain_error("amplitude_loaded_state: epsilon must be in (0, 0.5)");
  }
  const ConvCode& code = ps.code();
  const auto errors = ps.errors();
  const double total_bits = static_cast<double>(ps.steps()) * code.n();
  const double prior = -static_cast<double>(ps.steps()) * code.k() * std::log(2.0);
  // log-amplitudes, shifted by the maximum before exponentiating
  std::vector<double> log_amp(errors.size());
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double e = errors[i];
    log_amp[i] = 0.5 * (e * std::log(epsilon) + (total_bits - e) * std::log1p(-epsilon) + prior);
  }
  const double top = *std::max_element(log_amp.begin(), log_amp.end());
  PathStatevector v;
  v.amplitudes.resize(errors.size());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    const double a = std::exp(log_amp[i] - top);
    v.amplitudes[i] = a;
    norm2 += a * a;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& a : v.amplitudes) a *= scale;
  return v;
}

double lambda_rate(double b, double b_prime, LambdaForm form) {
  if (!(b_prime >= 0.0 && b_prime <= b && b <= 1.0)) {
    throw std::domain_error("lambda_rate: need 0 <= b' <= b <= 1");
  }
  const double d = b - b_prime;
  const double tail = form == LambdaForm::Printed ? 1.0 + d * d : (1.0 + d) * (1.0 + d);
  const double denom = 2.0 * (b * (1.0 - d) * (1.0 - d) + b_prime * tail);
  if (!(denom > 0.0)) throw std::domain_error("lambda_rate: zero denominator");
  return d * d / denom;
}

double reduced_lambda(int steps, double e0) {
  if (steps < 1) throw std::domain_error("reduced_lambda: steps must be >= 1");
  if (!(e0 > 0.0 && e0 < 1.0)) throw std::domain_error("reduced_lambda: E0 must be in (0, 1)");
  const double b = std::pow(e0, steps);
  return 0.5 * b / (6.0 - b);
}

double e0_from_channel(double epsilon, int n) {
  if (!(epsilon >= 0.0 && epsilon < 0.5)) throw std::domain_error("e0_from_channel: bad epsilon");
  return std::pow(1.0 - epsilon, n);
}

namespace {

std::uint64_t trials_for(double lambda, double target_failure) {
  if (!(target_failure > 0.0)) throw std::domain_error("required_trials: target must be > 0");
  if (target_failure >= 1.0) return 1;
  if (!(lambda > 0.0)) throw std::domain_error("required_trials: rate must be > 0");
  const double r = -std::log(target_failure) / lambda;
  // A closed form that lands on an integer (N = 1: 24 * 1.25 - 4 = 26) must
  // not round up because of ulp noise in log/pow.
  const double snapped = std::ceil(r - 1e-9 * std::max(1.0, r));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(snapped));
}

}  // namespace

std::uint64_t required_trials(int steps, double e0, double target_failure) {
  if (target_failure >= 1.0) return 1;
  return trials_for(reduced_lambda(steps, e0), target_failure);
}

TrialPlan plan_trials(double b, double b_prime, double target_failure, LambdaForm form) {
  TrialPlan plan;
  plan.b = b;
  plan.b_prime = b_prime;
  plan.target_failure = target_failure;
  plan.lambda = lambda_rate(b, b_prime, form);
  plan.r = trials_for(plan.lambda, target_failure);
  return plan;
}

TrialOutcome run_trials(const DiscreteSampler& sampler, std::uint64_t r, Rng& rng) {
  if (r < 1) throw std::domain_error("run_trials: r must be >= 1");
  std::vector<std::size_t> draws(r);
  for (auto& d : draws) d = sampler.draw(rng);
  std::sort(draws.begin(), draws.end());
  TrialOutcome out;
  for (std::size_t i = 0; i < draws.size();) {
    std::size_t j = i;
    while (j < draws.size() && draws[j] == draws[i]) ++j;
    const auto run = static_cast<std::uint64_t>(j - i);
    out.histogram.emplace_back(draws[i], run);
    if (run > out.mode_count) {
      out.mode_count = run;
      out.mode = draws[i];
    }
    i = j;
  }
  return out;
}

TrialOutcome run_trials(const PathStatevector& state, std::uint64_t r, std::uint64_t seed) {
  const DiscreteSampler sampler(state.probabilities());
  Rng rng(seed);
  return run_trials(sampler, r, rng);
}

std::vector<CostRow> compare_costs(int n_min, int n_max, int fanout, double e0,
                                   double target_failure, int qva_trials) {
  if (fanout < 1) throw std::domain_error("compare_costs: fanout must be >= 1");
  if (qva_trials < 1) throw std::domain_error("compare_costs: qva_trials must be >= 1");
  std::vector<CostRow> rows;
  for (int n = std::max(n_min, 1); n <= n_max; ++n) {
    CostRow row;
    row.steps = n;
    row.prob_trials = required_trials(n, e0, target_failure);
    row.qva_iterations =
        grover_iterations(static_cast<std::size_t>(std::pow(static_cast<double>(fanout), n)));
    row.qva_trials = qva_trials;
    row.prob_cost = row.prob_trials;
    row.qva_cost = static_cast<std::uint64_t>(row.qva_iterations) *
                   static_cast<std::uint64_t>(qva_trials);
    row.ratio = static_cast<double>(row.prob_cost) / static_cast<double>(row.qva_cost);
    rows.push_back(row);
  }
  return rows;
}

std::uint64_t campaign_seed(std::uint64_t seed, std::uint64_t id) {
  return Rng(seed, id).next();
}

CampaignRow probabilistic_campaign(const ConvCode& code, int steps, double epsilon,
                                   std::uint64_t r, std::uint64_t seed,
                                   std::uint64_t campaign_id) {
  if (steps < 1) throw std::domain_error("probabilistic_campaign: steps must be >= 1");
  Rng rng(seed);
  Bits message(static_cast<std::size_t>(steps) * static_cast<std::size_t>(code.k()));
  for (auto& b : message) b = rng.bit();
  BscChannel channel(epsilon, rng.next());
  const auto rx = channel.transmit(code.encode(message));
  const PathSpace ps = PathSpace::from_code(code, pack_blocks(rx.received, code.n()));
  const PathStatevector state = amplitude_loaded_state(ps, epsilon);
  const auto probs = state.probabilities();
  const DiscreteSampler sampler(probs);
  const TrialOutcome t = run_trials(sampler, r, rng);

  CampaignRow row;
  row.campaign_id = campaign_id;
  row.seed = seed;
  row.r = r;
  row.mode = t.mode;
  row.mode_count = t.mode_count;
  const double best = *std::max_element(probs.begin(), probs.end());
  row.correct = probs[t.mode] >= best * (1.0 - 1e-12);
  return row;
}

std::vector<CampaignRow> probabilistic_campaigns(const ConvCode& code, int steps,
                                                 double epsilon, std::uint64_t r,
                                                 std::uint64_t campaigns,
                                                 std::uint64_t seed) {
  std::vector<CampaignRow> rows;
  rows.reserve(campaigns);
  for (std::uint64_t c = 0; c < campaigns; ++c) {
    rows.push_back(
        probabilistic_campaign(code, steps, epsilon, r, campaign_seed(seed, c), c));
  }
  return rows;
}

}  // namespace qvalab
