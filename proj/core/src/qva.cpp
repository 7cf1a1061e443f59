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

#include "qvalab/qva.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qvalab/errors.hpp"
#include "qvalab/random.hpp"

namespace qvalab {

// ---- PathSpace ------------------------------------------------------------

PathSpace PathSpace::from_code(const ConvCode& code,
                               std::span<const Symbol> received,
                               EncoderState initial) {
  if (received.empty()) throw std::domain_error("PathSpace: empty received word");
  if (initial >= static_cast<EncoderState>(code.num_states())) {
    throw std::domain_error("PathSpace: initial state out of range");
  }
  for (Symbol y : received) {
    if (y >= (Symbol{1} << code.n())) {
      throw std::domain_error("PathSpace: received block wider than n bits");
    }
  }
  const double bits = static_cast<double>(code.k()) * static_cast<double>(received.size());
  if (bits > std::log2(static_cast<double>(kMaxPathSpace))) {
    throw SizeLimitError("PathSpace: F^N exceeds the path-space guard");
  }

  PathSpace ps;
  ps.code_ = code;
  ps.received_.assign(received.begin(), received.end());
  ps.initial_ = static_cast<int>(initial);
  ps.steps_ = received.size();
  const std::size_t size = std::size_t{1} << (code.k() * received.size());
  ps.errors_.resize(size);

  // The edge outputs from each state are tabulated once.
  const auto fan = static_cast<Symbol>(code.fanout());
  std::vector<Transition> table = code.state_diagram();
  auto visit = [&](auto&& self, std::size_t t, EncoderState s, std::size_t prefix,
                   int acc) -> void {
    if (t == ps.steps_) {
      ps.errors_[prefix] = acc;
      return;
    }
    for (Symbol u = 0; u < fan; ++u) {
      const Transition& tr = table[static_cast<std::size_t>(s) * fan + u];
      self(self, t + 1, tr.to, (prefix << code.k()) | u,
           acc + error_count(tr, ps.received_[t]));
    }
  };
  visit(visit, 0, initial, 0, 0);
  ps.weights_.assign(ps.errors_.begin(), ps.errors_.end());
  return ps;
}

PathSpace PathSpace::from_hmm(const Hmm& h, std::span<const int> emissions,
                              int initial_state) {
  if (emissions.empty()) throw std::domain_error("PathSpace: empty emissions");
  if (initial_state < 0 || initial_state >= h.num_states()) {
    throw std::domain_error("PathSpace: initial state out of range");
  }
  for (int y : emissions) {
    if (y < 0 || y >= h.num_emissions()) {
      throw std::domain_error("PathSpace: emission outside the alphabet");
    }
  }
  PathSpace ps;
  ps.initial_ = initial_state;
  ps.steps_ = emissions.size();
  std::vector<int> path{initial_state};
  auto visit = [&](auto&& self, std::size_t t, double acc) -> void {
    if (t == ps.steps_) {
      if (ps.weights_.size() >= kMaxPathSpace) {
        throw SizeLimitError("PathSpace: admissible paths exceed the guard");
      }
      ps.weights_.push_back(acc);
      ps.hmm_paths_.insert(ps.hmm_paths_.end(), path.begin(), path.end());
      return;
    }
    const int i = path.back();
    for (int j : h.successors(i)) {
      const double p = joint_prob(h, i, j, emissions[t]);
      if (p <= 0.0) continue;
      path.push_back(j);
      self(self, t + 1, acc - std::log(p));
      path.pop_back();
    }
  };
  visit(visit, 0, 0.0);
  if (ps.weights_.empty()) throw NoPathError("PathSpace: no admissible path");
  return ps;
}

const ConvCode& PathSpace::code() const {
  if (!code_) throw std::logic_error("PathSpace: not a code path space");
  return *code_;
}

std::span<const int> PathSpace::errors() const {
  if (!code_) throw std::logic_error("PathSpace: error counts need a code space");
  return errors_;
}

std::vector<int> PathSpace::states(std::size_t index) const {
  if (index >= size()) throw std::domain_error("PathSpace: index out of range");
  if (!code_) {
    const auto begin = hmm_paths_.begin() +
                       static_cast<std::ptrdiff_t>(index * (steps_ + 1));
    return {begin, begin + static_cast<std::ptrdiff_t>(steps_ + 1)};
  }
  std::vector<int> out{initial_};
  const int k = code_->k();
  const Symbol mask = (Symbol{1} << k) - 1;
  EncoderState s = static_cast<EncoderState>(initial_);
  for (std::size_t t = 0; t < steps_; ++t) {
    const auto shift = static_cast<int>((steps_ - 1 - t) * k);
    s = code_->next_state(s, static_cast<Symbol>(index >> shift) & mask);
    out.push_back(static_cast<int>(s));
  }
  return out;
}

Bits PathSpace::message(std::size_t index) const {
  if (index >= size()) throw std::domain_error("PathSpace: index out of range");
  const int k = code().k();
  Bits out(steps_ * static_cast<std::size_t>(k));
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = static_cast<std::uint8_t>((index >> (out.size() - 1 - b)) & 1u);
  }
  return out;
}

std::size_t PathSpace::optimal_index() const {
  const auto it = std::min_element(weights_.begin(), weights_.end());
  if (is_code()) return static_cast<std::size_t>(it - weights_.begin());
  // log-probability weights: first index within slack of the minimum
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] - *it <= 1e-12 * std::max(1.0, std::abs(*it))) return i;
  }
  return static_cast<std::size_t>(it - weights_.begin());
}

// ---- Statevector operations -----------------------------------------------

double PathStatevector::norm() const {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<double> PathStatevector::probabilities() const {
  std::vector<double> out(amplitudes.size());
  std::transform(amplitudes.begin(), amplitudes.end(), out.begin(),
                 [](const Amplitude& a) { return std::norm(a); });
  return out;
}

void QvaParams::validate() const {
  if (!(omega >= 0.0 && omega <= std::numbers::pi)) {
    throw std::domain_error("QvaParams: omega must be in [0, pi]");
  }
  if (iterations < 1) throw std::domain_error("QvaParams: iterations must be >= 1");
}

namespace {

PathStatevector uniform_state(std::size_t size) {
  if (size == 0) throw std::domain_error("h_superposition: empty path space");
  const double a = 1.0 / std::sqrt(static_cast<double>(size));
  return {std::vector<Amplitude>(size, Amplitude(a, 0.0))};
}

void diffuse(std::vector<Amplitude>& a) {
  const Amplitude sum = std::accumulate(a.begin(), a.end(), Amplitude{});
  const Amplitude twice_mean = 2.0 * sum / static_cast<double>(a.size());
  for (auto& x : a) x = twice_mean - x;
}

void iterate(std::vector<Amplitude>& a, std::span<const Amplitude> diagonal,
             int iterations) {
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= diagonal[i];
    diffuse(a);
  }
}

std::size_t argmax(const std::vector<double>& p) {
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::size_t mode_of(std::vector<std::size_t> draws, std::uint64_t* count) {
  std::sort(draws.begin(), draws.end());
  std::size_t best = draws.front();
  std::uint64_t best_count = 0;
  for (std::size_t i = 0; i < draws.size();) {
    std::size_t j = i;
    while (j < draws.size() && draws[j] == draws[i]) ++j;
    // strict '>' keeps the smallest index on ties
    if (j - i > best_count) {
      best_count = j - i;
      best = draws[i];
    }
    i = j;
  }
  if (count) *count = best_count;
  return best;
}

// Coarse grid on (0, pi), then golden section on the bracketing cell.
template <typename Objective>
std::pair<double, double> maximize_omega(Objective f, double grid,
                                         std::vector<SweepPoint>* curve) {
  if (!(grid > 0.0)) throw std::domain_error("sweep_omega: grid must be > 0");
  const double pi = std::numbers::pi;
  double best_w = 0.0;
  double best_p = -1.0;
  const auto n = static_cast<std::size_t>(std::ceil(pi / grid));
  for (std::size_t i = 1; i < n; ++i) {
    const double w = static_cast<double>(i) * grid;
    if (w >= pi) break;
    const auto [p, top] = f(w);
    if (curve) curve->push_back({w, p, top});
    if (p > best_p) {
      best_p = p;
      best_w = w;
    }
  }
  double lo = std::max(best_w - grid, 0.0);
  double hi = std::min(best_w + grid, pi);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1).first;
  double f2 = f(x2).first;
  while (hi - lo > 1e-4) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2).first;
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1).first;
    }
  }
  const double w = 0.5 * (lo + hi);
  const double p = f(w).first;
  if (p > best_p) return {w, p};
  return {best_w, best_p};
}

}  // namespace

PathStatevector h_superposition(const PathSpace& ps) { return uniform_state(ps.size()); }

std::vector<Amplitude> phase_vector(const PathSpace& ps, double omega) {
  std::vector<Amplitude> g(ps.size());
  const auto w = ps.weights();
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::polar(1.0, omega * w[i]);
  return g;
}

PathStatevector g_phi(const PathSpace& ps, PathStatevector v, double omega) {
  if (v.size() != ps.size()) throw std::domain_error("g_phi: size mismatch");
  const auto w = ps.weights();
  for (std::size_t i = 0; i < v.size(); ++i) {
    v.amplitudes[i] *= std::polar(1.0, omega * w[i]);
  }
  return v;
}

PathStatevector g_diffusion(PathStatevector v) {
  if (v.amplitudes.empty()) throw std::domain_error("g_diffusion: empty state");
  diffuse(v.amplitudes);
  return v;
}

PathStatevector run_qva(std::span<const Amplitude> diagonal, int iterations) {
  if (iterations < 0) throw std::domain_error("run_qva: negative iterations");
  PathStatevector v = uniform_state(diagonal.size());
  iterate(v.amplitudes, diagonal, iterations);
  return v;
}

QvaRun run_qva(const PathSpace& ps, const QvaParams& params) {
  params.validate();
  const auto g = phase_vector(ps, params.omega);
  QvaRun out;
  out.state = run_qva(g, params.iterations);
  const auto p = out.state.probabilities();
  out.optimal_index = ps.optimal_index();
  out.prob_top = p[out.optimal_index];
  out.top_index = argmax(p);
  return out;
}

double single_iteration_prob(std::span<const Amplitude> g, std::size_t target) {
  const std::size_t l = g.size();
  if (l < 2) throw std::domain_error("single_iteration_prob: need L >= 2");
  if (target >= l) throw std::domain_error("single_iteration_prob: bad target");
  Amplitude others{};
  for (std::size_t i = 0; i < l; ++i) {
    if (i != target) others += g[i];
  }
  const double ld = static_cast<double>(l);
  return std::norm(g[target] * (ld - 2.0) - 2.0 * others) / (ld * ld * ld);
}

int grover_iterations(std::size_t num_paths) {
  return static_cast<int>(
      std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(num_paths))));
}

SweepResult sweep_omega(const PathSpace& ps, int iterations, double grid) {
  if (iterations < 1) throw std::domain_error("sweep_omega: iterations must be >= 1");
  const std::size_t target = ps.optimal_index();
  auto f = [&](double w) {
    const auto p = run_qva(phase_vector(ps, w), iterations).probabilities();
    return std::pair{p[target], argmax(p)};
  };
  SweepResult out;
  out.iterations = iterations;
  std::tie(out.omega_star, out.prob_at_star) = maximize_omega(f, grid, &out.curve);
  return out;
}

std::vector<std::uint64_t> measure(const PathStatevector& v, std::uint64_t seed,
                                   std::uint64_t shots) {
  const DiscreteSampler sampler(v.probabilities());
  Rng rng(seed);
  std::vector<std::uint64_t> hist(v.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) ++hist[sampler.draw(rng)];
  return hist;
}

AdaptiveResult adaptive_decode(const ConvCode& code,
                               std::span<const Symbol> received,
                               std::span<const ErrorClass> schedule,
                               std::uint64_t seed, EncoderState initial) {
  if (received.empty()) throw std::domain_error("adaptive_decode: empty received word");
  if (schedule.empty()) throw std::domain_error("adaptive_decode: empty schedule");
  const PathSpace ps = PathSpace::from_code(code, received, initial);
  const Bits received_bits = unpack_blocks(received, code.n());
  Rng rng(seed);
  for (std::size_t c = 0; c < schedule.size(); ++c) {
    const ErrorClass& cls = schedule[c];
    if (cls.trials < 1) throw std::domain_error("adaptive_decode: trials must be >= 1");
    // Every trial prepares the same state, so one simulation serves them all.
    const auto run = run_qva(ps, {cls.omega, cls.iterations});
    const DiscreteSampler sampler(run.state.probabilities());
    std::vector<std::size_t> draws(static_cast<std::size_t>(cls.trials));
    for (auto& d : draws) d = sampler.draw(rng);
    AdaptiveResult out;
    out.path_index = mode_of(std::move(draws), &out.mode_count);
    out.message = ps.message(out.path_index);
    out.distance = hamming_distance(code.encode(out.message, initial), received_bits);
    if (out.distance <= cls.error_budget) {
      out.accepted_class = c;
      out.error_budget = cls.error_budget;
      return out;
    }
  }
  throw DecodeFailure("adaptive_decode: no error class accepted its mode");
}

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(r);
}

// rank-th k-subset of {0..n-1} in lexicographic order
std::vector<std::size_t> unrank_combination(std::size_t n, std::size_t k,
                                            double rank) {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (std::size_t slot = 0; slot < k; ++slot) {
    for (std::size_t x = next; x < n; ++x) {
      const double with_x = binomial(n - x - 1, k - slot - 1);
      if (rank < with_x) {
        out.push_back(x);
        next = x + 1;
        break;
      }
      rank -= with_x;
    }
  }
  return out;
}

}  // namespace

std::vector<ErrorClass> class_schedule(const ConvCode& code, int steps,
                                       int max_errors, int trials,
                                       const ClassScheduleOptions& options) {
  if (steps < 1) throw std::domain_error("class_schedule: steps must be >= 1");
  if (max_errors < 0) throw std::domain_error("class_schedule: max_errors < 0");
  if (options.max_patterns < 1) throw std::domain_error("class_schedule: max_patterns < 1");
  const auto n_bits = static_cast<std::size_t>(steps) * static_cast<std::size_t>(code.n());
  const std::size_t num_paths = std::size_t{1} << (code.k() * steps);
  const int iterations = grover_iterations(num_paths);

  std::vector<ErrorClass> out;
  for (int e = 0; e <= max_errors && static_cast<std::size_t>(e) <= n_bits; ++e) {
    const double total = binomial(n_bits, static_cast<std::size_t>(e));
    const auto count = static_cast<std::size_t>(
        std::min(total, static_cast<double>(options.max_patterns)));
    std::vector<PathSpace> spaces;
    std::vector<std::size_t> targets;
    for (std::size_t p = 0; p < count; ++p) {
      Bits word(n_bits, 0);
      const double rank = std::floor(static_cast<double>(p) * total / static_cast<double>(count));
      for (std::size_t pos : unrank_combination(n_bits, static_cast<std::size_t>(e), rank)) {
        word[pos] = 1;
      }
      spaces.push_back(PathSpace::from_code(code, pack_blocks(word, code.n())));
      targets.push_back(spaces.back().optimal_index());
    }
    auto f = [&](double w) {
      double mean = 0.0;
      for (std::size_t s = 0; s < spaces.size(); ++s) {
        mean += run_qva(phase_vector(spaces[s], w), iterations).probability(targets[s]);
      }
      return std::pair{mean / static_cast<double>(spaces.size()), std::size_t{0}};
    };
    const auto [omega, prob] = maximize_omega(f, options.grid, nullptr);
    (void)prob;
    out.push_back({e, omega, iterations, trials});
  }
  return out;
}

}  // namespace qvalab
