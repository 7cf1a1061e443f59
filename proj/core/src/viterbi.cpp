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

#include "qvalab/viterbi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qvalab/errors.hpp"

namespace qvalab {

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

// Integer metrics compare exactly; log-probability metrics with slack.
template <typename Cost>
bool same(Cost a, Cost b) {
  if constexpr (std::is_integral_v<Cost>) {
    return a == b;
  } else {
    return std::abs(a - b) <= kMetricSlack * std::max(1.0, std::abs(b));
  }
}

template <typename Cost>
bool less(Cost a, Cost b) {
  return a < b && !same(a, b);
}

// Trellis adapters. for_edges(t, i, f) calls f(j, cost) for every admissible
// edge out of state i at step t, in ascending j.
struct CodeTrellis {
  using Cost = int;
  const ConvCode& code;
  std::span<const Symbol> received;

  int num_states() const { return code.num_states(); }
  std::size_t steps() const { return received.size(); }
  template <typename F>
  void for_edges(std::size_t t, int i, F&& f) const {
    for (Symbol u = 0; u < static_cast<Symbol>(code.fanout()); ++u) {
      const Transition tr = code.step(static_cast<EncoderState>(i), u);
      f(static_cast<int>(tr.to), error_count(tr, received[t]));
    }
  }
};

struct HmmTrellis {
  using Cost = double;
  const Hmm& hmm;
  std::span<const int> emissions;

  int num_states() const { return hmm.num_states(); }
  std::size_t steps() const { return emissions.size(); }
  template <typename F>
  void for_edges(std::size_t t, int i, F&& f) const {
    const int y = emissions[t];
    for (int j : hmm.successors(i)) {
      const double p = joint_prob(hmm, i, j, y);
      if (p > 0.0) f(j, -std::log(p));
    }
  }
};

template <typename Trellis>
DecodeResult viterbi(const Trellis& tr, int initial) {
  using Cost = typename Trellis::Cost;
  constexpr Cost kInf = std::numeric_limits<Cost>::max();
  const std::size_t n_steps = tr.steps();
  const auto q = static_cast<std::size_t>(tr.num_states());
  if (n_steps == 0) throw std::domain_error("viterbi_decode: empty emissions");
  if (initial < 0 || static_cast<std::size_t>(initial) >= q) {
    throw std::domain_error("viterbi_decode: initial state out of range");
  }

  // Survivor metrics and path counts, (N + 1) x |Q|.
  std::vector<Cost> metric((n_steps + 1) * q, kInf);
  std::vector<std::uint64_t> count((n_steps + 1) * q, 0);
  auto at = [q](std::size_t t, std::size_t s) { return t * q + s; };
  metric[at(0, initial)] = Cost{0};
  count[at(0, initial)] = 1;

  for (std::size_t t = 1; t <= n_steps; ++t) {
    for (std::size_t i = 0; i < q; ++i) {
      const Cost base = metric[at(t - 1, i)];
      if (base == kInf) continue;
      const std::uint64_t c = count[at(t - 1, i)];
      tr.for_edges(t - 1, static_cast<int>(i), [&](int j, Cost cost) {
        const Cost cand = base + cost;
        Cost& cur = metric[at(t, j)];
        if (cur == kInf || less(cand, cur)) {
          cur = cand;
          count[at(t, j)] = c;
        } else if (same(cand, cur)) {
          count[at(t, j)] = saturating_add(count[at(t, j)], c);
        }
      });
    }
  }

  Cost best = kInf;
  for (std::size_t j = 0; j < q; ++j) {
    const Cost m = metric[at(n_steps, j)];
    if (m != kInf && (best == kInf || less(m, best))) best = m;
  }
  if (best == kInf) throw NoPathError("viterbi_decode: no admissible path");

  DecodeResult out;
  // Mark nodes lying on some co-optimal path, walking backwards.
  std::vector<std::uint8_t> on((n_steps + 1) * q, 0);
  for (std::size_t j = 0; j < q; ++j) {
    const Cost m = metric[at(n_steps, j)];
    if (m != kInf && same(m, best)) {
      on[at(n_steps, j)] = 1;
      out.ties = saturating_add(out.ties, count[at(n_steps, j)]);
    }
  }
  for (std::size_t t = n_steps; t >= 1; --t) {
    for (std::size_t i = 0; i < q; ++i) {
      const Cost base = metric[at(t - 1, i)];
      if (base == kInf) continue;
      tr.for_edges(t - 1, static_cast<int>(i), [&](int j, Cost cost) {
        if (on[at(t, j)] && same(base + cost, metric[at(t, j)])) {
          on[at(t - 1, i)] = 1;
        }
      });
    }
  }

  // Greedy forward walk through marked nodes yields the lexicographically
  // smallest co-optimal sequence.
  out.path.reserve(n_steps + 1);
  int s = initial;
  out.path.push_back(s);
  for (std::size_t t = 1; t <= n_steps; ++t) {
    const Cost base = metric[at(t - 1, s)];
    int chosen = -1;
    tr.for_edges(t - 1, s, [&](int j, Cost cost) {
      if (chosen < 0 && on[at(t, j)] && same(base + cost, metric[at(t, j)])) {
        chosen = j;
      }
    });
    s = chosen;
    out.path.push_back(s);
  }
  out.metric = static_cast<double>(best);
  if constexpr (std::is_integral_v<Cost>) out.errors = best;
  return out;
}

template <typename Trellis>
DecodeResult brute_force(const Trellis& tr, int initial, int max_fanout) {
  using Cost = typename Trellis::Cost;
  const std::size_t n_steps = tr.steps();
  if (n_steps == 0) throw std::domain_error("brute_force_decode: empty emissions");
  if (initial < 0 || initial >= tr.num_states()) {
    throw std::domain_error("brute_force_decode: initial state out of range");
  }
  double bound = 1.0;
  for (std::size_t t = 0; t < n_steps; ++t) bound *= std::max(max_fanout, 1);
  if (bound > static_cast<double>(kMaxEnumeratedPaths)) {
    throw SizeLimitError("brute_force_decode: F^N exceeds the enumeration guard");
  }

  DecodeResult out;
  bool found = false;
  Cost best{};
  std::vector<int> path{initial};
  auto visit = [&](auto&& self, std::size_t t, Cost acc) -> void {
    if (t == n_steps) {
      if (!found || less(acc, best)) {
        found = true;
        best = acc;
        out.path = path;
        out.ties = 1;
      } else if (same(acc, best)) {
        out.ties = saturating_add(out.ties, 1);
      }
      return;
    }
    tr.for_edges(t, path.back(), [&](int j, Cost cost) {
      path.push_back(j);
      self(self, t + 1, acc + cost);
      path.pop_back();
    });
  };
  visit(visit, 0, Cost{0});
  if (!found) throw NoPathError("brute_force_decode: no admissible path");
  out.metric = static_cast<double>(best);
  if constexpr (std::is_integral_v<Cost>) out.errors = best;
  return out;
}

Bits message_from_path(const ConvCode& code, const std::vector<int>& path) {
  std::vector<Symbol> inputs;
  inputs.reserve(path.size());
  const int shift = code.k() * (code.m() - 1);
  for (std::size_t t = 1; t < path.size(); ++t) {
    inputs.push_back(static_cast<Symbol>(path[t]) >> shift);
  }
  return unpack_blocks(inputs, code.k());
}

void check_received(const ConvCode& code, std::span<const Symbol> received,
                    EncoderState initial) {
  for (Symbol y : received) {
    if (y >= (Symbol{1} << code.n())) {
      throw std::domain_error("decode: received block wider than n bits");
    }
  }
  if (initial >= static_cast<EncoderState>(code.num_states())) {
    throw std::domain_error("decode: initial state out of range");
  }
}

void check_emissions(const Hmm& h, std::span<const int> emissions) {
  for (int y : emissions) {
    if (y < 0 || y >= h.num_emissions()) {
      throw std::domain_error("decode: emission outside the alphabet");
    }
  }
}

int hmm_max_fanout(const Hmm& h) {
  std::size_t f = 0;
  for (int i = 0; i < h.num_states(); ++i) f = std::max(f, h.successors(i).size());
  return static_cast<int>(f);
}

}  // namespace

DecodeResult viterbi_decode(const Hmm& h, std::span<const int> emissions,
                            int initial_state) {
  check_emissions(h, emissions);
  return viterbi(HmmTrellis{h, emissions}, initial_state);
}

DecodeResult viterbi_decode(const ConvCode& code,
                            std::span<const Symbol> received,
                            EncoderState initial) {
  check_received(code, received, initial);
  DecodeResult r = viterbi(CodeTrellis{code, received}, static_cast<int>(initial));
  r.message = message_from_path(code, r.path);
  return r;
}

DecodeResult brute_force_decode(const Hmm& h, std::span<const int> emissions,
                                int initial_state) {
  check_emissions(h, emissions);
  return brute_force(HmmTrellis{h, emissions}, initial_state, hmm_max_fanout(h));
}

DecodeResult brute_force_decode(const ConvCode& code,
                                std::span<const Symbol> received,
                                EncoderState initial) {
  check_received(code, received, initial);
  DecodeResult r = brute_force(CodeTrellis{code, received},
                               static_cast<int>(initial), code.fanout());
  r.message = message_from_path(code, r.path);
  return r;
}

std::map<int, std::uint64_t> path_metric_multiset(
    const ConvCode& code, std::span<const Symbol> received,
    EncoderState initial) {
  check_received(code, received, initial);
  if (static_cast<double>(code.k()) * static_cast<double>(received.size()) > 24.0) {
    throw SizeLimitError("path_metric_multiset: F^N exceeds the enumeration guard");
  }
  std::map<int, std::uint64_t> out;
  const CodeTrellis tr{code, received};
  auto visit = [&](auto&& self, std::size_t t, int s, int acc) -> void {
    if (t == received.size()) {
      ++out[acc];
      return;
    }
    tr.for_edges(t, s, [&](int j, int cost) { self(self, t + 1, j, acc + cost); });
  };
  visit(visit, 0, static_cast<int>(initial), 0);
  return out;
}

}  // namespace qvalab
