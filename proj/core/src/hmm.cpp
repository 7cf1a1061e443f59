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

#include "qvalab/hmm.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>
#include <stdexcept>

namespace qvalab {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(std::string("Hmm: ") + what +
                            " probability outside [0, 1]");
  }
}

}  // namespace

Hmm::Hmm(int num_states, std::vector<std::string> emissions,
         std::span<const ProbEntry> trans, std::span<const ProbEntry> emit,
         std::vector<double> initial)
    : num_states_(num_states),
      emissions_(std::move(emissions)),
      initial_(std::move(initial)) {
  if (num_states_ <= 0) throw std::domain_error("Hmm: num_states must be > 0");
  if (emissions_.empty()) throw std::domain_error("Hmm: empty emission alphabet");
  if (static_cast<int>(initial_.size()) != num_states_) {
    throw std::domain_error("Hmm: initial vector length != num_states");
  }
  double total = 0.0;
  for (double p : initial_) {
    check_probability(p, "initial");
    total += p;
  }
  if (std::abs(total - 1.0) > kStochasticTolerance) {
    throw std::domain_error("Hmm: initial distribution does not sum to 1");
  }

  successors_.assign(num_states_, {});
  for (const ProbEntry& e : trans) {
    check_indices(e.from, e.to, e.emission);
    check_probability(e.p, "transition");
    if (e.p == 0.0) continue;
    trans_[key(e.from, e.to, e.emission)] = e.p;
    successors_[e.from].push_back(e.to);
  }
  for (const ProbEntry& e : emit) {
    check_indices(e.from, e.to, e.emission);
    check_probability(e.p, "emission");
    if (e.p == 0.0) continue;
    emit_[key(e.from, e.to, e.emission)] = e.p;
  }
  for (auto& s : successors_) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
}

Hmm Hmm::with_point_start(int num_states, std::vector<std::string> emissions,
                          std::span<const ProbEntry> trans,
                          std::span<const ProbEntry> emit, int start) {
  if (start < 0 || start >= num_states) {
    throw std::domain_error("Hmm: start state out of range");
  }
  std::vector<double> initial(static_cast<std::size_t>(num_states), 0.0);
  initial[static_cast<std::size_t>(start)] = 1.0;
  return Hmm(num_states, std::move(emissions), trans, emit, std::move(initial));
}

void Hmm::check_indices(int i, int j, int y) const {
  if (i < 0 || i >= num_states_ || j < 0 || j >= num_states_) {
    throw std::domain_error("Hmm: state index out of range");
  }
  if (y < 0 || y >= num_emissions()) {
    throw std::domain_error("Hmm: emission index out of range");
  }
}

std::uint64_t Hmm::key(int i, int j, int y) const {
  const auto q = static_cast<std::uint64_t>(num_states_);
  return (static_cast<std::uint64_t>(i) * q + static_cast<std::uint64_t>(j)) *
             static_cast<std::uint64_t>(num_emissions()) +
         static_cast<std::uint64_t>(y);
}

double Hmm::trans(int i, int j, int y) const {
  check_indices(i, j, y);
  auto it = trans_.find(key(i, j, y));
  return it == trans_.end() ? 0.0 : it->second;
}

double Hmm::emit(int i, int j, int y) const {
  check_indices(i, j, y);
  auto it = emit_.find(key(i, j, y));
  return it == emit_.end() ? 0.0 : it->second;
}

std::span<const int> Hmm::successors(int i) const {
  if (i < 0 || i >= num_states_) {
    throw std::domain_error("Hmm: state index out of range");
  }
  return successors_[static_cast<std::size_t>(i)];
}

int Hmm::emission_index(const std::string& label) const {
  auto it = std::find(emissions_.begin(), emissions_.end(), label);
  return it == emissions_.end() ? -1
                                 : static_cast<int>(it - emissions_.begin());
}

std::vector<ProbEntry> Hmm::entries(
    const std::unordered_map<std::uint64_t, double>& table, int num_states,
    int num_emissions) {
  std::vector<std::pair<std::uint64_t, double>> sorted(table.begin(),
                                                       table.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ProbEntry> out;
  out.reserve(sorted.size());
  const auto z = static_cast<std::uint64_t>(num_emissions);
  const auto q = static_cast<std::uint64_t>(num_states);
  for (const auto& [k, p] : sorted) {
    const auto y = static_cast<int>(k % z);
    const auto ij = k / z;
    out.push_back({static_cast<int>(ij / q), static_cast<int>(ij % q), y, p});
  }
  return out;
}

std::vector<ProbEntry> Hmm::trans_entries() const {
  return entries(trans_, num_states_, num_emissions());
}

std::vector<ProbEntry> Hmm::emit_entries() const {
  return entries(emit_, num_states_, num_emissions());
}

Hmm Hmm::from_json(const nlohmann::json& doc) {
  try {
    const int q = doc.at("num_states").get<int>();
    auto emissions = doc.at("emissions").get<std::vector<std::string>>();
    auto read = [&](const char* name) {
      std::vector<ProbEntry> out;
      for (const auto& row : doc.at(name)) {
        if (!row.is_array() || row.size() != 4) {
          throw std::domain_error(std::string("Hmm JSON: '") + name +
                                  "' rows must be [i, j, y, p]");
        }
        out.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>(),
                       row[3].get<double>()});
      }
      return out;
    };
    auto trans = read("trans");
    auto emit = read("emit");
    std::vector<double> initial;
    if (doc.contains("initial")) {
      initial = doc.at("initial").get<std::vector<double>>();
    } else {
      initial.assign(static_cast<std::size_t>(std::max(q, 0)), 0.0);
      if (!initial.empty()) initial[0] = 1.0;
    }
    return Hmm(q, std::move(emissions), trans, emit, std::move(initial));
  } catch (const nlohmann::json::exception& e) {
    throw std::domain_error(std::string("Hmm JSON: ") + e.what());
  }
}

nlohmann::json Hmm::to_json() const {
  auto rows = [](const std::vector<ProbEntry>& es) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : es) arr.push_back({e.from, e.to, e.emission, e.p});
    return arr;
  };
  return {{"num_states", num_states_},
          {"emissions", emissions_},
          {"trans", rows(trans_entries())},
          {"emit", rows(emit_entries())},
          {"initial", initial_}};
}

double joint_prob(const Hmm& h, int i, int j, int y) {
  return h.trans(i, j, y) * h.emit(i, j, y);
}

namespace {

template <typename RowValue>
StochasticityReport check_rows(const Hmm& h, RowValue value) {
  StochasticityReport report;
  for (int i = 0; i < h.num_states(); ++i) {
    for (int y = 0; y < h.num_emissions(); ++y) {
      double sum = 0.0;
      for (int j : h.successors(i)) sum += value(i, j, y);
      const double r = std::abs(sum - 1.0);
      if (report.worst_state < 0 || r > report.residual) {
        report.residual = r;
        report.worst_state = i;
        report.worst_emission = y;
      }
    }
  }
  report.pass = report.residual <= kStochasticTolerance;
  return report;
}

}  // namespace

StochasticityReport check_row_stochastic(const Hmm& h) {
  return check_rows(h, [&](int i, int j, int y) { return h.trans(i, j, y); });
}

StochasticityReport check_doubly_normalized(const Hmm& h) {
  return check_rows(h, [&](int i, int j, int y) { return joint_prob(h, i, j, y); });
}

FanoutReport fanout(const Hmm& h) {
  FanoutReport report;
  report.per_state.assign(static_cast<std::size_t>(h.num_states()), 0);
  for (int i = 0; i < h.num_states(); ++i) {
    int best = 0;
    for (int y = 0; y < h.num_emissions(); ++y) {
      int count = 0;
      for (int j : h.successors(i)) count += h.trans(i, j, y) > 0.0;
      best = std::max(best, count);
    }
    report.per_state[static_cast<std::size_t>(i)] = best;
    report.fanout = std::max(report.fanout, best);
  }
  return report;
}

}  // namespace qvalab
