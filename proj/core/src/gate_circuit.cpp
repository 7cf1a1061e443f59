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

#include "qvalab/gate_circuit.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qvalab/errors.hpp"

namespace qvalab {

using cd = std::complex<double>;

double unitarity_defect(const DenseUnitary& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  const DenseUnitary d = u.adjoint() * u - DenseUnitary::Identity(u.rows(), u.cols());
  return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const DenseUnitary& u, double tol) { return unitarity_defect(u) <= tol; }

double global_phase_distance(const DenseUnitary& a, const DenseUnitary& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  cd phase = a(r, c) / b(r, c);
  if (std::abs(phase) == 0.0 || !std::isfinite(std::abs(phase))) {
    return std::numeric_limits<double>::infinity();
  }
  phase /= std::abs(phase);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

DenseUnitary TwoLevelRotation::dense(int dim) const {
  if (a == b || a < 0 || b < 0 || a >= dim || b >= dim) {
    throw std::domain_error("TwoLevelRotation: invalid basis pair");
  }
  DenseUnitary m = DenseUnitary::Identity(dim, dim);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  m(a, a) = c;
  m(b, a) = s;
  m(a, b) = -s;
  m(b, b) = c;
  return m;
}

StatePreparation u_psi(std::span<const double> target) {
  const std::size_t dim = target.size();
  if (dim < 2) throw std::domain_error("u_psi: target must live in R^{K+1}, K >= 1");
  double norm2 = 0.0;
  for (double x : target) norm2 += x * x;
  if (norm2 == 0.0) throw std::domain_error("u_psi: zero target");
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-10) {
    throw std::domain_error("u_psi: target is not a unit vector");
  }

  // With rho_j = ||psi_0..psi_j||: component j of the product's first column
  // is sin(th_j) rho_j, component 0 is cos(th_1) rho_1.
  StatePreparation out;
  const auto k = dim - 1;
  out.angles.resize(k);
  out.angles[0] = std::atan2(target[1], target[0]);
  double rho = std::hypot(target[0], target[1]);
  for (std::size_t j = 2; j <= k; ++j) {
    out.angles[j - 1] = std::atan2(target[j], rho);
    rho = std::hypot(rho, target[j]);
  }

  const int d = static_cast<int>(dim);
  out.unitary = DenseUnitary::Identity(d, d);
  for (std::size_t j = 1; j <= k; ++j) {
    TwoLevelRotation r{0, static_cast<int>(j), out.angles[j - 1]};
    out.unitary = out.unitary * r.dense(d);
    out.factors.push_back(r);
  }
  return out;
}

DenseUnitary controlled_block(int control_dim, int control_value,
                              const DenseUnitary& u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw std::domain_error("controlled_block: u must be square and nonempty");
  }
  if (control_dim < 1 || control_value < 0 || control_value >= control_dim) {
    throw std::domain_error("controlled_block: control value out of range");
  }
  const Eigen::Index t = u.rows();
  DenseUnitary m = DenseUnitary::Identity(control_dim * t, control_dim * t);
  m.block(control_value * t, control_value * t, t, t) = u;
  return m;
}

DenseUnitary v_block(const ConvCode& code, Symbol received_block, double omega) {
  if (received_block >= (Symbol{1} << code.n())) {
    throw std::domain_error("v_block: received block wider than n bits");
  }
  const int q = code.num_states();
  const int k = code.k();
  const int shift = code.register_bits() - k;  // input bits sit above this
  const Symbol low_mask = (Symbol{1} << shift) - 1;
  const int fan = code.fanout();
  const double amp = 1.0 / std::sqrt(static_cast<double>(fan));

  DenseUnitary v = DenseUnitary::Zero(q * q, q * q);
  for (int c = 0; c < q; ++c) {
    const auto from = static_cast<EncoderState>(c);
    const EncoderState zero_succ = code.next_state(from, 0);
    std::vector<cd> phase(static_cast<std::size_t>(fan));
    for (int u = 0; u < fan; ++u) {
      const Transition tr = code.step(from, static_cast<Symbol>(u));
      phase[static_cast<std::size_t>(u)] =
          std::polar(1.0, omega * error_count(tr, received_block));
    }
    for (int t = 0; t < q; ++t) {
      const auto a = static_cast<Symbol>(t) >> shift;  // input-bit part
      const Symbol low = static_cast<Symbol>(t) & low_mask;
      for (int u = 0; u < fan; ++u) {
        const double sign = (std::popcount(a & static_cast<Symbol>(u)) & 1) ? -1.0 : 1.0;
        const Symbol row = ((static_cast<Symbol>(u) << shift) | low) ^ zero_succ;
        v(c * q + static_cast<int>(row), c * q + t) =
            sign * amp * phase[static_cast<std::size_t>(u)];
      }
    }
  }
  return v;
}

namespace {

// Single-qubit gate on `target` with (qubit, value) controls; qubit 0 is the
// most significant bit.
DenseUnitary gate(int num_qubits, int target, const Eigen::Matrix2cd& g,
                  std::initializer_list<std::pair<int, bool>> controls = {}) {
  const int dim = 1 << num_qubits;
  DenseUnitary m = DenseUnitary::Zero(dim, dim);
  const int tbit = num_qubits - 1 - target;
  for (int col = 0; col < dim; ++col) {
    bool active = true;
    for (const auto& [qubit, value] : controls) {
      const bool bit = (col >> (num_qubits - 1 - qubit)) & 1;
      active = active && bit == value;
    }
    if (!active) {
      m(col, col) = 1.0;
      continue;
    }
    const int in = (col >> tbit) & 1;
    for (int out = 0; out < 2; ++out) {
      const int row = (col & ~(1 << tbit)) | (out << tbit);
      m(row, col) = g(out, in);
    }
  }
  return m;
}

Eigen::Matrix2cd hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd h;
  h << s, s, s, -s;
  return h;
}

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd x;
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

Eigen::Matrix2cd rz(double angle) {
  Eigen::Matrix2cd r;
  r << 1.0, 0.0, 0.0, std::polar(1.0, angle);
  return r;
}

Eigen::Matrix2cd global_phase(double angle) {
  return std::polar(1.0, angle) * Eigen::Matrix2cd::Identity();
}

// I_left (x) v (x) I_right
DenseUnitary embed(const DenseUnitary& v, Eigen::Index left, Eigen::Index right) {
  const Eigen::Index d = v.rows();
  DenseUnitary m = DenseUnitary::Zero(left * d * right, left * d * right);
  for (Eigen::Index l = 0; l < left; ++l) {
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) {
        if (v(i, j) == cd{}) continue;
        for (Eigen::Index r = 0; r < right; ++r) {
          m((l * d + i) * right + r, (l * d + j) * right + r) = v(i, j);
        }
      }
    }
  }
  return m;
}

}  // namespace

DenseUnitary v00_circuit(double omega) {
  constexpr int n = 4;
  // Applied right to left: the first gate in time is the rightmost factor.
  const DenseUnitary h2 = gate(n, 2, hadamard());
  const DenseUnitary cx12 = gate(n, 2, pauli_x(), {{1, true}});
  const DenseUnitary rz_open0 = gate(n, 2, rz(2.0 * omega), {{0, false}});
  const DenseUnitary phase0 = gate(n, 2, global_phase(omega), {{0, true}});
  const DenseUnitary cx03 = gate(n, 3, pauli_x(), {{0, true}});
  return cx03 * phase0 * cx12 * rz_open0 * cx12 * h2;
}

DenseUnitary chain_g_phi(const ConvCode& code, std::span<const Symbol> received,
                         double omega) {
  if (received.empty()) throw std::domain_error("chain_g_phi: empty received word");
  const int b = code.register_bits();
  const auto registers = static_cast<long long>(received.size()) + 1;
  if (registers * b > kMaxDenseQubits) {
    throw SizeLimitError("chain_g_phi: register exceeds the dense-simulation guard");
  }
  const Eigen::Index q = code.num_states();
  const auto total = static_cast<Eigen::Index>(1) << (registers * b);
  DenseUnitary u = DenseUnitary::Identity(total, total);
  for (std::size_t t = 0; t < received.size(); ++t) {
    // V_{y_t} acts on registers t and t + 1.
    const Eigen::Index left = static_cast<Eigen::Index>(1) << (static_cast<long long>(t) * b);
    const Eigen::Index right = total / (left * q * q);
    u = embed(v_block(code, received[t], omega), left, right) * u;
  }
  return u;
}

std::size_t register_index(std::span<const int> states, int bits_per_register) {
  std::size_t idx = 0;
  for (int s : states) {
    idx = (idx << bits_per_register) | static_cast<std::size_t>(s);
  }
  return idx;
}

std::vector<Amplitude> chain_state(const ConvCode& code,
                                   std::span<const Symbol> received,
                                   double omega, EncoderState initial) {
  if (initial >= static_cast<EncoderState>(code.num_states())) {
    throw std::domain_error("chain_state: initial state out of range");
  }
  if (received.empty()) throw std::domain_error("chain_state: empty received word");
  const int b = code.register_bits();
  const auto registers = static_cast<long long>(received.size()) + 1;
  if (registers * b > kMaxDenseQubits) {
    throw SizeLimitError("chain_state: register exceeds the dense-simulation guard");
  }
  const Eigen::Index q = code.num_states();
  const auto total = static_cast<Eigen::Index>(1) << (registers * b);
  std::vector<int> start(received.size() + 1, 0);
  start[0] = static_cast<int>(initial);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total);
  v(static_cast<Eigen::Index>(register_index(start, b))) = 1.0;
  // Same staircase as chain_g_phi, applied to one column.
  for (std::size_t t = 0; t < received.size(); ++t) {
    const Eigen::Index left = static_cast<Eigen::Index>(1) << (static_cast<long long>(t) * b);
    const Eigen::Index right = total / (left * q * q);
    v = embed(v_block(code, received[t], omega), left, right) * v;
  }
  return {v.data(), v.data() + v.size()};
}

DenseUnitary diffusion_unitary(std::size_t dim) {
  if (dim < 2) throw std::domain_error("diffusion_unitary: dim must be >= 2");
  const std::vector<double> uniform(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  const DenseUnitary prep = u_psi(uniform).unitary;
  const auto d = static_cast<Eigen::Index>(dim);
  DenseUnitary reflect = -DenseUnitary::Identity(d, d);
  reflect(0, 0) = 1.0;
  return prep * reflect * prep.adjoint();
}

GateCount gate_counts(std::uint64_t num_states, std::uint64_t fanout, int steps) {
  if (steps < 0) throw std::domain_error("gate_counts: negative step count");
  if (fanout < 1) throw std::domain_error("gate_counts: fanout must be >= 1");
  const auto f = static_cast<std::uint64_t>(std::bit_width(fanout - 1));  // ceil(log2 F)
  GateCount c;
  c.rotations = static_cast<std::uint64_t>(steps) * num_states * fanout;
  c.control_logic = c.rotations * f * f;
  c.total = c.rotations + c.control_logic;
  return c;
}

GateCount gate_counts(const ConvCode& code, int steps) {
  return gate_counts(static_cast<std::uint64_t>(code.num_states()),
                     static_cast<std::uint64_t>(code.fanout()), steps);
}

GateCount gate_counts(const Hmm& h, int steps) {
  return gate_counts(static_cast<std::uint64_t>(h.num_states()),
                     static_cast<std::uint64_t>(fanout(h).fanout), steps);
}

void write_matrix_csv(std::ostream& os, const DenseUnitary& m) {
  char buf[64];
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      std::snprintf(buf, sizeof buf, "%s%.12g,%.12g", c ? "," : "", m(r, c).real(),
                    m(r, c).imag());
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace qvalab
