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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "qvalab/conv_code.hpp"
#include "qvalab/hmm.hpp"
#include "qvalab/qva.hpp"

namespace qvalab {

/// Dense complex matrix in the computational basis. Qubit 0 is the most
/// significant bit of the basis index.
using DenseUnitary = Eigen::MatrixXcd;

/// Largest total register size chain_g_phi will build densely.
inline constexpr int kMaxDenseQubits = 10;

/// max |(U^dagger U - I)_{ij}|.
double unitarity_defect(const DenseUnitary& u);
bool is_unitary(const DenseUnitary& u, double tol = kUnitarityTolerance);

/// Max entrywise deviation of a from e^{i phi} b for the best global phase
/// (aligned on the largest entry of b); infinity on a shape mismatch.
double global_phase_distance(const DenseUnitary& a, const DenseUnitary& b);

/// R(theta) acting on span{|a>, |b>}: |a> -> cos|a> + sin|b>,
/// |b> -> -sin|a> + cos|b>; identity elsewhere. The angle enters as cos/sin
/// directly (the t-parameterized form with t = cos theta).
struct TwoLevelRotation {
  int a = 0;
  int b = 1;
  double theta = 0.0;

  DenseUnitary dense(int dim) const;
};

struct StatePreparation {
  DenseUnitary unitary;                   ///< first column equals the target
  std::vector<double> angles;             ///< theta_1 .. theta_K
  std::vector<TwoLevelRotation> factors;  ///< R(th1)_{0,1} ... R(thK)_{0,K}
};

/// Canonical preparation of a real unit vector in R^{K+1} (K >= 1) as the
/// product R(th_1)_{0,1} R(th_2)_{0,2} ... R(th_K)_{0,K}, angles recovered by
/// the spherical-coordinate recursion. Zero or non-unit targets are a domain
/// error.
StatePreparation u_psi(std::span<const double> target);

/// Block-diagonal operator on C^{control_dim} (x) C^{dim u}: u on the block
/// of `control_value`, identity on the others.
DenseUnitary controlled_block(int control_dim, int control_value,
                              const DenseUnitary& u);

/// The V_y step for a convolutional code: block-diagonal over the control
/// register |k>, each block mapping |0> to
/// 2^{-k/2} sum_u e^{i omega err(k,u,y)} |succ(k,u)>.
/// Each block is realized as Hadamards on the input-bit qubits of the target,
/// a diagonal phase over the input value, then XOR with succ(k, 0).
DenseUnitary v_block(const ConvCode& code, Symbol received_block, double omega);

/// Explicit 4-qubit gate sequence for V_00 of the (2,1,2) code [5, 7]:
/// H, CNOT, open-controlled R_z(2 omega), CNOT, controlled global phase
/// e^{i omega}, CNOT. Qubits: control register q0 q1, target q2 q3.
DenseUnitary v00_circuit(double omega);

/// The staircase V_{y_N} ... V_{y_1} on N + 1 registers of k*m qubits each.
/// Throws SizeLimitError beyond kMaxDenseQubits.
DenseUnitary chain_g_phi(const ConvCode& code, std::span<const Symbol> received,
                         double omega);

/// chain_g_phi applied to |initial>|0>...|0>.
std::vector<Amplitude> chain_state(const ConvCode& code,
                                   std::span<const Symbol> received,
                                   double omega, EncoderState initial = 0);

/// Basis index of the register contents |s_0>|s_1>...|s_N>.
std::size_t register_index(std::span<const int> states, int bits_per_register);

/// 2|s><s| - I on C^L, built as U (2|0><0| - I) U^dagger with U = u_psi of the
/// uniform vector. Independent of the path-level g_diffusion.
DenseUnitary diffusion_unitary(std::size_t dim);

struct GateCount {
  std::uint64_t rotations = 0;
  std::uint64_t control_logic = 0;
  std::uint64_t total = 0;
};

/// Analytic count for one marking pass: N |Q| F rotations plus
/// N |Q| F (log2 F)^2 Gray-code subspace-changing operations.
GateCount gate_counts(const ConvCode& code, int steps);
GateCount gate_counts(const Hmm& h, int steps);
GateCount gate_counts(std::uint64_t num_states, std::uint64_t fanout, int steps);

/// Row-major dump, one matrix row per line, each entry written as "re,im".
void write_matrix_csv(std::ostream& os, const DenseUnitary& m);

}  // namespace qvalab
