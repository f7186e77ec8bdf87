// Copyright 2026 The holodfs developers
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

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "holodfs/qops.hpp"

namespace holodfs {

// Control point on the (theta, phi) sphere with an overall coupling scale.
struct ControlParams {
  double theta = 0.0;
  double phi = 0.0;
  double j_scale = 1.0;
};

// One exchange-type coupling jx * Rx_{lm} + jy * Ry_{lm}.  Terms are
// normalized internally to l > m (Rx is symmetric, Ry flips sign).
struct CouplingTerm {
  int l = 0;
  int m = 0;
  double jx = 0.0;
  double jy = 0.0;
};

// Sum of coupling terms on an n-qubit register.  Duplicate unordered pairs
// are rejected.
Operator h_general(int n, const std::vector<CouplingTerm>& terms);

// Three-level Lambda coupling inside a dim-2^n register:
//   H = J_lm e^{i phi_lm} |e><g1| + J_ln e^{i phi_ln} |e><g2| + h.c.
// For (J_lm, J_ln) != (0, 0) the dark state is
//   (J_ln e^{i phi_ln} |g1> - J_lm e^{i phi_lm} |g2>) / J
// up to normalization; both couplings zero leaves {|g1>, |g2>} degenerate.
struct LambdaSystem {
  std::size_t e = 0;
  std::size_t g1 = 0;
  std::size_t g2 = 0;
  double j_lm = 0.0;
  double j_ln = 0.0;
  double phi_lm = 0.0;
  double phi_ln = 0.0;
};

struct LambdaResult {
  Operator h;
  std::vector<Vector> dark;
  bool degenerate = false;
};

LambdaResult h_lambda(const LambdaSystem& sys, int n);

// Single-block control Hamiltonians on 4 qubits.  Coupling pair labels
// follow the convention that counts qubit positions from the right end of
// each 4-qubit block; position p of block b maps to the leftmost-first
// r_op index 4*(b-1) + (5-p).  With J2 = j sin(theta), J3 = j cos(theta):
//
//   h_z = J2 [cos(phi) Rx + sin(phi) Ry]_{24} + J3 Rx_{34}
//     dark (moving):  cos(theta) |1>_L - sin(theta) e^{i phi} |a2>
//     dark (static):  |0>_L
//
//   h_x = J3 Rx_{34} + J2 [cos(phi) (Rx_{24} - Rx_{14})
//                        + sin(phi) (Ry_{24} - Ry_{14})] / sqrt(2)
//     dark (moving):  cos(theta) |->_L - sin(theta) e^{i phi} |a2>
//     dark (static):  |+>_L
// where |+->_L = (|1>_L +- |0>_L) / sqrt(2).
Operator h_z(const ControlParams& p);
Operator h_x(const ControlParams& p);

// Two-block entangling Hamiltonian on 8 qubits:
//   h_4 = J2 [cos(phi) Rx + sin(phi) Ry]_{24}^(1) Rx_{24}^(2)
//       + J3 Rx_{34}^(1) Rx_{34}^(2)
// The phi rotation acts on block 1 only; this is the form annihilating
//   cos(theta) |11>_L - sin(theta) e^{i phi} |a2 a2>
// along with the static darks |00>_L, |01>_L, |10>_L.
Operator h_4(const ControlParams& p);

// Qubit index tables for the entangling step between logical qubits i < j:
// the phase pair couples positions (2, 4) of both blocks, the exchange pair
// positions (3, 4).  Indices are block offsets 4*(i-1) plus the position,
// in the right-counted labeling described above.
struct CpIndexPair {
  std::array<int, 4> phase_pairs;
  std::array<int, 4> exchange_pairs;
};

CpIndexPair cp_indices(int i, int j, int n_logical);

// Analytic dark states of the named families at a control point.
Vector dark_h_z(const ControlParams& p);
Vector dark_h_x(const ControlParams& p);
Vector dark_h_4(const ControlParams& p);

// A driveable Hamiltonian family: builder plus the data needed to read a
// holonomy out of it.
struct HamiltonianFamily {
  std::string name;
  int n_qubits = 4;
  std::function<Operator(const ControlParams&)> build;
  // Columns spanning the degenerate computational subspace at theta = 0.
  Matrix logical_basis;
  // Analytic dark branch that moves with the control point.
  std::function<Vector(const ControlParams&)> moving_dark;
  // Index set of the full code (logical + ancilla labels); used for
  // end-of-loop leakage.
  std::vector<std::size_t> code_indices;
  // Index set of the enclosing fixed collective-Z eigenspace; used for
  // leakage tracking at every step.
  std::vector<std::size_t> confinement_indices;
};

HamiltonianFamily family_h_z();
HamiltonianFamily family_h_x();
HamiltonianFamily family_h_4();

}  // namespace holodfs
