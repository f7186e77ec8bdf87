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

#include <string>
#include <vector>

#include "holodfs/adiabatic.hpp"
#include "holodfs/hams.hpp"
#include "holodfs/qops.hpp"

namespace holodfs {

// Total spin component: half the sum of the single-qubit Paulis.
Operator collective_spin(int n, Axis axis);

// Casimir Sx^2 + Sy^2 + Sz^2.
Operator s_squared(int n);

// Heisenberg exchange S_l . S_m = (X_l X_m + Y_l Y_m + Z_l Z_m) / 4.
Operator exchange(int l, int m, int n);

// One irreducible sector of the collective-spin decomposition
// (C^2)^(x n) = sum_J  C^(2J+1) (x) C^mult(J).
// basis[mi] holds the dim x mult orthonormal coordinates of the states
// |J, m, k>, k = 0..mult-1, at m = J - mi (mi = 0 is the highest weight).
// The multiplicity basis at the top weight is fixed deterministically by
// Gram-Schmidt over projected computational basis vectors in ascending
// index order; lower weights follow by applying the lowering operator,
// which makes the |J, m, k> ladder aligned in k across m by construction.
struct CGBlock {
  int twice_j = 0;
  int multiplicity = 0;
  std::vector<Matrix> basis;

  int block_dim() const { return multiplicity * (twice_j + 1); }
};

// Blocks ordered by descending block dimension, ties by descending J.
struct CGDecomposition {
  int n = 0;
  std::vector<CGBlock> blocks;

  // Unitary whose columns list every |J, m, k>: blocks in order, m
  // descending within a block, k ascending within an m.
  Matrix change_of_basis() const;

  const CGBlock& block(int twice_j) const;
};

// Supports n in [2, 6].
CGDecomposition cg_decompose(int n);

// How an operator acts relative to the (J = twice_j / 2) sector:
//   preserves_block: maps the sector into itself (off_block_max below tol);
//   m_independent:   additionally acts on the multiplicity factor alone,
//                    the same way at every m (no m mixing, no m dependence).
// multiplicity_action is the top-weight restriction basis[0]^dag op basis[0].
struct NSReport {
  double off_block_max = 0.0;
  double m_offdiag_max = 0.0;
  double m_deviation_max = 0.0;
  bool preserves_block = false;
  bool m_independent = false;
  Matrix multiplicity_action;
};

NSReport verify_ns(const CGDecomposition& decomp, const Operator& op,
                   int twice_j, double tol = 1e-10);

// Noiseless-subsystem qubit in the J = 3/2 sector of five physical qubits:
// the four-fold multiplicity space carries labels
//   k = 0 -> |a1~>,  k = 1 -> |a2~>,  k = 2 -> |0~>,  k = 3 -> |1~>.
// Collective noise acting on the m factor leaves the k factor untouched.
struct NSCode {
  enum Label { a1 = 0, a2 = 1, zero = 2, one = 3 };

  CGDecomposition decomp;
  int block_index = 0;

  const CGBlock& block() const { return decomp.blocks[static_cast<std::size_t>(block_index)]; }
  int m_count() const { return block().twice_j + 1; }
  // |label, m> at m = 3/2 - m_index, as a 32-dim state.
  Vector state(Label label, int m_index) const;
  // dim x 4 sector basis [a1~, a2~, 0~, 1~] at one m.
  Matrix sector_basis(int m_index) const;
};

NSCode build_ns_code();

// Multiplicity-factor couplings, applied identically in every m sector:
//   A = J' |a1~><a2~| + J0'' e^{i phi} |a1~><0~| + J1'' e^{i phi} |a1~><1~|
//     + h.c.
struct NSCouplings {
  double j_prime = 0.0;
  double j_pp0 = 0.0;
  double j_pp1 = 0.0;
  double phi = 0.0;
};

// H = sum_m B_m A B_m^dag on the 32-dim register; commutes with all
// collective-spin components by construction.
Operator h_ns(const NSCode& code, const NSCouplings& couplings);

// Moving dark branch of the phase-gate drive (j_prime = j cos theta,
// j_pp1 = j sin theta, j_pp0 = 0):
//   cos(theta) |1~, m> - sin(theta) e^{i phi} |a2~, m>.
Vector dark_h_ns(const NSCode& code, const ControlParams& p, int m_index);

// Reduced state of the multiplicity factor: rho_k = sum_m C_m C_m^dag with
// C_m the sector coordinates of psi.  Invariant under collective rotations;
// its trace is the weight of psi inside the block.
Matrix multiplicity_reduced(const NSCode& code, const Vector& psi);

struct NSHolonomy {
  std::vector<Matrix> per_m;  // canonical 2x2 holonomy at m = J .. -J
  double m_spread = 0.0;      // max entrywise difference across m
  double block_leakage_max = 0.0;  // weight outside the J block, all steps
  double dynamical_phase_max = 0.0;
  double solid_angle_analytic = 0.0;
  double berry_phase_analytic = 0.0;
};

// Drives the loop simultaneously in every m sector and extracts the
// holonomy on span{|0~, m>, |1~, m>} for each m.  The observer, when set,
// sees every step of the underlying evolution.
NSHolonomy ns_holonomy(const NSCode& code, const ParameterLoop& loop,
                       double j_scale = 1.0,
                       const StepObserver& extra_observer = {});

// Named families: "h_z", "h_x", "h_4", "h_ns".
HamiltonianFamily make_family(const std::string& name);

}  // namespace holodfs
