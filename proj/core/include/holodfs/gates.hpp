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

#include <vector>

#include "holodfs/qops.hpp"

namespace holodfs {

enum class GateKind { z_rot, x_rot, cp };

// Ideal holonomic gate for loop angle omega:
//   z_rot: diag(1, e^{-i omega / 2})                  (one logical qubit)
//   x_rot: cos(omega/4) I + i sin(omega/4) X          (one logical qubit)
//   cp:    diag(1, 1, 1, e^{i omega / 2})             (two logical qubits)
struct LogicalGate {
  GateKind kind = GateKind::z_rot;
  double omega = 0.0;
  Matrix matrix;
};

LogicalGate target_gate(GateKind kind, double omega);

// |tr(a^dag b)| / d for equal-dimension square matrices; insensitive to a
// global phase and equal to 1 exactly when a and b agree up to one.
double gate_fidelity(const Matrix& a, const Matrix& b);

// Product of gates in application order: the first entry acts first, so the
// result is gates[k-1] * ... * gates[0].
Matrix compose(const std::vector<Matrix>& gates);

// Embeds a single-qubit gate at logical position `factor` (1-based, leftmost
// first) of an n_factors-qubit register, identity elsewhere.
Matrix promote(const Matrix& gate, int factor, int n_factors);

// Removes the global phase: the first diagonal entry is made real
// nonnegative; entries of magnitude below 1e-3 are treated as vanished and
// the largest-magnitude entry of the first column is used instead (lowest
// row on ties), so near-zero noise never serves as the phase reference.
Matrix canonical_phase(Matrix u);

// arg(u_{dd} * conj(u_{00})) of a diagonal-dominant unitary; the phase of
// the last diagonal entry relative to the first.
double relative_phase(const Matrix& u);

// Wraps an angle to (-pi, pi].
double wrap_angle(double x);

}  // namespace holodfs
