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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace holodfs {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Largest register size supported by the dense representation.
inline constexpr int kMaxQubits = 12;

// Basis convention used throughout: qubit 1 is the leftmost tensor factor,
// so bit b_l of qubit l contributes b_l * 2^(n-l) to the basis index.
// |0> is the +1 eigenstate of Z, |1> the -1 eigenstate; a basis state with
// w set bits therefore has collective-Z eigenvalue n - 2w.
struct BasisConvention {
  // Index of |b_1 b_2 ... b_n>, bits given leftmost first.
  static std::size_t index_of(const std::vector<int>& bits);
  // Collective-Z eigenvalue n - 2*popcount of a basis index.
  static int z_eigenvalue(std::size_t basis_index, int n_qubits);
  // Bit of qubit l (1-based, leftmost) in a basis index.
  static int bit(std::size_t basis_index, int l, int n_qubits);
};

// Dense pure state on n qubits.
struct QuantumState {
  int n_qubits = 0;
  Vector amp;

  Eigen::Index dim() const { return amp.size(); }
  double norm() const { return amp.norm(); }
};

// Dense operator with a hermiticity tag; builders set the tag exactly.
struct Operator {
  Matrix mat;
  bool hermitian = false;

  Eigen::Index dim() const { return mat.rows(); }
};

enum class Axis { x, y, z };

// Computational basis state |index> on n qubits.
QuantumState basis_state(int n_qubits, std::size_t index);

// Wraps a matrix, detecting hermiticity to within 1e-12.
Operator make_operator(Matrix m);

// Pauli operator on qubit l (1-based) of an n-qubit register.
Operator pauli(Axis axis, int l, int n);

// Two-qubit exchange-type generator on qubits l != m:
//   x: (X_l X_m + Y_l Y_m) / 2
//   y: (X_l Y_m - Y_l X_m) / 2
//   z: (Z_m - Z_l) / 2
// All three vanish outside the span of states whose bits at l and m differ,
// where they act as the corresponding Pauli on the two-dimensional flip
// space ordered {|1_l 0_m>, |0_l 1_m>}.  The x generator is symmetric under
// l <-> m, y and z are antisymmetric.
Operator r_op(Axis axis, int l, int m, int n);

// Sum of Z over all qubits; diagonal with entries n - 2*popcount.
Operator collective_z(int n);

// Tensor product; left factor occupies the leading (leftmost) qubits.
Operator kron(const Operator& a, const Operator& b);

// A*B - B*A.
Matrix commutator(const Matrix& a, const Matrix& b);

// exp(scale * A).  Uses an eigendecomposition when A is tagged Hermitian
// and a Pade scaling-and-squaring method otherwise.
Matrix mat_exp(const Operator& a, cx scale);

// Orthonormal basis of the eigenvalue-zero subspace of a Hermitian operator
// (eigenvalues of magnitude below tol count as zero).  The basis is made
// deterministic by Gram-Schmidt over projections of computational basis
// vectors, taken in order of decreasing projection weight (ties broken by
// ascending index), each vector phase-fixed so its largest-magnitude entry
// is real positive.
std::vector<Vector> null_space(const Operator& a, double tol = 1e-9);

}  // namespace holodfs
