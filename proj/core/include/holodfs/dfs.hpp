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

#include <cstdint>
#include <vector>

#include "holodfs/qops.hpp"

namespace holodfs {

// Four physical qubits encode one logical qubit inside the single-excitation
// sector of a block.  Block-local basis labels (leftmost-first indexing):
//   |a1> = |1000>  (index 8)   first ancilla
//   |a2> = |0100>  (index 4)   second ancilla
//   |1>_L = |0010> (index 2)   logical one
//   |0>_L = |0001> (index 1)   logical zero
// All four share collective-Z eigenvalue n - 2 per block, so any state in
// their span is invariant under uniform dephasing.  Multi-block codes take
// tensor products with block 1 leftmost.
struct CodeBasis {
  int n_logical = 1;
  int n_physical = 4;

  static constexpr std::size_t kA1 = 8;
  static constexpr std::size_t kA2 = 4;
  static constexpr std::size_t kOne = 2;
  static constexpr std::size_t kZero = 1;

  std::size_t dim() const { return std::size_t{1} << n_physical; }

  // Physical index of the logical word |b_1 ... b_N>_L; bit 1 of the word is
  // the leftmost block and the most significant logical bit.
  std::size_t logical_index(std::size_t word) const;

  // All 2^N logical indices in ascending logical-word order.
  std::vector<std::size_t> logical_indices() const;

  // All 4^N products of block labels {a1, a2, 1, 0}, ascending.
  std::vector<std::size_t> working_indices() const;

  // All physical basis states of Hamming weight N (the full fixed
  // collective-Z eigenspace containing the code), ascending.
  std::vector<std::size_t> dfs_indices() const;

  // dim x 2^N matrix whose columns are the logical basis states.
  Matrix logical_basis() const;

  // Projector onto the span of working_indices().
  Operator code_projector() const;

  // Projector onto the span of dfs_indices().
  Operator dfs_projector() const;
};

// Builds the code for n_logical in [1, 3].
CodeBasis build_code(int n_logical);

// Classical collective-dephasing model: random angles applied as a uniform
// Z rotation on every qubit, averaged over an ensemble.
struct DephasingEnsemble {
  int samples = 4096;
  std::uint64_t seed = 0x5EED;
};

// Mean survival probability |<psi| exp(-i lambda Z_total) |psi>|^2 over
// lambda drawn uniformly from [0, 2pi).  States supported on a single
// collective-Z eigenspace survive with probability exactly 1.  The draw is
// reproducible bit for bit for a fixed seed.
double dephase(const QuantumState& psi, const DephasingEnsemble& ensemble = {});

enum class Subspace { logical, logical_ancilla, dfs };

// Probability weight of psi outside the chosen subspace of the code.
double leakage(const QuantumState& psi, const CodeBasis& code, Subspace sub);

}  // namespace holodfs
