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

#include "holodfs/dfs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace holodfs {

namespace {

void check_code(const CodeBasis& code) {
  if (code.n_logical < 1 || code.n_logical > 3 ||
      code.n_physical != 4 * code.n_logical) {
    throw std::invalid_argument("code supports 1 to 3 logical qubits");
  }
}

Operator projector_from(const std::vector<std::size_t>& indices,
                        std::size_t dim) {
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  for (std::size_t i : indices) {
    const auto ii = static_cast<Eigen::Index>(i);
    p(ii, ii) = cx{1.0, 0.0};
  }
  return Operator{std::move(p), true};
}

}  // namespace

std::size_t CodeBasis::logical_index(std::size_t word) const {
  check_code(*this);
  if (word >= (std::size_t{1} << n_logical)) {
    throw std::out_of_range("logical word out of range");
  }
  std::size_t idx = 0;
  for (int b = 1; b <= n_logical; ++b) {
    const std::size_t bit = (word >> (n_logical - b)) & 1u;
    idx = (idx << 4) | (bit ? kOne : kZero);
  }
  return idx;
}

std::vector<std::size_t> CodeBasis::logical_indices() const {
  check_code(*this);
  std::vector<std::size_t> out;
  out.reserve(std::size_t{1} << n_logical);
  for (std::size_t w = 0; w < (std::size_t{1} << n_logical); ++w) {
    out.push_back(logical_index(w));
  }
  return out;
}

std::vector<std::size_t> CodeBasis::working_indices() const {
  check_code(*this);
  static constexpr std::size_t kLabels[4] = {CodeBasis::kZero, CodeBasis::kOne,
                                             CodeBasis::kA2, CodeBasis::kA1};
  std::vector<std::size_t> out{0};
  for (int b = 0; b < n_logical; ++b) {
    std::vector<std::size_t> next;
    next.reserve(out.size() * 4);
    for (std::size_t prefix : out) {
      for (std::size_t label : kLabels) {
        next.push_back((prefix << 4) | label);
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> CodeBasis::dfs_indices() const {
  check_code(*this);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (std::popcount(i) == n_logical) out.push_back(i);
  }
  return out;
}

Matrix CodeBasis::logical_basis() const {
  const auto idx = logical_indices();
  Matrix basis = Matrix::Zero(static_cast<Eigen::Index>(dim()),
                              static_cast<Eigen::Index>(idx.size()));
  for (std::size_t c = 0; c < idx.size(); ++c) {
    basis(static_cast<Eigen::Index>(idx[c]), static_cast<Eigen::Index>(c)) =
        cx{1.0, 0.0};
  }
  return basis;
}

Operator CodeBasis::code_projector() const {
  return projector_from(working_indices(), dim());
}

Operator CodeBasis::dfs_projector() const {
  return projector_from(dfs_indices(), dim());
}

CodeBasis build_code(int n_logical) {
  CodeBasis code;
  code.n_logical = n_logical;
  code.n_physical = 4 * n_logical;
  check_code(code);
  return code;
}

double dephase(const QuantumState& psi, const DephasingEnsemble& ensemble) {
  if (psi.n_qubits < 1 || psi.n_qubits > kMaxQubits) {
    throw std::invalid_argument("state register size out of range");
  }
  if (psi.dim() != static_cast<Eigen::Index>(std::size_t{1} << psi.n_qubits)) {
    throw std::invalid_argument("state dimension does not match register");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("state must be normalized");
  }
  if (ensemble.samples < 1) {
    throw std::invalid_argument("ensemble needs at least one sample");
  }

  // Group probability weight by collective-Z eigenvalue z = n - 2w; the
  // survival amplitude under angle lambda is sum_z p_z exp(-i lambda z).
  const int n = psi.n_qubits;
  std::vector<double> weight(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index i = 0; i < psi.dim(); ++i) {
    const auto w = static_cast<std::size_t>(
        std::popcount(static_cast<std::size_t>(i)));
    weight[w] += std::norm(psi.amp(i));
  }
  // Survival is defined for the normalized state, so normalize the weight
  // distribution itself; |amp| is also invariant under a global phase, so
  // measure z from the dominant weight class.  A state confined to one class
  // then contributes exactly 1.0 * exp(0) per sample: the advertised
  // "survives with probability exactly 1" holds in floating point, not just
  // up to rounding.
  std::size_t w_ref = 0;
  double total = 0.0;
  for (std::size_t w = 0; w <= static_cast<std::size_t>(n); ++w) {
    total += weight[w];
    if (weight[w] > weight[w_ref]) w_ref = w;
  }
  for (double& p : weight) p /= total;

  std::mt19937_64 rng(ensemble.seed);
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double acc = 0.0;
  for (int s = 0; s < ensemble.samples; ++s) {
    // Top 53 bits to a double in [0, 1); fixed conversion keeps the stream
    // identical across standard library implementations.
    const double u =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double lambda = kTwoPi * u;
    cx amp{0.0, 0.0};
    for (std::size_t w = 0; w <= static_cast<std::size_t>(n); ++w) {
      if (weight[w] == 0.0) continue;
      const double dz = 2.0 * (static_cast<double>(w_ref) -
                               static_cast<double>(w));
      amp += weight[w] * std::exp(cx{0.0, -lambda * dz});
    }
    acc += std::norm(amp);
  }
  return acc / static_cast<double>(ensemble.samples);
}

double leakage(const QuantumState& psi, const CodeBasis& code, Subspace sub) {
  check_code(code);
  if (psi.n_qubits != code.n_physical) {
    throw std::invalid_argument("state register does not match code");
  }
  std::vector<std::size_t> keep;
  switch (sub) {
    case Subspace::logical:
      keep = code.logical_indices();
      break;
    case Subspace::logical_ancilla:
      keep = code.working_indices();
      break;
    case Subspace::dfs:
      keep = code.dfs_indices();
      break;
  }
  double inside = 0.0;
  for (std::size_t i : keep) {
    inside += std::norm(psi.amp(static_cast<Eigen::Index>(i)));
  }
  const double total = psi.amp.squaredNorm();
  return std::max(0.0, total - inside);
}

}  // namespace holodfs
