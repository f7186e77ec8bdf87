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

#include "holodfs/qops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace holodfs {

namespace {

void check_register(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("register size out of range [1, 12]");
  }
}

void check_site(int l, int n) {
  if (l < 1 || l > n) {
    throw std::out_of_range("qubit index out of range [1, n]");
  }
}

// Bit mask of qubit l under the leftmost-first convention.
std::size_t site_mask(int l, int n) {
  return std::size_t{1} << (n - l);
}

}  // namespace

std::size_t BasisConvention::index_of(const std::vector<int>& bits) {
  const int n = static_cast<int>(bits.size());
  check_register(n);
  std::size_t idx = 0;
  for (int l = 1; l <= n; ++l) {
    const int b = bits[static_cast<std::size_t>(l - 1)];
    if (b != 0 && b != 1) {
      throw std::invalid_argument("bits must be 0 or 1");
    }
    if (b) idx |= site_mask(l, n);
  }
  return idx;
}

int BasisConvention::z_eigenvalue(std::size_t basis_index, int n_qubits) {
  check_register(n_qubits);
  if (basis_index >= (std::size_t{1} << n_qubits)) {
    throw std::out_of_range("basis index out of range");
  }
  return n_qubits - 2 * std::popcount(basis_index);
}

int BasisConvention::bit(std::size_t basis_index, int l, int n_qubits) {
  check_register(n_qubits);
  check_site(l, n_qubits);
  if (basis_index >= (std::size_t{1} << n_qubits)) {
    throw std::out_of_range("basis index out of range");
  }
  return (basis_index & site_mask(l, n_qubits)) ? 1 : 0;
}

QuantumState basis_state(int n_qubits, std::size_t index) {
  check_register(n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index out of range");
  }
  QuantumState s;
  s.n_qubits = n_qubits;
  s.amp = Vector::Zero(static_cast<Eigen::Index>(dim));
  s.amp(static_cast<Eigen::Index>(index)) = cx{1.0, 0.0};
  return s;
}

Operator make_operator(Matrix m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("operator matrix must be square");
  }
  const bool herm = (m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-12;
  return Operator{std::move(m), herm};
}

Operator pauli(Axis axis, int l, int n) {
  check_register(n);
  check_site(l, n);
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t mask = site_mask(l, n);
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    const bool set = (i & mask) != 0;
    switch (axis) {
      case Axis::x:
        m(static_cast<Eigen::Index>(i ^ mask), ii) = cx{1.0, 0.0};
        break;
      case Axis::y:
        // Y|0> = i|1>, Y|1> = -i|0>.
        m(static_cast<Eigen::Index>(i ^ mask), ii) =
            set ? cx{0.0, -1.0} : cx{0.0, 1.0};
        break;
      case Axis::z:
        m(ii, ii) = set ? cx{-1.0, 0.0} : cx{1.0, 0.0};
        break;
    }
  }
  return Operator{std::move(m), true};
}

Operator r_op(Axis axis, int l, int m, int n) {
  check_register(n);
  check_site(l, n);
  check_site(m, n);
  if (l == m) {
    throw std::invalid_argument("r_op requires two distinct qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t mask_l = site_mask(l, n);
  const std::size_t mask_m = site_mask(m, n);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dim),
                            static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const bool bl = (i & mask_l) != 0;
    const bool bm = (i & mask_m) != 0;
    if (bl == bm) continue;  // flip space only
    const auto ii = static_cast<Eigen::Index>(i);
    const std::size_t j = i ^ mask_l ^ mask_m;
    const auto jj = static_cast<Eigen::Index>(j);
    switch (axis) {
      case Axis::x:
        out(jj, ii) = cx{1.0, 0.0};
        break;
      case Axis::y:
        // Maps |0_l 1_m> -> -i|1_l 0_m> and |1_l 0_m> -> +i|0_l 1_m>.
        out(jj, ii) = bl ? cx{0.0, 1.0} : cx{0.0, -1.0};
        break;
      case Axis::z:
        // Diagonal b_l - b_m on the flip space.
        out(ii, ii) = bl ? cx{1.0, 0.0} : cx{-1.0, 0.0};
        break;
    }
  }
  return Operator{std::move(out), true};
}

Operator collective_z(int n) {
  check_register(n);
  const std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    m(ii, ii) = cx{static_cast<double>(n - 2 * std::popcount(i)), 0.0};
  }
  return Operator{std::move(m), true};
}

Operator kron(const Operator& a, const Operator& b) {
  const Eigen::Index ra = a.mat.rows(), rb = b.mat.rows();
  Matrix out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ra; ++j) {
      out.block(i * rb, j * rb, rb, rb) = a.mat(i, j) * b.mat;
    }
  }
  return Operator{std::move(out), a.hermitian && b.hermitian};
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  return a * b - b * a;
}

Matrix mat_exp(const Operator& a, cx scale) {
  if (a.mat.rows() != a.mat.cols()) {
    throw std::invalid_argument("mat_exp requires a square matrix");
  }
  if (a.hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat);
    if (es.info() != Eigen::Success) {
      throw std::runtime_error("eigendecomposition failed");
    }
    const Eigen::Index d = a.mat.rows();
    Vector phases(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      phases(k) = std::exp(scale * es.eigenvalues()(k));
    }
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
  }
  Matrix scaled = scale * a.mat;
  return scaled.exp();
}

std::vector<Vector> null_space(const Operator& a, double tol) {
  if (!a.hermitian) {
    throw std::invalid_argument("null_space requires a Hermitian operator");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("tolerance must be positive");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.mat);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed");
  }
  const Eigen::Index d = a.mat.rows();
  std::vector<Eigen::Index> zero_cols;
  for (Eigen::Index k = 0; k < d; ++k) {
    if (std::abs(es.eigenvalues()(k)) < tol) zero_cols.push_back(k);
  }
  if (zero_cols.empty()) return {};

  Matrix basis(d, static_cast<Eigen::Index>(zero_cols.size()));
  for (std::size_t c = 0; c < zero_cols.size(); ++c) {
    basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(zero_cols[c]);
  }
  const Matrix proj = basis * basis.adjoint();

  // Deterministic rebasis: project computational basis vectors in order of
  // decreasing weight and orthonormalize.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  // Weights are quantized so that numerically tied entries fall back to the
  // ascending-index rule instead of depending on rounding noise.
  auto weight = [&proj](Eigen::Index i) {
    return std::round(proj(i, i).real() * 1e9);
  };
  std::stable_sort(order.begin(), order.end(),
                   [&weight](Eigen::Index i, Eigen::Index j) {
                     return weight(i) > weight(j);
                   });

  std::vector<Vector> out;
  for (Eigen::Index idx : order) {
    if (out.size() == zero_cols.size()) break;
    Vector v = proj.col(idx);
    for (const Vector& u : out) {
      v -= u.dot(v) * u;
    }
    const double nrm = v.norm();
    if (nrm < 1e-7) continue;
    v /= nrm;
    // Phase fix: largest-magnitude entry real positive.
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    v *= std::conj(v(imax)) / std::abs(v(imax));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace holodfs
