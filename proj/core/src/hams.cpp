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

#include "holodfs/hams.hpp"

#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>
#include <utility>

#include "holodfs/dfs.hpp"

namespace holodfs {

namespace {

// Leftmost-first r_op index of right-counted position p in block b.
int left_index(int block, int pos) { return 4 * (block - 1) + (5 - pos); }

Vector block_label_state(std::size_t dim, std::size_t index, cx amp) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = amp;
  return v;
}

}  // namespace

Operator h_general(int n, const std::vector<CouplingTerm>& terms) {
  if (n < 2 || n > kMaxQubits) {
    throw std::invalid_argument("h_general needs 2 to 12 qubits");
  }
  const std::size_t dim = std::size_t{1} << n;
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  std::set<std::pair<int, int>> seen;
  for (const CouplingTerm& t : terms) {
    if (t.l < 1 || t.l > n || t.m < 1 || t.m > n || t.l == t.m) {
      throw std::invalid_argument("coupling pair indices out of range");
    }
    int l = t.l, m = t.m;
    double jy = t.jy;
    if (l < m) {
      std::swap(l, m);
      jy = -jy;
    }
    if (!seen.insert({l, m}).second) {
      throw std::invalid_argument("duplicate coupling pair");
    }
    if (t.jx != 0.0) h += t.jx * r_op(Axis::x, l, m, n).mat;
    if (jy != 0.0) h += jy * r_op(Axis::y, l, m, n).mat;
  }
  return Operator{std::move(h), true};
}

LambdaResult h_lambda(const LambdaSystem& sys, int n) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("register size out of range");
  }
  const std::size_t dim = std::size_t{1} << n;
  if (sys.e >= dim || sys.g1 >= dim || sys.g2 >= dim) {
    throw std::out_of_range("level index out of range");
  }
  if (sys.e == sys.g1 || sys.e == sys.g2 || sys.g1 == sys.g2) {
    throw std::invalid_argument("Lambda levels must be distinct");
  }
  if (sys.j_lm < 0.0 || sys.j_ln < 0.0) {
    throw std::invalid_argument("coupling magnitudes must be nonnegative");
  }

  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  const auto e = static_cast<Eigen::Index>(sys.e);
  const auto g1 = static_cast<Eigen::Index>(sys.g1);
  const auto g2 = static_cast<Eigen::Index>(sys.g2);
  const cx c1 = sys.j_lm * std::exp(cx{0.0, sys.phi_lm});
  const cx c2 = sys.j_ln * std::exp(cx{0.0, sys.phi_ln});
  h(e, g1) = c1;
  h(g1, e) = std::conj(c1);
  h(e, g2) = c2;
  h(g2, e) = std::conj(c2);

  LambdaResult out{Operator{std::move(h), true}, {}, false};
  const double j = std::hypot(sys.j_lm, sys.j_ln);
  if (j == 0.0) {
    out.degenerate = true;
    out.dark.push_back(block_label_state(dim, sys.g1, cx{1.0, 0.0}));
    out.dark.push_back(block_label_state(dim, sys.g2, cx{1.0, 0.0}));
    return out;
  }
  Vector dark = Vector::Zero(static_cast<Eigen::Index>(dim));
  dark(g1) = c2 / j;
  dark(g2) = -c1 / j;
  out.dark.push_back(std::move(dark));
  return out;
}

Operator h_z(const ControlParams& p) {
  const int n = 4;
  const double j2 = p.j_scale * std::sin(p.theta);
  const double j3 = p.j_scale * std::cos(p.theta);
  Matrix h =
      j2 * (std::cos(p.phi) * r_op(Axis::x, left_index(1, 2), left_index(1, 4), n).mat +
            std::sin(p.phi) * r_op(Axis::y, left_index(1, 2), left_index(1, 4), n).mat) +
      j3 * r_op(Axis::x, left_index(1, 3), left_index(1, 4), n).mat;
  return Operator{std::move(h), true};
}

Operator h_x(const ControlParams& p) {
  const int n = 4;
  const double j2 = p.j_scale * std::sin(p.theta);
  const double j3 = p.j_scale * std::cos(p.theta);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Matrix rx24 = r_op(Axis::x, left_index(1, 2), left_index(1, 4), n).mat;
  const Matrix ry24 = r_op(Axis::y, left_index(1, 2), left_index(1, 4), n).mat;
  const Matrix rx14 = r_op(Axis::x, left_index(1, 1), left_index(1, 4), n).mat;
  const Matrix ry14 = r_op(Axis::y, left_index(1, 1), left_index(1, 4), n).mat;
  Matrix h = j3 * r_op(Axis::x, left_index(1, 3), left_index(1, 4), n).mat +
             j2 * inv_sqrt2 *
                 (std::cos(p.phi) * (rx24 - rx14) + std::sin(p.phi) * (ry24 - ry14));
  return Operator{std::move(h), true};
}

Operator h_4(const ControlParams& p) {
  const int n = 8;
  const double j2 = p.j_scale * std::sin(p.theta);
  const double j3 = p.j_scale * std::cos(p.theta);
  const Matrix rx24_1 = r_op(Axis::x, left_index(1, 2), left_index(1, 4), n).mat;
  const Matrix ry24_1 = r_op(Axis::y, left_index(1, 2), left_index(1, 4), n).mat;
  const Matrix rx24_2 = r_op(Axis::x, left_index(2, 2), left_index(2, 4), n).mat;
  const Matrix rx34_1 = r_op(Axis::x, left_index(1, 3), left_index(1, 4), n).mat;
  const Matrix rx34_2 = r_op(Axis::x, left_index(2, 3), left_index(2, 4), n).mat;
  Matrix h = j2 * (std::cos(p.phi) * rx24_1 + std::sin(p.phi) * ry24_1) * rx24_2 +
             j3 * rx34_1 * rx34_2;
  return Operator{std::move(h), true};
}

CpIndexPair cp_indices(int i, int j, int n_logical) {
  if (n_logical < 2 || n_logical > 3) {
    throw std::invalid_argument("entangling step needs 2 or 3 logical qubits");
  }
  if (i < 1 || j <= i || j > n_logical) {
    throw std::invalid_argument("logical pair must satisfy 1 <= i < j <= N");
  }
  const int oi = 4 * (i - 1), oj = 4 * (j - 1);
  return CpIndexPair{{oi + 2, oi + 4, oj + 2, oj + 4},
                     {oi + 3, oi + 4, oj + 3, oj + 4}};
}

Vector dark_h_z(const ControlParams& p) {
  Vector v = Vector::Zero(16);
  v(CodeBasis::kOne) = cx{std::cos(p.theta), 0.0};
  v(CodeBasis::kA2) = -std::sin(p.theta) * std::exp(cx{0.0, p.phi});
  return v;
}

Vector dark_h_x(const ControlParams& p) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector v = Vector::Zero(16);
  v(CodeBasis::kOne) = cx{std::cos(p.theta) * inv_sqrt2, 0.0};
  v(CodeBasis::kZero) = cx{-std::cos(p.theta) * inv_sqrt2, 0.0};
  v(CodeBasis::kA2) = -std::sin(p.theta) * std::exp(cx{0.0, p.phi});
  return v;
}

Vector dark_h_4(const ControlParams& p) {
  Vector v = Vector::Zero(256);
  const auto one_one = static_cast<Eigen::Index>((CodeBasis::kOne << 4) | CodeBasis::kOne);
  const auto a2_a2 = static_cast<Eigen::Index>((CodeBasis::kA2 << 4) | CodeBasis::kA2);
  v(one_one) = cx{std::cos(p.theta), 0.0};
  v(a2_a2) = -std::sin(p.theta) * std::exp(cx{0.0, p.phi});
  return v;
}

namespace {

HamiltonianFamily make_cached_family(
    std::string name, int n_qubits, std::vector<Matrix> generators,
    std::function<std::vector<double>(const ControlParams&)> coeffs,
    Matrix logical_basis, std::function<Vector(const ControlParams&)> moving,
    std::vector<std::size_t> code_idx, std::vector<std::size_t> confine_idx) {
  auto gens = std::make_shared<std::vector<Matrix>>(std::move(generators));
  HamiltonianFamily fam;
  fam.name = std::move(name);
  fam.n_qubits = n_qubits;
  fam.build = [gens, coeffs](const ControlParams& p) {
    const std::vector<double> c = coeffs(p);
    Matrix h = c[0] * (*gens)[0];
    for (std::size_t k = 1; k < gens->size(); ++k) {
      h += c[k] * (*gens)[k];
    }
    return Operator{std::move(h), true};
  };
  fam.logical_basis = std::move(logical_basis);
  fam.moving_dark = std::move(moving);
  fam.code_indices = std::move(code_idx);
  fam.confinement_indices = std::move(confine_idx);
  return fam;
}

std::vector<double> zx_coeffs(const ControlParams& p) {
  return {p.j_scale * std::sin(p.theta) * std::cos(p.phi),
          p.j_scale * std::sin(p.theta) * std::sin(p.phi),
          p.j_scale * std::cos(p.theta)};
}

}  // namespace

HamiltonianFamily family_h_z() {
  const int n = 4;
  const CodeBasis code = build_code(1);
  return make_cached_family(
      "h_z", n,
      {r_op(Axis::x, left_index(1, 2), left_index(1, 4), n).mat,
       r_op(Axis::y, left_index(1, 2), left_index(1, 4), n).mat,
       r_op(Axis::x, left_index(1, 3), left_index(1, 4), n).mat},
      zx_coeffs, code.logical_basis(), dark_h_z, code.working_indices(),
      code.dfs_indices());
}

HamiltonianFamily family_h_x() {
  const int n = 4;
  const CodeBasis code = build_code(1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Matrix gx = inv_sqrt2 *
                    (r_op(Axis::x, left_index(1, 2), left_index(1, 4), n).mat -
                     r_op(Axis::x, left_index(1, 1), left_index(1, 4), n).mat);
  const Matrix gy = inv_sqrt2 *
                    (r_op(Axis::y, left_index(1, 2), left_index(1, 4), n).mat -
                     r_op(Axis::y, left_index(1, 1), left_index(1, 4), n).mat);
  return make_cached_family(
      "h_x", n,
      {gx, gy, r_op(Axis::x, left_index(1, 3), left_index(1, 4), n).mat},
      zx_coeffs, code.logical_basis(), dark_h_x, code.working_indices(),
      code.dfs_indices());
}

HamiltonianFamily family_h_4() {
  const int n = 8;
  const CodeBasis code = build_code(2);
  const Matrix rx24_2 = r_op(Axis::x, left_index(2, 2), left_index(2, 4), n).mat;
  return make_cached_family(
      "h_4", n,
      {r_op(Axis::x, left_index(1, 2), left_index(1, 4), n).mat * rx24_2,
       r_op(Axis::y, left_index(1, 2), left_index(1, 4), n).mat * rx24_2,
       r_op(Axis::x, left_index(1, 3), left_index(1, 4), n).mat *
           r_op(Axis::x, left_index(2, 3), left_index(2, 4), n).mat},
      zx_coeffs, code.logical_basis(), dark_h_4, code.working_indices(),
      code.dfs_indices());
}

}  // namespace holodfs
