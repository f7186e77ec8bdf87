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

#include "holodfs/ns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "holodfs/gates.hpp"

namespace holodfs {

namespace {

long long comb(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

std::vector<std::size_t> weight_indices(int n, int w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
    if (std::popcount(i) == w) out.push_back(i);
  }
  return out;
}

void check_cg_register(int n) {
  if (n < 2 || n > 6) {
    throw std::invalid_argument("cg_decompose supports 2 to 6 qubits");
  }
}

}  // namespace

Operator collective_spin(int n, Axis axis) {
  if (n < 1 || n > kMaxQubits) {
    throw std::invalid_argument("register size out of range");
  }
  const std::size_t dim = std::size_t{1} << n;
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  for (int l = 1; l <= n; ++l) {
    m += 0.5 * pauli(axis, l, n).mat;
  }
  return Operator{std::move(m), true};
}

Operator s_squared(int n) {
  const Matrix sx = collective_spin(n, Axis::x).mat;
  const Matrix sy = collective_spin(n, Axis::y).mat;
  const Matrix sz = collective_spin(n, Axis::z).mat;
  Matrix m = sx * sx + sy * sy + sz * sz;
  return Operator{std::move(m), true};
}

Operator exchange(int l, int m, int n) {
  if (n < 2 || n > kMaxQubits) {
    throw std::invalid_argument("register size out of range");
  }
  Matrix out = 0.25 * (pauli(Axis::x, l, n).mat * pauli(Axis::x, m, n).mat +
                       pauli(Axis::y, l, n).mat * pauli(Axis::y, m, n).mat +
                       pauli(Axis::z, l, n).mat * pauli(Axis::z, m, n).mat);
  return Operator{std::move(out), true};
}

CGDecomposition cg_decompose(int n) {
  check_cg_register(n);
  const std::size_t dim = std::size_t{1} << n;
  const Matrix s2 = s_squared(n).mat;
  const Matrix s_minus =
      collective_spin(n, Axis::x).mat -
      cx{0.0, 1.0} * collective_spin(n, Axis::y).mat;

  CGDecomposition dec;
  dec.n = n;
  for (int twice_j = n; twice_j >= n % 2; twice_j -= 2) {
    const int w_top = (n - twice_j) / 2;
    const int mult = static_cast<int>(comb(n, w_top) - comb(n, w_top - 1));
    if (mult <= 0) continue;
    const std::vector<std::size_t> idxs = weight_indices(n, w_top);
    const auto sector = static_cast<Eigen::Index>(idxs.size());

    Matrix s2_sector(sector, sector);
    for (Eigen::Index a = 0; a < sector; ++a) {
      for (Eigen::Index b = 0; b < sector; ++b) {
        s2_sector(a, b) = s2(static_cast<Eigen::Index>(idxs[static_cast<std::size_t>(a)]),
                             static_cast<Eigen::Index>(idxs[static_cast<std::size_t>(b)]));
      }
    }

    // Exact polynomial projector onto the S^2 eigenvalue J(J+1) inside the
    // top-weight sector: the sector holds only eigenvalues J'(J'+1) with
    // J' >= J, so the finite product annihilates every other one.
    const double jj = twice_j / 2.0;
    Matrix proj = Matrix::Identity(sector, sector);
    for (int twice_o = twice_j + 2; twice_o <= n; twice_o += 2) {
      const double oo = twice_o / 2.0;
      proj = proj * (s2_sector - oo * (oo + 1.0) * Matrix::Identity(sector, sector)) /
             (jj * (jj + 1.0) - oo * (oo + 1.0));
    }

    // Deterministic top-weight basis: Gram-Schmidt over projected
    // computational basis vectors in ascending index order.
    Matrix top = Matrix::Zero(static_cast<Eigen::Index>(dim), mult);
    int accepted = 0;
    for (Eigen::Index t = 0; t < sector && accepted < mult; ++t) {
      Vector v = proj.col(t);
      for (int k = 0; k < accepted; ++k) {
        Vector u(sector);
        for (Eigen::Index a = 0; a < sector; ++a) {
          u(a) = top(static_cast<Eigen::Index>(idxs[static_cast<std::size_t>(a)]), k);
        }
        v -= u.dot(v) * u;
      }
      const double nrm = v.norm();
      if (nrm < 1e-8) continue;
      v /= nrm;
      for (Eigen::Index a = 0; a < sector; ++a) {
        top(static_cast<Eigen::Index>(idxs[static_cast<std::size_t>(a)]), accepted) = v(a);
      }
      ++accepted;
    }
    if (accepted != mult) {
      throw std::runtime_error("multiplicity count mismatch in cg_decompose");
    }

    CGBlock block;
    block.twice_j = twice_j;
    block.multiplicity = mult;
    block.basis.push_back(top);
    for (int mi = 1; mi <= twice_j; ++mi) {
      const double mval = jj - static_cast<double>(mi - 1);
      const double expect = std::sqrt(jj * (jj + 1.0) - mval * (mval - 1.0));
      Matrix lowered = s_minus * block.basis.back();
      for (int k = 0; k < mult; ++k) {
        const double nrm = lowered.col(k).norm();
        if (std::abs(nrm - expect) > 1e-8 * std::max(1.0, expect)) {
          throw std::runtime_error("lowering-ladder norm mismatch");
        }
        lowered.col(k) /= nrm;
      }
      block.basis.push_back(std::move(lowered));
    }
    dec.blocks.push_back(std::move(block));
  }

  std::stable_sort(dec.blocks.begin(), dec.blocks.end(),
                   [](const CGBlock& a, const CGBlock& b) {
                     if (a.block_dim() != b.block_dim()) {
                       return a.block_dim() > b.block_dim();
                     }
                     return a.twice_j > b.twice_j;
                   });
  return dec;
}

Matrix CGDecomposition::change_of_basis() const {
  const std::size_t dim = std::size_t{1} << n;
  Matrix u(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  Eigen::Index col = 0;
  for (const CGBlock& b : blocks) {
    for (const Matrix& sector : b.basis) {
      for (int k = 0; k < b.multiplicity; ++k) {
        u.col(col++) = sector.col(k);
      }
    }
  }
  if (col != static_cast<Eigen::Index>(dim)) {
    throw std::logic_error("decomposition does not span the register");
  }
  return u;
}

const CGBlock& CGDecomposition::block(int twice_j) const {
  for (const CGBlock& b : blocks) {
    if (b.twice_j == twice_j) return b;
  }
  throw std::invalid_argument("no block with the requested spin");
}

NSReport verify_ns(const CGDecomposition& decomp, const Operator& op,
                   int twice_j, double tol) {
  if (tol <= 0.0) {
    throw std::invalid_argument("tolerance must be positive");
  }
  const CGBlock& b = decomp.block(twice_j);
  const std::size_t dim = std::size_t{1} << decomp.n;
  if (op.mat.rows() != static_cast<Eigen::Index>(dim)) {
    throw std::invalid_argument("operator dimension does not match register");
  }

  const int sectors = twice_j + 1;
  Matrix all(static_cast<Eigen::Index>(dim),
             static_cast<Eigen::Index>(sectors * b.multiplicity));
  for (int mi = 0; mi < sectors; ++mi) {
    all.block(0, static_cast<Eigen::Index>(mi * b.multiplicity),
              static_cast<Eigen::Index>(dim), b.multiplicity) = b.basis[static_cast<std::size_t>(mi)];
  }

  const Matrix image = op.mat * all;
  const Matrix coords = all.adjoint() * image;
  const Matrix residual = image - all * coords;

  NSReport rep;
  rep.off_block_max = residual.cwiseAbs().maxCoeff();
  rep.multiplicity_action =
      b.basis[0].adjoint() * op.mat * b.basis[0];
  for (int mi = 0; mi < sectors; ++mi) {
    for (int mj = 0; mj < sectors; ++mj) {
      const Matrix sub = coords.block(
          static_cast<Eigen::Index>(mi * b.multiplicity),
          static_cast<Eigen::Index>(mj * b.multiplicity), b.multiplicity,
          b.multiplicity);
      if (mi != mj) {
        rep.m_offdiag_max = std::max(rep.m_offdiag_max, sub.cwiseAbs().maxCoeff());
      } else {
        rep.m_deviation_max =
            std::max(rep.m_deviation_max,
                     (sub - rep.multiplicity_action).cwiseAbs().maxCoeff());
      }
    }
  }
  rep.preserves_block = rep.off_block_max < tol;
  rep.m_independent = rep.preserves_block && rep.m_offdiag_max < tol &&
                      rep.m_deviation_max < tol;
  return rep;
}

Vector NSCode::state(Label label, int m_index) const {
  const CGBlock& b = block();
  if (m_index < 0 || m_index >= m_count()) {
    throw std::out_of_range("m index out of range");
  }
  return b.basis[static_cast<std::size_t>(m_index)].col(static_cast<int>(label));
}

Matrix NSCode::sector_basis(int m_index) const {
  const CGBlock& b = block();
  if (m_index < 0 || m_index >= m_count()) {
    throw std::out_of_range("m index out of range");
  }
  return b.basis[static_cast<std::size_t>(m_index)];
}

NSCode build_ns_code() {
  NSCode code;
  code.decomp = cg_decompose(5);
  code.block_index = -1;
  for (std::size_t i = 0; i < code.decomp.blocks.size(); ++i) {
    if (code.decomp.blocks[i].twice_j == 3) {
      code.block_index = static_cast<int>(i);
      break;
    }
  }
  if (code.block_index < 0 ||
      code.decomp.blocks[static_cast<std::size_t>(code.block_index)].multiplicity != 4) {
    throw std::logic_error("expected a four-fold J = 3/2 sector");
  }
  return code;
}

Operator h_ns(const NSCode& code, const NSCouplings& c) {
  const std::size_t dim = std::size_t{1} << code.decomp.n;
  Matrix a = Matrix::Zero(4, 4);
  const cx phase = std::exp(cx{0.0, c.phi});
  a(NSCode::a1, NSCode::a2) = c.j_prime;
  a(NSCode::a2, NSCode::a1) = c.j_prime;
  a(NSCode::a1, NSCode::zero) = c.j_pp0 * phase;
  a(NSCode::zero, NSCode::a1) = c.j_pp0 * std::conj(phase);
  a(NSCode::a1, NSCode::one) = c.j_pp1 * phase;
  a(NSCode::one, NSCode::a1) = c.j_pp1 * std::conj(phase);

  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(dim),
                          static_cast<Eigen::Index>(dim));
  for (int mi = 0; mi < code.m_count(); ++mi) {
    const Matrix basis = code.sector_basis(mi);
    h += basis * a * basis.adjoint();
  }
  return Operator{std::move(h), true};
}

Vector dark_h_ns(const NSCode& code, const ControlParams& p, int m_index) {
  return std::cos(p.theta) * code.state(NSCode::one, m_index) -
         std::sin(p.theta) * std::exp(cx{0.0, p.phi}) *
             code.state(NSCode::a2, m_index);
}

Matrix multiplicity_reduced(const NSCode& code, const Vector& psi) {
  if (psi.size() != static_cast<Eigen::Index>(std::size_t{1} << code.decomp.n)) {
    throw std::invalid_argument("state dimension does not match register");
  }
  Matrix rho = Matrix::Zero(4, 4);
  for (int mi = 0; mi < code.m_count(); ++mi) {
    const Vector c = code.sector_basis(mi).adjoint() * psi;
    rho += c * c.adjoint();
  }
  return rho;
}

NSHolonomy ns_holonomy(const NSCode& code, const ParameterLoop& loop,
                       double j_scale, const StepObserver& extra_observer) {
  const HamiltonianFamily fam = make_family("h_ns");
  const int sectors = code.m_count();

  Matrix psi0(32, 2 * sectors);
  for (int mi = 0; mi < sectors; ++mi) {
    psi0.col(2 * mi) = code.state(NSCode::zero, mi);
    psi0.col(2 * mi + 1) = code.state(NSCode::one, mi);
  }

  // Track weight outside the full J block at every step.
  Matrix block_all(32, 4 * sectors);
  for (int mi = 0; mi < sectors; ++mi) {
    block_all.block(0, 4 * mi, 32, 4) = code.sector_basis(mi);
  }
  double block_leak = 0.0;
  const StepObserver observer = [&block_all, &block_leak, &extra_observer](
                                    int step, const ControlParams& p,
                                    const Matrix& cols) {
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
      const double inside = (block_all.adjoint() * cols.col(c)).squaredNorm();
      block_leak = std::max(block_leak, cols.col(c).squaredNorm() - inside);
    }
    if (extra_observer) extra_observer(step, p, cols);
  };

  const EvolveReport rep =
      evolve(fam, loop, psi0, j_scale, StepMethod::automatic, observer);

  NSHolonomy out;
  out.block_leakage_max = block_leak;
  out.dynamical_phase_max = rep.dynamical_phase_max;
  out.solid_angle_analytic = solid_angle(loop);
  out.berry_phase_analytic = berry_phase(loop);

  for (int mi = 0; mi < sectors; ++mi) {
    Matrix basis(32, 2);
    basis.col(0) = code.state(NSCode::zero, mi);
    basis.col(1) = code.state(NSCode::one, mi);
    const Matrix overlap = basis.adjoint() * rep.columns.block(0, 2 * mi, 32, 2);
    Eigen::JacobiSVD<Matrix> svd(overlap,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.per_m.push_back(canonical_phase(svd.matrixU() * svd.matrixV().adjoint()));
  }
  for (std::size_t a = 0; a < out.per_m.size(); ++a) {
    for (std::size_t b = a + 1; b < out.per_m.size(); ++b) {
      out.m_spread = std::max(
          out.m_spread, (out.per_m[a] - out.per_m[b]).cwiseAbs().maxCoeff());
    }
  }
  return out;
}

HamiltonianFamily make_family(const std::string& name) {
  if (name == "h_z") return family_h_z();
  if (name == "h_x") return family_h_x();
  if (name == "h_4") return family_h_4();
  if (name == "h_ns") {
    auto code = std::make_shared<NSCode>(build_ns_code());
    HamiltonianFamily fam;
    fam.name = "h_ns";
    fam.n_qubits = 5;
    fam.build = [code](const ControlParams& p) {
      NSCouplings c;
      c.j_prime = p.j_scale * std::cos(p.theta);
      c.j_pp1 = p.j_scale * std::sin(p.theta);
      c.j_pp0 = 0.0;
      c.phi = p.phi;
      return h_ns(*code, c);
    };
    fam.logical_basis = Matrix(32, 2);
    fam.logical_basis.col(0) = code->state(NSCode::zero, 0);
    fam.logical_basis.col(1) = code->state(NSCode::one, 0);
    fam.moving_dark = [code](const ControlParams& p) {
      return dark_h_ns(*code, p, 0);
    };
    // The drive conserves S_z exactly; the top sector m = 3/2 lives in the
    // Hamming-weight-1 slice of the register.
    fam.code_indices = weight_indices(5, 1);
    fam.confinement_indices = weight_indices(5, 1);
    return fam;
  }
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace holodfs
