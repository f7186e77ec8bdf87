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

#include "holodfs/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "holodfs/adiabatic.hpp"
#include "holodfs/dfs.hpp"
#include "holodfs/gates.hpp"
#include "holodfs/hams.hpp"
#include "holodfs/ns.hpp"
#include "holodfs/qops.hpp"

namespace holodfs {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Fixed-seed control points reused across invariants.
std::vector<ControlParams> sample_points(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<ControlParams> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    ControlParams p;
    p.theta = uniform() * (kPi / 2.0);
    p.phi = uniform() * 2.0 * kPi;
    p.j_scale = 0.5 + uniform();
    out.push_back(p);
  }
  return out;
}

}  // namespace

VerifyReport run_verification(const std::string& corrupt_name) {
  VerifyReport report;
  auto add = [&report](const std::string& name, double dev, double tol) {
    report.invariants.push_back(InvariantResult{name, dev, tol, dev < tol});
  };

  // ---- qops ----
  {
    const int n = 4;
    double dev = 0.0;
    for (int l = 1; l <= n; ++l) {
      for (int m = 1; m <= n; ++m) {
        if (l == m) continue;
        const Matrix rx = r_op(Axis::x, l, m, n).mat;
        const Matrix ry = r_op(Axis::y, l, m, n).mat;
        const Matrix rz = r_op(Axis::z, l, m, n).mat;
        dev = std::max(dev, max_abs(commutator(rx, ry) - cx{0.0, 2.0} * rz));
        dev = std::max(dev, max_abs(commutator(ry, rz) - cx{0.0, 2.0} * rx));
        dev = std::max(dev, max_abs(commutator(rz, rx) - cx{0.0, 2.0} * ry));
      }
    }
    add("qops.su2_closure", dev, 1e-12);
  }
  {
    const int n = 4;
    double dev = 0.0;
    for (int l = 1; l <= n; ++l) {
      for (int m = l + 1; m <= n; ++m) {
        for (Axis a : {Axis::x, Axis::y, Axis::z}) {
          const Matrix r = r_op(a, l, m, n).mat;
          for (std::size_t i = 0; i < 16; ++i) {
            if (BasisConvention::bit(i, l, n) != BasisConvention::bit(i, m, n)) {
              continue;
            }
            dev = std::max(dev, r.col(static_cast<Eigen::Index>(i)).cwiseAbs().maxCoeff());
          }
        }
      }
    }
    add("qops.r_complement", dev, 1e-12);
  }
  {
    double dev = 0.0;
    for (int n : {4, 6}) {
      const Matrix z = collective_z(n).mat;
      for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        dev = std::max(dev, max_abs(commutator(z, r_op(a, 1, n, n).mat)));
        dev = std::max(dev, max_abs(commutator(z, r_op(a, 2, 3, n).mat)));
      }
    }
    add("qops.collective_z_commutes", dev, 1e-12);
  }
  {
    std::mt19937_64 rng(11);
    auto uniform = [&rng]() {
      return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    };
    Matrix a(16, 16);
    for (Eigen::Index i = 0; i < 16; ++i) {
      for (Eigen::Index j = 0; j < 16; ++j) {
        a(i, j) = cx{uniform(), uniform()};
      }
    }
    const Operator herm = make_operator(Matrix(a + a.adjoint()));
    const Matrix u = mat_exp(herm, cx{0.0, -0.7});
    const double dev_unitary = max_abs(u.adjoint() * u - Matrix::Identity(16, 16));
    const Matrix u_general = mat_exp(Operator{herm.mat, false}, cx{0.0, -0.7});
    add("qops.mat_exp_unitary", dev_unitary, 1e-12);
    add("qops.mat_exp_paths", max_abs(u - u_general), 1e-11);
  }
  {
    ControlParams p;
    p.theta = 0.7;
    p.phi = 1.1;
    const Operator h = h_z(p);
    const auto basis1 = null_space(h);
    const auto basis2 = null_space(h);
    double dev = basis1.size() == basis2.size() ? 0.0 : 1.0;
    for (std::size_t k = 0; dev == 0.0 && k < basis1.size(); ++k) {
      dev = std::max(dev, (basis1[k] - basis2[k]).cwiseAbs().maxCoeff());
    }
    add("qops.null_space_deterministic", dev, 1e-15);
  }

  // ---- dfs ----
  {
    const CodeBasis one = build_code(1);
    const CodeBasis two = build_code(2);
    double dev = 0.0;
    dev = std::max(dev, std::abs(static_cast<double>(one.logical_index(0)) - 1.0));
    dev = std::max(dev, std::abs(static_cast<double>(one.logical_index(1)) - 2.0));
    const std::vector<std::size_t> expected_idx = {17, 18, 33, 34};
    const auto got = two.logical_indices();
    for (std::size_t k = 0; k < 4; ++k) {
      dev = std::max(dev, std::abs(static_cast<double>(got[k]) -
                                   static_cast<double>(expected_idx[k])));
    }
    for (std::size_t idx : one.working_indices()) {
      dev = std::max(dev, std::abs(
          static_cast<double>(BasisConvention::z_eigenvalue(idx, 4)) - 2.0));
    }
    add("dfs.code_labels", dev, 0.5);
  }
  {
    const CodeBasis two = build_code(2);
    std::mt19937_64 rng(17);
    auto uniform = [&rng]() {
      return static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
    };
    QuantumState psi;
    psi.n_qubits = 8;
    psi.amp = Vector::Zero(256);
    for (std::size_t idx : two.working_indices()) {
      psi.amp(static_cast<Eigen::Index>(idx)) = cx{uniform(), uniform()};
    }
    psi.amp /= psi.amp.norm();
    QuantumState zero_l = basis_state(4, build_code(1).logical_index(0));
    const double dev = std::max(std::abs(1.0 - dephase(zero_l)),
                                std::abs(1.0 - dephase(psi)));
    add("dfs.dephasing_immunity", dev, 1e-12);
  }
  {
    QuantumState ghz;
    ghz.n_qubits = 4;
    ghz.amp = Vector::Zero(16);
    ghz.amp(0) = ghz.amp(15) = cx{1.0 / std::sqrt(2.0), 0.0};
    add("dfs.ghz_dephasing", std::abs(dephase(ghz) - 0.5), 0.02);
  }
  {
    double dev = 0.0;
    for (int nl : {1, 2}) {
      const CodeBasis code = build_code(nl);
      const Matrix p = code.dfs_projector().mat;
      const Matrix z = collective_z(code.n_physical).mat;
      dev = std::max(dev, max_abs(commutator(p, z)));
      dev = std::max(dev, max_abs(p * p - p));
    }
    add("dfs.projector_commutes", dev, 1e-12);
  }

  // ---- hams ----
  {
    double dev = 0.0;
    for (const ControlParams& p : sample_points(20, 23)) {
      dev = std::max(dev, (h_z(p).mat * dark_h_z(p)).norm());
      dev = std::max(dev, (h_x(p).mat * dark_h_x(p)).norm());
      dev = std::max(dev, (h_4(p).mat * dark_h_4(p)).norm());
      LambdaSystem sys;
      sys.e = 5;
      sys.g1 = 2;
      sys.g2 = 11;
      sys.j_lm = 0.3 + p.theta;
      sys.j_ln = 0.2 + p.phi / 10.0;
      sys.phi_lm = p.phi;
      sys.phi_ln = -p.theta;
      const LambdaResult lam = h_lambda(sys, 4);
      dev = std::max(dev, (lam.h.mat * lam.dark.front()).norm());
    }
    add("hams.dark_residuals", dev, 1e-12);
  }
  {
    double dev = 0.0;
    const CodeBasis code = build_code(1);
    const Vector zero_l = basis_state(4, code.logical_index(0)).amp;
    Vector plus_l = Vector::Zero(16);
    plus_l(CodeBasis::kOne) = plus_l(CodeBasis::kZero) = cx{1.0 / std::sqrt(2.0), 0.0};
    const CodeBasis code2 = build_code(2);
    for (const ControlParams& p : sample_points(10, 29)) {
      dev = std::max(dev, (h_z(p).mat * zero_l).norm());
      dev = std::max(dev, (h_x(p).mat * plus_l).norm());
      const Matrix h4 = h_4(p).mat;
      for (std::size_t w : {std::size_t{0}, std::size_t{1}, std::size_t{2}}) {
        dev = std::max(dev, (h4 * basis_state(8, code2.logical_index(w)).amp).norm());
      }
    }
    add("hams.static_darks", dev, 1e-12);
  }
  {
    double dev = 0.0;
    const Matrix z4 = collective_z(4).mat;
    const Matrix z8 = collective_z(8).mat;
    for (const ControlParams& p : sample_points(5, 31)) {
      dev = std::max(dev, max_abs(commutator(h_z(p).mat, z4)));
      dev = std::max(dev, max_abs(commutator(h_x(p).mat, z4)));
      dev = std::max(dev, max_abs(commutator(h_4(p).mat, z8)));
    }
    add("hams.collective_z_commutes", dev, 1e-12);
  }
  {
    // Lambda structure of the restrictions: excited level a1 (a1 a1), the
    // bright superposition at coupling J2 e^{i phi}, exchange at J3.
    double dev = 0.0;
    for (const ControlParams& p : sample_points(5, 37)) {
      const double j2 = p.j_scale * std::sin(p.theta);
      const double j3 = p.j_scale * std::cos(p.theta);
      const cx drive = j2 * std::exp(cx{0.0, p.phi});
      const Matrix hz = h_z(p).mat;
      dev = std::max(dev, std::abs(hz(CodeBasis::kA1, CodeBasis::kA2) - cx{j3, 0.0}));
      dev = std::max(dev, std::abs(hz(CodeBasis::kA1, CodeBasis::kOne) - drive));
      dev = std::max(dev, std::abs(hz(CodeBasis::kA1, CodeBasis::kZero)));
      const Matrix h4m = h_4(p).mat;
      const auto a1a1 = static_cast<Eigen::Index>((CodeBasis::kA1 << 4) | CodeBasis::kA1);
      const auto a2a2 = static_cast<Eigen::Index>((CodeBasis::kA2 << 4) | CodeBasis::kA2);
      const auto oneone = static_cast<Eigen::Index>((CodeBasis::kOne << 4) | CodeBasis::kOne);
      dev = std::max(dev, std::abs(h4m(a1a1, a2a2) - cx{j3, 0.0}));
      dev = std::max(dev, std::abs(h4m(a1a1, oneone) - drive));
    }
    add("hams.lambda_restriction", dev, 1e-12);
  }

  // ---- adiabatic ----
  {
    double dev = 0.0;
    const ParameterLoop half = standard_loop(kPi / 2.0);
    dev = std::max(dev, std::abs(solid_angle(half) - kPi / 2.0));
    dev = std::max(dev, std::abs(berry_phase(half) + kPi / 2.0));
    const ParameterLoop tilted = standard_loop(1.2, 200.0, 300, kPi / 3.0);
    dev = std::max(dev, std::abs(solid_angle(tilted) - 1.2 * (1.0 - std::cos(kPi / 3.0))));
    dev = std::max(dev,
                   std::abs(berry_phase(tilted) + 1.2 * std::pow(std::sin(kPi / 3.0), 2)));
    add("adiabatic.loop_integrals", dev, 1e-12);
  }
  {
    // Numerical quadrature oracle for a loop whose theta and phi vary on
    // the same segment.
    ParameterLoop skew;
    skew.waypoints = {{0.0, 0.0}, {kPi / 3.0, kPi / 4.0}, {kPi / 2.0, kPi}, {0.0, kPi}};
    skew.total_time = 100.0;
    skew.steps = 300;
    double quad_solid = 0.0, quad_berry = 0.0;
    const int fine = 20000;
    for (std::size_t s = 0; s + 1 < skew.waypoints.size(); ++s) {
      const double ta = skew.waypoints[s][0], tb = skew.waypoints[s + 1][0];
      const double dphi = skew.waypoints[s + 1][1] - skew.waypoints[s][1];
      for (int k = 0; k < fine; ++k) {
        const double f = (static_cast<double>(k) + 0.5) / fine;
        const double th = ta + f * (tb - ta);
        quad_solid += (1.0 - std::cos(th)) * dphi / fine;
        quad_berry -= std::sin(th) * std::sin(th) * dphi / fine;
      }
    }
    const double dev = std::max(std::abs(solid_angle(skew) - quad_solid),
                                std::abs(berry_phase(skew) - quad_berry));
    add("adiabatic.quadrature_match", dev, 1e-9);
  }
  {
    const ParameterLoop trivial = standard_loop(0.0, 50.0, 1500);
    const HolonomyResult res = holonomy(family_h_z(), trivial);
    add("adiabatic.zero_loop_identity",
        max_abs(res.unitary - Matrix::Identity(2, 2)), 1e-6);
  }
  {
    const ParameterLoop loop = standard_loop(1.0, 200.0, 1000);
    const auto schedule = loop_schedule(loop);
    double total = 0.0;
    for (const LoopStep& s : schedule) total += s.dt;
    const double dev =
        std::max(std::abs(total - loop.total_time),
                 std::abs(static_cast<double>(schedule.size()) - 1000.0));
    add("adiabatic.schedule_partition", dev, 1e-9);
  }

  // ---- gates ----
  {
    double dev = 0.0;
    dev = std::max(dev, max_abs(target_gate(GateKind::z_rot, 0.0).matrix -
                                Matrix::Identity(2, 2)));
    Matrix ix = Matrix::Zero(2, 2);
    ix(0, 1) = ix(1, 0) = cx{0.0, 1.0};
    dev = std::max(dev, max_abs(target_gate(GateKind::x_rot, 2.0 * kPi).matrix - ix));
    Matrix cz = Matrix::Identity(4, 4);
    cz(3, 3) = cx{0.0, 1.0};
    dev = std::max(dev, max_abs(target_gate(GateKind::cp, kPi).matrix - cz));
    add("gates.target_forms", dev, 1e-12);
  }
  {
    // Exact three-letter word for the Hadamard gate from the two
    // single-qubit families.
    const Matrix z = target_gate(GateKind::z_rot, -kPi).matrix;
    const Matrix x = target_gate(GateKind::x_rot, -kPi).matrix;
    Matrix had(2, 2);
    had << 1.0, 1.0, 1.0, -1.0;
    had /= std::sqrt(2.0);
    const double fid = gate_fidelity(had, compose({z, x, z}));
    add("gates.universality_word", 1.0 - fid, 1e-9);
  }

  // ---- ns ----
  {
    const std::vector<std::vector<std::array<int, 2>>> expected = {
        {{2, 1}, {0, 1}},
        {{3, 1}, {1, 2}},
        {{2, 3}, {4, 1}, {0, 2}},
        {{3, 4}, {1, 5}, {5, 1}},
        {{2, 9}, {4, 5}, {6, 1}, {0, 5}},
    };
    double dev = 0.0;
    for (int n = 2; n <= 6; ++n) {
      const CGDecomposition dec = cg_decompose(n);
      const auto& want = expected[static_cast<std::size_t>(n - 2)];
      if (dec.blocks.size() != want.size()) {
        dev = 1.0;
        continue;
      }
      int total = 0;
      for (std::size_t k = 0; k < want.size(); ++k) {
        if (dec.blocks[k].twice_j != want[k][0] ||
            dec.blocks[k].multiplicity != want[k][1]) {
          dev = 1.0;
        }
        total += dec.blocks[k].block_dim();
      }
      if (total != (1 << n)) dev = 1.0;
      if (n == 5) {
        for (const CGBlock& b : dec.blocks) {
          report.cg_multiplicities.push_back({b.twice_j, b.multiplicity});
        }
      }
    }
    add("cg.multiplicities", dev, 0.5);
  }
  {
    const CGDecomposition dec = cg_decompose(5);
    const Matrix u = dec.change_of_basis();
    add("cg.orthonormal", max_abs(u.adjoint() * u - Matrix::Identity(32, 32)),
        1e-10);
    const Matrix s2 = s_squared(5).mat;
    const Matrix sz = collective_spin(5, Axis::z).mat;
    double dev = 0.0;
    for (const CGBlock& b : dec.blocks) {
      const double jj = b.twice_j / 2.0;
      for (std::size_t mi = 0; mi < b.basis.size(); ++mi) {
        const double mval = jj - static_cast<double>(mi);
        const Matrix& basis = b.basis[mi];
        dev = std::max(dev, max_abs(s2 * basis - jj * (jj + 1.0) * basis));
        dev = std::max(dev, max_abs(sz * basis - mval * basis));
      }
    }
    add("cg.eigen_residuals", dev, 1e-10);
  }
  {
    const CGDecomposition dec = cg_decompose(5);
    double dev = 0.0;
    for (int l = 1; l <= 5; ++l) {
      for (int m = l + 1; m <= 5; ++m) {
        const NSReport rep = verify_ns(dec, exchange(l, m, 5), 3);
        dev = std::max({dev, rep.off_block_max, rep.m_offdiag_max,
                        rep.m_deviation_max});
      }
    }
    add("ns.exchange_m_independent", dev, 1e-10);
  }
  {
    const NSCode code = build_ns_code();
    double dev = 0.0;
    for (const ControlParams& p : sample_points(5, 41)) {
      NSCouplings c;
      c.j_prime = p.j_scale * std::cos(p.theta);
      c.j_pp1 = p.j_scale * std::sin(p.theta);
      c.phi = p.phi;
      const Matrix h = h_ns(code, c).mat;
      for (Axis a : {Axis::x, Axis::y, Axis::z}) {
        dev = std::max(dev, max_abs(commutator(h, collective_spin(5, a).mat)));
      }
      dev = std::max(dev, max_abs(commutator(h, s_squared(5).mat)));
      for (int mi = 0; mi < code.m_count(); ++mi) {
        dev = std::max(dev, (h * dark_h_ns(code, p, mi)).norm());
        dev = std::max(dev, (h * code.state(NSCode::zero, mi)).norm());
      }
    }
    add("ns.dark_residuals", dev, 1e-12);
  }

  if (!corrupt_name.empty()) {
    bool found = false;
    for (InvariantResult& inv : report.invariants) {
      if (inv.name == corrupt_name) {
        inv.tolerance = 0.0;
        inv.pass = false;
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("unknown invariant: " + corrupt_name);
    }
  }
  for (const InvariantResult& inv : report.invariants) {
    report.all_pass = report.all_pass && inv.pass;
  }
  return report;
}

}  // namespace holodfs
