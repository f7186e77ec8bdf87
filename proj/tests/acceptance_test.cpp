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
//
// Release acceptance suite.  Every check prints one
//   [ACCEPT] <criterion> <clause>: PASS|FAIL (<measurement>)
// line and raises a test failure when it does not hold, so the gate record
// is readable straight off the test log.
//
// Tests named *HalfAngleReference keep the legacy reference targets, which
// assign each gate half of the loop angle the faithful propagator actually
// accumulates.  They fail, honestly and by measurement, and each sits next
// to a passing companion that checks the full-angle value the simulated
// dynamics (and the analytic dark-branch transport) produce.  See README.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "holodfs/adiabatic.hpp"
#include "holodfs/dfs.hpp"
#include "holodfs/gates.hpp"
#include "holodfs/hams.hpp"
#include "holodfs/ns.hpp"
#include "holodfs/qops.hpp"
#include "json.hpp"
#include "subprocess.hpp"

namespace holodfs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTotalTime = 200.0;
constexpr int kLoopSteps = 20000;

using Clock = std::chrono::steady_clock;

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// One gate-record line per clause; the EXPECT carries the same message into
// the test framework so red clauses are individually attributable.
bool check(const std::string& tag, bool pass, const std::string& detail) {
  std::printf("[ACCEPT] %s: %s (%s)\n", tag.c_str(), pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(pass) << tag << ": " << detail;
  return pass;
}

double wrap_dist(double a, double b) { return std::abs(wrap_angle(a - b)); }

// ---------------------------------------------------------------------------
// Shared simulation runs, computed once per process and reused by every
// criterion that needs them.  Each run also registers its worst per-step
// weight outside the fixed collective-Z sector for the confinement check.

std::vector<std::pair<std::string, double>>& confinement_registry() {
  static std::vector<std::pair<std::string, double>> reg;
  return reg;
}

struct TimedRun {
  double phi0 = 0.0;
  HolonomyResult res;
  double fid_analytic = 0.0;
  double seconds = 0.0;
};

std::vector<TimedRun> run_family(const HamiltonianFamily& fam,
                                 const std::vector<double>& phi0s) {
  std::vector<TimedRun> out;
  for (double phi0 : phi0s) {
    const ParameterLoop loop = standard_loop(phi0, kTotalTime, kLoopSteps);
    TimedRun r;
    r.phi0 = phi0;
    const auto t0 = Clock::now();
    r.res = holonomy(fam, loop);
    r.seconds = elapsed_s(t0);
    r.fid_analytic =
        gate_fidelity(r.res.unitary, analytic_holonomy(fam, loop));
    confinement_registry().emplace_back(fam.name + " phi0=" + num(phi0),
                                        r.res.confinement_leakage_max);
    out.push_back(std::move(r));
  }
  return out;
}

// Loop angles: the first five feed the slope fit, indices 1/4/5 are the
// phase-gate checkpoints.
const std::vector<TimedRun>& hz_runs() {
  static const std::vector<TimedRun> runs =
      run_family(family_h_z(), {kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0,
                                5.0 * kPi / 6.0, kPi, 1.5 * kPi});
  return runs;
}

const std::vector<TimedRun>& hx_runs() {
  static const std::vector<TimedRun> runs =
      run_family(family_h_x(), {kPi / 2.0, kPi, 1.5 * kPi});
  return runs;
}

const TimedRun& h4_run() {
  static const TimedRun run = [] {
    std::vector<TimedRun> v = run_family(family_h_4(), {kPi});
    return std::move(v.front());
  }();
  return run;
}

struct NSRun {
  double phi0 = 0.0;
  NSHolonomy res;
  double seconds = 0.0;
};

const std::vector<NSRun>& ns_runs() {
  static const std::vector<NSRun> runs = [] {
    const NSCode code = build_ns_code();
    std::vector<NSRun> out;
    for (double phi0 : {kPi / 2.0, kPi}) {
      NSRun r;
      r.phi0 = phi0;
      const auto t0 = Clock::now();
      r.res = ns_holonomy(code, standard_loop(phi0, 150.0, 6000));
      r.seconds = elapsed_s(t0);
      confinement_registry().emplace_back("h_ns phi0=" + num(phi0),
                                          r.res.block_leakage_max);
      out.push_back(std::move(r));
    }
    return out;
  }();
  return runs;
}

// ---------------------------------------------------------------------------
// C01: the analytic dark states are exact zero modes of their Hamiltonians
// at arbitrary control points, to machine precision.

TEST(AcceptanceTest, C01_DarkStatesAnnihilatedEverywhere) {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(0xACCE55u);
  std::uniform_real_distribution<double> theta_draw(0.0, kPi);
  std::uniform_real_distribution<double> phi_draw(0.0, 2.0 * kPi);

  const NSCode code = build_ns_code();
  double worst = 0.0;
  std::string worst_at = "none";
  const auto track = [&](const std::string& tag, double r) {
    if (r > worst) {
      worst = r;
      worst_at = tag;
    }
  };

  for (int draw = 0; draw < 100; ++draw) {
    ControlParams p;
    p.theta = theta_draw(rng);
    p.phi = phi_draw(rng);

    track("h_z", (h_z(p).mat * dark_h_z(p)).norm());
    track("h_x", (h_x(p).mat * dark_h_x(p)).norm());
    track("h_4", (h_4(p).mat * dark_h_4(p)).norm());

    NSCouplings c;
    c.j_prime = std::cos(p.theta);
    c.j_pp0 = 0.0;
    c.j_pp1 = std::sin(p.theta);
    c.phi = p.phi;
    const Operator hn = h_ns(code, c);
    for (int mi = 0; mi < code.m_count(); ++mi) {
      track("h_ns m" + std::to_string(mi),
            (hn.mat * dark_h_ns(code, p, mi)).norm());
    }
  }

  const double seconds = elapsed_s(t0);
  check("C01 dark-state residuals (100 draws x 4 families, all m)",
        worst < 1e-12,
        "max ||H dark|| = " + num(worst) + " at " + worst_at);
  check("C01 runtime", seconds < 10.0, num(seconds) + " s < 10 s");
}

// ---------------------------------------------------------------------------
// C02: phase-gate holonomy of h_z.  The moving branch |1>_L acquires the
// full loop angle: relative phase -phi0.  |0>_L is left invariant.

const std::vector<std::size_t> kPhaseCheckpoints = {1, 4, 5};  // pi/2, pi, 3pi/2

TEST(AcceptanceTest, C02_PhaseGateHolonomy) {
  for (std::size_t k : kPhaseCheckpoints) {
    const TimedRun& r = hz_runs()[k];
    const double rel = relative_phase(r.res.unitary);
    const double dist = wrap_dist(rel, -r.phi0);
    check("C02 relative phase on |1>_L, phi0=" + num(r.phi0), dist < 1e-2,
          "measured " + num(rel) + ", full-angle value " + num(-r.phi0) +
              ", |wrapped diff| = " + num(dist));
  }

  double worst_static = 0.0;
  double worst_seconds = 0.0;
  for (const TimedRun& r : hz_runs()) {
    const double o = std::abs(r.res.raw_overlap(0, 0));
    const double trace_dist = std::sqrt(std::max(0.0, 1.0 - o * o));
    worst_static = std::max(worst_static, trace_dist);
    worst_seconds = std::max(worst_seconds, r.seconds);
  }
  check("C02 |0>_L invariant", worst_static < 1e-3,
        "max trace distance " + num(worst_static) + " over 6 loop angles");
  check("C02 runtime per point", worst_seconds < 60.0,
        "max " + num(worst_seconds) + " s < 60 s");
}

TEST(AcceptanceTest, C02_PhaseGateHalfAngleReference) {
  for (std::size_t k : kPhaseCheckpoints) {
    const TimedRun& r = hz_runs()[k];
    const double rel = relative_phase(r.res.unitary);
    const double dist = wrap_dist(rel, -r.phi0 / 2.0);
    check("C02 half-angle reference phase, phi0=" + num(r.phi0), dist < 1e-2,
          "measured " + num(rel) + ", half-angle reference " +
              num(-r.phi0 / 2.0) + ", |wrapped diff| = " + num(dist) +
              "; the propagator accumulates the full loop angle");
  }
}

// ---------------------------------------------------------------------------
// C03: rotation-gate holonomy of h_x.  The measured gate matches
// cos(w/4) I + i sin(w/4) X at w = 2 phi0, i.e. the full-angle rotation,
// and equals the analytic dark-branch transport.

TEST(AcceptanceTest, C03_RotationGateHolonomy) {
  double worst_analytic = 1.0;
  for (const TimedRun& r : hx_runs()) {
    const double fid =
        gate_fidelity(r.res.unitary,
                      target_gate(GateKind::x_rot, 2.0 * r.phi0).matrix);
    check("C03 rotation-gate fidelity, phi0=" + num(r.phi0), fid >= 0.999,
          "fidelity " + num(fid) + " vs full-angle rotation (w = 2 phi0)");
    worst_analytic = std::min(worst_analytic, r.fid_analytic);
  }
  check("C03 matches analytic dark-branch transport", worst_analytic >= 0.999,
        "min fidelity " + num(worst_analytic) + " over 3 loop angles");
}

TEST(AcceptanceTest, C03_RotationGateHalfAngleReference) {
  for (const TimedRun& r : hx_runs()) {
    const double fid = gate_fidelity(
        r.res.unitary, target_gate(GateKind::x_rot, r.phi0).matrix);
    check("C03 half-angle reference fidelity, phi0=" + num(r.phi0),
          fid >= 0.999,
          "fidelity " + num(fid) + " vs rotation at w = phi0; expected " +
              num(std::abs(std::cos(r.phi0 / 4.0))) +
              " for a gate that actually rotates by 2 phi0");
  }
}

// ---------------------------------------------------------------------------
// C04: entangling gate from the two-block drive at phi0 = pi.  Only the
// |11>_L entry moves, and it acquires the full loop angle: e^{-i pi} = -1.

TEST(AcceptanceTest, C04_EntanglingGateHolonomy) {
  const TimedRun& r = h4_run();
  const Matrix& u = r.res.unitary;

  double offdiag = 0.0;
  double diag_dev = 0.0;
  for (Eigen::Index a = 0; a < 4; ++a) {
    for (Eigen::Index b = 0; b < 4; ++b) {
      if (a != b) offdiag = std::max(offdiag, std::abs(u(a, b)));
    }
    if (a < 3) diag_dev = std::max(diag_dev, std::abs(u(a, a) - cx{1.0, 0.0}));
  }
  check("C04 only |11>_L acquires phase", offdiag < 1e-2 && diag_dev < 1e-2,
        "max off-diagonal " + num(offdiag) + ", max |u_kk - 1| (k<3) " +
            num(diag_dev));

  const double phase = std::arg(u(3, 3));
  check("C04 |11>_L phase is the full loop angle",
        wrap_dist(phase, -kPi) < 1e-2,
        "arg u_33 = " + num(phase) + ", full-angle value " + num(-kPi));

  const double fid =
      gate_fidelity(u, target_gate(GateKind::cp, -2.0 * kPi).matrix);
  check("C04 controlled-phase fidelity", fid >= 0.99,
        "fidelity " + num(fid) + " vs diag(1,1,1,e^{-i pi})");

  check("C04 runtime", r.seconds <= 600.0, num(r.seconds) + " s <= 600 s");
}

TEST(AcceptanceTest, C04_EntanglingGateHalfAngleReference) {
  const TimedRun& r = h4_run();
  const double fid =
      gate_fidelity(r.res.unitary, target_gate(GateKind::cp, kPi).matrix);
  check("C04 half-angle reference fidelity", fid >= 0.99,
        "fidelity " + num(fid) +
            " vs diag(1,1,1,e^{i pi/2}); the measured |11>_L phase is -pi, "
            "so the overlap is |3 - i|/4 = " + num(std::sqrt(10.0) / 4.0));
}

// ---------------------------------------------------------------------------
// C05: the measured relative phase is linear in the loop angle phi0.  The
// slope of the faithful dynamics is -1; the legacy reference slope is -1/2.

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

LineFit fit_phase_line() {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t k = 0; k < 5; ++k) {  // phi0 in [pi/3, pi]: no wrapping
    xs.push_back(hz_runs()[k].phi0);
    ys.push_back(relative_phase(hz_runs()[k].res.unitary));
  }
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k] / n;
    my += ys[k] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const double resid = ys[k] - (fit.slope * xs[k] + fit.intercept);
    ss += resid * resid;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

TEST(AcceptanceTest, C05_SolidAngleLaw) {
  const LineFit fit = fit_phase_line();
  check("C05 phase linear in loop angle", fit.rms < 1e-2,
        "RMS residual " + num(fit.rms) + " over 5 loop angles, intercept " +
            num(fit.intercept));
  check("C05 slope (full-angle convention)", std::abs(fit.slope + 1.0) < 1e-2,
        "fitted slope " + num(fit.slope) + " vs -1");
}

TEST(AcceptanceTest, C05_SolidAngleLawHalfAngleReference) {
  const LineFit fit = fit_phase_line();
  check("C05 slope (half-angle reference)", std::abs(fit.slope + 0.5) < 1e-2,
        "fitted slope " + num(fit.slope) +
            " vs -1/2; the measured phase tracks the full loop angle");
}

// ---------------------------------------------------------------------------
// C06: every acceptance run stays confined to its fixed collective-Z sector
// at every step, and code states are exactly immune to collective dephasing.

TEST(AcceptanceTest, C06_ConfinementAndDephasingImmunity) {
  hz_runs();
  hx_runs();
  h4_run();
  ns_runs();

  double worst = 0.0;
  std::string worst_at = "none";
  for (const auto& [tag, leak] : confinement_registry()) {
    if (leak > worst) {
      worst = leak;
      worst_at = tag;
    }
  }
  check("C06 sector confinement, all steps of all runs", worst < 1e-10,
        "max per-step leakage " + num(worst) + " at " + worst_at + " over " +
            std::to_string(confinement_registry().size()) + " runs");

  double worst_dev = 0.0;
  for (int n_logical = 1; n_logical <= 3; ++n_logical) {
    const CodeBasis code = build_code(n_logical);
    const Matrix basis = code.logical_basis();
    Vector uniform = Vector::Zero(basis.rows());
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
      const QuantumState psi{code.n_physical, basis.col(c)};
      worst_dev = std::max(worst_dev, std::abs(1.0 - dephase(psi)));
      uniform += basis.col(c);
    }
    uniform.normalize();
    const QuantumState sup{code.n_physical, uniform};
    worst_dev = std::max(worst_dev, std::abs(1.0 - dephase(sup)));
  }
  check("C06 dephasing immunity of code states (1-3 logical qubits)",
        worst_dev < 1e-12, "max |1 - survival| = " + num(worst_dev));
}

// ---------------------------------------------------------------------------
// C07: slower driving converges toward the analytic holonomy for both
// single-logical-qubit families.

TEST(AcceptanceTest, C07_AdiabaticConvergenceTrend) {
  const std::vector<double> times = {50.0, 100.0, 200.0, 400.0};
  for (const HamiltonianFamily& fam : {family_h_z(), family_h_x()}) {
    const std::vector<SweepPoint> pts =
        adiabaticity_sweep(fam, kPi, times, kLoopSteps);
    int down = 0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      if (pts[k + 1].phase_error < pts[k].phase_error) ++down;
    }
    const double frac =
        static_cast<double>(down) / static_cast<double>(pts.size() - 1);
    check("C07 adiabatic trend, " + fam.name,
          pts.back().phase_error < pts.front().phase_error &&
              frac >= 2.0 / 3.0,
          "phase error " + num(pts.front().phase_error) + " (T=50) -> " +
              num(pts.back().phase_error) + " (T=400), decreasing fraction " +
              num(frac));
  }
}

// ---------------------------------------------------------------------------
// C08: collective-spin block structure of five qubits.

TEST(AcceptanceTest, C08_CollectiveSpinBlockStructure) {
  const CGDecomposition decomp = cg_decompose(5);

  const bool mults_ok = decomp.block(3).multiplicity == 4 &&
                        decomp.block(1).multiplicity == 5 &&
                        decomp.block(5).multiplicity == 1;
  check("C08 block multiplicities", mults_ok,
        "2J=3 x4, 2J=1 x5, 2J=5 x1 expected; got " +
            std::to_string(decomp.block(3).multiplicity) + "/" +
            std::to_string(decomp.block(1).multiplicity) + "/" +
            std::to_string(decomp.block(5).multiplicity));

  int total = 0;
  for (const CGBlock& b : decomp.blocks) total += b.block_dim();
  const bool dims_ok = decomp.block(3).block_dim() == 16 &&
                       decomp.block(1).block_dim() == 10 &&
                       decomp.block(5).block_dim() == 6 && total == 32;
  check("C08 dimension identity", dims_ok,
        "16 + 10 + 6 = " + std::to_string(total) + " = 2^5");

  const Matrix s_minus =
      collective_spin(5, Axis::x).mat -
      cx{0.0, 1.0} * collective_spin(5, Axis::y).mat;
  double residual = 0.0;
  for (const CGBlock& b : decomp.blocks) {
    const double j = b.twice_j / 2.0;
    for (int mi = 0; mi < b.twice_j; ++mi) {
      const double m = j - mi;
      const double c = std::sqrt(j * (j + 1.0) - m * (m - 1.0));
      const Matrix diff = s_minus * b.basis[static_cast<std::size_t>(mi)] -
                          c * b.basis[static_cast<std::size_t>(mi) + 1];
      residual = std::max(residual, diff.cwiseAbs().maxCoeff());
    }
  }
  check("C08 lowering alignment across m", residual < 1e-10,
        "max residual " + num(residual));
}

// ---------------------------------------------------------------------------
// C09: exchange couplings act on the multiplicity factor only, identically
// in every m sector, and the driven gate there is again the full loop angle.

TEST(AcceptanceTest, C09_NoiselessSubsystemGate) {
  const CGDecomposition decomp = cg_decompose(5);
  double worst_dev = 0.0;
  bool all_flags = true;
  for (int l = 1; l <= 5; ++l) {
    for (int m = l + 1; m <= 5; ++m) {
      const NSReport rep = verify_ns(decomp, exchange(l, m, 5), 3, 1e-10);
      all_flags = all_flags && rep.preserves_block && rep.m_independent;
      worst_dev = std::max({worst_dev, rep.off_block_max, rep.m_offdiag_max,
                            rep.m_deviation_max});
    }
  }
  check("C09 all 10 exchange couplings act on the multiplicity factor",
        all_flags && worst_dev < 1e-10,
        "max m-independence deviation " + num(worst_dev));

  const NSCode code = build_ns_code();
  NSCouplings c;
  c.j_prime = 0.7;
  c.j_pp0 = 0.0;
  c.j_pp1 = 0.4;
  c.phi = 1.1;
  const Operator h = h_ns(code, c);
  double comm = 0.0;
  for (Axis axis : {Axis::x, Axis::y, Axis::z}) {
    comm = std::max(comm, commutator(h.mat, collective_spin(5, axis).mat)
                              .cwiseAbs()
                              .maxCoeff());
  }
  check("C09 drive commutes with collective spin", comm < 1e-12,
        "max |[H, S_a]| entry = " + num(comm));

  for (const NSRun& r : ns_runs()) {
    const double rel = relative_phase(r.res.per_m.front());
    const double dist = wrap_dist(rel, -r.phi0);
    check("C09 encoded-qubit phase, phi0=" + num(r.phi0), dist < 1e-2,
          "measured " + num(rel) + ", full-angle value " + num(-r.phi0) +
              ", |wrapped diff| = " + num(dist));
    check("C09 identical across m sectors, phi0=" + num(r.phi0),
          r.res.m_spread <= 1e-6,
          "max entrywise spread " + num(r.res.m_spread));
  }
}

TEST(AcceptanceTest, C09_NoiselessSubsystemHalfAngleReference) {
  for (const NSRun& r : ns_runs()) {
    const double rel = relative_phase(r.res.per_m.front());
    const double dist = wrap_dist(rel, -r.phi0 / 2.0);
    check("C09 half-angle reference phase, phi0=" + num(r.phi0), dist < 1e-2,
          "measured " + num(rel) + ", half-angle reference " +
              num(-r.phi0 / 2.0) + ", |wrapped diff| = " + num(dist));
  }
}

// ---------------------------------------------------------------------------
// C10: the command-line verifier is deterministic and honors its exit-code
// contract (0 all-pass, 1 invariant failure, 2 configuration error).

TEST(AcceptanceTest, C10_CliDeterminismAndExitContract) {
  const test::RunResult a = test::run_cli("verify");
  const test::RunResult b = test::run_cli("verify");
  check("C10 verify reports all invariants pass",
        a.exit_code == 0 && nlohmann::json::parse(a.output)["all_pass"],
        "exit code " + std::to_string(a.exit_code));
  check("C10 verify is byte-identical across runs", a.output == b.output,
        std::to_string(a.output.size()) + " bytes compared");

  const test::RunResult inj =
      test::run_cli("verify --inject-failure dfs.code_labels");
  check("C10 injected failure exits 1", inj.exit_code == 1,
        "exit code " + std::to_string(inj.exit_code));

  const test::RunResult bad =
      test::run_cli("verify --config /nonexistent/holodfs.json");
  check("C10 configuration error exits 2", bad.exit_code == 2,
        "exit code " + std::to_string(bad.exit_code));
}

}  // namespace
}  // namespace holodfs
