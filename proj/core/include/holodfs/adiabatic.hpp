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

#include <array>
#include <functional>
#include <numbers>
#include <vector>

#include "holodfs/hams.hpp"
#include "holodfs/qops.hpp"

namespace holodfs {

// Piecewise-linear closed path on the (theta, phi) control sphere.  The
// path must end where the dark frame started: equal theta at both ends,
// and equal phi modulo 2pi unless theta = 0 there (at the pole the frame
// does not depend on phi).
struct ParameterLoop {
  std::vector<std::array<double, 2>> waypoints;  // (theta, phi)
  std::vector<double> segment_fractions;         // empty means equal split
  double total_time = 200.0;
  int steps = 20000;
};

// The loop (0,0) -> (theta_max,0) -> (theta_max,phi0) -> (0,phi0) with equal
// time thirds.  Requires |phi0| < 2pi and theta_max in (0, pi/2].
ParameterLoop standard_loop(double phi0, double total_time = 200.0,
                            int steps = 20000,
                            double theta_max = std::numbers::pi / 2.0);

// Throws std::invalid_argument when the loop is malformed.
void validate_loop(const ParameterLoop& loop);

// Oriented line integral of (1 - cos theta) d phi along the loop: the solid
// angle the path traces on the control-parameter sphere.
double solid_angle(const ParameterLoop& loop);

// Geometric phase acquired by the moving dark branch: -integral of
// sin^2(theta) d phi along the loop.  For standard_loop(phi0) this equals
// -phi0; it also equals minus one half of the solid angle subtended on the
// Bloch sphere of the dark branch, whose polar angle is 2 theta.
double berry_phase(const ParameterLoop& loop);

// Midpoint discretization: per-segment step counts proportional to the
// segment fractions (largest-remainder rounding), parameters sampled at the
// midpoint of each step.
struct LoopStep {
  ControlParams params;
  double dt = 0.0;
};
std::vector<LoopStep> loop_schedule(const ParameterLoop& loop,
                                    double j_scale = 1.0);

enum class StepMethod {
  automatic,             // eigen_decomposition up to dim 64, series above
  eigen_decomposition,   // exact exponential via Hermitian eigensolver
  taylor_series,         // exponential applied as a truncated series
};

using StepObserver =
    std::function<void(int step, const ControlParams&, const Matrix&)>;

struct EvolveReport {
  Matrix columns;                    // final states, one per input column
  double confinement_leakage_max = 0.0;  // vs family confinement set, all steps
  double dynamical_phase_max = 0.0;      // max |integral <psi|H|psi> dt|
};

// Schroedinger evolution of the columns of psi0 along the loop under the
// family Hamiltonian.  The propagator is exact per step (machine precision);
// all discretization error comes from the piecewise-constant sampling.
EvolveReport evolve(const HamiltonianFamily& fam, const ParameterLoop& loop,
                    const Matrix& psi0, double j_scale = 1.0,
                    StepMethod method = StepMethod::automatic,
                    const StepObserver& observer = {});

struct HolonomyResult {
  Matrix unitary;       // polar part of the overlap, canonical global phase
  Matrix raw_overlap;   // <basis_a | psi_b(T)>
  double leakage_max = 0.0;              // end-of-loop weight outside the code
  double confinement_leakage_max = 0.0;  // per-step weight outside the sector
  double dynamical_phase_max = 0.0;
  double solid_angle_analytic = 0.0;
  double berry_phase_analytic = 0.0;
};

// Evolves the family's logical basis around the loop and extracts the
// holonomy as the unitary polar factor of the overlap matrix.  The observer,
// when set, sees every step of the underlying evolution.
HolonomyResult holonomy(const HamiltonianFamily& fam, const ParameterLoop& loop,
                        double j_scale = 1.0,
                        const StepObserver& observer = {});

// Ideal holonomy predicted by the analytic dark branch: identity on the
// orthogonal complement, phase exp(i berry_phase) on the moving branch.
Matrix analytic_holonomy(const HamiltonianFamily& fam,
                         const ParameterLoop& loop);

struct SweepPoint {
  double total_time = 0.0;
  double phase_error = 0.0;  // moving-branch phase vs the analytic holonomy
  double leakage = 0.0;      // end-of-loop code leakage
  double fidelity = 0.0;     // vs the analytic holonomy
};

// Runs standard_loop(phi0) at each total time and reports convergence
// toward the analytic holonomy.  Times must be strictly increasing, at
// least two of them.
std::vector<SweepPoint> adiabaticity_sweep(const HamiltonianFamily& fam,
                                           double phi0,
                                           const std::vector<double>& times,
                                           int steps, double j_scale = 1.0);

}  // namespace holodfs
