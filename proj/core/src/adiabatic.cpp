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

#include "holodfs/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "holodfs/gates.hpp"

namespace holodfs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kClosureTol = 1e-12;

std::vector<double> effective_fractions(const ParameterLoop& loop) {
  const std::size_t segs = loop.waypoints.size() - 1;
  if (loop.segment_fractions.empty()) {
    return std::vector<double>(segs, 1.0 / static_cast<double>(segs));
  }
  return loop.segment_fractions;
}

// Exact per-segment line integrals for linear (theta, phi) interpolation.
// integral over s in [0,1] of f(theta(s)) dphi with dphi = (phi_b - phi_a) ds.
double segment_one_minus_cos(double ta, double tb, double dphi) {
  const double dt = tb - ta;
  if (std::abs(dt) < 1e-15) {
    return dphi * (1.0 - std::cos(ta));
  }
  return dphi * (1.0 - (std::sin(tb) - std::sin(ta)) / dt);
}

double segment_sin_squared(double ta, double tb, double dphi) {
  const double dt = tb - ta;
  if (std::abs(dt) < 1e-15) {
    return dphi * std::sin(ta) * std::sin(ta);
  }
  return dphi * (0.5 - (std::sin(2.0 * tb) - std::sin(2.0 * ta)) / (4.0 * dt));
}

// Applies exp(-i dt H) to the columns via the Hermitian eigensolver.
void step_eigen(const Matrix& h, double dt, Matrix& psi) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigendecomposition failed during evolution");
  }
  const Eigen::Index d = h.rows();
  Vector phase(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    phase(k) = std::exp(cx{0.0, -dt * es.eigenvalues()(k)});
  }
  psi = es.eigenvectors() * (phase.asDiagonal() * (es.eigenvectors().adjoint() * psi));
}

// Applies exp(-i dt H) as a convergent power series; the step is subdivided
// so that norm(H) * dt stays small enough for fast, stable convergence.
void step_taylor(const Matrix& h, double dt, Matrix& psi) {
  const double hnorm = h.cwiseAbs().rowwise().sum().maxCoeff();
  const double x = hnorm * std::abs(dt);
  const int nsub = std::max(1, static_cast<int>(std::ceil(x / 2.0)));
  const double dsub = dt / static_cast<double>(nsub);
  for (int s = 0; s < nsub; ++s) {
    Matrix term = psi;
    Matrix acc = psi;
    for (int k = 1; k <= 120; ++k) {
      term = (cx{0.0, -dsub} / static_cast<double>(k)) * (h * term);
      acc += term;
      if (term.cwiseAbs().maxCoeff() < 1e-17) {
        psi = std::move(acc);
        break;
      }
      if (k == 120) {
        throw std::runtime_error("series propagator failed to converge");
      }
    }
  }
}

}  // namespace

ParameterLoop standard_loop(double phi0, double total_time, int steps,
                            double theta_max) {
  if (!(std::abs(phi0) < 2.0 * kPi)) {
    throw std::invalid_argument("phi0 must satisfy |phi0| < 2pi");
  }
  if (!(theta_max > 0.0 && theta_max <= kPi / 2.0)) {
    throw std::invalid_argument("theta_max must lie in (0, pi/2]");
  }
  ParameterLoop loop;
  loop.waypoints = {{0.0, 0.0},
                    {theta_max, 0.0},
                    {theta_max, phi0},
                    {0.0, phi0}};
  loop.segment_fractions = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  loop.total_time = total_time;
  loop.steps = steps;
  validate_loop(loop);
  return loop;
}

void validate_loop(const ParameterLoop& loop) {
  if (loop.waypoints.size() < 2) {
    throw std::invalid_argument("loop needs at least two waypoints");
  }
  const std::size_t segs = loop.waypoints.size() - 1;
  if (!loop.segment_fractions.empty()) {
    if (loop.segment_fractions.size() != segs) {
      throw std::invalid_argument("one fraction per segment required");
    }
    double sum = 0.0;
    for (double f : loop.segment_fractions) {
      if (f <= 0.0) {
        throw std::invalid_argument("segment fractions must be positive");
      }
      sum += f;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("segment fractions must sum to 1");
    }
  }
  if (loop.total_time < 0.0) {
    throw std::invalid_argument("total time must be nonnegative");
  }
  if (loop.steps < static_cast<int>(segs)) {
    throw std::invalid_argument("need at least one step per segment");
  }
  for (const auto& wp : loop.waypoints) {
    if (wp[0] < -kClosureTol || wp[0] > kPi + kClosureTol) {
      throw std::invalid_argument("theta must lie in [0, pi]");
    }
  }
  const auto& first = loop.waypoints.front();
  const auto& last = loop.waypoints.back();
  if (std::abs(first[0] - last[0]) > kClosureTol) {
    throw std::invalid_argument("loop must return to its initial theta");
  }
  if (std::abs(first[0]) > kClosureTol &&
      std::abs(wrap_angle(first[1] - last[1])) > kClosureTol) {
    throw std::invalid_argument(
        "open loop: phi must close modulo 2pi away from the pole");
  }
}

double solid_angle(const ParameterLoop& loop) {
  validate_loop(loop);
  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < loop.waypoints.size(); ++s) {
    acc += segment_one_minus_cos(loop.waypoints[s][0], loop.waypoints[s + 1][0],
                                 loop.waypoints[s + 1][1] - loop.waypoints[s][1]);
  }
  return acc;
}

double berry_phase(const ParameterLoop& loop) {
  validate_loop(loop);
  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < loop.waypoints.size(); ++s) {
    acc += segment_sin_squared(loop.waypoints[s][0], loop.waypoints[s + 1][0],
                               loop.waypoints[s + 1][1] - loop.waypoints[s][1]);
  }
  return -acc;
}

std::vector<LoopStep> loop_schedule(const ParameterLoop& loop, double j_scale) {
  validate_loop(loop);
  const std::size_t segs = loop.waypoints.size() - 1;
  const std::vector<double> frac = effective_fractions(loop);

  // Largest-remainder allocation of steps to segments.
  std::vector<int> count(segs, 0);
  std::vector<std::pair<double, std::size_t>> rem(segs);
  int assigned = 0;
  for (std::size_t s = 0; s < segs; ++s) {
    const double ideal = frac[s] * static_cast<double>(loop.steps);
    count[s] = static_cast<int>(std::floor(ideal));
    rem[s] = {ideal - std::floor(ideal), s};
    assigned += count[s];
  }
  std::stable_sort(rem.begin(), rem.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (int k = 0; k < loop.steps - assigned; ++k) {
    ++count[rem[static_cast<std::size_t>(k) % segs].second];
  }
  for (std::size_t s = 0; s < segs; ++s) {
    if (count[s] == 0) {
      auto it = std::max_element(count.begin(), count.end());
      --(*it);
      ++count[s];
    }
  }

  std::vector<LoopStep> out;
  out.reserve(static_cast<std::size_t>(loop.steps));
  for (std::size_t s = 0; s < segs; ++s) {
    const auto& a = loop.waypoints[s];
    const auto& b = loop.waypoints[s + 1];
    const double dt = frac[s] * loop.total_time / static_cast<double>(count[s]);
    for (int k = 0; k < count[s]; ++k) {
      const double f = (static_cast<double>(k) + 0.5) / static_cast<double>(count[s]);
      LoopStep step;
      step.params.theta = a[0] + f * (b[0] - a[0]);
      step.params.phi = a[1] + f * (b[1] - a[1]);
      step.params.j_scale = j_scale;
      step.dt = dt;
      out.push_back(step);
    }
  }
  return out;
}

EvolveReport evolve(const HamiltonianFamily& fam, const ParameterLoop& loop,
                    const Matrix& psi0, double j_scale, StepMethod method,
                    const StepObserver& observer) {
  const Eigen::Index dim = Eigen::Index{1} << fam.n_qubits;
  if (psi0.rows() != dim || psi0.cols() < 1) {
    throw std::invalid_argument("initial columns do not match the family");
  }
  const std::vector<LoopStep> schedule = loop_schedule(loop, j_scale);
  const StepMethod chosen =
      method == StepMethod::automatic
          ? (dim <= 64 ? StepMethod::eigen_decomposition : StepMethod::taylor_series)
          : method;

  EvolveReport rep;
  rep.columns = psi0;
  Eigen::VectorXd dyn = Eigen::VectorXd::Zero(psi0.cols());

  auto track_confinement = [&rep, &fam](const Matrix& cols) {
    if (fam.confinement_indices.empty()) return;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
      double inside = 0.0;
      for (std::size_t i : fam.confinement_indices) {
        inside += std::norm(cols(static_cast<Eigen::Index>(i), c));
      }
      const double leak = cols.col(c).squaredNorm() - inside;
      rep.confinement_leakage_max = std::max(rep.confinement_leakage_max, leak);
    }
  };

  track_confinement(rep.columns);
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const Operator h = fam.build(schedule[s].params);
    const double dt = schedule[s].dt;
    const Matrix h_psi = h.mat * rep.columns;
    for (Eigen::Index c = 0; c < rep.columns.cols(); ++c) {
      dyn(c) += rep.columns.col(c).dot(h_psi.col(c)).real() * dt;
    }
    if (chosen == StepMethod::eigen_decomposition) {
      step_eigen(h.mat, dt, rep.columns);
    } else {
      step_taylor(h.mat, dt, rep.columns);
    }
    track_confinement(rep.columns);
    if (observer) {
      observer(static_cast<int>(s), schedule[s].params, rep.columns);
    }
  }
  rep.dynamical_phase_max = dyn.cwiseAbs().maxCoeff();
  return rep;
}

HolonomyResult holonomy(const HamiltonianFamily& fam, const ParameterLoop& loop,
                        double j_scale, const StepObserver& observer) {
  const EvolveReport rep = evolve(fam, loop, fam.logical_basis, j_scale,
                                  StepMethod::automatic, observer);
  HolonomyResult out;
  out.raw_overlap = fam.logical_basis.adjoint() * rep.columns;

  Eigen::JacobiSVD<Matrix> svd(out.raw_overlap,
                               Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.unitary = canonical_phase(svd.matrixU() * svd.matrixV().adjoint());

  for (Eigen::Index c = 0; c < rep.columns.cols(); ++c) {
    double inside = 0.0;
    for (std::size_t i : fam.code_indices) {
      inside += std::norm(rep.columns(static_cast<Eigen::Index>(i), c));
    }
    out.leakage_max =
        std::max(out.leakage_max, rep.columns.col(c).squaredNorm() - inside);
  }
  out.confinement_leakage_max = rep.confinement_leakage_max;
  out.dynamical_phase_max = rep.dynamical_phase_max;
  out.solid_angle_analytic = solid_angle(loop);
  out.berry_phase_analytic = berry_phase(loop);
  return out;
}

Matrix analytic_holonomy(const HamiltonianFamily& fam,
                         const ParameterLoop& loop) {
  ControlParams start;
  start.theta = loop.waypoints.front()[0];
  start.phi = loop.waypoints.front()[1];
  Vector m0 = fam.logical_basis.adjoint() * fam.moving_dark(start);
  const double nrm = m0.norm();
  if (std::abs(nrm - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "loop must start where the moving branch lies in the logical span");
  }
  m0 /= nrm;
  const double gamma = berry_phase(loop);
  const Eigen::Index d = m0.size();
  Matrix u = Matrix::Identity(d, d) +
             (std::exp(cx{0.0, gamma}) - cx{1.0, 0.0}) * (m0 * m0.adjoint());
  return canonical_phase(std::move(u));
}

std::vector<SweepPoint> adiabaticity_sweep(const HamiltonianFamily& fam,
                                           double phi0,
                                           const std::vector<double>& times,
                                           int steps, double j_scale) {
  if (times.size() < 2) {
    throw std::invalid_argument("sweep needs at least two total times");
  }
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    if (!(times[k] < times[k + 1])) {
      throw std::invalid_argument("sweep times must be strictly increasing");
    }
  }
  if (times.front() <= 0.0) {
    throw std::invalid_argument("sweep times must be positive");
  }

  std::vector<SweepPoint> out;
  out.reserve(times.size());
  for (double t : times) {
    const ParameterLoop loop = standard_loop(phi0, t, steps);
    const HolonomyResult res = holonomy(fam, loop, j_scale);
    const Matrix ideal = analytic_holonomy(fam, loop);

    ControlParams start;
    start.theta = loop.waypoints.front()[0];
    start.phi = loop.waypoints.front()[1];
    const Vector m0 = fam.logical_basis.adjoint() * fam.moving_dark(start);
    // Compare branch phases after identical canonicalization; both carry the
    // same global-phase fix, so the difference isolates the diabatic error.
    const cx branch = m0.dot(res.unitary * m0);
    const cx branch_ideal = m0.dot(ideal * m0);

    SweepPoint pt;
    pt.total_time = t;
    pt.phase_error =
        std::abs(wrap_angle(std::arg(branch) - std::arg(branch_ideal)));
    pt.leakage = res.leakage_max;
    pt.fidelity = gate_fidelity(ideal, res.unitary);
    out.push_back(pt);
  }
  return out;
}

}  // namespace holodfs
