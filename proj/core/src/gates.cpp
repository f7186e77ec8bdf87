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

#include "holodfs/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace holodfs {

LogicalGate target_gate(GateKind kind, double omega) {
  LogicalGate g;
  g.kind = kind;
  g.omega = omega;
  switch (kind) {
    case GateKind::z_rot:
      g.matrix = Matrix::Identity(2, 2);
      g.matrix(1, 1) = std::exp(cx{0.0, -omega / 2.0});
      break;
    case GateKind::x_rot: {
      const double c = std::cos(omega / 4.0);
      const double s = std::sin(omega / 4.0);
      g.matrix = Matrix::Zero(2, 2);
      g.matrix(0, 0) = g.matrix(1, 1) = cx{c, 0.0};
      g.matrix(0, 1) = g.matrix(1, 0) = cx{0.0, s};
      break;
    }
    case GateKind::cp:
      g.matrix = Matrix::Identity(4, 4);
      g.matrix(3, 3) = std::exp(cx{0.0, omega / 2.0});
      break;
  }
  return g;
}

double gate_fidelity(const Matrix& a, const Matrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw std::invalid_argument("gate_fidelity needs equal square matrices");
  }
  const cx tr = (a.adjoint() * b).trace();
  return std::abs(tr) / static_cast<double>(a.rows());
}

Matrix compose(const std::vector<Matrix>& gates) {
  if (gates.empty()) {
    throw std::invalid_argument("compose needs at least one gate");
  }
  const Eigen::Index d = gates.front().rows();
  Matrix out = Matrix::Identity(d, d);
  for (const Matrix& g : gates) {
    if (g.rows() != d || g.cols() != d) {
      throw std::invalid_argument("composed gates must share one dimension");
    }
    out = g * out;
  }
  return out;
}

Matrix promote(const Matrix& gate, int factor, int n_factors) {
  if (gate.rows() != 2 || gate.cols() != 2) {
    throw std::invalid_argument("promote embeds single-qubit gates");
  }
  if (n_factors < 1 || n_factors > kMaxQubits || factor < 1 ||
      factor > n_factors) {
    throw std::invalid_argument("factor position out of range");
  }
  const Matrix id2 = Matrix::Identity(2, 2);
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 1; k <= n_factors; ++k) {
    const Matrix& next = (k == factor) ? gate : id2;
    Matrix grown(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        grown.block(i * 2, j * 2, 2, 2) = out(i, j) * next;
      }
    }
    out = std::move(grown);
  }
  return out;
}

Matrix canonical_phase(Matrix u) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw std::invalid_argument("canonical_phase needs a square matrix");
  }
  cx pivot = u(0, 0);
  if (std::abs(pivot) < 1e-3) {
    Eigen::Index imax = 0;
    u.col(0).cwiseAbs().maxCoeff(&imax);
    pivot = u(imax, 0);
  }
  const double mag = std::abs(pivot);
  if (mag < 1e-14) {
    throw std::invalid_argument("first column vanishes; no phase reference");
  }
  u *= std::conj(pivot) / mag;
  return u;
}

double relative_phase(const Matrix& u) {
  if (u.rows() != u.cols() || u.rows() < 2) {
    throw std::invalid_argument("relative_phase needs a square matrix");
  }
  const cx first = u(0, 0);
  const cx last = u(u.rows() - 1, u.cols() - 1);
  if (std::abs(first) < 1e-6 || std::abs(last) < 1e-6) {
    throw std::invalid_argument("diagonal entries too small for a phase");
  }
  return std::arg(last * std::conj(first));
}

double wrap_angle(double x) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double w = x - kTwoPi * std::round(x / kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

}  // namespace holodfs
