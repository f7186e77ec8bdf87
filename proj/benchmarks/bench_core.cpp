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
// Microbenchmarks for the kernels the simulator spends its time in: the
// per-step propagator, whole-loop transport, the block decomposition, and
// the dephasing ensemble average.

#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "holodfs/adiabatic.hpp"
#include "holodfs/dfs.hpp"
#include "holodfs/hams.hpp"
#include "holodfs/ns.hpp"
#include "holodfs/qops.hpp"

namespace holodfs {
namespace {

// Deterministic dense Hermitian test matrix of the requested dimension.
Operator dense_hermitian(Eigen::Index dim) {
  Matrix m(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto s = static_cast<double>(a * dim + b);
      m(a, b) = cx{std::sin(0.7 * s), std::cos(1.3 * s)};
    }
  }
  Matrix h = 0.5 * (m + m.adjoint());
  return Operator{std::move(h), true};
}

void BM_MatExpHermitian(benchmark::State& state) {
  const Operator h = dense_hermitian(state.range(0));
  const cx scale{0.0, -0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_exp(h, scale));
  }
}
BENCHMARK(BM_MatExpHermitian)->Arg(16)->Arg(64)->Arg(256);

void BM_MatExpPade(benchmark::State& state) {
  Operator h = dense_hermitian(state.range(0));
  h.hermitian = false;  // force the scaling-and-squaring path
  const cx scale{0.0, -0.01};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mat_exp(h, scale));
  }
}
BENCHMARK(BM_MatExpPade)->Arg(16)->Arg(64)->Arg(256);

// One coarse loop on the two-block (dim 256) drive, per propagator method.
void BM_EvolveTwoBlock(benchmark::State& state) {
  const HamiltonianFamily fam = family_h_4();
  const ParameterLoop loop = standard_loop(std::numbers::pi, 1.0, 30);
  const StepMethod method = state.range(0) == 0 ? StepMethod::eigen_decomposition
                                                : StepMethod::taylor_series;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(fam, loop, fam.logical_basis, 1.0, method));
  }
}
BENCHMARK(BM_EvolveTwoBlock)->Arg(0)->Arg(1);

void BM_HolonomyLoop(benchmark::State& state) {
  const HamiltonianFamily fam = family_h_z();
  const ParameterLoop loop =
      standard_loop(std::numbers::pi, 50.0, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(holonomy(fam, loop));
  }
}
BENCHMARK(BM_HolonomyLoop)->Arg(500)->Arg(2000);

void BM_CgDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cg_decompose(n));
  }
}
BENCHMARK(BM_CgDecompose)->Arg(5)->Arg(6);

void BM_DephaseEnsemble(benchmark::State& state) {
  const CodeBasis code = build_code(3);
  const Matrix basis = code.logical_basis();
  Vector uniform = Vector::Zero(basis.rows());
  for (Eigen::Index c = 0; c < basis.cols(); ++c) uniform += basis.col(c);
  uniform.normalize();
  const QuantumState psi{code.n_physical, uniform};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dephase(psi));
  }
}
BENCHMARK(BM_DephaseEnsemble);

}  // namespace
}  // namespace holodfs

BENCHMARK_MAIN();
