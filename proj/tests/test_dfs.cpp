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

#include <bit>
#include <cmath>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace holodfs {
namespace {

TEST(CodeBasisTest, SingleBlockLabels) {
  const CodeBasis code = build_code(1);
  EXPECT_EQ(code.n_physical, 4);
  EXPECT_EQ(code.logical_index(0), CodeBasis::kZero);
  EXPECT_EQ(code.logical_index(1), CodeBasis::kOne);
  EXPECT_EQ(code.logical_indices(), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(code.working_indices(), (std::vector<std::size_t>{1, 2, 4, 8}));
  // One excitation in four qubits: the code labels already fill the slice.
  EXPECT_EQ(code.dfs_indices(), code.working_indices());
}

TEST(CodeBasisTest, TwoBlockWordsConcatenateLeftmostFirst) {
  const CodeBasis code = build_code(2);
  // |10>_L: logical bit 1 (leftmost block) is set.
  EXPECT_EQ(code.logical_index(0b10), (CodeBasis::kOne << 4) | CodeBasis::kZero);
  EXPECT_EQ(code.logical_index(0b01), (CodeBasis::kZero << 4) | CodeBasis::kOne);
  EXPECT_EQ(code.logical_indices(),
            (std::vector<std::size_t>{17, 18, 33, 34}));
  EXPECT_EQ(code.working_indices().size(), 16u);
  EXPECT_EQ(code.dfs_indices().size(), 28u);  // C(8, 2)
  for (std::size_t idx : code.dfs_indices()) {
    EXPECT_EQ(std::popcount(idx), 2);
  }
}

TEST(CodeBasisTest, ValidatesLogicalCount) {
  EXPECT_THROW(build_code(0), std::invalid_argument);
  EXPECT_THROW(build_code(4), std::invalid_argument);
  EXPECT_THROW(build_code(1).logical_index(2), std::out_of_range);
}

TEST(CodeBasisTest, ProjectorsHaveExpectedRank) {
  const CodeBasis code = build_code(2);
  const Operator pc = code.code_projector();
  const Operator pd = code.dfs_projector();
  EXPECT_NEAR(pc.mat.trace().real(), 16.0, 1e-12);
  EXPECT_NEAR(pd.mat.trace().real(), 28.0, 1e-12);
  // The code sits inside the dephasing-free slice: Pd * Pc = Pc.
  EXPECT_LT(test::max_abs_diff(pd.mat * pc.mat, pc.mat), 1e-12);
}

TEST(CodeBasisTest, LogicalBasisColumnsAreBasisStates) {
  const CodeBasis code = build_code(1);
  const Matrix basis = code.logical_basis();
  ASSERT_EQ(basis.cols(), 2);
  EXPECT_EQ(basis(1, 0), cx(1.0, 0.0));
  EXPECT_EQ(basis(2, 1), cx(1.0, 0.0));
  EXPECT_NEAR(basis.col(0).norm(), 1.0, 1e-15);
}

TEST(DephaseTest, CodeStatesSurviveExactly) {
  const CodeBasis code = build_code(1);
  QuantumState psi;
  psi.n_qubits = 4;
  psi.amp = (code.logical_basis().col(0) +
             cx(0.0, 1.0) * code.logical_basis().col(1)) /
            std::sqrt(2.0);
  // Fixed collective-Z eigenvalue: survival is exactly 1, not just close.
  EXPECT_EQ(dephase(psi), 1.0);
}

TEST(DephaseTest, ExtremeSuperpositionAveragesToHalf) {
  QuantumState ghz;
  ghz.n_qubits = 4;
  ghz.amp = Vector::Zero(16);
  ghz.amp(0) = 1.0 / std::sqrt(2.0);
  ghz.amp(15) = 1.0 / std::sqrt(2.0);
  const double f = dephase(ghz);
  EXPECT_NEAR(f, 0.5, 0.02);
}

TEST(DephaseTest, ReproducibleBitForBit) {
  QuantumState ghz;
  ghz.n_qubits = 4;
  ghz.amp = Vector::Zero(16);
  ghz.amp(0) = 1.0 / std::sqrt(2.0);
  ghz.amp(15) = 1.0 / std::sqrt(2.0);
  const double a = dephase(ghz);
  const double b = dephase(ghz);
  EXPECT_EQ(a, b);
  DephasingEnsemble other;
  other.seed = 123;
  EXPECT_NE(a, dephase(ghz, other));
}

TEST(DephaseTest, ValidatesInput) {
  QuantumState bad;
  bad.n_qubits = 2;
  bad.amp = Vector::Zero(4);
  bad.amp(0) = 2.0;  // not normalized
  EXPECT_THROW(dephase(bad), std::invalid_argument);

  QuantumState ok;
  ok.n_qubits = 1;
  ok.amp = Vector::Zero(2);
  ok.amp(0) = 1.0;
  DephasingEnsemble none;
  none.samples = 0;
  EXPECT_THROW(dephase(ok, none), std::invalid_argument);
}

TEST(LeakageTest, DistinguishesSubspaceTiers) {
  const CodeBasis code = build_code(1);
  QuantumState psi;
  psi.n_qubits = 4;
  psi.amp = Vector::Zero(16);
  psi.amp(CodeBasis::kZero) = 1.0 / std::sqrt(2.0);
  psi.amp(CodeBasis::kA1) = 1.0 / std::sqrt(2.0);
  // Half the weight is on an ancilla label: outside the logical span but
  // inside the working set and the dephasing-free slice.
  EXPECT_NEAR(leakage(psi, code, Subspace::logical), 0.5, 1e-12);
  EXPECT_NEAR(leakage(psi, code, Subspace::logical_ancilla), 0.0, 1e-12);
  EXPECT_NEAR(leakage(psi, code, Subspace::dfs), 0.0, 1e-12);

  QuantumState out;
  out.n_qubits = 4;
  out.amp = Vector::Zero(16);
  out.amp(CodeBasis::kZero) = 1.0 / std::sqrt(2.0);
  out.amp(0b0011) = 1.0 / std::sqrt(2.0);  // weight 2: outside the slice
  EXPECT_NEAR(leakage(out, code, Subspace::dfs), 0.5, 1e-12);
}

TEST(LeakageTest, RejectsMismatchedRegister) {
  const CodeBasis code = build_code(1);
  QuantumState psi;
  psi.n_qubits = 2;
  psi.amp = Vector::Zero(4);
  psi.amp(0) = 1.0;
  EXPECT_THROW(leakage(psi, code, Subspace::logical), std::invalid_argument);
}

TEST(DephaseTest, ThreeBlockCodeStateSurvives) {
  const CodeBasis code = build_code(3);
  QuantumState psi;
  psi.n_qubits = 12;
  psi.amp = Vector::Zero(code.dim());
  const auto idx = code.logical_indices();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    psi.amp(static_cast<Eigen::Index>(idx[k])) =
        1.0 / std::sqrt(static_cast<double>(idx.size()));
  }
  EXPECT_EQ(dephase(psi), 1.0);
}

}  // namespace
}  // namespace holodfs
