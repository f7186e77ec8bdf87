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
#include <string>
#include <vector>

namespace holodfs {

struct InvariantResult {
  std::string name;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyReport {
  std::vector<InvariantResult> invariants;
  // (twice_j, multiplicity) per block of the five-qubit decomposition,
  // in canonical block order.
  std::vector<std::array<int, 2>> cg_multiplicities;
  bool all_pass = true;
};

// Runs the structural invariant suite over every module.  A nonempty
// corrupt_name zeroes that invariant's tolerance, forcing it to fail; an
// unknown name throws std::invalid_argument.
VerifyReport run_verification(const std::string& corrupt_name = "");

}  // namespace holodfs
