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
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace holodfs::test {

struct RunResult {
  int exit_code = -1;
  std::string output;  // captured stdout
};

// Path of the command-line binary under test, provided by the build.
inline std::string cli_binary() {
  const char* path = std::getenv("HOLODFS_BIN");
  if (path == nullptr || path[0] == '\0') {
    throw std::runtime_error("HOLODFS_BIN is not set");
  }
  return path;
}

// Runs `cli_binary() + args`, capturing stdout; stderr is discarded so
// expected-failure cases stay quiet in the test log.
inline RunResult run_cli(const std::string& args) {
  const std::string cmd = "'" + cli_binary() + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed");
  RunResult res;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.output.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace holodfs::test
