// Copyright 2026 The xorcomm Authors
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

#ifndef XORCOMM_CLI_HPP
#define XORCOMM_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace xorcomm {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitGuard = 2,
  kExitInvalid = 3,
  kExitPartial = 4,
};

struct RunConfig {
  std::string command;
  std::string game_path;
  std::optional<int> family_n;
  std::string quantity = "omega";
  int k = 2;
  std::optional<std::size_t> d;  // unset: per-command default
  std::optional<int> restarts;   // unset: per-solver default
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> guard;
  std::optional<std::size_t> m;
  double eps = 0.5;
  std::string out;
  std::string format = "json";
  bool heuristic = false;
  bool general = false;  // general (non-Hermitian) operator see-saw
  int threads = 0;
  std::string sweep;     // "m=4,8,16"
  std::string input;     // report: directory of records
  std::vector<std::string> log;  // notes emitted alongside the record
};

/// Loads the game named by --game or --family.
nlohmann::json game_source(const RunConfig& cfg);

nlohmann::json cmd_solve(RunConfig& cfg);
nlohmann::json cmd_lift(RunConfig& cfg);
/// Single reduction record, or {"csv": ...} for a sweep.
nlohmann::json cmd_reduce(RunConfig& cfg);

struct ReportOutput {
  std::string csv;      // one row per record
  std::string summary;  // quotients vs n
  int records = 0;
  int skipped = 0;
};
ReportOutput cmd_report(const RunConfig& cfg);

/// One CSV header + row for a record.
std::string record_to_csv(const nlohmann::json& record);

/// Parses argv, runs the command, writes output; returns an ExitCode.
int run_cli(int argc, char** argv);

}  // namespace xorcomm

#endif  // XORCOMM_CLI_HPP
