// Copyright 2026 The lindlearn Authors
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

// Subcommands of the lindlearn tool. Each returns a process exit code and
// reports errors on `err`.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lindlearn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitRuntime = 4;

struct CommonOptions {
  std::string config_path;  // empty: built-in defaults
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> chains;
  std::string out_dir = ".";
  std::optional<unsigned> threads;  // falls back to LL_THREADS, then 1
};

struct GenLibraryOptions {
  std::optional<int> dim;
  std::optional<int> complexity;
};

struct SimulateOptions {
  std::string model_path;
  std::string preset;  // driven-two-level, symmetric-two-emitter, independent-emitters
};

struct FitRatesOptions {
  std::string model_path;
};

struct RecordOptions {
  std::vector<std::string> record_paths;
};

int gen_library(const CommonOptions& common, const GenLibraryOptions& opts, std::ostream& out, std::ostream& err);
int simulate(const CommonOptions& common, const SimulateOptions& opts, std::ostream& out, std::ostream& err);
int learn(const CommonOptions& common, std::ostream& out, std::ostream& err);
int fit_rates(const CommonOptions& common, const FitRatesOptions& opts, std::ostream& out, std::ostream& err);
int analyze(const CommonOptions& common, const RecordOptions& opts, std::ostream& out, std::ostream& err);
int mix(const CommonOptions& common, const RecordOptions& opts, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; used by main and by tests.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace lindlearn::cli
