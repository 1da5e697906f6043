// Copyright 2026 The fkdet authors - All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FKDET_RUNNER_HPP
#define FKDET_RUNNER_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fkdet/config.hpp"

namespace fkdet {

// One executed method: its output files (name → content, written by the
// caller at the end, so computation and I/O stay separated) and, when the
// method estimates log det_NΓ f, the comparable final value.
struct MethodOutcome {
  std::string method;
  std::optional<double> comparable;
  std::optional<double> comparable_error;
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<std::string> notes;
};

struct RunResult {
  std::vector<MethodOutcome> outcomes;
  std::string summary_json;  // also written as summary.json
  int disagreements = 0;     // pairs of finals beyond the allowance
};

// Runs every configured method. Deterministic: rerunning the same config
// yields byte-identical artifacts (no timestamps, fixed summation orders).
RunResult run_experiment(const ExperimentConfig& cfg);

// Writes the artifacts (method files + summary.json) under out_dir,
// creating it if needed.
void write_run_result(const RunResult& result, const std::string& out_dir);

// Eqs. (27)–(29) diagnostics over the configured range. CSV columns:
// n,set_size,eq28,eq29,strong_value.
std::string foelner_stats_csv(const ExperimentConfig& cfg);

// The Følner sequence a config describes (boxes, balls, or the whole group
// for finite Γ when no range is given).
std::vector<FoelnerSet> make_foelner_sets(const ExperimentConfig& cfg);

}  // namespace fkdet

#endif  // FKDET_RUNNER_HPP
