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

#ifndef FKDET_CONFIG_HPP
#define FKDET_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fkdet/group.hpp"
#include "fkdet/ring.hpp"

namespace fkdet {

// Experiment description, loaded from a sectioned key = value text file.
// Unknown sections or keys are hard errors; every diagnostic is anchored
// as "path:line: message" (ConfigError). Schema (see README for the full
// story):
//
//   [group]    kind = free_abelian | finite | heisenberg
//              rank = R             (free_abelian)
//              table_file = PATH    (finite; relative to the config file)
//   [element]  term = COEFF (ENCODING)   — repeated, one term each
//   [foelner]  kind = box | ball
//              n = 100..1000:100 | 10,20,40
//   [methods]  list = comma-separated subset of
//              foelner_logdet, lattice_index, series, mahler, lueck_trace,
//              finite_entropy, expansive
//   [series]   tol = 1e-10        max_terms = 10000
//   [mahler]   m = 4096
//   [lueck]    q = 0,0,1          — polynomial coefficients, constant first
//   [limits]   size_cap = 20000   dense_cap = 4000   support_cap = 2000000
//   [compare]  allowance = 2e-4
//   [output]   dir = PATH         (overridden by --out)
struct ExperimentConfig {
  std::optional<GroupSpec> group;
  std::optional<AnyElement> element;

  bool foelner_is_box = true;
  std::vector<int> foelner_ns;

  std::vector<std::string> methods;

  double series_tol = 1e-10;
  std::int64_t series_max_terms = 10000;
  std::size_t mahler_m = 4096;
  std::vector<double> lueck_q = {0.0, 0.0, 1.0};  // default Q = T²

  std::size_t size_cap = 20000;
  std::size_t dense_cap = 4000;
  std::size_t support_cap = 2000000;

  double compare_allowance = 2e-4;
  std::string output_dir = "out";
};

// Parses and cross-validates (method/group compatibility, box ⇒ free
// abelian, …). Throws ConfigError with a "path:line:" anchor. assoc_seed
// feeds only the finite-group associativity sampler (never estimator math).
ExperimentConfig load_config(const std::string& path,
                             std::uint64_t assoc_seed = 0x5eed5eedULL);

// The known method names, in canonical emission order.
const std::vector<std::string>& known_methods();

}  // namespace fkdet

#endif  // FKDET_CONFIG_HPP
