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

#ifndef FKDET_ESTIMATE_HPP
#define FKDET_ESTIMATE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fkdet {

// One convergence record, emitted by every estimator. For Følner-sequence
// methods a step is (n, |F_n|, value); the trace series uses (ν,
// |support(g^ν)|, partial sum) and quadrature a single (m, m^rank, value)
// row. No extrapolation in v1: `final` is always the last step's value.
struct EstimateStep {
  std::int64_t n = 0;
  std::size_t size = 0;
  double value = 0.0;
  std::optional<double> error_bound;
};

struct EstimateReport {
  std::string method;
  std::vector<EstimateStep> steps;
  double final = 0.0;
  std::optional<double> error_bound;
  std::vector<std::string> notes;

  // {"method":…, "steps":[{n,size,value[,error_bound]}…], "final":…,
  //  "error_bound":…|null, "notes":[…]} — 17 significant digits throughout.
  std::string to_json() const;

  // CSV with header n,set_size,value,error_bound (error_bound empty when
  // absent), 17 significant digits.
  std::string to_csv() const;
};

std::string format_double(double v);  // %.17g

}  // namespace fkdet

#endif  // FKDET_ESTIMATE_HPP
