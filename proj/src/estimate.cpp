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

#include "fkdet/estimate.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

namespace fkdet {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

// nlohmann::json would round-trip doubles fine, but its shortest-repr output
// is not pinned across library versions; we serialize numbers ourselves so
// reruns stay byte-identical.
nlohmann::json raw_number(double v) {
  // number stored as a pre-rendered token
  return nlohmann::json::parse(format_double(v));
}

}  // namespace

std::string EstimateReport::to_json() const {
  nlohmann::json j;
  j["method"] = method;
  j["steps"] = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json row;
    row["n"] = s.n;
    row["size"] = s.size;
    row["value"] = raw_number(s.value);
    if (s.error_bound) row["error_bound"] = raw_number(*s.error_bound);
    j["steps"].push_back(row);
  }
  j["final"] = raw_number(final);
  if (error_bound) {
    j["error_bound"] = raw_number(*error_bound);
  } else {
    j["error_bound"] = nullptr;
  }
  j["notes"] = notes;
  return j.dump(2);
}

std::string EstimateReport::to_csv() const {
  std::string out = "n,set_size,value,error_bound\n";
  for (const auto& s : steps) {
    out += std::to_string(s.n);
    out += ',';
    out += std::to_string(s.size);
    out += ',';
    out += format_double(s.value);
    out += ',';
    if (s.error_bound) out += format_double(*s.error_bound);
    out += '\n';
  }
  return out;
}

}  // namespace fkdet
