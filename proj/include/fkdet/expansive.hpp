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

#ifndef FKDET_EXPANSIVE_HPP
#define FKDET_EXPANSIVE_HPP

#include <optional>
#include <string>

#include "fkdet/ring.hpp"

namespace fkdet {

// Certification that f is a unit in L¹(Γ) — hence the Γ-action on X_f is
// expansive, with separation constant ε = 1/(3‖f‖₁). An uncertified result
// is a refusal, never a disproof of expansiveness.
enum class ExpansiveRoute {
  None,
  ContractionSeries,   // ‖f/a_e − 1‖₁ < 1 → Neumann series inverse
  TorusNonvanishing,   // Z^n only: certified |f| > 0 on the torus (Wiener)
  FiniteUnit,          // finite Γ: det of the R_f matrix is nonzero
};

struct ExpansivenessCertificate {
  bool is_certified = false;
  ExpansiveRoute route = ExpansiveRoute::None;
  std::optional<double> epsilon;  // present iff certified; = 1/(3·‖f‖₁)
  std::string details;

  std::string to_json() const;
};

// Tries the routes in the order listed above; `torus_grid` is the
// points-per-axis used by the torus route.
ExpansivenessCertificate certify_expansive(const IntElement& f,
                                           std::size_t torus_grid = 4096);

// Truncated Neumann series for f^{-1} = (1/c)·Σ_ν (−g)^ν, available when
// the contraction route certifies f (c = a_e, g = f/c − 1, ‖g‖₁ < 1;
// NotContractionError otherwise). The series is accumulated in exact
// rational arithmetic and rounded to Float at the end.
//   error_bound:    rigorous tail bound ‖f^{-1} − approx‖₁ ≤
//                   (1/|c|)·r^{M+1}/(1−r) ≤ tol
//   residual_l1:    the verified ‖f·approx − e‖₁ (≤ tol·‖f‖₁, checked)
struct NeumannInverse {
  FloatElement approx;
  double error_bound = 0.0;
  double residual_l1 = 0.0;
  std::int64_t terms = 0;  // M+1 terms, ν = 0..M
};

NeumannInverse neumann_inverse(const IntElement& f, double tol,
                               std::size_t support_cap = 2000000);

}  // namespace fkdet

#endif  // FKDET_EXPANSIVE_HPP
