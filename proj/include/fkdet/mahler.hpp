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

#ifndef FKDET_MAHLER_HPP
#define FKDET_MAHLER_HPP

#include <cstddef>
#include <string>

#include "fkdet/ring.hpp"

namespace fkdet {

// Tensor grid of m-th roots of unity on the rank-dim torus. Nodes are
// visited row-major over (j_1, …, j_dim), angles 2π·j_k/m. Phase exponents
// are reduced mod m as integers before the trig tables are consulted, so
// node values for f and f* (conjugate phases) pair up bitwise.
struct TorusGrid {
  std::size_t dim = 1;
  std::size_t m = 2;
  std::size_t total() const;  // m^dim, overflow-checked

  // Throws Error on m < 2, dim < 1 or total() > cap.
  void validate(std::size_t cap = std::size_t(1) << 26) const;
};

// Trapezoid-rule mean of log|f| over the grid: (1/m^dim)·Σ log|f(node)|.
// For f nonvanishing on the torus this converges geometrically in m
// (periodic analytic integrand). Group of f must be free abelian of rank
// grid.dim. An exact zero at a node raises NodeHitError.
//
// Summation is chunked (fixed 4096-node chunks), each chunk reduced by
// pairwise summation and the chunk results pairwise-summed again; chunks
// are independent, so the OpenMP and serial versions return bitwise equal
// values.
double mahler_quadrature(const FloatElement& f, const TorusGrid& grid);
double mahler_quadrature_serial(const FloatElement& f, const TorusGrid& grid);

// One-variable oracle: Mahler measure from the roots of the associated
// ordinary polynomial, m(f) = log|lead| + Σ_roots log max(1, |root|).
// Roots come from balanced companion-matrix eigenvalues; any root within
// 1e-8 of the unit circle makes the answer unreliable, so we refuse
// (NoCertificateError) instead of guessing.
double jensen_1d(const FloatElement& f);

// Certified non-vanishing of f on the torus: compares the grid minimum of
// |f| against the worst excursion between nodes. L below is the Lipschitz
// constant of f along torus angles (in full-turn units), and the farthest
// point from a node is half a grid-cell diagonal away, so
//     min_grid |f| > L·(√dim/2)·(1/m)
// pins |f| > 0 everywhere. A certificate implies f is a unit in L¹(Z^dim)
// (Wiener's theorem). `certified == false` is a refusal, not a disproof.
struct NonvanishingCertificate {
  bool certified = false;
  double grid_min = 0.0;
  double lipschitz = 0.0;  // L = 2π·Σ_ν |a_ν|·‖ν‖₁
  double threshold = 0.0;  // L·(√dim/2)/m
  std::size_t m = 0;
};

NonvanishingCertificate nonvanishing_certificate(const FloatElement& f,
                                                 std::size_t m);

// Grid scan of the (real) symbol of a self-adjoint element, with the same
// Lipschitz slack folded in: the spectrum of every truncation f_F lies in
// [lo, hi]. Throws NotSelfAdjointError for non-self-adjoint f.
struct SymbolWindow {
  double lo = 0.0;        // grid_min − slack
  double hi = 0.0;        // grid_max + slack
  double grid_min = 0.0;
  double grid_max = 0.0;
  double slack = 0.0;     // L·(√dim/2)/m
};

SymbolWindow symbol_range(const FloatElement& f, std::size_t m);

// Convenience bundle for the CLI: quadrature value plus the certificate at
// the same m.
struct MahlerRun {
  double value = 0.0;
  std::size_t m = 0;
  NonvanishingCertificate certificate;
  std::string to_json() const;
};

MahlerRun mahler_run(const FloatElement& f, std::size_t m);

}  // namespace fkdet

#endif  // FKDET_MAHLER_HPP
