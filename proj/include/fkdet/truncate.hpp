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

#ifndef FKDET_TRUNCATE_HPP
#define FKDET_TRUNCATE_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fkdet/errors.hpp"
#include "fkdet/group.hpp"
#include "fkdet/intmat.hpp"
#include "fkdet/ring.hpp"

namespace fkdet {

// Matrix of the truncated operator f_F = p_F ∘ R_{f*} ∘ i_F on the ordered
// basis of F. Entry derivation (the definition is only the composition):
// f_F(δ_γ) = p_F(δ_γ·f*) and (δ_γ·f*)_{γ′} = Σ_δ a_δ [γδ^{-1} = γ′] = a_{γ′^{-1}γ}
// for real coefficients, so entries[row γ′][col γ] = a_{γ′^{-1}γ}.
//
// Float matrices are stored dense, or banded (lower band, see chol.hpp
// layout) when the measured bandwidth is small — the automatic optimization
// for Z¹-box truncations of short elements.
struct TruncatedMatrix {
  FoelnerSet F;
  CoeffKind kind;
  bool symmetric = false;  // f == f* (then the matrix is symmetric)
  std::size_t bandwidth = 0;  // max |row−col| over structural nonzeros

  IntMatrix exact;             // ExactInt kind
  std::vector<double> dense;   // Float kind, row-major |F|×|F|
  std::vector<double> band;    // Float kind, |F|×(bandwidth+1) lower band
  bool is_banded() const { return !band.empty(); }

  std::size_t size() const { return F.size(); }

  double float_entry(std::size_t i, std::size_t j) const;

  // Row-major full matrix (unpacks band storage).
  std::vector<double> to_dense() const;

  // Plain-text dump: header "|F| coeff_kind", then row-major entries.
  void dump(std::ostream& out) const;
};

// Exact-integer assembly (the lattice-index path requires it).
TruncatedMatrix assemble_exact(const IntElement& f, const FoelnerSet& F);

// Float assembly from any coefficient kind. Banded storage is chosen when
// bandwidth+1 ≤ max(8, |F|/4); matrices too large for dense storage and not
// banded raise SizeCapError.
TruncatedMatrix assemble_float(const FloatElement& f, const FoelnerSet& F,
                               std::size_t dense_cap = 4000);
TruncatedMatrix assemble_float(const IntElement& f, const FoelnerSet& F,
                               std::size_t dense_cap = 4000);
TruncatedMatrix assemble_float(const RatElement& f, const FoelnerSet& F,
                               std::size_t dense_cap = 4000);

// Eq. (13) check: all eigenvalues of the symmetric matrix M lie in [a, b].
// Reports the extreme Rayleigh quotients (= extreme eigenvalues).
struct SpectralBoundsReport {
  bool pass = false;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  double a = 0.0, b = 0.0;
};

SpectralBoundsReport spectral_bounds_check(const TruncatedMatrix& m, double a,
                                           double b);

}  // namespace fkdet

#endif  // FKDET_TRUNCATE_HPP
