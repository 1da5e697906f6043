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

#ifndef FKDET_FINITE_HPP
#define FKDET_FINITE_HPP

#include <gmpxx.h>

#include <string>

#include "fkdet/ring.hpp"

namespace fkdet {

// Exact entropy data for finite Γ. When f is not a unit the index and the
// entropy are infinite: is_unit == false, index == 0 (sentinel) and
// h_f == +∞. logdet_eigen is the eigenvalue-formula value — finite for
// every nonzero f (non-units included, where h_f = ∞ strictly exceeds it),
// and −∞ for f = 0.
struct FiniteEntropyResult {
  bool is_unit = false;
  mpz_class index;
  double h_f = 0.0;
  double logdet_eigen = 0.0;

  std::string to_json() const;
};

// Lattice-index entropy: h_f = (1/|Γ|)·log|ZΓ/ZΓ·f|, the quotient order
// being the product of the Smith elementary divisors of the |Γ|×|Γ| matrix
// of R_f. The divisor product is compared bit-exactly against |det|.
FiniteEntropyResult finite_entropy(const IntElement& f);

// Eigenvalue formula: (1/(2|Γ|))·Σ log λ over the nonzero eigenvalues λ of
// R_{ff*}. "Nonzero" is decided exactly: the float cutoff
// λ_max·|Γ|·eps·16 is cross-checked against the exact integer rank of the
// ff* matrix, and the exact rank wins. Throws Error for f = 0 (undefined
// determinant) and SpecMismatchError for infinite groups.
double finite_logdet_eigen(const IntElement& f);

}  // namespace fkdet

#endif  // FKDET_FINITE_HPP
