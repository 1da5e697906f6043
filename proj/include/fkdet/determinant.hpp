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

#ifndef FKDET_DETERMINANT_HPP
#define FKDET_DETERMINANT_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "fkdet/estimate.hpp"
#include "fkdet/group.hpp"
#include "fkdet/ring.hpp"

namespace fkdet {

// Positivity is never assumed, always certified. The three accepted
// certificates:
//   HHStar          f was literally built as h·h* (we re-multiply and
//                   compare exactly);
//   Contraction     f = c(1+g) with c = a_e > 0, g self-adjoint and
//                   ‖g‖₁ < 1, so spec(f) ⊂ (0, 2c);
//   PositiveSymbol  free abelian groups only: the real symbol of f has a
//                   certified positive minimum on the torus (grid scan with
//                   Lipschitz slack, `symbol_grid` points per axis).
enum class CertificateKind { HHStar, Contraction, PositiveSymbol };

template <typename C>
struct PositivityCertificate {
  CertificateKind kind = CertificateKind::Contraction;
  std::optional<RingElement<C>> h;  // HHStar only
  std::size_t symbol_grid = 4096;   // PositiveSymbol only
};

template <typename C>
PositivityCertificate<C> certificate_hh_star(RingElement<C> h);
template <typename C>
PositivityCertificate<C> certificate_contraction();
template <typename C>
PositivityCertificate<C> certificate_positive_symbol(
    std::size_t symbol_grid = 4096);

// Checks that `cert` actually certifies f > 0; throws NotPositiveError (or
// NotSelfAdjointError) otherwise. Exact coefficient kinds are verified in
// exact arithmetic.
template <typename C>
void verify_positivity(const RingElement<C>& f,
                       const PositivityCertificate<C>& cert);

// --- Method 1: truncation limit -------------------------------------------
// per_step value = (1/|F|)·log det(f_F), det via symmetric positive-definite
// factorization (banded when the truncation is banded). A non-positive pivot
// means the certificate was wrong → NotPositiveError.
template <typename C>
EstimateReport foelner_logdet(const RingElement<C>& f,
                              const std::vector<FoelnerSet>& sets,
                              const PositivityCertificate<C>& cert,
                              std::size_t dense_cap = 4000);

// --- Method 2: lattice index -----------------------------------------------
// |Z[F]/f_F·Z[F]| = |det f_F| = Π SNF elementary divisors. Both sides are
// computed and compared bit-exactly for |F| ≤ 200; beyond that only the
// Bareiss determinant is used. Singular f_F → InfiniteIndexError.
mpz_class lattice_index(const IntElement& f, const FoelnerSet& F);

// Sequence wrapper: per_step value = log(index)/|F|; singular truncations
// are skipped and recorded in `notes`, mirroring the guard that det f_F
// "may well be zero" for non-positive f.
EstimateReport lattice_logdet(const IntElement& f,
                              const std::vector<FoelnerSet>& sets);

// --- Method 3: trace power series ------------------------------------------
// f = c(1+g), c = a_e; log det f = log c + Σ_{ν≥1} (−1)^{ν−1}/ν·tr_e(g^ν).
// Powers of g are exact rational convolutions; per_step = (ν, |supp g^ν|,
// partial sum, tail bound Σ_{μ>ν} r^μ/μ ≤ r^{ν+1}/((ν+1)(1−r)) with
// r = ‖g‖₁). Stops when the tail bound drops below tol, or at max_terms
// with the honest remaining bound in error_bound and a note.
//
// Refusals: a_e ≤ 0 or ‖g‖₁ ≥ 1 → SeriesDivergentError; g ≠ g* →
// NotSelfAdjointError; support of g^ν exceeding support_cap → SizeCapError.
EstimateReport trace_series_logdet(const RatElement& f, double tol,
                                   std::int64_t max_terms = 10000,
                                   std::size_t support_cap = 2000000);
EstimateReport trace_series_logdet(const IntElement& f, double tol,
                                   std::int64_t max_terms = 10000,
                                   std::size_t support_cap = 2000000);

// --- Method 4: Lück polynomial trace ---------------------------------------
// tr_NΓ(Q(f)) = lim (1/|F_n|)·tr Q(f_{F_n}). Q is given by its coefficient
// list (constant first); coefficients are taken over the rationals (every
// double is one), so the matrix traces are exact. per_step value =
// double(trace)/|F| (one correctly-rounded division). The exact limit
// tr_e(Q(f)) is computed independently by group-ring convolution.
struct LueckReport {
  EstimateReport report;
  double exact_limit = 0.0;
};

LueckReport lueck_trace(const IntElement& f, const std::vector<double>& q,
                        const std::vector<FoelnerSet>& sets);

}  // namespace fkdet

#endif  // FKDET_DETERMINANT_HPP
