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

#include "fkdet/determinant.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "fkdet/chol.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/intmat.hpp"
#include "fkdet/mahler.hpp"
#include "fkdet/truncate.hpp"

namespace fkdet {

namespace {

double log_mpq(const mpq_class& v) {
  if (v <= 0) throw Error("log_mpq: argument must be positive");
  return log_mpz(v.get_num()) - log_mpz(v.get_den());
}

template <typename C>
FloatElement as_float(const RingElement<C>& f) {
  if constexpr (std::is_same_v<C, double>) {
    return f;
  } else {
    return to_float(f);
  }
}

// ‖f/a_e − 1‖₁ < 1 without any division: the identity coefficient of g is
// a_e/a_e − 1 = 0, so ‖g‖₁·a_e = Σ_{γ≠e} |a_γ|, and the contraction
// condition is exactly Σ_{γ≠e} |a_γ| < a_e — an exact comparison in every
// coefficient kind.
template <typename C>
void check_contraction(const RingElement<C>& f) {
  const C c = trace_e(f);
  if (!(c > C(0)))
    throw NotPositiveError(
        "contraction certificate: coefficient of e is not positive");
  C off(0);
  for (const auto& [gamma, a] : f.support()) {
    if (f.spec().is_identity(gamma)) continue;
    off += abs(a);
  }
  if (!(off < c))
    throw NotPositiveError(
        "contraction certificate: ||f/a_e - 1||_1 >= 1, spectrum not pinned");
}

}  // namespace

template <typename C>
PositivityCertificate<C> certificate_hh_star(RingElement<C> h) {
  PositivityCertificate<C> cert;
  cert.kind = CertificateKind::HHStar;
  cert.h = std::move(h);
  return cert;
}

template <typename C>
PositivityCertificate<C> certificate_contraction() {
  PositivityCertificate<C> cert;
  cert.kind = CertificateKind::Contraction;
  return cert;
}

template <typename C>
PositivityCertificate<C> certificate_positive_symbol(std::size_t symbol_grid) {
  PositivityCertificate<C> cert;
  cert.kind = CertificateKind::PositiveSymbol;
  cert.symbol_grid = symbol_grid;
  return cert;
}

template <typename C>
void verify_positivity(const RingElement<C>& f,
                       const PositivityCertificate<C>& cert) {
  if (!is_self_adjoint(f))
    throw NotSelfAdjointError("positivity certificate: f != f*");
  switch (cert.kind) {
    case CertificateKind::HHStar: {
      if (!cert.h)
        throw NotPositiveError("hh* certificate: no h supplied");
      if (!(convolve(*cert.h, star(*cert.h)) == f))
        throw NotPositiveError("hh* certificate: h·h* does not equal f");
      return;
    }
    case CertificateKind::Contraction:
      check_contraction(f);
      return;
    case CertificateKind::PositiveSymbol: {
      if (f.spec().kind() != GroupKind::FreeAbelian)
        throw NotPositiveError(
            "positive-symbol certificate: group is not free abelian");
      const SymbolWindow w = symbol_range(as_float(f), cert.symbol_grid);
      if (!(w.lo > 0.0))
        throw NotPositiveError(
            "positive-symbol certificate: certified lower bound " +
            format_double(w.lo) + " is not positive");
      return;
    }
  }
  throw Error("verify_positivity: unknown certificate kind");
}

template <typename C>
EstimateReport foelner_logdet(const RingElement<C>& f,
                              const std::vector<FoelnerSet>& sets,
                              const PositivityCertificate<C>& cert,
                              std::size_t dense_cap) {
  if (sets.empty())
    throw Error("foelner_logdet: empty Foelner sequence");
  verify_positivity(f, cert);

  EstimateReport rep;
  rep.method = "foelner_logdet";
  bool banded = false, dense = false;
  // The factorization kernel itself is parallel (and bitwise independent of
  // the thread count), so the sequence loop stays ordered.
  for (const auto& F : sets) {
    TruncatedMatrix t = assemble_float(f, F, dense_cap);
    double logdet;
    if (t.is_banded()) {
      logdet = cholesky_logdet_banded(t.band, t.size(), t.bandwidth);
      banded = true;
    } else {
      logdet = cholesky_logdet_parallel(t.dense, t.size());
      dense = true;
    }
    rep.steps.push_back({F.label(), F.size(),
                         logdet / static_cast<double>(F.size()),
                         std::nullopt});
  }
  rep.final = rep.steps.back().value;
  switch (cert.kind) {
    case CertificateKind::HHStar:
      rep.notes.push_back("positivity: f = h.h* certificate");
      break;
    case CertificateKind::Contraction:
      rep.notes.push_back("positivity: contraction certificate ||f/a_e - 1||_1 < 1");
      break;
    case CertificateKind::PositiveSymbol:
      rep.notes.push_back("positivity: certified positive symbol on the torus");
      break;
  }
  if (banded && !dense) rep.notes.push_back("storage: banded");
  if (dense && !banded) rep.notes.push_back("storage: dense");
  if (banded && dense) rep.notes.push_back("storage: mixed banded/dense");
  return rep;
}

mpz_class lattice_index(const IntElement& f, const FoelnerSet& F) {
  TruncatedMatrix t = assemble_exact(f, F);
  const mpz_class det = bareiss_det(t.exact);
  if (det == 0)
    throw InfiniteIndexError(
        "lattice_index: f_F is singular, Z[F]/f_F·Z[F] is infinite");
  mpz_class index = abs(det);
  if (F.size() <= 200) {
    // Contract: up to this size the Smith chain is recomputed and the
    // divisor product compared with |det| bit-exactly.
    mpz_class prod(1);
    for (const mpz_class& d : snf_divisors_mod(t.exact, index)) prod *= d;
    if (prod != index)
      throw Error(
          "lattice_index: SNF divisor product disagrees with |det| "
          "(internal invariant violated)");
  }
  return index;
}

EstimateReport lattice_logdet(const IntElement& f,
                              const std::vector<FoelnerSet>& sets) {
  if (sets.empty())
    throw Error("lattice_logdet: empty Foelner sequence");
  EstimateReport rep;
  rep.method = "lattice_index";
  for (const auto& F : sets) {
    try {
      const mpz_class index = lattice_index(f, F);
      rep.steps.push_back({F.label(), F.size(),
                           log_mpz(index) / static_cast<double>(F.size()),
                           std::nullopt});
    } catch (const InfiniteIndexError&) {
      rep.notes.push_back("n=" + std::to_string(F.label()) +
                          ": singular truncation skipped (infinite index)");
    }
  }
  if (rep.steps.empty())
    throw InfiniteIndexError("lattice_logdet: every truncation was singular");
  rep.final = rep.steps.back().value;
  return rep;
}

namespace {

// Σ_{μ>M} r^μ/μ ≤ r^{M+1}/((M+1)(1−r)) for 0 ≤ r < 1.
double series_tail_bound(double r, std::int64_t M) {
  return std::pow(r, static_cast<double>(M + 1)) /
         (static_cast<double>(M + 1) * (1.0 - r));
}

}  // namespace

EstimateReport trace_series_logdet(const RatElement& f, double tol,
                                   std::int64_t max_terms,
                                   std::size_t support_cap) {
  if (!(tol > 0.0)) throw Error("trace_series_logdet: tol must be positive");
  if (max_terms < 1) throw Error("trace_series_logdet: max_terms must be >= 1");

  const mpq_class c = trace_e(f);
  if (c <= 0)
    throw SeriesDivergentError(
        "trace series: coefficient of e is not positive, no c(1+g) split");

  RatElement g(f.spec());
  for (const auto& [gamma, a] : f.support()) {
    if (f.spec().is_identity(gamma)) continue;  // a_e/c − 1 = 0
    g.add_term(gamma, mpq_class(a / c));
  }
  if (!is_self_adjoint(g))
    throw NotSelfAdjointError("trace series: g = f/a_e - 1 is not self-adjoint");

  const mpq_class r_exact = l1_norm_exact(g);
  if (r_exact >= 1)
    throw SeriesDivergentError("trace series: ||g||_1 >= 1, Eq.-(9) series diverges");
  // get_d() rounds toward zero; nudge up so the float tail bound still
  // dominates the true one.
  const double r = std::nextafter(r_exact.get_d(), 1.0);

  EstimateReport rep;
  rep.method = "trace_series_logdet";
  double partial = log_mpq(c);
  RatElement power = g;
  bool converged = false;
  for (std::int64_t nu = 1; nu <= max_terms; ++nu) {
    if (nu > 1) {
      power = convolve(power, g);
      if (power.support_size() > support_cap)
        throw SizeCapError("trace series: |supp(g^" + std::to_string(nu) +
                           ")| exceeds the support cap");
    }
    const mpq_class tr = trace_e(power);
    const double sign = (nu % 2 == 1) ? 1.0 : -1.0;
    partial += sign / static_cast<double>(nu) * tr.get_d();
    const double tail = series_tail_bound(r, nu);
    rep.steps.push_back(
        {nu, power.support_size(), partial, tail});
    if (tail < tol) {
      converged = true;
      break;
    }
  }
  rep.final = rep.steps.back().value;
  rep.error_bound = rep.steps.back().error_bound;
  if (converged) {
    rep.notes.push_back("converged: tail bound below tol");
  } else {
    rep.notes.push_back(
        "term budget reached before the tail bound dropped below tol");
  }
  return rep;
}

EstimateReport trace_series_logdet(const IntElement& f, double tol,
                                   std::int64_t max_terms,
                                   std::size_t support_cap) {
  return trace_series_logdet(to_rational(f), tol, max_terms, support_cap);
}

namespace {

using SparseVec = std::map<std::size_t, mpq_class>;

// w = f_F·v in scatter form. From the entry derivation (truncate.hpp):
// entry(r, c) = a_δ where elems[r]·δ = elems[c], so the c-th component
// feeds row r = index_of(elems[c]·δ^{-1}).
SparseVec apply_truncated(const IntElement& f, const FoelnerSet& F,
                          const std::vector<GroupElement>& inv_support,
                          const SparseVec& v) {
  SparseVec w;
  const auto& elems = F.elements();
  std::size_t k = 0;
  for (const auto& [delta, a] : f.support()) {
    const GroupElement& dinv = inv_support[k++];
    const mpq_class qa(a);
    for (const auto& [cidx, vc] : v) {
      const auto r = F.index_of(f.spec().multiply(elems[cidx], dinv));
      if (!r) continue;
      auto [it, inserted] = w.emplace(*r, qa * vc);
      if (!inserted) it->second += qa * vc;
    }
  }
  return w;
}

}  // namespace

LueckReport lueck_trace(const IntElement& f, const std::vector<double>& q,
                        const std::vector<FoelnerSet>& sets) {
  if (q.empty()) throw Error("lueck_trace: empty polynomial");
  if (sets.empty()) throw Error("lueck_trace: empty Foelner sequence");
  for (double qk : q)
    if (!std::isfinite(qk))
      throw Error("lueck_trace: polynomial coefficients must be finite");

  // Every double is a rational, so Q(f_F) traces can be exact.
  std::vector<mpq_class> qc;
  qc.reserve(q.size());
  for (double qk : q) qc.emplace_back(qk);
  const std::size_t deg = qc.size() - 1;

  // Exact limit tr_e(Q(f)) by group-ring convolution.
  mpq_class limit_exact(0);
  {
    IntElement power = IntElement::scalar(f.spec(), 1);
    limit_exact += qc[0];  // tr_e(f^0) = 1
    for (std::size_t k = 1; k <= deg; ++k) {
      power = convolve(power, f);
      limit_exact += qc[k] * mpq_class(trace_e(power));
    }
  }

  std::vector<GroupElement> inv_support;
  for (const auto& [delta, a] : f.support())
    inv_support.push_back(f.spec().inverse(delta));

  LueckReport out;
  out.exact_limit = limit_exact.get_d();
  out.report.method = "lueck_trace";
  for (const auto& F : sets) {
    const std::size_t n = F.size();
    std::vector<mpq_class> diag(n);
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < n; ++j) {
      // Horner: u = q_deg·e_j; u ← f_F·u + q_k·e_j.
      SparseVec u;
      if (qc[deg] != 0) u[j] = qc[deg];
      for (std::size_t k = deg; k-- > 0;) {
        u = apply_truncated(f, F, inv_support, u);
        if (qc[k] != 0) {
          auto [it, inserted] = u.emplace(j, qc[k]);
          if (!inserted) it->second += qc[k];
        }
      }
      auto it = u.find(j);
      if (it != u.end()) diag[j] = it->second;
    }
    mpq_class trace(0);
    for (const mpq_class& d : diag) trace += d;  // fixed order: deterministic
    const double value = trace.get_d() / static_cast<double>(n);
    out.report.steps.push_back({F.label(), n, value, std::nullopt});
  }
  out.report.final = out.report.steps.back().value;
  out.report.notes.push_back("exact limit tr_e(Q(f)) = " +
                             format_double(out.exact_limit));
  return out;
}

template PositivityCertificate<mpz_class> certificate_hh_star(
    RingElement<mpz_class>);
template PositivityCertificate<mpq_class> certificate_hh_star(
    RingElement<mpq_class>);
template PositivityCertificate<double> certificate_hh_star(
    RingElement<double>);
template PositivityCertificate<mpz_class> certificate_contraction();
template PositivityCertificate<mpq_class> certificate_contraction();
template PositivityCertificate<double> certificate_contraction();
template PositivityCertificate<mpz_class> certificate_positive_symbol(
    std::size_t);
template PositivityCertificate<mpq_class> certificate_positive_symbol(
    std::size_t);
template PositivityCertificate<double> certificate_positive_symbol(
    std::size_t);
template void verify_positivity(const RingElement<mpz_class>&,
                                const PositivityCertificate<mpz_class>&);
template void verify_positivity(const RingElement<mpq_class>&,
                                const PositivityCertificate<mpq_class>&);
template void verify_positivity(const RingElement<double>&,
                                const PositivityCertificate<double>&);
template EstimateReport foelner_logdet(const RingElement<mpz_class>&,
                                       const std::vector<FoelnerSet>&,
                                       const PositivityCertificate<mpz_class>&,
                                       std::size_t);
template EstimateReport foelner_logdet(const RingElement<mpq_class>&,
                                       const std::vector<FoelnerSet>&,
                                       const PositivityCertificate<mpq_class>&,
                                       std::size_t);
template EstimateReport foelner_logdet(const RingElement<double>&,
                                       const std::vector<FoelnerSet>&,
                                       const PositivityCertificate<double>&,
                                       std::size_t);

}  // namespace fkdet
