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

#include "fkdet/expansive.hpp"

#include <cmath>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "fkdet/errors.hpp"
#include "fkdet/estimate.hpp"
#include "fkdet/intmat.hpp"
#include "fkdet/mahler.hpp"
#include "fkdet/truncate.hpp"

namespace fkdet {

namespace {

const char* route_name(ExpansiveRoute r) {
  switch (r) {
    case ExpansiveRoute::None:
      return "none";
    case ExpansiveRoute::ContractionSeries:
      return "contraction_series";
    case ExpansiveRoute::TorusNonvanishing:
      return "torus_nonvanishing";
    case ExpansiveRoute::FiniteUnit:
      return "finite_unit";
  }
  return "none";
}

// ‖f/a_e − 1‖₁ < 1 ⇔ Σ_{γ≠e}|a_γ| < |a_e| (exact integer comparison);
// the sign of a_e is irrelevant for invertibility of c(1+g).
bool contraction_holds(const IntElement& f, mpz_class* c_out,
                       mpz_class* off_out) {
  mpz_class c = trace_e(f);
  mpz_class off(0);
  for (const auto& [gamma, a] : f.support()) {
    if (f.spec().is_identity(gamma)) continue;
    off += abs(a);
  }
  if (c_out) *c_out = c;
  if (off_out) *off_out = off;
  return c != 0 && off < abs(c);
}

}  // namespace

std::string ExpansivenessCertificate::to_json() const {
  nlohmann::json j;
  j["is_certified"] = is_certified;
  j["route"] = route_name(route);
  if (epsilon) {
    j["epsilon"] = nlohmann::json::parse(format_double(*epsilon));
  } else {
    j["epsilon"] = nullptr;
  }
  j["details"] = details;
  return j.dump(2);
}

ExpansivenessCertificate certify_expansive(const IntElement& f,
                                           std::size_t torus_grid) {
  if (f.is_zero()) throw Error("certify_expansive: f must be nonzero");

  ExpansivenessCertificate cert;
  const auto certify = [&](ExpansiveRoute route, std::string details) {
    cert.is_certified = true;
    cert.route = route;
    cert.epsilon = 1.0 / (3.0 * l1_norm(f));  // Prop.-9 constant, verbatim
    cert.details = std::move(details);
  };

  mpz_class c, off;
  if (contraction_holds(f, &c, &off)) {
    certify(ExpansiveRoute::ContractionSeries,
            "||f/a_e - 1||_1 = " + off.get_str() + "/" +
                mpz_class(abs(c)).get_str() + " < 1");
    return cert;
  }

  if (f.spec().kind() == GroupKind::FreeAbelian) {
    const NonvanishingCertificate nv =
        nonvanishing_certificate(to_float(f), torus_grid);
    if (nv.certified) {
      certify(ExpansiveRoute::TorusNonvanishing,
              "grid min " + format_double(nv.grid_min) + " > threshold " +
                  format_double(nv.threshold) + " at m = " +
                  std::to_string(nv.m));
      return cert;
    }
  }

  if (f.spec().kind() == GroupKind::Finite) {
    std::vector<GroupElement> all = f.spec().all_elements();
    FoelnerSet gamma(f.spec(), std::move(all),
                     static_cast<std::int64_t>(f.spec().order()));
    const mpz_class det = bareiss_det(assemble_exact(f, gamma).exact);
    if (det != 0) {
      certify(ExpansiveRoute::FiniteUnit, "det R_f = " + det.get_str());
      return cert;
    }
  }

  cert.details = "no route certified f (not a disproof)";
  return cert;
}

NeumannInverse neumann_inverse(const IntElement& f, double tol,
                               std::size_t support_cap) {
  if (!(tol > 0.0)) throw Error("neumann_inverse: tol must be positive");
  mpz_class c;
  if (!contraction_holds(f, &c, nullptr))
    throw NotContractionError(
        "neumann_inverse: contraction route unavailable, ||f/a_e - 1||_1 >= 1");

  // g = f/c − 1 over the rationals; accumulate S = Σ_{ν≤M} (−g)^ν until
  // the L¹ tail of (1/c)·S drops below tol.
  const RatElement fr = to_rational(f);
  const mpq_class cq(c);
  RatElement g(f.spec());
  for (const auto& [gamma, a] : fr.support()) {
    if (f.spec().is_identity(gamma)) continue;
    g.add_term(gamma, mpq_class(a / cq));
  }
  const mpq_class r_exact = l1_norm_exact(g);
  const double r = std::nextafter(r_exact.get_d(), 1.0);
  const double inv_c = 1.0 / std::fabs(c.get_d());

  RatElement sum = RatElement::scalar(f.spec(), 1);  // ν = 0 term
  RatElement power = RatElement::scalar(f.spec(), 1);
  const RatElement neg_g = negate(g);
  std::int64_t terms = 1;
  double tail = inv_c * r / (1.0 - r);  // bound after M = 0
  while (tail > tol) {
    power = convolve(power, neg_g);
    if (power.support_size() > support_cap)
      throw SizeCapError("neumann_inverse: series support exceeds the cap");
    sum = add(sum, power);
    ++terms;
    tail = inv_c * std::pow(r, static_cast<double>(terms)) / (1.0 - r);
  }

  NeumannInverse out{to_float(scale(sum, mpq_class(mpq_class(1) / cq))), tail,
                     0.0, terms};

  // Verify the certified residual on the rounded (Float) coefficients.
  const FloatElement producted = convolve(to_float(f), out.approx);
  const FloatElement residual =
      subtract(producted, FloatElement::scalar(f.spec(), 1.0));
  out.residual_l1 = l1_norm(residual);
  if (!(out.residual_l1 <= tol * l1_norm(f)))
    throw Error(
        "neumann_inverse: residual verification failed (tol too tight for "
        "float coefficients?)");
  return out;
}

}  // namespace fkdet
