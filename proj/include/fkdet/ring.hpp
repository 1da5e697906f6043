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

#ifndef FKDET_RING_HPP
#define FKDET_RING_HPP

#include <gmpxx.h>

#include <cmath>
#include <map>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>

#include "fkdet/errors.hpp"
#include "fkdet/group.hpp"

namespace fkdet {

enum class CoeffKind { ExactInt, ExactRational, Float };

template <typename C>
struct CoeffTraits;

template <>
struct CoeffTraits<mpz_class> {
  static constexpr CoeffKind kind = CoeffKind::ExactInt;
  static constexpr bool exact = true;
};
template <>
struct CoeffTraits<mpq_class> {
  static constexpr CoeffKind kind = CoeffKind::ExactRational;
  static constexpr bool exact = true;
};
template <>
struct CoeffTraits<double> {
  static constexpr CoeffKind kind = CoeffKind::Float;
  static constexpr bool exact = false;
};

inline double coeff_to_double(const mpz_class& c) { return c.get_d(); }
inline double coeff_to_double(const mpq_class& c) { return c.get_d(); }
inline double coeff_to_double(double c) { return c; }

// Finitely supported f = Σ a_γ·γ over the given group. Zero coefficients are
// pruned eagerly, so the stored map is exactly the support K of f. Values are
// immutable in spirit: mutating ops return new elements.
template <typename C>
class RingElement {
 public:
  using Coeff = C;

  explicit RingElement(const GroupSpec& spec)
      : spec_(std::make_shared<const GroupSpec>(spec)) {}

  static RingElement zero(const GroupSpec& spec) { return RingElement(spec); }

  // c·e
  static RingElement scalar(const GroupSpec& spec, const C& value) {
    RingElement f(spec);
    f.add_term(spec.identity(), value);
    return f;
  }

  // c·γ
  static RingElement monomial(const GroupSpec& spec, const GroupElement& g,
                              const C& value) {
    RingElement f(spec);
    spec.check_element(g);
    f.add_term(g, value);
    return f;
  }

  const GroupSpec& spec() const { return *spec_; }
  const std::map<GroupElement, C>& support() const { return support_; }
  std::size_t support_size() const { return support_.size(); }
  bool is_zero() const { return support_.empty(); }

  C coeff_at(const GroupElement& g) const {
    auto it = support_.find(g);
    return it == support_.end() ? C(0) : it->second;
  }

  // Accumulate value onto the γ-coefficient, pruning exact zeros. Validates
  // the encoding: a wrong-arity key would corrupt later multiplications.
  void add_term(const GroupElement& g, const C& value) {
    spec_->check_element(g);
    if (value == C(0)) return;
    auto [it, inserted] = support_.emplace(g, value);
    if (!inserted) {
      it->second += value;
      if (it->second == C(0)) support_.erase(it);
    }
  }

  bool operator==(const RingElement& other) const {
    return spec_->same_group(*other.spec_) && support_ == other.support_;
  }
  bool operator!=(const RingElement& other) const { return !(*this == other); }

 private:
  std::shared_ptr<const GroupSpec> spec_;
  std::map<GroupElement, C> support_;
};

using IntElement = RingElement<mpz_class>;
using RatElement = RingElement<mpq_class>;
using FloatElement = RingElement<double>;

namespace detail {
template <typename C>
void require_same_group(const RingElement<C>& f, const RingElement<C>& g,
                        const char* op) {
  if (!f.spec().same_group(g.spec()))
    throw SpecMismatchError(std::string(op) +
                            ": operands live over different groups");
}
}  // namespace detail

// Group-ring product (Σ a_γ γ)(Σ b_δ δ) = Σ a_γ b_δ (γδ). Operands must share
// the group and the coefficient kind (exact×exact or float×float per spec;
// cross-kind callers convert explicitly first).
template <typename C>
RingElement<C> convolve(const RingElement<C>& f, const RingElement<C>& g) {
  detail::require_same_group(f, g, "convolve");
  RingElement<C> out(f.spec());
  for (const auto& [gamma, a] : f.support()) {
    for (const auto& [delta, b] : g.support()) {
      out.add_term(f.spec().multiply(gamma, delta), a * b);
    }
  }
  return out;
}

// f* = Σ ā_γ γ^{-1}. Coefficients here are real (complex kinds are excluded
// from v1), so conjugation is the identity; the support is inverted.
template <typename C>
RingElement<C> star(const RingElement<C>& f) {
  RingElement<C> out(f.spec());
  for (const auto& [gamma, a] : f.support())
    out.add_term(f.spec().inverse(gamma), a);
  return out;
}

template <typename C>
RingElement<C> add(const RingElement<C>& f, const RingElement<C>& g) {
  detail::require_same_group(f, g, "add");
  RingElement<C> out = f;
  for (const auto& [gamma, b] : g.support()) out.add_term(gamma, b);
  return out;
}

template <typename C>
RingElement<C> scale(const RingElement<C>& f, const C& c) {
  RingElement<C> out(f.spec());
  for (const auto& [gamma, a] : f.support()) out.add_term(gamma, a * c);
  return out;
}

template <typename C>
RingElement<C> negate(const RingElement<C>& f) {
  return scale(f, C(-1));
}

template <typename C>
RingElement<C> subtract(const RingElement<C>& f, const RingElement<C>& g) {
  return add(f, negate(g));
}

// Unqualified abs() below must resolve for double at template definition
// time (fundamental types get no ADL); GMP's expression templates provide
// abs for the exact kinds.
inline double abs(double x) { return std::fabs(x); }

// ‖f‖₁ = Σ |a_γ| in the coefficient type's own arithmetic (exact for the
// exact kinds).
template <typename C>
C l1_norm_exact(const RingElement<C>& f) {
  C sum(0);
  for (const auto& [gamma, a] : f.support()) sum += abs(a);
  return sum;
}

template <typename C>
double l1_norm(const RingElement<C>& f) {
  return coeff_to_double(l1_norm_exact(f));
}

// tr_NΓ restricted to the group ring: the e-coefficient.
template <typename C>
C trace_e(const RingElement<C>& f) {
  return f.coeff_at(f.spec().identity());
}

// §1 recipe h = N(1+g); requires the strict contraction ‖g‖₁ < 1, which makes
// h a unit in L¹(Γ) (Neumann series for (1+g)^{-1}).
template <typename C>
struct L1Unit {
  RingElement<C> h;
  bool is_l1_unit = true;  // always true on successful construction
};

template <typename C>
L1Unit<C> build_l1_unit(const RingElement<C>& g, long N) {
  if (N < 1) throw Error("build_l1_unit: N must be a positive integer");
  const C norm = l1_norm_exact(g);
  if (!(norm < C(1)))
    throw NotContractionError("build_l1_unit: ||g||_1 = " +
                              std::to_string(coeff_to_double(norm)) +
                              " is not < 1");
  RingElement<C> one_plus_g =
      add(RingElement<C>::scalar(g.spec(), C(1)), g);
  return L1Unit<C>{scale(one_plus_g, C(N)), true};
}

// f = h·h*, self-adjoint and positive in NΓ by construction — the standard
// way to manufacture an element with a checkable positivity certificate.
template <typename C>
RingElement<C> make_positive(const RingElement<C>& h) {
  return convolve(h, star(h));
}

template <typename C>
bool is_self_adjoint(const RingElement<C>& f) {
  return f == star(f);
}

// Exact-kind conversions.
RatElement to_rational(const IntElement& f);
FloatElement to_float(const IntElement& f);
FloatElement to_float(const RatElement& f);
// Exact when every denominator is 1; throws Error otherwise.
IntElement to_int(const RatElement& f);

// --- Text format -----------------------------------------------------------
//
// One term per line: `coeff<TAB>(encoding)`, e.g. for 5+z+z^{-1} on Z¹:
//     5\t(0)
//     1\t(1)
//     1\t(-1)
// Whitespace between coeff and encoding may be any run of spaces/tabs; blank
// lines and lines starting with '#' are ignored. Coefficient kind is inferred
// from the coefficient tokens: any '.', 'e' or 'E' ⇒ Float; else any '/' ⇒
// ExactRational; else ExactInt. Serialization round-trips bit-exactly for the
// exact kinds and uses 17 significant digits for Float.

using AnyElement = std::variant<IntElement, RatElement, FloatElement>;

CoeffKind kind_of(const AnyElement& f);
AnyElement parse_ring_element(const std::string& text, const GroupSpec& spec);
std::string serialize_ring_element(const AnyElement& f);
std::string serialize_ring_element(const IntElement& f);
std::string serialize_ring_element(const RatElement& f);
std::string serialize_ring_element(const FloatElement& f);

const GroupSpec& spec_of(const AnyElement& f);

}  // namespace fkdet

#endif  // FKDET_RING_HPP
