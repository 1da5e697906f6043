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

#include <doctest.h>

#include <cmath>

#include "fkdet/chol.hpp"
#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/truncate.hpp"
#include "helpers.hpp"

using namespace fkdet;
using fkdet::testing::random_dominant_element;
using fkdet::testing::random_int_element;
using fkdet::testing::rng;
using fkdet::testing::uniform_int;

namespace {

IntElement tridiag_element() {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f(z);
  f.add_term({0}, 5);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);
  return f;
}

std::vector<FoelnerSet> boxes(int rank, std::initializer_list<int> ns) {
  std::vector<FoelnerSet> out;
  for (int n : ns) out.push_back(box(rank, n));
  return out;
}

// log((5+√21)/2): the Mahler-measure closed form for 5+z+z^{-1}, the
// oracle every estimator must approach.
const double kTridiagLogDet = 1.5667992369724109;

}  // namespace

TEST_CASE("foelner_logdet approaches the closed form on Z") {
  IntElement f = tridiag_element();
  EstimateReport rep = foelner_logdet(
      f, boxes(1, {100, 400, 1000}), certificate_contraction<mpz_class>());
  CHECK(rep.method == "foelner_logdet");
  REQUIRE(rep.steps.size() == 3);
  // Dirichlet truncation under-counts boundary mass: values decrease toward
  // the limit from above with O(1/n) bias.
  CHECK(rep.steps[0].value > rep.steps[1].value);
  CHECK(rep.steps[1].value > rep.steps[2].value);
  CHECK(rep.final == rep.steps.back().value);
  CHECK(std::fabs(rep.final - kTridiagLogDet) < 2e-4);
  CHECK(std::fabs(rep.steps[0].value - kTridiagLogDet) < 5e-3);
}

TEST_CASE("foelner_logdet on the identity is identically zero") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement e = IntElement::scalar(z, 1);
  EstimateReport rep = foelner_logdet(
      e, boxes(1, {5, 50}), certificate_hh_star<mpz_class>(e));
  for (const auto& s : rep.steps) CHECK(s.value == 0.0);
}

TEST_CASE("foelner_logdet over a finite group hits the exact value") {
  GroupSpec c2 = GroupSpec::cyclic(2);
  IntElement f(c2);
  f.add_term({0}, 3);
  f.add_term({1}, 1);
  std::vector<FoelnerSet> whole = {FoelnerSet(c2, c2.all_elements(), 2)};
  EstimateReport rep =
      foelner_logdet(f, whole, certificate_contraction<mpz_class>());
  CHECK(rep.final == doctest::Approx(0.5 * std::log(8.0)).epsilon(1e-12));
}

TEST_CASE("positivity certificates are verified, not trusted") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f = tridiag_element();

  // Contraction holds for 5+z+z^{-1} (off-mass 2 < 5).
  CHECK_NOTHROW(verify_positivity(f, certificate_contraction<mpz_class>()));

  // Not a contraction: off-mass ties the identity coefficient.
  IntElement tied(z);
  tied.add_term({0}, 2);
  tied.add_term({1}, 1);
  tied.add_term({-1}, 1);
  CHECK_THROWS_AS(
      verify_positivity(tied, certificate_contraction<mpz_class>()),
      NotPositiveError);

  // Wrong h·h* certificate: f is not h·h* for h = 1+z.
  IntElement h(z);
  h.add_term({0}, 1);
  h.add_term({1}, 1);
  CHECK_THROWS_AS(verify_positivity(f, certificate_hh_star<mpz_class>(h)),
                  NotPositiveError);
  CHECK_NOTHROW(
      verify_positivity(make_positive(h), certificate_hh_star<mpz_class>(h)));

  // Non-self-adjoint input is rejected before any certificate logic.
  IntElement skew(z);
  skew.add_term({1}, 1);
  skew.add_term({0}, 3);
  CHECK_THROWS_AS(
      verify_positivity(skew, certificate_contraction<mpz_class>()),
      NotSelfAdjointError);

  // Positive-symbol certificates are free-abelian only.
  GroupSpec c3 = GroupSpec::cyclic(3);
  IntElement g(c3);
  g.add_term({0}, 5);
  g.add_term({1}, 1);
  g.add_term({2}, 1);
  CHECK_THROWS_AS(
      verify_positivity(g, certificate_positive_symbol<mpz_class>()),
      NotPositiveError);
  CHECK_NOTHROW(
      verify_positivity(f, certificate_positive_symbol<mpz_class>()));
}

TEST_CASE("symbol certificates cannot certify a vanishing symbol") {
  // 2+z+z^{-1} = (1+z)(1+z)* is semidefinite: its symbol 2+2cosθ touches
  // zero at π, so no grid/Lipschitz window can place the minimum above the
  // slack threshold.
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f(z);
  f.add_term({0}, 2);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);
  CHECK_THROWS_AS(
      verify_positivity(f, certificate_positive_symbol<mpz_class>()),
      NotPositiveError);
  CHECK_THROWS_AS(
      verify_positivity(f, certificate_contraction<mpz_class>()),
      NotPositiveError);
}

TEST_CASE("lattice_index reproduces the pinned examples") {
  IntElement f = tridiag_element();
  CHECK(lattice_index(f, box(1, 3)) == 115);

  GroupSpec z = GroupSpec::free_abelian(1);
  CHECK(lattice_index(IntElement::scalar(z, 1), box(1, 7)) == 1);

  GroupSpec c2 = GroupSpec::cyclic(2);
  IntElement g(c2);
  g.add_term({0}, 3);
  g.add_term({1}, 1);
  CHECK(lattice_index(g, FoelnerSet(c2, c2.all_elements(), 2)) == 8);
}

TEST_CASE("lattice_index throws on singular truncations") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f(z);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);  // z + z^{-1} over a single point: the entry is a_e = 0
  CHECK_THROWS_AS(lattice_index(f, box(1, 1)), InfiniteIndexError);

  // The sequence wrapper raises only when every window is singular.
  IntElement shift(z);
  shift.add_term({1}, 1);  // truncation of the shift is nilpotent: det 0
  CHECK_THROWS_AS(lattice_logdet(shift, boxes(1, {3, 5})), InfiniteIndexError);

  // A mixed sequence keeps the nonsingular windows and notes the skips
  // (the tridiagonal (0;1) determinant alternates 0, −1, 0, 1, …).
  EstimateReport mixed = lattice_logdet(f, boxes(1, {1, 2}));
  REQUIRE(mixed.steps.size() == 1);
  CHECK(mixed.steps[0].n == 2);
  bool noted = false;
  for (const auto& n : mixed.notes)
    if (n.find("singular") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("lattice and foelner values coincide on the same window") {
  auto gen = rng(41);
  GroupSpec z = GroupSpec::free_abelian(1);
  for (int trial = 0; trial < 8; ++trial) {
    IntElement h = random_dominant_element(gen, z, 3);
    IntElement f = make_positive(h);
    const int n = 40 + 20 * trial;
    EstimateReport fol =
        foelner_logdet(f, {box(1, n)}, certificate_hh_star<mpz_class>(h));
    mpz_class index = lattice_index(f, box(1, n));
    const double lat = log_mpz(index) / n;
    CHECK(std::fabs(fol.final - lat) < 1e-9);
  }
}

TEST_CASE("trace series on 2e is exactly log 2") {
  GroupSpec z = GroupSpec::free_abelian(1);
  EstimateReport rep = trace_series_logdet(IntElement::scalar(z, 2), 1e-12);
  CHECK(rep.final == std::log(2.0));
  CHECK(rep.error_bound.value() == 0.0);
}

TEST_CASE("trace series converges to the closed form with a honest tail") {
  IntElement f = tridiag_element();
  EstimateReport rep = trace_series_logdet(f, 1e-10);
  CHECK(std::fabs(rep.final - kTridiagLogDet) < 1e-10 + 1e-12);
  CHECK(rep.error_bound.value() < 1e-10);
  CHECK(rep.error_bound.value() > 0.0);
  // ‖g‖₁ = 2/5 ⇒ the tail crosses 1e−10 in the mid-20s of terms.
  CHECK(rep.steps.size() > 15);
  CHECK(rep.steps.size() < 60);
  // Partial sums carry decreasing tail bounds.
  for (std::size_t i = 1; i < rep.steps.size(); ++i)
    CHECK(rep.steps[i].error_bound.value() <
          rep.steps[i - 1].error_bound.value());
}

TEST_CASE("trace series refuses divergent or non-self-adjoint input") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement tied(z);
  tied.add_term({0}, 2);
  tied.add_term({1}, 1);
  tied.add_term({-1}, 1);
  CHECK_THROWS_AS(trace_series_logdet(tied, 1e-8), SeriesDivergentError);

  IntElement negative(z);
  negative.add_term({0}, -5);
  negative.add_term({1}, 1);
  negative.add_term({-1}, 1);
  CHECK_THROWS_AS(trace_series_logdet(negative, 1e-8), SeriesDivergentError);

  IntElement skew(z);
  skew.add_term({0}, 5);
  skew.add_term({1}, 2);
  CHECK_THROWS_AS(trace_series_logdet(skew, 1e-8), NotSelfAdjointError);
}

TEST_CASE("trace series respects max_terms with an honest budget note") {
  IntElement f = tridiag_element();
  EstimateReport rep = trace_series_logdet(f, 1e-10, 5);
  CHECK(rep.steps.size() == 5);
  CHECK(rep.error_bound.value() > 1e-10);
  bool noted = false;
  for (const auto& n : rep.notes)
    if (n.find("term budget") != std::string::npos) noted = true;
  CHECK(noted);
}

TEST_CASE("rational and integer series paths agree bitwise") {
  IntElement f = tridiag_element();
  EstimateReport a = trace_series_logdet(f, 1e-9);
  EstimateReport b = trace_series_logdet(to_rational(f), 1e-9);
  REQUIRE(a.steps.size() == b.steps.size());
  CHECK(a.final == b.final);
  for (std::size_t i = 0; i < a.steps.size(); ++i)
    CHECK(a.steps[i].value == b.steps[i].value);
}

TEST_CASE("lueck trace: shift element has zero diagonal everywhere") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement shift(z);
  shift.add_term({1}, 1);
  LueckReport rep = lueck_trace(shift, {0.0, 1.0}, boxes(1, {5, 20, 50}));
  CHECK(rep.exact_limit == 0.0);
  for (const auto& s : rep.report.steps) CHECK(s.value == 0.0);
}

TEST_CASE("lueck trace: Q=T^2 for z+z^{-1} gives the boundary-count formula") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f(z);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);
  LueckReport rep =
      lueck_trace(f, {0.0, 0.0, 1.0}, boxes(1, {10, 100, 1000}));
  CHECK(rep.exact_limit == 2.0);
  REQUIRE(rep.report.steps.size() == 3);
  for (const auto& s : rep.report.steps) {
    const double n = static_cast<double>(s.n);
    CHECK(s.value == 2.0 * (n - 1.0) / n);  // bit-exact: integer trace / n
  }
}

TEST_CASE("lueck trace deviations shrink monotonically in n") {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f(z);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);
  for (int s = 1; s <= 4; ++s) {
    std::vector<double> q(static_cast<std::size_t>(s) + 1, 0.0);
    q.back() = 1.0;
    LueckReport rep = lueck_trace(f, q, boxes(1, {10, 20, 40, 80, 160}));
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& step : rep.report.steps) {
      const double dev = std::fabs(rep.exact_limit - step.value);
      CHECK(dev <= prev + 1e-15);
      prev = dev;
    }
  }
}

TEST_CASE("lueck trace on a finite group matches the brute-force trace") {
  GroupSpec c2 = GroupSpec::cyclic(2);
  IntElement f(c2);
  f.add_term({0}, 3);
  f.add_term({1}, 1);
  std::vector<FoelnerSet> whole = {FoelnerSet(c2, c2.all_elements(), 2)};
  LueckReport rep = lueck_trace(f, {0.0, 0.0, 1.0}, whole);
  // (3+s)² = 10 + 6s: trace_e = 10 = (1/2)·tr[[10,6],[6,10]].
  CHECK(rep.exact_limit == 10.0);
  CHECK(rep.report.steps.front().value == 10.0);
}

TEST_CASE("determinant multiplicativity holds bit-exactly on finite groups") {
  auto gen = rng(42);
  GroupSpec c4 = GroupSpec::cyclic(4);
  FoelnerSet whole(c4, c4.all_elements(), 4);
  for (int trial = 0; trial < 40; ++trial) {
    IntElement f = random_int_element(gen, c4, 3, 5);
    IntElement g = random_int_element(gen, c4, 3, 5);
    const mpz_class det_f = bareiss_det(assemble_exact(f, whole).exact);
    const mpz_class det_g = bareiss_det(assemble_exact(g, whole).exact);
    const mpz_class det_fg =
        bareiss_det(assemble_exact(convolve(f, g), whole).exact);
    CHECK(det_fg == det_f * det_g);
  }
}

TEST_CASE("serial and parallel cholesky agree bitwise") {
  auto gen = rng(43);
  GroupSpec z = GroupSpec::free_abelian(1);
  for (int trial = 0; trial < 5; ++trial) {
    IntElement h = random_dominant_element(gen, z, 4);
    IntElement f = make_positive(h);
    TruncatedMatrix t = assemble_float(f, box(1, 300), 100000);
    std::vector<double> dense = t.to_dense();
    const double serial = cholesky_logdet_serial(dense, t.size());
    const double parallel = cholesky_logdet_parallel(dense, t.size());
    CHECK(serial == parallel);
    if (t.is_banded()) {
      const double banded =
          cholesky_logdet_banded(t.band, t.size(), t.bandwidth);
      CHECK(std::fabs(banded - serial) < 1e-9 * std::fabs(serial));
    }
  }
}

TEST_CASE("cholesky rejects indefinite matrices") {
  std::vector<double> indefinite = {1.0, 2.0, 2.0, 1.0};  // eigenvalues 3, −1
  CHECK_THROWS_AS(cholesky_logdet_serial(indefinite, 2), NotPositiveError);
  CHECK_THROWS_AS(cholesky_logdet_parallel(indefinite, 2), NotPositiveError);
}

TEST_CASE("pairwise_sum is permutation-stable for adversarial magnitudes") {
  // Not a math identity — a regression pin: the summation tree is fixed.
  std::vector<double> values;
  for (int i = 0; i < 1000; ++i)
    values.push_back(std::pow(-1.0, i) * std::exp(0.01 * (i % 97)));
  const double once = pairwise_sum(values);
  const double again = pairwise_sum(values);
  CHECK(once == again);
  CHECK(pairwise_sum({}) == 0.0);
  CHECK(pairwise_sum({3.25}) == 3.25);
}
