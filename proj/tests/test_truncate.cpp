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
#include <sstream>

#include "fkdet/errors.hpp"
#include "fkdet/mahler.hpp"
#include "fkdet/ring.hpp"
#include "fkdet/truncate.hpp"
#include "helpers.hpp"

using namespace fkdet;
using fkdet::testing::random_dominant_element;
using fkdet::testing::random_int_element;
using fkdet::testing::rng;

namespace {

IntElement tridiag_element() {
  GroupSpec z = GroupSpec::free_abelian(1);
  IntElement f(z);
  f.add_term({0}, 5);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);
  return f;
}

}  // namespace

TEST_CASE("truncation entries follow the a_{gamma'^{-1} gamma} formula") {
  IntElement f = tridiag_element();
  TruncatedMatrix t = assemble_exact(f, box(1, 3));
  CHECK(t.exact.at(0, 0) == 5);
  CHECK(t.exact.at(0, 1) == 1);
  CHECK(t.exact.at(0, 2) == 0);
  CHECK(t.exact.at(1, 0) == 1);
  CHECK(t.exact.at(1, 1) == 5);
  CHECK(t.exact.at(2, 1) == 1);
  CHECK(t.symmetric);
  CHECK(t.bandwidth == 1);

  // Independent brute-force recomputation on wider groups.
  auto gen = rng(31);
  GroupSpec h = GroupSpec::heisenberg();
  for (int trial = 0; trial < 10; ++trial) {
    IntElement g = random_int_element(gen, h, 5, 4);
    FoelnerSet F = ball(h, GeneratingSet::standard(h), 2);
    TruncatedMatrix th = assemble_exact(g, F);
    for (std::size_t r = 0; r < F.size(); ++r)
      for (std::size_t c = 0; c < F.size(); ++c) {
        GroupElement key =
            h.multiply(h.inverse(F.elements()[r]), F.elements()[c]);
        CHECK(th.exact.at(r, c) == g.coeff_at(key));
      }
  }
}

TEST_CASE("truncation of the adjoint is the transpose") {
  auto gen = rng(32);
  GroupSpec z2 = GroupSpec::free_abelian(2);
  for (int trial = 0; trial < 20; ++trial) {
    IntElement f = random_int_element(gen, z2, 6, 5);
    FoelnerSet F = box(2, 4);
    TruncatedMatrix a = assemble_exact(f, F);
    TruncatedMatrix b = assemble_exact(star(f), F);
    for (std::size_t r = 0; r < F.size(); ++r)
      for (std::size_t c = 0; c < F.size(); ++c)
        CHECK(a.exact.at(r, c) == b.exact.at(c, r));
  }
}

TEST_CASE("float truncation matches the exact one entrywise") {
  auto gen = rng(33);
  GroupSpec z2 = GroupSpec::free_abelian(2);
  for (int trial = 0; trial < 10; ++trial) {
    IntElement f = random_int_element(gen, z2, 6, 5);
    FoelnerSet F = box(2, 5);
    TruncatedMatrix e = assemble_exact(f, F);
    TruncatedMatrix d = assemble_float(f, F);
    for (std::size_t r = 0; r < F.size(); ++r)
      for (std::size_t c = 0; c < F.size(); ++c)
        CHECK(d.float_entry(r, c) == e.exact.at(r, c).get_d());
  }
}

TEST_CASE("embedding a smaller window preserves entries") {
  IntElement f = tridiag_element();
  TruncatedMatrix small = assemble_exact(f, box(1, 4));
  TruncatedMatrix big = assemble_exact(f, box(1, 9));
  FoelnerSet fs = box(1, 4), fb = box(1, 9);
  for (std::size_t r = 0; r < fs.size(); ++r)
    for (std::size_t c = 0; c < fs.size(); ++c) {
      auto rb = fb.index_of(fs.elements()[r]);
      auto cb = fb.index_of(fs.elements()[c]);
      REQUIRE(rb.has_value());
      REQUIRE(cb.has_value());
      CHECK(small.exact.at(r, c) == big.exact.at(*rb, *cb));
    }
}

TEST_CASE("every row's absolute sum is bounded by the l1 norm") {
  auto gen = rng(34);
  GroupSpec h = GroupSpec::heisenberg();
  for (int trial = 0; trial < 20; ++trial) {
    IntElement f = random_int_element(gen, h, 6, 5);
    FoelnerSet F = ball(h, GeneratingSet::standard(h), 2);
    TruncatedMatrix t = assemble_float(f, F);
    const double norm = l1_norm(f);
    for (std::size_t r = 0; r < F.size(); ++r) {
      double row = 0.0;
      for (std::size_t c = 0; c < F.size(); ++c)
        row += std::fabs(t.float_entry(r, c));
      CHECK(row <= norm + 1e-9);
    }
  }
}

TEST_CASE("banded storage kicks in for narrow-band truncations") {
  IntElement f = tridiag_element();
  TruncatedMatrix t = assemble_float(f, box(1, 200));
  CHECK(t.is_banded());
  CHECK(t.bandwidth == 1);
  CHECK(t.band.size() == 200 * 2);
  std::vector<double> dense = t.to_dense();
  CHECK(dense[0] == 5.0);
  CHECK(dense[1] == 1.0);
  CHECK(dense[2] == 0.0);
  CHECK(dense[200] == 1.0);

  // A dense (whole-group-coupled) truncation stays dense.
  GroupSpec c4 = GroupSpec::cyclic(4);
  IntElement g(c4);
  for (int i = 0; i < 4; ++i) g.add_term({i}, i + 1);
  TruncatedMatrix td = assemble_float(g, FoelnerSet(c4, c4.all_elements(), 4));
  CHECK_FALSE(td.is_banded());
}

TEST_CASE("dense cap rejects oversized non-banded truncations") {
  GroupSpec z2 = GroupSpec::free_abelian(2);
  auto gen = rng(35);
  IntElement f = random_int_element(gen, z2, 8, 3);
  f.add_term({3, -3}, 1);  // spread the band
  CHECK_THROWS_AS(assemble_float(f, box(2, 90, 20000), 100), SizeCapError);
}

TEST_CASE("eq13 interlacing: truncation spectra sit inside the symbol range") {
  auto gen = rng(36);
  GroupSpec z = GroupSpec::free_abelian(1);
  int done = 0;
  while (done < 20) {
    IntElement h = random_dominant_element(gen, z, 3);
    IntElement f = make_positive(h);
    ++done;
    SymbolWindow w = symbol_range(to_float(f), 2048);
    TruncatedMatrix t = assemble_float(f, box(1, 60));
    SpectralBoundsReport rep = spectral_bounds_check(t, w.lo, w.hi);
    CHECK(rep.pass);
    CHECK(rep.min_eigenvalue >= w.lo - 1e-9);
    CHECK(rep.max_eigenvalue <= w.hi + 1e-9);
  }

  // A window strictly inside the spectrum fails the check.
  IntElement f = tridiag_element();
  TruncatedMatrix t = assemble_float(f, box(1, 40));
  SpectralBoundsReport bad = spectral_bounds_check(t, 4.5, 5.5);
  CHECK_FALSE(bad.pass);
}

TEST_CASE("identity element truncates to the identity matrix") {
  GroupSpec h = GroupSpec::heisenberg();
  IntElement e = IntElement::scalar(h, 1);
  FoelnerSet F = ball(h, GeneratingSet::standard(h), 2);
  TruncatedMatrix t = assemble_exact(e, F);
  CHECK(t.exact == IntMatrix::identity(F.size()));
  CHECK(t.bandwidth == 0);
}

TEST_CASE("truncation dump is deterministic") {
  IntElement f = tridiag_element();
  TruncatedMatrix t = assemble_exact(f, box(1, 3));
  std::ostringstream a, b;
  t.dump(a);
  t.dump(b);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("3 ExactInt") == 0);
}
