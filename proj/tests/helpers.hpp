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

#ifndef FKDET_TESTS_HELPERS_HPP
#define FKDET_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "fkdet/group.hpp"
#include "fkdet/ring.hpp"

namespace fkdet::testing {

// Every suite draws from a fixed-seed engine so failures replay exactly.
inline std::mt19937_64 rng(std::uint64_t seed = 0x00c0ffee) {
  return std::mt19937_64(seed);
}

inline int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(gen);
}

// Random group element with coordinates (or finite index) in a small window.
inline GroupElement random_element(std::mt19937_64& gen,
                                   const GroupSpec& spec) {
  if (spec.kind() == GroupKind::Finite)
    return {uniform_int(gen, 0, static_cast<int>(spec.order()) - 1)};
  GroupElement g(spec.encoding_size());
  for (auto& c : g) c = uniform_int(gen, -3, 3);
  return g;
}

// Random integer element: `terms` draws with coefficients in [-coeff_bound,
// coeff_bound] (zero draws prune themselves).
inline IntElement random_int_element(std::mt19937_64& gen,
                                     const GroupSpec& spec, int terms,
                                     int coeff_bound) {
  IntElement f(spec);
  for (int t = 0; t < terms; ++t)
    f.add_term(random_element(gen, spec),
               mpz_class(uniform_int(gen, -coeff_bound, coeff_bound)));
  return f;
}

// Random `h` whose identity coefficient strictly dominates the rest, so
// h/a_e − 1 is an L¹ contraction and every truncation of h·h* is positive
// definite (the generator used wherever a positivity certificate is needed).
inline IntElement random_dominant_element(std::mt19937_64& gen,
                                          const GroupSpec& spec,
                                          int off_terms) {
  IntElement h(spec);
  std::vector<GroupElement> picked;
  for (int t = 0; t < off_terms; ++t) {
    GroupElement g = random_element(gen, spec);
    if (spec.is_identity(g)) continue;
    h.add_term(g, mpz_class(uniform_int(gen, 1, 3) *
                            (uniform_int(gen, 0, 1) ? 1 : -1)));
  }
  mpz_class off = 0;
  for (const auto& [g, a] : h.support()) off += abs(a);
  h.add_term(spec.identity(), mpz_class(off + 1 + uniform_int(gen, 0, 5)));
  return h;
}

}  // namespace fkdet::testing

#endif  // FKDET_TESTS_HELPERS_HPP
