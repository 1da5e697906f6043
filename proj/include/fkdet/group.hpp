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

#ifndef FKDET_GROUP_HPP
#define FKDET_GROUP_HPP

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fkdet/errors.hpp"

namespace fkdet {

// A group element is a small integer tuple:
//   FreeAbelian(r):  r coordinates;
//   Finite:          a single index into the Cayley table;
//   Heisenberg:      the triple (a, b, c) of the upper-triangular matrix
//                    [[1,a,c],[0,1,b],[0,0,1]].
// Tuples compare lexicographically (std::vector's operator<), which is the
// canonical tie-break order everywhere in this library.
using GroupElement = std::vector<std::int64_t>;

enum class GroupKind { FreeAbelian, Finite, Heisenberg };

// Immutable description of the group Γ. All operations are pure.
class GroupSpec {
 public:
  // Z^rank, rank ≥ 1.
  static GroupSpec free_abelian(int rank);

  // Finite group given by a Cayley table: table[i][j] = index of g_i·g_j.
  // Validates that rows/columns are permutations, that identity_index acts
  // as identity, and associativity (exhaustively for |Γ| ≤ 64, on
  // sample_count random triples above that, drawn from assoc_seed).
  static GroupSpec finite(std::vector<std::vector<int>> table,
                          int identity_index,
                          std::uint64_t assoc_seed = 0x5eed5eedULL);

  // Plain-text Cayley table loader. Format: first line "|Γ| identity_index",
  // then |Γ| rows of |Γ| whitespace-separated indices.
  static GroupSpec finite_from_file(const std::string& path,
                                    std::uint64_t assoc_seed = 0x5eed5eedULL);

  // Convenience: the cyclic group Z/m as a Cayley table.
  static GroupSpec cyclic(int m);

  // The 3-dimensional integral Heisenberg group with the law
  // (a,b,c)·(a′,b′,c′) = (a+a′, b+b′, c+c′+a·b′).
  static GroupSpec heisenberg();

  GroupKind kind() const { return kind_; }
  int rank() const { return rank_; }                    // FreeAbelian only
  std::size_t order() const { return table_.size(); }   // Finite only
  int identity_index() const { return identity_index_; }

  GroupElement identity() const;
  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  bool is_identity(const GroupElement& g) const;

  // Throws MalformedElementError unless g belongs to this group.
  void check_element(const GroupElement& g) const;

  // Dimension of the encoding tuple (rank, 1 or 3).
  std::size_t encoding_size() const;

  bool same_group(const GroupSpec& other) const;

  // Every element of a finite group, in index order. Errors otherwise.
  std::vector<GroupElement> all_elements() const;

  std::string describe() const;

 private:
  GroupSpec() = default;

  GroupKind kind_ = GroupKind::FreeAbelian;
  int rank_ = 0;
  int identity_index_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_table_;
};

// Finite symmetric generating set S with e ∈ S = S^{-1} (Prop. 11's
// hypothesis). Verified on construction.
class GeneratingSet {
 public:
  GeneratingSet(const GroupSpec& spec, std::vector<GroupElement> elements);

  // The default generators used by the CLI and tests:
  //   Z^r:        {e, ±e_1, …, ±e_r}
  //   Heisenberg: {e, x^{±1}, y^{±1}} with x = (1,0,0), y = (0,1,0)
  //   Finite:     all of Γ
  static GeneratingSet standard(const GroupSpec& spec);

  const std::vector<GroupElement>& elements() const { return elements_; }

 private:
  std::vector<GroupElement> elements_;
};

// Ordered finite subset F ⊂ Γ, the truncation window. Order is the matrix
// basis order; index_of inverts the element list.
class FoelnerSet {
 public:
  FoelnerSet(const GroupSpec& spec, std::vector<GroupElement> elements,
             std::int64_t label);

  const GroupSpec& spec() const { return *spec_; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  // Position of g in the list, or nullopt when g ∉ F.
  std::optional<std::size_t> index_of(const GroupElement& g) const;

  // Report metadata: the n this set was built from (box(n)/ball(n)),
  // defaulting to |F|. Not used by any computation.
  std::int64_t label() const { return label_; }

 private:
  std::shared_ptr<const GroupSpec> spec_;
  std::vector<GroupElement> elements_;
  std::map<GroupElement, std::size_t> index_;
  std::int64_t label_ = 0;
};

// S^n = all n-fold products of S (S^0 = {e}), enumerated breadth-first;
// within a BFS layer elements are sorted lexicographically. Deterministic.
FoelnerSet ball(const GroupSpec& spec, const GeneratingSet& S, int n,
                std::size_t size_cap = 20000);

// The box [0,n)^rank ⊂ Z^rank in lexicographic order.
FoelnerSet box(int rank, int n, std::size_t size_cap = 20000);

// Eq. (27) diagnostics for one window: ratio = |FK\F|/|F| (exact rational)
// and strong_value = ratio·log(1+|FK\F|).
struct FoelnerDefect {
  mpq_class ratio;
  double strong_value = 0.0;
  std::size_t boundary_size = 0;  // |FK \ F|
};

FoelnerDefect foelner_defect(const FoelnerSet& F,
                             const std::vector<GroupElement>& K,
                             const GroupSpec& spec);

// One row of the growth diagnostics table (Eqs. (28)–(29)).
struct GrowthRow {
  int n = 0;
  std::size_t ball_size = 0;  // |S^n|
  double eq29_value = 0.0;    // (|S^{n+1}|/|S^n| − 1)·log|S^n|
  double eq28_value = 0.0;    // max_{γ∈S} (|S^nγ \ S^n|/|S^n|)·log|S^n|
};

// Rows for n = 1..n_max. Computes S^{n_max+1} so Eq. (29) is defined on the
// last row as well.
std::vector<GrowthRow> growth_series(const GroupSpec& spec,
                                     const GeneratingSet& S, int n_max,
                                     std::size_t size_cap = 20000);

std::string encode_element(const GroupElement& g);
GroupElement parse_element(const std::string& text, const GroupSpec& spec);

}  // namespace fkdet

#endif  // FKDET_GROUP_HPP
