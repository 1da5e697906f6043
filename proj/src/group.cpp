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

#include "fkdet/group.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

namespace fkdet {

namespace {

// Associativity of a Cayley table is checked exhaustively up to this order,
// and on random triples above it (construction cost guard).
constexpr std::size_t kFullAssociativityOrder = 64;
constexpr int kSampledTriples = 10000;

}  // namespace

GroupSpec GroupSpec::free_abelian(int rank) {
  if (rank < 1) throw Error("free_abelian: rank must be >= 1");
  GroupSpec spec;
  spec.kind_ = GroupKind::FreeAbelian;
  spec.rank_ = rank;
  return spec;
}

GroupSpec GroupSpec::heisenberg() {
  GroupSpec spec;
  spec.kind_ = GroupKind::Heisenberg;
  spec.rank_ = 3;
  return spec;
}

GroupSpec GroupSpec::finite(std::vector<std::vector<int>> table,
                            int identity_index, std::uint64_t assoc_seed) {
  const std::size_t n = table.size();
  if (n == 0) throw Error("finite: empty Cayley table");
  if (identity_index < 0 || static_cast<std::size_t>(identity_index) >= n)
    throw Error("finite: identity index out of range");

  // Every row and every column must be a permutation of {0,…,n−1}.
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n)
      throw Error("finite: Cayley table is not square");
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      const int r = table[i][j];
      const int c = table[j][i];
      if (r < 0 || static_cast<std::size_t>(r) >= n || row_seen[r])
        throw Error("finite: row " + std::to_string(i) +
                    " is not a permutation");
      if (c < 0 || static_cast<std::size_t>(c) >= n || col_seen[c])
        throw Error("finite: column " + std::to_string(i) +
                    " is not a permutation");
      row_seen[r] = true;
      col_seen[c] = true;
    }
  }

  // Identity row and column act as the identity.
  const std::size_t e = static_cast<std::size_t>(identity_index);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[e][i] != static_cast<int>(i) || table[i][e] != static_cast<int>(i))
      throw Error("finite: index " + std::to_string(e) +
                  " does not act as identity");
  }

  // Associativity: full check for small groups, sampled triples above.
  auto check_triple = [&](std::size_t a, std::size_t b, std::size_t c) {
    const int ab_c = table[table[a][b]][c];
    const int a_bc = table[a][table[b][c]];
    if (ab_c != a_bc)
      throw Error("finite: associativity fails on triple (" +
                  std::to_string(a) + "," + std::to_string(b) + "," +
                  std::to_string(c) + ")");
  };
  if (n <= kFullAssociativityOrder) {
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) check_triple(a, b, c);
  } else {
    std::mt19937_64 rng(assoc_seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (int t = 0; t < kSampledTriples; ++t)
      check_triple(pick(rng), pick(rng), pick(rng));
  }

  GroupSpec spec;
  spec.kind_ = GroupKind::Finite;
  spec.rank_ = 1;
  spec.identity_index_ = identity_index;
  spec.table_ = std::move(table);

  // Right inverses exist because rows are permutations; identity checks
  // above make them two-sided.
  spec.inverse_table_.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (spec.table_[i][j] == identity_index) {
        spec.inverse_table_[i] = static_cast<int>(j);
        break;
      }
    }
    if (spec.inverse_table_[i] < 0)
      throw Error("finite: element " + std::to_string(i) + " has no inverse");
  }
  return spec;
}

GroupSpec GroupSpec::finite_from_file(const std::string& path,
                                      std::uint64_t assoc_seed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open Cayley table file: " + path);
  std::size_t n = 0;
  int identity = -1;
  if (!(in >> n >> identity))
    throw Error("Cayley table file " + path + ": bad header line");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!(in >> table[i][j]))
        throw Error("Cayley table file " + path + ": truncated at row " +
                    std::to_string(i));
  return finite(std::move(table), identity, assoc_seed);
}

GroupSpec GroupSpec::cyclic(int m) {
  if (m < 1) throw Error("cyclic: order must be >= 1");
  std::vector<std::vector<int>> table(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) table[i][j] = (i + j) % m;
  return finite(std::move(table), 0);
}

GroupElement GroupSpec::identity() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return GroupElement(static_cast<std::size_t>(rank_), 0);
    case GroupKind::Finite:
      return {static_cast<std::int64_t>(identity_index_)};
    case GroupKind::Heisenberg:
      return {0, 0, 0};
  }
  throw Error("unreachable group kind");
}

std::size_t GroupSpec::encoding_size() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return static_cast<std::size_t>(rank_);
    case GroupKind::Finite:
      return 1;
    case GroupKind::Heisenberg:
      return 3;
  }
  throw Error("unreachable group kind");
}

void GroupSpec::check_element(const GroupElement& g) const {
  if (g.size() != encoding_size())
    throw MalformedElementError("element encoding has " +
                                std::to_string(g.size()) +
                                " coordinates, expected " +
                                std::to_string(encoding_size()));
  if (kind_ == GroupKind::Finite) {
    if (g[0] < 0 || static_cast<std::size_t>(g[0]) >= order())
      throw MalformedElementError("finite-group index " +
                                  std::to_string(g[0]) + " out of range");
  }
}

GroupElement GroupSpec::multiply(const GroupElement& g,
                                 const GroupElement& h) const {
  check_element(g);
  check_element(h);
  switch (kind_) {
    case GroupKind::FreeAbelian: {
      GroupElement out(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = g[i] + h[i];
      return out;
    }
    case GroupKind::Finite:
      return {static_cast<std::int64_t>(
          table_[static_cast<std::size_t>(g[0])][static_cast<std::size_t>(
              h[0])])};
    case GroupKind::Heisenberg:
      // (a,b,c)·(a′,b′,c′) = (a+a′, b+b′, c+c′+a·b′)
      return {g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]};
  }
  throw Error("unreachable group kind");
}

GroupElement GroupSpec::inverse(const GroupElement& g) const {
  check_element(g);
  switch (kind_) {
    case GroupKind::FreeAbelian: {
      GroupElement out(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) out[i] = -g[i];
      return out;
    }
    case GroupKind::Finite:
      return {static_cast<std::int64_t>(
          inverse_table_[static_cast<std::size_t>(g[0])])};
    case GroupKind::Heisenberg:
      // (a,b,c)^{-1} = (−a, −b, ab−c)
      return {-g[0], -g[1], g[0] * g[1] - g[2]};
  }
  throw Error("unreachable group kind");
}

bool GroupSpec::is_identity(const GroupElement& g) const {
  return g == identity();
}

bool GroupSpec::same_group(const GroupSpec& other) const {
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return rank_ == other.rank_;
    case GroupKind::Finite:
      return table_ == other.table_ && identity_index_ == other.identity_index_;
    case GroupKind::Heisenberg:
      return true;
  }
  return false;
}

std::vector<GroupElement> GroupSpec::all_elements() const {
  if (kind_ != GroupKind::Finite)
    throw Error("all_elements: group is not finite");
  std::vector<GroupElement> out;
  out.reserve(order());
  for (std::size_t i = 0; i < order(); ++i)
    out.push_back({static_cast<std::int64_t>(i)});
  return out;
}

std::string GroupSpec::describe() const {
  switch (kind_) {
    case GroupKind::FreeAbelian:
      return "Z^" + std::to_string(rank_);
    case GroupKind::Finite:
      return "finite group of order " + std::to_string(order());
    case GroupKind::Heisenberg:
      return "integral Heisenberg group";
  }
  return "?";
}

GeneratingSet::GeneratingSet(const GroupSpec& spec,
                             std::vector<GroupElement> elements)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error("generating set is empty");
  std::set<GroupElement> members(elements_.begin(), elements_.end());
  if (members.size() != elements_.size())
    throw Error("generating set has duplicate elements");
  if (!members.count(spec.identity()))
    throw Error("generating set must contain the identity");
  for (const auto& s : elements_) {
    spec.check_element(s);
    if (!members.count(spec.inverse(s)))
      throw Error("generating set not closed under inverse: " +
                  encode_element(s));
  }
}

GeneratingSet GeneratingSet::standard(const GroupSpec& spec) {
  std::vector<GroupElement> gens;
  switch (spec.kind()) {
    case GroupKind::FreeAbelian: {
      gens.push_back(spec.identity());
      for (int i = 0; i < spec.rank(); ++i) {
        GroupElement plus(static_cast<std::size_t>(spec.rank()), 0);
        plus[static_cast<std::size_t>(i)] = 1;
        gens.push_back(plus);
        gens.push_back(spec.inverse(plus));
      }
      break;
    }
    case GroupKind::Heisenberg:
      gens = {{0, 0, 0}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
      break;
    case GroupKind::Finite:
      gens = spec.all_elements();
      break;
  }
  return GeneratingSet(spec, std::move(gens));
}

FoelnerSet::FoelnerSet(const GroupSpec& spec,
                       std::vector<GroupElement> elements, std::int64_t label)
    : spec_(std::make_shared<const GroupSpec>(spec)),
      elements_(std::move(elements)),
      label_(label) {
  if (elements_.empty()) throw Error("Foelner set is empty");
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    spec_->check_element(elements_[i]);
    if (!index_.emplace(elements_[i], i).second)
      throw Error("Foelner set has duplicate element " +
                  encode_element(elements_[i]));
  }
}

std::optional<std::size_t> FoelnerSet::index_of(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FoelnerSet ball(const GroupSpec& spec, const GeneratingSet& S, int n,
                std::size_t size_cap) {
  if (n < 0) throw Error("ball: n must be >= 0");
  // Since e ∈ S, the word ball S^n is the union of BFS layers 0..n. Layers
  // are appended in order; each layer is sorted lexicographically.
  std::vector<GroupElement> ordered{spec.identity()};
  std::set<GroupElement> seen(ordered.begin(), ordered.end());
  std::vector<GroupElement> frontier = ordered;
  for (int layer = 1; layer <= n; ++layer) {
    std::set<GroupElement> next;
    for (const auto& g : frontier) {
      for (const auto& s : S.elements()) {
        GroupElement gs = spec.multiply(g, s);
        if (!seen.count(gs)) next.insert(gs);
      }
    }
    frontier.assign(next.begin(), next.end());  // already lex-sorted
    for (const auto& g : frontier) {
      seen.insert(g);
      ordered.push_back(g);
      if (ordered.size() > size_cap)
        throw SizeCapError("ball exceeds size cap of " +
                           std::to_string(size_cap) + " elements");
    }
    if (frontier.empty()) break;  // saturated (finite group)
  }
  return FoelnerSet(spec, std::move(ordered), n);
}

FoelnerSet box(int rank, int n, std::size_t size_cap) {
  if (rank < 1 || n < 1) throw Error("box: rank and n must be >= 1");
  double approx = std::pow(static_cast<double>(n), rank);
  if (approx > static_cast<double>(size_cap)) {
    std::ostringstream msg;
    msg << "box of " << std::fixed << std::setprecision(0) << approx
        << " points exceeds size cap of " << size_cap;
    throw SizeCapError(msg.str());
  }
  std::vector<GroupElement> pts;
  pts.reserve(static_cast<std::size_t>(approx));
  GroupElement cur(static_cast<std::size_t>(rank), 0);
  // Odometer enumeration = lexicographic order.
  while (true) {
    pts.push_back(cur);
    int i = rank - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - 1) {
      cur[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
  }
  return FoelnerSet(GroupSpec::free_abelian(rank), std::move(pts), n);
}

FoelnerDefect foelner_defect(const FoelnerSet& F,
                             const std::vector<GroupElement>& K,
                             const GroupSpec& spec) {
  if (!spec.same_group(F.spec()))
    throw SpecMismatchError("foelner_defect: F lives over a different group");
  std::set<GroupElement> outside;
  for (const auto& f : F.elements()) {
    for (const auto& k : K) {
      GroupElement fk = spec.multiply(f, k);
      if (!F.index_of(fk)) outside.insert(fk);
    }
  }
  FoelnerDefect d;
  d.boundary_size = outside.size();
  d.ratio = mpq_class(static_cast<unsigned long>(outside.size()),
                      static_cast<unsigned long>(F.size()));
  d.ratio.canonicalize();
  d.strong_value = d.ratio.get_d() *
                   std::log1p(static_cast<double>(outside.size()));
  return d;
}

std::vector<GrowthRow> growth_series(const GroupSpec& spec,
                                     const GeneratingSet& S, int n_max,
                                     std::size_t size_cap) {
  if (n_max < 1) throw Error("growth_series: n_max must be >= 1");
  std::vector<std::size_t> sizes;  // sizes[n] = |S^n|, n = 0..n_max+1
  std::vector<FoelnerSet> balls;
  for (int n = 0; n <= n_max + 1; ++n) {
    balls.push_back(ball(spec, S, n, size_cap));
    sizes.push_back(balls.back().size());
  }
  std::vector<GrowthRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    GrowthRow row;
    row.n = n;
    row.ball_size = sizes[static_cast<std::size_t>(n)];
    const double sn = static_cast<double>(row.ball_size);
    const double sn1 = static_cast<double>(sizes[static_cast<std::size_t>(n) + 1]);
    row.eq29_value = (sn1 / sn - 1.0) * std::log(sn);
    double worst = 0.0;
    for (const auto& gamma : S.elements()) {
      std::size_t outside = 0;
      for (const auto& g : balls[static_cast<std::size_t>(n)].elements()) {
        if (!balls[static_cast<std::size_t>(n)].index_of(
                spec.multiply(g, gamma)))
          ++outside;
      }
      worst = std::max(worst,
                       static_cast<double>(outside) / sn * std::log(sn));
    }
    row.eq28_value = worst;
    rows.push_back(row);
  }
  return rows;
}

std::string encode_element(const GroupElement& g) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) out << ',';
    out << g[i];
  }
  out << ')';
  return out.str();
}

GroupElement parse_element(const std::string& text, const GroupSpec& spec) {
  std::string s = text;
  // Trim whitespace.
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.erase(s.begin());
  while (!s.empty() && is_space(s.back())) s.pop_back();
  if (s.size() < 2 || s.front() != '(' || s.back() != ')')
    throw MalformedElementError("element encoding must be (c1,...,ck): " +
                                text);
  GroupElement g;
  std::string body = s.substr(1, s.size() - 2);
  std::istringstream in(body);
  std::string piece;
  while (std::getline(in, piece, ',')) {
    try {
      std::size_t pos = 0;
      g.push_back(std::stoll(piece, &pos));
      while (pos < piece.size() && is_space(piece[pos])) ++pos;
      if (pos != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw MalformedElementError("bad integer '" + piece +
                                  "' in element encoding " + text);
    }
  }
  spec.check_element(g);
  return g;
}

}  // namespace fkdet
