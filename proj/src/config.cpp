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

#include "fkdet/config.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fkdet/errors.hpp"

namespace fkdet {

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods = {
      "foelner_logdet", "lattice_index",  "series",   "mahler",
      "lueck_trace",    "finite_entropy", "expansive"};
  return methods;
}

namespace {

std::string trim(const std::string& s) {
  const std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream stream(s);
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class ConfigReader {
 public:
  explicit ConfigReader(std::string path) : path_(std::move(path)) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(path_ + ":" + std::to_string(line) + ": " + msg);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError(path_ + ": " + msg);
  }

  long parse_long(const std::string& v, int line) const {
    try {
      std::size_t pos = 0;
      const long out = std::stol(v, &pos);
      if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
      return out;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail(line, "expected an integer, got '" + v + "'");
    }
  }

  double parse_real(const std::string& v, int line) const {
    try {
      std::size_t pos = 0;
      const double out = std::stod(v, &pos);
      if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
      return out;
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      fail(line, "expected a number, got '" + v + "'");
    }
  }

  std::size_t parse_size(const std::string& v, int line) const {
    const long out = parse_long(v, line);
    if (out < 1) fail(line, "expected a positive integer, got '" + v + "'");
    return static_cast<std::size_t>(out);
  }

  // "A..B:S", "A..B" (step 1) or "a,b,c".
  std::vector<int> parse_n_spec(const std::string& v, int line) const {
    std::vector<int> out;
    const std::size_t dots = v.find("..");
    if (dots != std::string::npos) {
      const long a = parse_long(trim(v.substr(0, dots)), line);
      std::string rest = trim(v.substr(dots + 2));
      long step = 1;
      const std::size_t colon = rest.find(':');
      if (colon != std::string::npos) {
        step = parse_long(trim(rest.substr(colon + 1)), line);
        rest = trim(rest.substr(0, colon));
      }
      const long b = parse_long(rest, line);
      if (a < 1 || b < a || step < 1)
        fail(line, "bad range '" + v + "' (want 1 <= A <= B, step >= 1)");
      for (long n = a; n <= b; n += step) out.push_back(static_cast<int>(n));
      return out;
    }
    for (const std::string& tok : split_list(v)) {
      const long n = parse_long(tok, line);
      if (n < 1) fail(line, "Foelner n must be >= 1, got '" + tok + "'");
      out.push_back(static_cast<int>(n));
    }
    if (out.empty()) fail(line, "empty n list");
    return out;
  }

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace

ExperimentConfig load_config(const std::string& path,
                             std::uint64_t assoc_seed) {
  const ConfigReader rd(path);
  std::ifstream in(path);
  if (!in) rd.fail("cannot open config file");

  ExperimentConfig cfg;
  // Raw fields, resolved after the scan (construction order independence).
  std::string group_kind, table_file;
  long rank = 0;
  int group_kind_line = 0, rank_line = 0, table_line = 0;
  bool have_rank = false, have_table = false;
  std::vector<std::pair<std::string, int>> terms;  // value, file line
  std::string foelner_kind = "box";
  int foelner_kind_line = 0, methods_line = 0;
  bool have_foelner_n = false;

  std::string section;
  int section_line = 0;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;

    if (text.front() == '[') {
      if (text.back() != ']') rd.fail(line_no, "unterminated section header");
      section = trim(text.substr(1, text.size() - 2));
      section_line = line_no;
      static const char* known[] = {"group",  "element", "foelner", "methods",
                                    "series", "mahler",  "lueck",   "limits",
                                    "compare", "output"};
      if (std::find(std::begin(known), std::end(known), section) ==
          std::end(known))
        rd.fail(line_no, "unknown section [" + section + "]");
      continue;
    }

    const std::size_t eq = text.find('=');
    if (eq == std::string::npos)
      rd.fail(line_no, "expected 'key = value', got '" + text + "'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (section.empty())
      rd.fail(line_no, "assignment before any [section]");
    if (key.empty()) rd.fail(line_no, "empty key");

    if (section == "group") {
      if (key == "kind") {
        group_kind = value;
        group_kind_line = line_no;
      } else if (key == "rank") {
        rank = rd.parse_long(value, line_no);
        rank_line = line_no;
        have_rank = true;
      } else if (key == "table_file") {
        table_file = value;
        table_line = line_no;
        have_table = true;
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [group]");
      }
    } else if (section == "element") {
      if (key == "term") {
        terms.emplace_back(value, line_no);
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [element]");
      }
    } else if (section == "foelner") {
      if (key == "kind") {
        foelner_kind = value;
        foelner_kind_line = line_no;
        if (value != "box" && value != "ball")
          rd.fail(line_no, "foelner kind must be 'box' or 'ball'");
      } else if (key == "n") {
        cfg.foelner_ns = rd.parse_n_spec(value, line_no);
        have_foelner_n = true;
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [foelner]");
      }
    } else if (section == "methods") {
      if (key == "list") {
        cfg.methods = split_list(value);
        methods_line = line_no;
        for (const std::string& m : cfg.methods) {
          const auto& all = known_methods();
          if (std::find(all.begin(), all.end(), m) == all.end())
            rd.fail(line_no, "unknown method '" + m + "'");
        }
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [methods]");
      }
    } else if (section == "series") {
      if (key == "tol") {
        cfg.series_tol = rd.parse_real(value, line_no);
        if (!(cfg.series_tol > 0.0)) rd.fail(line_no, "tol must be positive");
      } else if (key == "max_terms") {
        cfg.series_max_terms = rd.parse_long(value, line_no);
        if (cfg.series_max_terms < 1)
          rd.fail(line_no, "max_terms must be >= 1");
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [series]");
      }
    } else if (section == "mahler") {
      if (key == "m") {
        cfg.mahler_m = rd.parse_size(value, line_no);
        if (cfg.mahler_m < 2) rd.fail(line_no, "m must be >= 2");
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [mahler]");
      }
    } else if (section == "lueck") {
      if (key == "q") {
        cfg.lueck_q.clear();
        for (const std::string& tok : split_list(value))
          cfg.lueck_q.push_back(rd.parse_real(tok, line_no));
        if (cfg.lueck_q.empty()) rd.fail(line_no, "empty polynomial");
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [lueck]");
      }
    } else if (section == "limits") {
      if (key == "size_cap") {
        cfg.size_cap = rd.parse_size(value, line_no);
      } else if (key == "dense_cap") {
        cfg.dense_cap = rd.parse_size(value, line_no);
      } else if (key == "support_cap") {
        cfg.support_cap = rd.parse_size(value, line_no);
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [limits]");
      }
    } else if (section == "compare") {
      if (key == "allowance") {
        cfg.compare_allowance = rd.parse_real(value, line_no);
        if (cfg.compare_allowance < 0.0)
          rd.fail(line_no, "allowance must be >= 0");
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [compare]");
      }
    } else if (section == "output") {
      if (key == "dir") {
        cfg.output_dir = value;
      } else {
        rd.fail(line_no, "unknown key '" + key + "' in [output]");
      }
    }
  }
  (void)section_line;

  // --- Group construction ---
  if (group_kind.empty()) rd.fail("missing [group] kind");
  if (group_kind == "free_abelian") {
    if (!have_rank) rd.fail(group_kind_line, "free_abelian needs rank");
    if (rank < 1) rd.fail(rank_line, "rank must be >= 1");
    if (have_table) rd.fail(table_line, "table_file only applies to finite");
    cfg.group = GroupSpec::free_abelian(static_cast<int>(rank));
  } else if (group_kind == "finite") {
    if (!have_table) rd.fail(group_kind_line, "finite needs table_file");
    if (have_rank) rd.fail(rank_line, "rank only applies to free_abelian");
    const std::filesystem::path table_path =
        std::filesystem::path(path).parent_path() / table_file;
    try {
      cfg.group = GroupSpec::finite_from_file(table_path.string(), assoc_seed);
    } catch (const Error& e) {
      rd.fail(table_line, std::string("bad Cayley table: ") + e.what());
    }
  } else if (group_kind == "heisenberg") {
    if (have_rank) rd.fail(rank_line, "rank only applies to free_abelian");
    if (have_table) rd.fail(table_line, "table_file only applies to finite");
    cfg.group = GroupSpec::heisenberg();
  } else {
    rd.fail(group_kind_line, "unknown group kind '" + group_kind + "'");
  }

  // --- Element ---
  if (terms.empty()) rd.fail("missing [element] terms");
  std::string joined;
  for (const auto& [value, ln] : terms) {
    joined += value;
    joined += '\n';
  }
  try {
    cfg.element = parse_ring_element(joined, *cfg.group);
  } catch (const Error& e) {
    // The ring parser anchors to its own input lines ("line K: …"), and
    // term K sits at a known file line; translate the anchor.
    int k = 0;
    int anchor = terms.front().second;
    if (std::sscanf(e.what(), "line %d:", &k) == 1 && k >= 1 &&
        static_cast<std::size_t>(k) <= terms.size())
      anchor = terms[static_cast<std::size_t>(k) - 1].second;
    rd.fail(anchor, std::string("bad element term: ") + e.what());
  }

  // --- Cross validation (before any computation) ---
  cfg.foelner_is_box = foelner_kind == "box";
  const GroupKind gk = cfg.group->kind();
  if (cfg.foelner_is_box && have_foelner_n && gk != GroupKind::FreeAbelian)
    rd.fail(foelner_kind_line ? foelner_kind_line : 1,
            "box Foelner sets require a free abelian group (use kind = ball)");
  for (const std::string& m : cfg.methods) {
    if ((m == "mahler") && gk != GroupKind::FreeAbelian)
      rd.fail(methods_line, "method 'mahler' requires a free abelian group");
    if (m == "finite_entropy" && gk != GroupKind::Finite)
      rd.fail(methods_line, "method 'finite_entropy' requires a finite group");
  }
  const bool needs_sets =
      std::any_of(cfg.methods.begin(), cfg.methods.end(),
                  [](const std::string& m) {
                    return m == "foelner_logdet" || m == "lattice_index" ||
                           m == "lueck_trace";
                  });
  if (needs_sets && !have_foelner_n && gk != GroupKind::Finite)
    rd.fail("the requested methods need a [foelner] n range");

  return cfg;
}

}  // namespace fkdet
