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
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "fkdet/config.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/runner.hpp"

using namespace fkdet;

namespace {

std::string data_path(const std::string& name) {
  return std::string(FKDET_TEST_DATA_DIR) + "/" + name;
}

// Writes a throwaway config and returns its path; each call gets a fresh
// file so error anchors stay stable.
std::string scratch_config(const std::string& content) {
  static int counter = 0;
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "fkdet_config_tests";
  std::filesystem::create_directories(dir);
  const std::filesystem::path p =
      dir / ("case_" + std::to_string(counter++) + ".cfg");
  std::ofstream out(p, std::ios::binary);
  out << content;
  out.close();
  return p.string();
}

// Asserts that load_config fails and the message carries the given anchor
// (":<line>:" for line-anchored errors) and substring.
void expect_config_error(const std::string& content, const std::string& needle) {
  const std::string path = scratch_config(content);
  try {
    load_config(path);
    FAIL("expected ConfigError for: ", needle);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    INFO("message: ", msg);
    CHECK(msg.find(path) == 0);  // every diagnostic is anchored to the file
    CHECK(msg.find(needle) != std::string::npos);
  }
}

ExperimentConfig small_z1_config() {
  ExperimentConfig cfg;
  cfg.group = GroupSpec::free_abelian(1);
  IntElement f(*cfg.group);
  f.add_term({0}, 5);
  f.add_term({1}, 1);
  f.add_term({-1}, 1);
  cfg.element = f;
  cfg.foelner_ns = {20, 40};
  cfg.methods = {"foelner_logdet", "lattice_index", "series", "mahler"};
  cfg.series_tol = 1e-8;
  cfg.mahler_m = 256;
  // Boxes this small still carry an O(1/n) boundary bias (~1.1e-3 at
  // n = 40), so the cross-check band must be wider than the run default.
  cfg.compare_allowance = 2e-3;
  return cfg;
}

}  // namespace

TEST_CASE("the four-way Z config loads with every knob applied") {
  ExperimentConfig cfg = load_config(data_path("z1_fourway.cfg"));
  REQUIRE(cfg.group.has_value());
  CHECK(cfg.group->kind() == GroupKind::FreeAbelian);
  CHECK(cfg.group->rank() == 1);

  REQUIRE(cfg.element.has_value());
  const IntElement& f = std::get<IntElement>(*cfg.element);
  CHECK(f.support_size() == 3);
  CHECK(trace_e(f) == 5);
  CHECK(l1_norm_exact(f) == 7);

  CHECK(cfg.foelner_is_box);
  CHECK(cfg.foelner_ns == std::vector<int>{250, 500, 1000});
  CHECK(cfg.methods == std::vector<std::string>{"foelner_logdet",
                                                "lattice_index", "series",
                                                "mahler"});
  CHECK(cfg.series_tol == 1e-10);
  CHECK(cfg.mahler_m == 4096);
  CHECK(cfg.compare_allowance == 2e-4);
}

TEST_CASE("untouched knobs keep their documented defaults") {
  const std::string path = scratch_config(
      "[group]\nkind = free_abelian\nrank = 2\n"
      "[element]\nterm = 9 (0,0)\nterm = 1 (1,0)\n"
      "[methods]\nlist = series\n");
  ExperimentConfig cfg = load_config(path);
  CHECK(cfg.series_tol == 1e-10);
  CHECK(cfg.series_max_terms == 10000);
  CHECK(cfg.mahler_m == 4096);
  CHECK(cfg.lueck_q == std::vector<double>{0.0, 0.0, 1.0});
  CHECK(cfg.size_cap == 20000);
  CHECK(cfg.dense_cap == 4000);
  CHECK(cfg.support_cap == 2000000);
  CHECK(cfg.compare_allowance == 2e-4);
  CHECK(cfg.output_dir == "out");
  CHECK(cfg.foelner_is_box);
  CHECK(cfg.foelner_ns.empty());
}

TEST_CASE("finite config resolves the table relative to the config file") {
  ExperimentConfig cfg = load_config(data_path("z2_finite.cfg"));
  REQUIRE(cfg.group.has_value());
  CHECK(cfg.group->kind() == GroupKind::Finite);
  CHECK(cfg.group->order() == 2);
  CHECK(cfg.methods ==
        std::vector<std::string>{"finite_entropy", "expansive"});
  CHECK(cfg.foelner_ns.empty());
}

TEST_CASE("diagnostics are anchored to the offending line") {
  // The checked-in bad config puts the stray key on line 4.
  try {
    load_config(data_path("bad_unknown_key.cfg"));
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":4: unknown key 'flavor' in [group]") !=
          std::string::npos);
  }

  expect_config_error("[dessert]\nname = flan\n", ":1: unknown section");
  expect_config_error("kind = free_abelian\n",
                      ":1: assignment before any [section]");
  expect_config_error("[group]\nkind = free_abelian\nrank = five\n",
                      ":3: expected an integer, got 'five'");
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n"
      "[element]\nterm = 1 (0)\n[series]\ntol = -2\n",
      ":7: tol must be positive");
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n"
      "[element]\nterm = 1 (0)\n[methods]\nlist = series, jazz\n",
      ":7: unknown method 'jazz'");
}

TEST_CASE("group construction is cross-checked") {
  expect_config_error("[element]\nterm = 1 (0)\n", "missing [group] kind");
  expect_config_error("[group]\nkind = free_abelian\n",
                      "free_abelian needs rank");
  expect_config_error("[group]\nkind = free_abelian\nrank = 0\n",
                      ":3: rank must be >= 1");
  expect_config_error("[group]\nkind = heisenberg\nrank = 3\n",
                      ":3: rank only applies to free_abelian");
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\ntable_file = x.table\n",
      ":4: table_file only applies to finite");
  expect_config_error("[group]\nkind = finite\n", "finite needs table_file");
  expect_config_error("[group]\nkind = finite\ntable_file = missing.table\n",
                      ":3: bad Cayley table");
  expect_config_error("[group]\nkind = dihedral\n",
                      ":2: unknown group kind 'dihedral'");
  expect_config_error("[group]\nkind = free_abelian\nrank = 1\n",
                      "missing [element] terms");
}

TEST_CASE("element diagnostics translate back to config file lines") {
  // The bad term sits on file line 7 (the ring parser sees it as its own
  // line 2); the anchor must name the file line.
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n\n"
      "[element]\nterm = 1 (0)\nterm = 1 (0,0)\n",
      ":7: bad element term");
}

TEST_CASE("method and Foelner compatibility is validated up front") {
  expect_config_error(
      "[group]\nkind = heisenberg\n[element]\nterm = 1 (0,0,0)\n"
      "[foelner]\nkind = box\nn = 10\n[methods]\nlist = foelner_logdet\n",
      "box Foelner sets require a free abelian group");
  expect_config_error(
      "[group]\nkind = heisenberg\n[element]\nterm = 1 (0,0,0)\n"
      "[methods]\nlist = mahler\n",
      "method 'mahler' requires a free abelian group");
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n[element]\nterm = 1 (0)\n"
      "[methods]\nlist = finite_entropy\n",
      "method 'finite_entropy' requires a finite group");
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n[element]\nterm = 1 (0)\n"
      "[methods]\nlist = foelner_logdet\n",
      "need a [foelner] n range");

  // A ball range on the Heisenberg group is fine.
  const std::string ok = scratch_config(
      "[group]\nkind = heisenberg\n[element]\nterm = 7 (0,0,0)\n"
      "[foelner]\nkind = ball\nn = 1,2\n[methods]\nlist = foelner_logdet\n");
  ExperimentConfig cfg = load_config(ok);
  CHECK_FALSE(cfg.foelner_is_box);
  CHECK(cfg.foelner_ns == std::vector<int>{1, 2});
}

TEST_CASE("n accepts ranges with strides and comma lists") {
  const auto ns_of = [](const std::string& spec) {
    const std::string path = scratch_config(
        "[group]\nkind = free_abelian\nrank = 1\n[element]\nterm = 3 (0)\n"
        "[foelner]\nn = " + spec + "\n[methods]\nlist = series\n");
    return load_config(path).foelner_ns;
  };
  CHECK(ns_of("1..7:2") == std::vector<int>{1, 3, 5, 7});
  CHECK(ns_of("3..5") == std::vector<int>{3, 4, 5});
  CHECK(ns_of("10, 20, 40") == std::vector<int>{10, 20, 40});
  CHECK(ns_of("8") == std::vector<int>{8});

  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n[element]\nterm = 3 (0)\n"
      "[foelner]\nn = 5..2\n[methods]\nlist = series\n",
      ":7: bad range '5..2'");
  expect_config_error(
      "[group]\nkind = free_abelian\nrank = 1\n[element]\nterm = 3 (0)\n"
      "[foelner]\nn = 0,4\n[methods]\nlist = series\n",
      ":7: Foelner n must be >= 1");
}

TEST_CASE("known_methods lists the canonical emission order") {
  CHECK(known_methods() ==
        std::vector<std::string>{"foelner_logdet", "lattice_index", "series",
                                 "mahler", "lueck_trace", "finite_entropy",
                                 "expansive"});
}

TEST_CASE("make_foelner_sets follows the config") {
  ExperimentConfig cfg = small_z1_config();
  std::vector<FoelnerSet> sets = make_foelner_sets(cfg);
  REQUIRE(sets.size() == 2);
  CHECK(sets[0].size() == 20);  // box(1, n) holds n lattice points
  CHECK(sets[1].size() == 40);
  CHECK(sets[0].label() == 20);

  ExperimentConfig fin = load_config(data_path("z2_finite.cfg"));
  std::vector<FoelnerSet> whole = make_foelner_sets(fin);
  REQUIRE(whole.size() == 1);
  CHECK(whole[0].size() == 2);

  ExperimentConfig bad = small_z1_config();
  bad.foelner_ns.clear();
  CHECK_THROWS_AS(make_foelner_sets(bad), Error);
}

TEST_CASE("run_experiment is deterministic and internally consistent") {
  ExperimentConfig cfg = small_z1_config();
  RunResult a = run_experiment(cfg);
  RunResult b = run_experiment(cfg);

  CHECK(a.summary_json == b.summary_json);
  REQUIRE(a.outcomes.size() == 4);
  REQUIRE(b.outcomes.size() == 4);
  for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
    CHECK(a.outcomes[i].method == b.outcomes[i].method);
    CHECK(a.outcomes[i].files == b.outcomes[i].files);
    CHECK(a.outcomes[i].comparable == b.outcomes[i].comparable);
  }

  // Methods come out in canonical order, each with its artifact files.
  CHECK(a.outcomes[0].method == "foelner_logdet");
  CHECK(a.outcomes[1].method == "lattice_index");
  CHECK(a.outcomes[2].method == "series");
  CHECK(a.outcomes[3].method == "mahler");
  CHECK(a.outcomes[0].files.front().first == "foelner_logdet.csv");

  // All four estimate the same log determinant inside the widened band.
  CHECK(a.disagreements == 0);
  const double series_val = *a.outcomes[2].comparable;
  for (const MethodOutcome& o : a.outcomes) {
    REQUIRE(o.comparable.has_value());
    CHECK(std::fabs(*o.comparable - series_val) < 2e-3);
  }
  CHECK(a.summary_json.find("\"disagreements\": 0") != std::string::npos);
  CHECK(a.summary_json.find("\"comparisons\"") != std::string::npos);
}

TEST_CASE("run_experiment covers the finite-group methods") {
  ExperimentConfig cfg = load_config(data_path("z2_finite.cfg"));
  RunResult res = run_experiment(cfg);
  REQUIRE(res.outcomes.size() == 2);
  CHECK(res.outcomes[0].method == "finite_entropy");
  REQUIRE(res.outcomes[0].comparable.has_value());
  CHECK(*res.outcomes[0].comparable ==
        doctest::Approx(0.5 * std::log(8.0)).epsilon(1e-12));
  CHECK(res.outcomes[0].notes.front() == "index = 8");
  CHECK(res.outcomes[1].method == "expansive");
  CHECK(res.outcomes[1].notes.front().find("certified via") == 0);
  CHECK(res.disagreements == 0);
}

TEST_CASE("run_experiment refuses an empty method list") {
  ExperimentConfig cfg = small_z1_config();
  cfg.methods.clear();
  CHECK_THROWS_AS(run_experiment(cfg), Error);
}

TEST_CASE("write_run_result lays the artifacts on disk") {
  ExperimentConfig cfg = small_z1_config();
  cfg.methods = {"series", "mahler"};
  RunResult res = run_experiment(cfg);

  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "fkdet_config_tests" / "run_out";
  std::filesystem::remove_all(dir);
  write_run_result(res, dir.string());

  for (const char* name :
       {"series.csv", "series.json", "mahler.json", "summary.json"}) {
    INFO("artifact: ", name);
    CHECK(std::filesystem::exists(dir / name));
  }
  std::ifstream in(dir / "summary.json", std::ios::binary);
  std::string on_disk((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(on_disk == res.summary_json + "\n");
}

TEST_CASE("foelner_stats_csv reports the documented columns") {
  ExperimentConfig cfg = small_z1_config();
  cfg.foelner_ns = {10, 20, 40};
  const std::string csv = foelner_stats_csv(cfg);
  REQUIRE(csv.rfind("n,set_size,eq28,eq29,strong_value\n", 0) == 0);
  std::size_t rows = 0;
  for (char c : csv)
    if (c == '\n') ++rows;
  CHECK(rows == 4);  // header + one row per n
  CHECK(csv.find("\n10,10,") != std::string::npos);
  CHECK(csv.find("\n40,40,") != std::string::npos);

  // The whole finite group is a perfect Foelner set: every defect is 0.
  ExperimentConfig fin = load_config(data_path("z2_finite.cfg"));
  const std::string fin_csv = foelner_stats_csv(fin);
  CHECK(fin_csv.find("\n2,2,0,0,0\n") != std::string::npos);

  // Ball ranges report the growth-series diagnostics.
  ExperimentConfig heis;
  heis.group = GroupSpec::heisenberg();
  IntElement f(*heis.group);
  f.add_term({0, 0, 0}, 7);
  heis.element = f;
  heis.foelner_is_box = false;
  heis.foelner_ns = {1, 2};
  const std::string ball_csv = foelner_stats_csv(heis);
  CHECK(ball_csv.rfind("n,set_size,eq28,eq29,strong_value\n", 0) == 0);
  CHECK(ball_csv.find("\n1,5,") != std::string::npos);
  CHECK(ball_csv.find("\n2,17,") != std::string::npos);
}
