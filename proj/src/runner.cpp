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

#include "fkdet/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <variant>

#include <nlohmann/json.hpp>

#include "fkdet/determinant.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/expansive.hpp"
#include "fkdet/finite.hpp"
#include "fkdet/mahler.hpp"

namespace fkdet {

namespace {

nlohmann::json raw_number(double v) {
  return nlohmann::json::parse(format_double(v));
}

template <typename C>
FloatElement as_float(const RingElement<C>& f) {
  if constexpr (std::is_same_v<C, double>) {
    return f;
  } else {
    return to_float(f);
  }
}

IntElement as_int(const AnyElement& f, const char* method) {
  if (std::holds_alternative<IntElement>(f))
    return std::get<IntElement>(f);
  if (std::holds_alternative<RatElement>(f)) {
    try {
      return to_int(std::get<RatElement>(f));
    } catch (const Error& e) {
      throw Error(std::string(method) +
                  ": integer coefficients required: " + e.what());
    }
  }
  throw Error(std::string(method) +
              ": integer coefficients required, element is Float");
}

// The automatic reduction behind every log-det method: use f itself when
// its positivity is certifiable, otherwise fall back to f·f* and halve
// (det_NΓ f = det_NΓ(ff*)^{1/2}).
template <typename C>
struct Positivized {
  RingElement<C> p;
  PositivityCertificate<C> cert;
  bool halved = false;
  std::string note;
};

template <typename C>
Positivized<C> positivize(const RingElement<C>& f) {
  if (is_self_adjoint(f)) {
    const C c = trace_e(f);
    C off(0);
    for (const auto& [gamma, a] : f.support()) {
      if (f.spec().is_identity(gamma)) continue;
      off += abs(a);
    }
    if (c > C(0) && off < c)
      return {f, certificate_contraction<C>(), false,
              "positivity via contraction"};
    if (f.spec().kind() == GroupKind::FreeAbelian &&
        f.spec().encoding_size() <= 2) {
      const std::size_t grid = f.spec().encoding_size() == 1 ? 4096 : 512;
      const SymbolWindow w = symbol_range(as_float(f), grid);
      if (w.lo > 0.0)
        return {f, certificate_positive_symbol<C>(grid), false,
                "positivity via certified symbol minimum " +
                    format_double(w.lo)};
    }
  }
  return {make_positive(f), certificate_hh_star(f), true,
          "automatic f.f* reduction: values are (1/2)*logdet of (f.f*)_F"};
}

void halve_report(EstimateReport& rep) {
  for (EstimateStep& s : rep.steps) {
    s.value *= 0.5;
    if (s.error_bound) *s.error_bound *= 0.5;
  }
  rep.final *= 0.5;
  if (rep.error_bound) *rep.error_bound *= 0.5;
}

MethodOutcome run_foelner(const ExperimentConfig& cfg,
                          const std::vector<FoelnerSet>& sets) {
  MethodOutcome out;
  out.method = "foelner_logdet";
  EstimateReport rep = std::visit(
      [&](const auto& f) {
        auto pos = positivize(f);
        EstimateReport r = foelner_logdet(pos.p, sets, pos.cert, cfg.dense_cap);
        if (pos.halved) halve_report(r);
        r.notes.push_back(pos.note);
        return r;
      },
      *cfg.element);
  out.comparable = rep.final;
  out.notes = rep.notes;
  out.files.emplace_back("foelner_logdet.csv", rep.to_csv());
  out.files.emplace_back("foelner_logdet.json", rep.to_json());
  return out;
}

MethodOutcome run_lattice(const ExperimentConfig& cfg,
                          const std::vector<FoelnerSet>& sets) {
  MethodOutcome out;
  out.method = "lattice_index";
  const IntElement f = as_int(*cfg.element, "lattice_index");
  EstimateReport rep = lattice_logdet(f, sets);
  out.comparable = rep.final;
  out.notes = rep.notes;
  out.files.emplace_back("lattice_index.csv", rep.to_csv());
  out.files.emplace_back("lattice_index.json", rep.to_json());
  return out;
}

MethodOutcome run_series(const ExperimentConfig& cfg) {
  MethodOutcome out;
  out.method = "series";
  EstimateReport rep;
  if (std::holds_alternative<FloatElement>(*cfg.element))
    throw Error(
        "series: exact coefficients required for the rigorous tail bound");
  const auto run_one = [&](const auto& f) {
    if (is_self_adjoint(f))
      return trace_series_logdet(f, cfg.series_tol, cfg.series_max_terms,
                                 cfg.support_cap);
    auto r = trace_series_logdet(make_positive(f), cfg.series_tol,
                                 cfg.series_max_terms, cfg.support_cap);
    halve_report(r);
    r.notes.push_back(
        "automatic f.f* reduction: values are (1/2)*series of f.f*");
    return r;
  };
  if (std::holds_alternative<IntElement>(*cfg.element)) {
    rep = run_one(std::get<IntElement>(*cfg.element));
  } else {
    rep = run_one(std::get<RatElement>(*cfg.element));
  }
  out.comparable = rep.final;
  out.comparable_error = rep.error_bound;
  out.notes = rep.notes;
  out.files.emplace_back("series.csv", rep.to_csv());
  out.files.emplace_back("series.json", rep.to_json());
  return out;
}

MethodOutcome run_mahler(const ExperimentConfig& cfg) {
  MethodOutcome out;
  out.method = "mahler";
  const FloatElement f =
      std::visit([](const auto& g) { return as_float(g); }, *cfg.element);
  const MahlerRun run = mahler_run(f, cfg.mahler_m);
  out.comparable = run.value;
  out.notes.push_back(run.certificate.certified
                          ? "nonvanishing certified"
                          : "nonvanishing NOT certified: quadrature value "
                            "may converge slowly");
  out.files.emplace_back("mahler.json", run.to_json());
  return out;
}

MethodOutcome run_lueck(const ExperimentConfig& cfg,
                        const std::vector<FoelnerSet>& sets) {
  MethodOutcome out;
  out.method = "lueck_trace";
  const IntElement f = as_int(*cfg.element, "lueck_trace");
  const LueckReport rep = lueck_trace(f, cfg.lueck_q, sets);
  out.notes = rep.report.notes;  // includes the exact limit
  out.files.emplace_back("lueck_trace.csv", rep.report.to_csv());
  out.files.emplace_back("lueck_trace.json", rep.report.to_json());
  return out;
}

MethodOutcome run_finite_entropy(const ExperimentConfig& cfg) {
  MethodOutcome out;
  out.method = "finite_entropy";
  const IntElement f = as_int(*cfg.element, "finite_entropy");
  const FiniteEntropyResult res = finite_entropy(f);
  if (res.is_unit) {
    out.comparable = res.h_f;
    out.notes.push_back("index = " + res.index.get_str());
  } else {
    out.notes.push_back("f is not a unit: h_f = INFINITE");
  }
  out.files.emplace_back("finite_entropy.json", res.to_json());
  return out;
}

MethodOutcome run_expansive(const ExperimentConfig& cfg) {
  MethodOutcome out;
  out.method = "expansive";
  const IntElement f = as_int(*cfg.element, "expansive");
  const ExpansivenessCertificate cert =
      certify_expansive(f, cfg.mahler_m);
  out.notes.push_back(cert.is_certified
                          ? std::string("certified via ") + cert.details
                          : "uncertified (not a disproof)");
  out.files.emplace_back("expansive.json", cert.to_json());
  return out;
}

}  // namespace

std::vector<FoelnerSet> make_foelner_sets(const ExperimentConfig& cfg) {
  const GroupSpec& spec = *cfg.group;
  std::vector<FoelnerSet> sets;
  if (cfg.foelner_ns.empty()) {
    if (spec.kind() != GroupKind::Finite)
      throw Error("no Foelner range configured for an infinite group");
    std::vector<GroupElement> all = spec.all_elements();
    sets.emplace_back(spec, std::move(all),
                      static_cast<std::int64_t>(spec.order()));
    return sets;
  }
  const GeneratingSet gens = GeneratingSet::standard(spec);
  for (int n : cfg.foelner_ns) {
    if (cfg.foelner_is_box) {
      sets.push_back(box(spec.rank(), n, cfg.size_cap));
    } else {
      sets.push_back(ball(spec, gens, n, cfg.size_cap));
    }
  }
  return sets;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.methods.empty())
    throw Error("run: no methods configured (add a [methods] list)");
  const bool needs_sets =
      std::any_of(cfg.methods.begin(), cfg.methods.end(),
                  [](const std::string& m) {
                    return m == "foelner_logdet" || m == "lattice_index" ||
                           m == "lueck_trace";
                  });
  std::vector<FoelnerSet> sets;
  if (needs_sets) sets = make_foelner_sets(cfg);

  RunResult result;
  // Canonical emission order regardless of config order.
  for (const std::string& m : known_methods()) {
    if (std::find(cfg.methods.begin(), cfg.methods.end(), m) ==
        cfg.methods.end())
      continue;
    if (m == "foelner_logdet") {
      result.outcomes.push_back(run_foelner(cfg, sets));
    } else if (m == "lattice_index") {
      result.outcomes.push_back(run_lattice(cfg, sets));
    } else if (m == "series") {
      result.outcomes.push_back(run_series(cfg));
    } else if (m == "mahler") {
      result.outcomes.push_back(run_mahler(cfg));
    } else if (m == "lueck_trace") {
      result.outcomes.push_back(run_lueck(cfg, sets));
    } else if (m == "finite_entropy") {
      result.outcomes.push_back(run_finite_entropy(cfg));
    } else if (m == "expansive") {
      result.outcomes.push_back(run_expansive(cfg));
    }
  }

  // Summary: pairwise agreement of every comparable (log-det-scale) final.
  nlohmann::json summary;
  summary["group"] = cfg.group->describe();
  summary["element"] = serialize_ring_element(*cfg.element);
  {
    nlohmann::json fj;
    fj["kind"] = cfg.foelner_is_box ? "box" : "ball";
    fj["n"] = cfg.foelner_ns;
    summary["foelner"] = fj;
  }
  nlohmann::json methods_json;
  for (const MethodOutcome& o : result.outcomes) {
    nlohmann::json mj;
    if (o.comparable) {
      mj["final"] = raw_number(*o.comparable);
    } else {
      mj["final"] = nullptr;
    }
    if (o.comparable_error) {
      mj["error_bound"] = raw_number(*o.comparable_error);
    } else {
      mj["error_bound"] = nullptr;
    }
    mj["notes"] = o.notes;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [name, content] : o.files) files.push_back(name);
    mj["files"] = files;
    methods_json[o.method] = mj;
  }
  summary["methods"] = methods_json;

  nlohmann::json comparisons = nlohmann::json::array();
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    if (!result.outcomes[i].comparable) continue;
    for (std::size_t j = i + 1; j < result.outcomes.size(); ++j) {
      if (!result.outcomes[j].comparable) continue;
      const double a = *result.outcomes[i].comparable;
      const double b = *result.outcomes[j].comparable;
      const double diff = std::fabs(a - b);
      const double allowed =
          result.outcomes[i].comparable_error.value_or(0.0) +
          result.outcomes[j].comparable_error.value_or(0.0) +
          cfg.compare_allowance;
      const bool agree = diff <= allowed;
      if (!agree) ++result.disagreements;
      nlohmann::json cj;
      cj["a"] = result.outcomes[i].method;
      cj["b"] = result.outcomes[j].method;
      cj["difference"] = raw_number(diff);
      cj["allowed"] = raw_number(allowed);
      cj["agree"] = agree;
      comparisons.push_back(cj);
    }
  }
  summary["comparisons"] = comparisons;
  summary["disagreements"] = result.disagreements;
  result.summary_json = summary.dump(2);
  return result;
}

void write_run_result(const RunResult& result, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto write = [&](const std::string& name, const std::string& content) {
    const std::filesystem::path p = std::filesystem::path(out_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write " + p.string());
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
  };
  for (const MethodOutcome& o : result.outcomes)
    for (const auto& [name, content] : o.files) write(name, content);
  write("summary.json", result.summary_json);
}

std::string foelner_stats_csv(const ExperimentConfig& cfg) {
  const GroupSpec& spec = *cfg.group;
  const GeneratingSet gens = GeneratingSet::standard(spec);
  const std::vector<GroupElement>& K = gens.elements();

  std::string csv = "n,set_size,eq28,eq29,strong_value\n";
  const auto emit = [&](std::int64_t n, std::size_t size, double eq28,
                        double eq29, double strong) {
    csv += std::to_string(n) + "," + std::to_string(size) + "," +
           format_double(eq28) + "," + format_double(eq29) + "," +
           format_double(strong) + "\n";
  };

  // Eq. (28) on one window: max_{γ∈K} (|Fγ \ F|/|F|)·log|F|.
  const auto eq28_of = [&](const FoelnerSet& F) {
    std::size_t worst = 0;
    for (const GroupElement& gamma : K) {
      std::size_t outside = 0;
      for (const GroupElement& g : F.elements())
        if (!F.index_of(spec.multiply(g, gamma))) ++outside;
      worst = std::max(worst, outside);
    }
    if (worst == 0) return 0.0;
    return static_cast<double>(worst) / static_cast<double>(F.size()) *
           std::log(static_cast<double>(F.size()));
  };

  if (cfg.foelner_ns.empty()) {
    if (spec.kind() != GroupKind::Finite)
      throw Error("foelner-stats: no n range configured for an infinite group");
    std::vector<GroupElement> all = spec.all_elements();
    const FoelnerSet F(spec, std::move(all),
                       static_cast<std::int64_t>(spec.order()));
    const FoelnerDefect d = foelner_defect(F, K, spec);
    emit(F.label(), F.size(), eq28_of(F), 0.0, d.strong_value);
    return csv;
  }

  if (cfg.foelner_is_box) {
    const int r = spec.rank();
    for (int n : cfg.foelner_ns) {
      const FoelnerSet F = box(r, n, cfg.size_cap);
      const FoelnerSet Fnext = box(r, n + 1, cfg.size_cap);
      const double s1 = static_cast<double>(F.size());
      const double s2 = static_cast<double>(Fnext.size());
      const double eq29 = (s2 / s1 - 1.0) * std::log(s1);
      const FoelnerDefect d = foelner_defect(F, K, spec);
      emit(n, F.size(), eq28_of(F), eq29, d.strong_value);
    }
    return csv;
  }

  const int n_max =
      *std::max_element(cfg.foelner_ns.begin(), cfg.foelner_ns.end());
  const std::vector<GrowthRow> rows =
      growth_series(spec, gens, n_max, cfg.size_cap);
  for (int n : cfg.foelner_ns) {
    const GrowthRow& row = rows.at(static_cast<std::size_t>(n) - 1);
    const FoelnerSet F = ball(spec, gens, n, cfg.size_cap);
    const FoelnerDefect d = foelner_defect(F, K, spec);
    emit(n, row.ball_size, row.eq28_value, row.eq29_value, d.strong_value);
  }
  return csv;
}

}  // namespace fkdet
