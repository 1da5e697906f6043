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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fkdet/config.hpp"
#include "fkdet/errors.hpp"
#include "fkdet/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::uint64_t seed = 0x5eed5eedULL;
};

void add_common(CLI::App* sub, CommonArgs* args) {
  sub->add_option("--config", args->config_path, "experiment config file")
      ->required();
  sub->add_option("--out", args->out_dir,
                  "output directory (overrides the config's [output] dir)");
  sub->add_option("--threads", args->threads, "worker thread count");
  sub->add_option("--seed", args->seed,
                  "seed for randomized validation helpers (finite-group "
                  "associativity sampling); estimator math never uses it");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuglede-Kadison determinant laboratory"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App* cmd_run =
      app.add_subcommand("run", "run the configured estimators");
  CLI::App* cmd_stats = app.add_subcommand(
      "foelner-stats", "emit Foelner growth/defect diagnostics");
  CLI::App* cmd_validate =
      app.add_subcommand("validate", "parse and validate the config only");
  add_common(cmd_run, &args);
  add_common(cmd_stats, &args);
  add_common(cmd_validate, &args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // app.exit prints the message and returns 0 for --help/--version;
    // genuine usage errors fold into the config-error exit code.
    return app.exit(e) == 0 ? 0 : 2;
  }

#ifdef _OPENMP
  if (args.threads > 0) omp_set_num_threads(args.threads);
#endif

  try {
    const fkdet::ExperimentConfig cfg =
        fkdet::load_config(args.config_path, args.seed);
    const std::string out_dir =
        args.out_dir.empty() ? cfg.output_dir : args.out_dir;

    if (cmd_validate->parsed()) {
      std::cout << "config OK: " << cfg.group->describe() << ", "
                << cfg.methods.size() << " method(s)\n";
      return 0;
    }

    if (cmd_stats->parsed()) {
      const std::string csv = fkdet::foelner_stats_csv(cfg);
      std::filesystem::create_directories(out_dir);
      const std::filesystem::path p =
          std::filesystem::path(out_dir) / "foelner_stats.csv";
      std::ofstream out(p, std::ios::binary);
      if (!out) throw fkdet::Error("cannot write " + p.string());
      out << csv;
      std::cout << csv;
      std::cout << "wrote " << p.string() << "\n";
      return 0;
    }

    // run
    const fkdet::RunResult result = fkdet::run_experiment(cfg);
    fkdet::write_run_result(result, out_dir);
    std::cout << "wrote " << result.outcomes.size()
              << " method result(s) under " << out_dir << "\n";
    if (result.disagreements > 0) {
      std::cout << "WARNING: " << result.disagreements
                << " method pair(s) disagree beyond the allowance "
                   "(see summary.json)\n";
    } else {
      std::cout << "all comparable method finals agree within the allowance\n";
    }
    return 0;
  } catch (const fkdet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const fkdet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
