// Copyright 2026 The qgeo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cstdint>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qgeo/experiments.hpp"

int main(int argc, char** argv) {
  using namespace qgeo;

  CLI::App app{"Speeds of thermalising qubits: experiment runner"};
  app.set_version_flag("--version", std::string(QGEO_VERSION));

  std::string experiment;
  ExperimentConfig cfg;
  std::optional<std::uint64_t> seed;
  std::string metric = "bures";

  app.add_option("--experiment", experiment, "fig1|fig2|fig3|ortho|asymptote|validate|surface")
      ->required()
      ->check(CLI::IsMember({"fig1", "fig2", "fig3", "ortho", "asymptote", "validate", "surface"}));
  app.add_option("--samples", cfg.samples, "Samples per group")->capture_default_str();
  app.add_option("--alpha", cfg.alphas, "Bath parameter alpha = 2p - 1 (repeatable)");
  app.add_option("--metric", metric, "bures|minimal|wy")
      ->check(CLI::IsMember({"bures", "minimal", "wy"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "Master seed (default 42, or QGEO_SEED)");
  app.add_option("--eps", cfg.eps, "Finite-difference step in lambda")->capture_default_str();
  app.add_option("--out", cfg.out, "Output path (default ./out/<experiment>.csv)");
  app.add_option("--layout", cfg.layout, "fig2 layouts: single|both|all")->capture_default_str();
  app.add_flag("--inject-error", cfg.inject_error, "Perturb the closed-form speed (harness self-test)");
  app.add_option("--workers", cfg.workers, "Worker threads")->capture_default_str();
  app.add_option("--grid", cfg.grid, "Surface grid points per axis")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.experiment = parse_experiment(experiment);
    cfg.metric = parse_mc_kind(metric);
    cfg.seed = resolve_seed(seed, std::getenv("QGEO_SEED"));
    return run_and_write(cfg, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
