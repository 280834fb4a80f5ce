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


// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qgeo/experiments.hpp"
#include "qgeo/validation.hpp"

using namespace qgeo;

namespace {

constexpr std::uint64_t kSeed = 42;
constexpr double kOracleRuntimeBound = 60.0;  // seconds

int worker_count() {
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 2u, 16u));
}

template <class F>
CriterionResult timed(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r = f();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CriterionResult check_determinism(const std::filesystem::path& dir) {
  CriterionResult r{"determinism", true, 0.0, 0.0, ""};
  std::ostringstream sink;
  int compared = 0;
  for (auto kind : {ExperimentKind::fig1, ExperimentKind::fig2, ExperimentKind::fig3, ExperimentKind::ortho,
                    ExperimentKind::asymptote, ExperimentKind::validate, ExperimentKind::surface}) {
    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run) {
      ExperimentConfig cfg;
      cfg.experiment = kind;
      cfg.seed = kSeed;
      cfg.workers = run == 0 ? 1 : worker_count();
      const std::string ext = kind == ExperimentKind::validate ? ".json" : ".csv";
      const auto out = dir / (std::string(experiment_name(kind)) + "_run" + std::to_string(run) + ext);
      cfg.out = out.string();
      run_and_write(cfg, sink);
      std::string bytes = slurp(out);
      if (kind == ExperimentKind::ortho) bytes += slurp(std::filesystem::path(out).replace_extension(".json"));
      outputs.push_back(std::move(bytes));
    }
    ++compared;
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      r.pass = false;
      r.measured += 1.0;
      r.detail += std::string(" ") + experiment_name(kind) + " differs;";
    }
  }
  r.detail = std::to_string(compared) + " experiments run twice (workers 1 vs " + std::to_string(worker_count()) +
             ") with seed 42 and default sizes;" +
             (r.pass ? std::string(" all identical") : r.detail);
  return r;
}

}  // namespace

int main() {
  ValidationOptions opts;
  opts.seed = kSeed;
  opts.workers = worker_count();

  const auto dir = std::filesystem::temp_directory_path() / "qgeo_acceptance";
  std::filesystem::create_directories(dir);

  std::vector<CriterionResult> results;

  CriterionResult oracle = timed([&] { return check_oracle_equivalence(opts); });
  if (oracle.seconds > kOracleRuntimeBound) oracle.pass = false;
  oracle.detail += "; took " + std::to_string(oracle.seconds) + " s";
  results.push_back(oracle);

  results.push_back(timed([&] { return check_asymptote(opts); }));
  results.push_back(timed([&] { return check_orthogonality_table(opts); }));
  results.push_back(timed([&] { return check_divergence_law(opts); }));

  const CriterionResult mono = timed([&] { return check_monotonicity(opts); });
  const CriterionResult contr = timed([&] { return check_contractivity(opts); });
  CriterionResult markov{"monotonicity_and_contractivity", mono.pass && contr.pass,
                         std::max(mono.measured, contr.measured), mono.bound,
                         "monotonicity " + mono.detail + " (" + std::to_string(mono.measured) +
                             "); contractivity " + contr.detail + " (" + std::to_string(contr.measured) + ")",
                         mono.seconds + contr.seconds};
  results.push_back(markov);

  results.push_back(timed([&] { return check_delta_g_signatures(opts); }));
  results.push_back(timed([&] { return check_block_fidelity(opts); }));
  results.push_back(timed([&] { return check_determinism(dir); }));
  results.push_back(timed([&] { return check_coherence_ratio(opts); }));

  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    std::printf("%s %-32s measured=%.6g bound=%.3g [%.1f s] %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                r.measured, r.bound, r.seconds, r.detail.c_str());
  }
  std::printf("%zu criteria, %d failed\n", results.size(), failed);
  std::filesystem::remove_all(dir);
  return failed == 0 ? 0 : 1;
}
