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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qgeo/metric.hpp"
#include "qgeo/validation.hpp"

namespace qgeo {

enum class ExperimentKind { fig1, fig2, fig3, ortho, asymptote, validate, surface };

const char* experiment_name(ExperimentKind kind);
ExperimentKind parse_experiment(std::string_view name);

/// Thrown for invalid configurations; maps to exit status 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::uint64_t kDefaultSeed = 42;

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::fig1;
  int samples = 5000;
  std::vector<double> alphas;  // empty selects the per-experiment default
  McKind metric = McKind::bures;
  std::uint64_t seed = kDefaultSeed;
  double eps = kTol.fd_eps;
  std::string out;             // empty selects ./out/<experiment>.csv
  std::string layout = "all";  // fig2: single, both or all
  bool inject_error = false;
  int workers = 1;
  int grid = 41;               // surface grid points per axis
};

/// Seed precedence: explicit flag, then QGEO_SEED, then kDefaultSeed.
/// Throws ConfigError on a malformed QGEO_SEED.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value);

std::vector<double> default_alphas(ExperimentKind kind);
std::vector<double> effective_alphas(const ExperimentConfig& cfg);
std::string default_output_path(ExperimentKind kind);

/// Throws ConfigError when a field is out of range.
void validate_config(const ExperimentConfig& cfg);

/// Single header comment: version and every field that affects the data.
/// The output path and worker count are left out.
std::string config_comment(const ExperimentConfig& cfg);

struct ExperimentResult {
  std::string csv;   // empty for validate
  std::string json;  // ortho verdict table or validate report
  int exit_code = 0;
  std::vector<std::string> log;
};

/// Runs one experiment in memory. Throws ConfigError for invalid configs.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentResult run_fig1(const ExperimentConfig& cfg);
ExperimentResult run_fig2(const ExperimentConfig& cfg);
ExperimentResult run_fig3(const ExperimentConfig& cfg);
ExperimentResult run_ortho(const ExperimentConfig& cfg);
ExperimentResult run_asymptote(const ExperimentConfig& cfg);
ExperimentResult run_validate(const ExperimentConfig& cfg);
ExperimentResult run_surface(const ExperimentConfig& cfg);

/// Runs and writes the outputs (CSV at cfg.out, JSON next to it with a
/// .json extension, validate writes only JSON). Returns the exit status:
/// 0 success, 1 validation failure, 2 configuration error. I/O failures
/// throw std::runtime_error.
int run_and_write(const ExperimentConfig& cfg, std::ostream& log);

}  // namespace qgeo
