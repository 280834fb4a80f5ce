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
#include <string>
#include <vector>

#include "qgeo/blocks.hpp"
#include "qgeo/metric.hpp"
#include "qgeo/tolerances.hpp"

namespace qgeo {

struct ValidationOptions {
  std::uint64_t seed = 42;
  double eps = kTol.fd_eps;
  McKind kind = McKind::bures;
  bool inject_error = false;  // perturbs the closed-form speed by 1e-3
  int workers = 1;
};

/// One pass/fail line with the worst measured deviation and its bound.
struct CriterionResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string detail;
  double seconds = 0.0;  // wall time, kept out of reports
};

/// Closed-form qubit speed as used by the checks (perturbed when
/// inject_error is set).
MetricValue checked_qubit_g(const BlochVector& b0, double alpha, double lambda,
                            const ValidationOptions& opts);

CriterionResult check_oracle_equivalence(const ValidationOptions& opts, int states = 1000);
CriterionResult check_asymptote(const ValidationOptions& opts, int states = 100,
                                double one_minus_lambda = 1e-5);
CriterionResult check_orthogonality_table(const ValidationOptions& opts, int samples = 200);
CriterionResult check_single_qubit_control(const ValidationOptions& opts, int samples = 1000);
CriterionResult check_divergence_law(const ValidationOptions& opts);
CriterionResult check_monotonicity(const ValidationOptions& opts, int trajectories = 500);
CriterionResult check_contractivity(const ValidationOptions& opts, int pairs = 500);
CriterionResult check_fidelity_link(const ValidationOptions& opts, int states = 200);
CriterionResult check_delta_g_signatures(const ValidationOptions& opts, int diagonal_states = 2000);
CriterionResult check_block_fidelity(const ValidationOptions& opts, int states = 300);
CriterionResult check_coherence_ratio(const ValidationOptions& opts);
CriterionResult check_mc_bounds(const ValidationOptions& opts);

/// Oracle and property suites reported by the validate experiment.
std::vector<CriterionResult> run_validation_suites(const ValidationOptions& opts);

// Orthogonality table shared by the ortho experiment and the checks.

struct OrthoSample {
  Scheme scheme = Scheme::single_qubit;
  std::string state_class;  // X, Yb, Yc or qubit
  std::size_t index = 0;
  double alpha = 0.0;
  double lambda = 0.0;
  DecompositionCheck check;
};

struct OrthoCell {
  Scheme scheme = Scheme::single_qubit;
  std::string state_class;
  int samples = 0;
  double max_residual = 0.0;
  double frac_above = 0.0;  // share of samples with residual > 1e-3
  char verdict = '?';       // Y, N or ? when neither rule applies
  char expected = '?';
};

struct OrthoTable {
  std::vector<OrthoSample> samples;
  std::vector<OrthoCell> cells;
  double control_max_relative = 0.0;  // |V_S^2 - V_I^2 - V_H^2| / V_S^2
  int control_samples = 0;
  bool all_match() const;
};

inline constexpr double kOrthoYes = 1e-8;
inline constexpr double kOrthoNoResidual = 1e-3;
inline constexpr double kOrthoNoFraction = 0.1;
inline constexpr double kControlBound = 1e-10;

char expected_verdict(Scheme scheme, BlockClass cls);

OrthoTable compute_ortho_table(std::uint64_t seed, int samples, const std::vector<double>& alphas,
                               McKind kind, double eps, int workers);

}  // namespace qgeo
