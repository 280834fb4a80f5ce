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

namespace qgeo {

// Numerical tolerances shared by every module. Values are absolute unless
// the name says otherwise.
struct Tolerances {
  double hermitian = 1e-12;         // entrywise |rho - rho^dagger|
  double trace = 1e-12;             // |tr rho - 1|
  double psd = 1e-12;               // smallest admissible eigenvalue is -psd
  double bloch_radius = 1e-12;      // r^2 <= 1 + bloch_radius
  double eigen_reconstruction = 1e-10;
  double eigenvalue_floor = 1e-12;  // p_i below this are treated as zero
  double support = 1e-10;           // |component| above this counts as support
  double fd_eps = 1e-6;             // lambda step for finite differences
  double max_fd_eps = 1e-3;
  double separable_residual = 1e-8;
  double block_pattern = 1e-12;     // off-pattern entries of block states
  double full_rank_resample = 1e-9; // sampler rejects min eigenvalue below this
};

inline constexpr Tolerances kTol{};

}  // namespace qgeo
