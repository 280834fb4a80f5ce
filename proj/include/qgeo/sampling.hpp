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
#include <random>
#include <string_view>

#include "qgeo/density.hpp"
#include "qgeo/tolerances.hpp"

namespace qgeo {

/// Addresses one sample: generation depends only on (master_seed, index).
struct SampleStream {
  std::uint64_t master_seed = 42;
  std::uint64_t index = 0;
};

enum class MeasureKind {
  haar_pure,
  hs_mixed,             // Ginibre-induced Hilbert-Schmidt measure
  bloch_ball_uniform,   // qubits only
  x_state_uniform,      // block parameters uniform, PSD by rejection
  yb_state_uniform,
  yc_state_uniform,
  diagonal_uniform,     // populations uniform on the simplex
  werner_family,
};

const char* measure_name(MeasureKind kind);
MeasureKind parse_measure(std::string_view name);

struct Measure {
  MeasureKind kind = MeasureKind::hs_mixed;
  double werner_p = 1.0;
};

/// Counter-based generator: the engine is seeded from a SplitMix64 hash of
/// (master_seed, index, salt). Uniforms and normals are built from raw
/// 64-bit words so the stream is identical across standard libraries.
class KeyedRng {
 public:
  KeyedRng(const SampleStream& stream, std::uint64_t salt = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  cplx complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

ComplexVector sample_pure_vector(KeyedRng& rng, Eigen::Index dim);
/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
ComplexMatrix sample_unitary(KeyedRng& rng, Eigen::Index dim);

struct Draw {
  DensityMatrix state;
  int rejected = 0;  // PSD rejections plus discarded low-rank attempts
};

/// Throws std::invalid_argument on an incompatible measure/dim pair.
Draw draw_state(const SampleStream& stream, const Measure& measure, Eigen::Index dim);
DensityMatrix sample_state(const SampleStream& stream, const Measure& measure, Eigen::Index dim);

/// Redraws (with a fresh attempt salt) until the smallest eigenvalue is at
/// least min_eigenvalue. Throws std::invalid_argument for measures that
/// cannot produce full-rank states.
Draw draw_full_rank(const SampleStream& stream, const Measure& measure, Eigen::Index dim,
                    double min_eigenvalue = kTol.full_rank_resample);

DensityMatrix sample_werner(const SampleStream& stream, double p);

}  // namespace qgeo
