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


#include "qgeo/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "qgeo/blocks.hpp"

namespace qgeo {

namespace {

constexpr int kMaxAttempts = 10000;
constexpr std::uint64_t kAttemptStride = 0x9e3779b97f4a7c15ULL;

bool needs_dim(MeasureKind kind, Eigen::Index dim) {
  switch (kind) {
    case MeasureKind::haar_pure:
    case MeasureKind::hs_mixed:
    case MeasureKind::diagonal_uniform:
      return dim == 2 || dim == 4;
    case MeasureKind::bloch_ball_uniform:
      return dim == 2;
    case MeasureKind::x_state_uniform:
    case MeasureKind::yb_state_uniform:
    case MeasureKind::yc_state_uniform:
    case MeasureKind::werner_family:
      return dim == 4;
  }
  return false;
}

DensityMatrix block_uniform(KeyedRng& rng, BlockClass cls, int& rejected) {
  for (int k = 0; k < kMaxAttempts; ++k) {
    BlockParams bp;
    bp.delta = rng.uniform(-1.0, 1.0);
    bp.z_a = rng.uniform(-1.0, 1.0);
    bp.z_b = rng.uniform(-1.0, 1.0);
    bp.x_a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    bp.x_b = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const auto ev = block_eigenvalues(bp);
    if (ev[1] >= 0.0 && ev[3] >= 0.0) return block_density(cls, bp);
    ++rejected;
  }
  throw std::runtime_error("block-state rejection sampler did not converge");
}

Draw draw_once(KeyedRng& rng, const Measure& measure, Eigen::Index dim) {
  int rejected = 0;
  switch (measure.kind) {
    case MeasureKind::haar_pure:
      return {DensityMatrix(projector(sample_pure_vector(rng, dim))), 0};
    case MeasureKind::hs_mixed: {
      ComplexMatrix g(dim, dim);
      for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
      }
      ComplexMatrix m = g * g.adjoint();
      m /= m.trace().real();
      return {DensityMatrix(m), 0};
    }
    case MeasureKind::bloch_ball_uniform: {
      BlochVector b{rng.normal(), rng.normal(), rng.normal()};
      const double n = b.radius();
      const double r = std::cbrt(rng.uniform());
      b = {b.x / n * r, b.y / n * r, b.z / n * r};
      return {density_from_bloch(b), 0};
    }
    case MeasureKind::x_state_uniform:
      return {block_uniform(rng, BlockClass::X, rejected), rejected};
    case MeasureKind::yb_state_uniform:
      return {block_uniform(rng, BlockClass::Yb, rejected), rejected};
    case MeasureKind::yc_state_uniform:
      return {block_uniform(rng, BlockClass::Yc, rejected), rejected};
    case MeasureKind::diagonal_uniform: {
      Eigen::VectorXd e(dim);
      for (Eigen::Index i = 0; i < dim; ++i) e(i) = -std::log1p(-rng.uniform());
      e /= e.sum();
      return {DensityMatrix(e.cast<cplx>().asDiagonal().toDenseMatrix()), 0};
    }
    case MeasureKind::werner_family:
      return {werner_state(measure.werner_p), 0};
  }
  throw std::invalid_argument("unknown measure");
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

KeyedRng::KeyedRng(const SampleStream& stream, std::uint64_t salt) {
  std::uint64_t h = splitmix64(stream.master_seed);
  h = splitmix64(h ^ stream.index);
  h = splitmix64(h ^ salt);
  engine_.seed(h);
}

double KeyedRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double KeyedRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

cplx KeyedRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

const char* measure_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::haar_pure:
      return "haar_pure";
    case MeasureKind::hs_mixed:
      return "hs_mixed";
    case MeasureKind::bloch_ball_uniform:
      return "bloch_ball_uniform";
    case MeasureKind::x_state_uniform:
      return "x_state_uniform";
    case MeasureKind::yb_state_uniform:
      return "yb_state_uniform";
    case MeasureKind::yc_state_uniform:
      return "yc_state_uniform";
    case MeasureKind::diagonal_uniform:
      return "diagonal_uniform";
    case MeasureKind::werner_family:
      return "werner_family";
  }
  return "?";
}

MeasureKind parse_measure(std::string_view name) {
  for (MeasureKind k :
       {MeasureKind::haar_pure, MeasureKind::hs_mixed, MeasureKind::bloch_ball_uniform,
        MeasureKind::x_state_uniform, MeasureKind::yb_state_uniform,
        MeasureKind::yc_state_uniform, MeasureKind::diagonal_uniform,
        MeasureKind::werner_family}) {
    if (name == measure_name(k)) return k;
  }
  throw std::invalid_argument("unknown measure: " + std::string(name));
}

ComplexVector sample_pure_vector(KeyedRng& rng, Eigen::Index dim) {
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

ComplexMatrix sample_unitary(KeyedRng& rng, Eigen::Index dim) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    if (a > 0.0) q.col(j) *= d / a;
  }
  return q;
}

Draw draw_state(const SampleStream& stream, const Measure& measure, Eigen::Index dim) {
  if (!needs_dim(measure.kind, dim)) {
    throw std::invalid_argument(std::string("measure ") + measure_name(measure.kind) +
                                " does not support dimension " + std::to_string(dim));
  }
  KeyedRng rng(stream);
  return draw_once(rng, measure, dim);
}

DensityMatrix sample_state(const SampleStream& stream, const Measure& measure, Eigen::Index dim) {
  return draw_state(stream, measure, dim).state;
}

Draw draw_full_rank(const SampleStream& stream, const Measure& measure, Eigen::Index dim,
                    double min_eigenvalue) {
  if (!needs_dim(measure.kind, dim)) {
    throw std::invalid_argument(std::string("measure ") + measure_name(measure.kind) +
                                " does not support dimension " + std::to_string(dim));
  }
  if (measure.kind == MeasureKind::haar_pure) {
    throw std::invalid_argument("haar_pure never yields full-rank states");
  }
  int rejected = 0;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    KeyedRng rng(stream, static_cast<std::uint64_t>(attempt) * kAttemptStride);
    Draw d = draw_once(rng, measure, dim);
    rejected += d.rejected;
    if (eig_hermitian(d.state).values.minCoeff() >= min_eigenvalue) {
      d.rejected = rejected;
      return d;
    }
    ++rejected;
    if (measure.kind == MeasureKind::werner_family) break;
  }
  throw std::invalid_argument(std::string("measure ") + measure_name(measure.kind) +
                              " produced no full-rank state");
}

DensityMatrix sample_werner(const SampleStream& stream, double p) {
  (void)stream;
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Werner weight p must lie in [0, 1]");
  return werner_state(p);
}

}  // namespace qgeo
