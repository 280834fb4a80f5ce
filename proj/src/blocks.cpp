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


#include "qgeo/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qgeo {

namespace {

// Basis indices of the two partitions. Within a partition, u0 carries
// (delta_u + z_u) / 4. When conj is set the stored coherence rho(u0, u1)
// is conj(x_u) / 4 instead of x_u / 4.
struct BlockLayout {
  int a0, a1, b0, b1;
  bool conj_a, conj_b;
};

BlockLayout layout_of(BlockClass cls) {
  switch (cls) {
    case BlockClass::X:
      return {0, 3, 2, 1, false, true};
    case BlockClass::Yb:
      return {0, 1, 2, 3, false, false};
    case BlockClass::Yc:
      return {0, 2, 1, 3, false, false};
  }
  throw std::invalid_argument("unknown block class");
}

bool in_pattern(const BlockLayout& l, int i, int j) {
  if (i == j) return true;
  auto pair = [&](int u, int v) { return (i == u && j == v) || (i == v && j == u); };
  return pair(l.a0, l.a1) || pair(l.b0, l.b1);
}

struct Vec3 {
  double x, y, z;
};

Vec3 bloch_part(const PartitionView& v) { return {v.z, v.x.real(), v.x.imag()}; }

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

double cross_norm2(const Vec3& a, const Vec3& b) {
  const double cx = a.y * b.z - a.z * b.y;
  const double cy = a.z * b.x - a.x * b.z;
  const double cz = a.x * b.y - a.y * b.x;
  return cx * cx + cy * cy + cz * cz;
}

// Partition contribution F^u + Q^u.
MetricValue partition_metric(const PartitionView& v, const PartitionView& dv, McKind kind) {
  const Vec3 r = bloch_part(v);
  const Vec3 dr = bloch_part(dv);
  const double delta = v.weight;
  const double d_delta = dv.weight;
  const double xi = v.xi();
  const double dr2 = dot(dr, dr);
  const double floor = kTol.eigenvalue_floor;
  const double rate = std::sqrt(d_delta * d_delta + dr2);

  if (delta / 4.0 < floor) {
    if (rate > kTol.support) return MetricValue::infinite();
    return {0.0, false};
  }
  if (xi < floor) {
    return {(d_delta * d_delta + dr2) / (8.0 * delta), false};
  }

  const double d_xi = dot(r, dr) / xi;
  const double p1 = (delta + xi) / 4.0;
  const double p2 = (delta - xi) / 4.0;
  const double perp = cross_norm2(r, dr) / (xi * xi);

  double f = 0.0;
  if (p2 >= floor) {
    const double det = v.det();
    f = (delta * (d_delta * d_delta + d_xi * d_xi) - 2.0 * xi * d_delta * d_xi) / (8.0 * det);
  } else {
    const double dp1 = (d_delta + d_xi) / 4.0;
    const double dp2 = (d_delta - d_xi) / 4.0;
    if (std::abs(dp2) > kTol.support) return MetricValue::infinite();
    f = 0.25 * dp1 * dp1 / p1;
  }

  const double c = c_weight(kind, p1, p2 < floor ? 0.0 : p2);
  if (std::isinf(c)) {
    if (std::sqrt(perp) > kTol.support) return MetricValue::infinite();
    return {f, false};
  }
  return {f + c * perp / 32.0, false};
}

// Polynomial in t = sqrt(1 - lambda), degree <= 4.
using TPoly = std::array<cplx, 5>;

TPoly poly_mul(const TPoly& a, const TPoly& b) {
  TPoly out{};
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; i + j < 5; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Transfer |c><c'| -> coefficient on |o><o'| for one qubit under the GAD map.
TPoly qubit_transfer(double p, int o, int op, int c, int cp) {
  TPoly t{};
  if (c == cp) {
    if (o != op) return t;
    const double a = (o == 0) ? p : 1.0 - p;
    const double sign = (o == c) ? 1.0 : -1.0;
    const double b = sign * ((c == 0) ? 1.0 - p : p);
    t[0] = a;
    t[2] = b;
    return t;
  }
  if (o == c && op == cp) t[1] = 1.0;
  return t;
}

TPoly identity_transfer(int o, int op, int c, int cp) {
  TPoly t{};
  if (o == c && op == cp) t[0] = 1.0;
  return t;
}

}  // namespace

const char* block_class_name(BlockClass cls) {
  switch (cls) {
    case BlockClass::X:
      return "X";
    case BlockClass::Yb:
      return "Yb";
    case BlockClass::Yc:
      return "Yc";
  }
  return "?";
}

double PartitionView::xi() const { return std::sqrt(z * z + std::norm(x)); }

double PartitionView::det() const {
  const double s = xi();
  return weight * weight - s * s;
}

PartitionView partition(const BlockParams& params, Partition u) {
  if (u == Partition::a) return {1.0 + params.delta, params.z_a, params.x_a};
  return {1.0 - params.delta, params.z_b, params.x_b};
}

PartitionView partition_rate(const BlockParams& rates, Partition u) {
  if (u == Partition::a) return {rates.delta, rates.z_a, rates.x_a};
  return {-rates.delta, rates.z_b, rates.x_b};
}

bool matches_class(const DensityMatrix& rho, BlockClass cls) {
  if (rho.dim() != 4) return false;
  const BlockLayout l = layout_of(cls);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!in_pattern(l, i, j) && std::abs(rho(i, j)) > kTol.block_pattern) return false;
    }
  }
  return true;
}

std::optional<BlockClass> classify(const DensityMatrix& rho) {
  for (BlockClass cls : {BlockClass::X, BlockClass::Yb, BlockClass::Yc}) {
    if (matches_class(rho, cls)) return cls;
  }
  return std::nullopt;
}

BlockParams extract_block_params(const DensityMatrix& rho, BlockClass cls) {
  if (!matches_class(rho, cls)) {
    throw std::invalid_argument(std::string("state does not have the ") +
                                block_class_name(cls) + " block pattern");
  }
  const BlockLayout l = layout_of(cls);
  auto z = [&](int i) { return 4.0 * rho(i, i).real() - 1.0; };
  BlockParams out;
  out.delta = 0.5 * (z(l.a0) + z(l.a1));
  out.z_a = 0.5 * (z(l.a0) - z(l.a1));
  out.z_b = 0.5 * (z(l.b0) - z(l.b1));
  const cplx xa = 4.0 * rho(l.a0, l.a1);
  const cplx xb = 4.0 * rho(l.b0, l.b1);
  out.x_a = l.conj_a ? std::conj(xa) : xa;
  out.x_b = l.conj_b ? std::conj(xb) : xb;
  return out;
}

std::pair<BlockClass, BlockParams> classify_and_extract(const DensityMatrix& rho) {
  const auto cls = classify(rho);
  if (!cls) throw std::invalid_argument("state matches none of the X, Yb, Yc patterns");
  return {*cls, extract_block_params(rho, *cls)};
}

ComplexMatrix block_increment(BlockClass cls, const BlockParams& rates) {
  const BlockLayout l = layout_of(cls);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(l.a0, l.a0) = (rates.delta + rates.z_a) / 4.0;
  m(l.a1, l.a1) = (rates.delta - rates.z_a) / 4.0;
  m(l.b0, l.b0) = (-rates.delta + rates.z_b) / 4.0;
  m(l.b1, l.b1) = (-rates.delta - rates.z_b) / 4.0;
  const cplx xa = (l.conj_a ? std::conj(rates.x_a) : rates.x_a) / 4.0;
  const cplx xb = (l.conj_b ? std::conj(rates.x_b) : rates.x_b) / 4.0;
  m(l.a0, l.a1) = xa;
  m(l.a1, l.a0) = std::conj(xa);
  m(l.b0, l.b1) = xb;
  m(l.b1, l.b0) = std::conj(xb);
  return m;
}

DensityMatrix block_density(BlockClass cls, const BlockParams& params) {
  ComplexMatrix m = block_increment(cls, params);
  m += ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(m);
}

std::array<double, 4> block_eigenvalues(const BlockParams& params) {
  const PartitionView a = partition(params, Partition::a);
  const PartitionView b = partition(params, Partition::b);
  return {(a.weight + a.xi()) / 4.0, (a.weight - a.xi()) / 4.0, (b.weight + b.xi()) / 4.0,
          (b.weight - b.xi()) / 4.0};
}

MetricValue block_metric(const BlockParams& params, const BlockParams& rates, McKind kind) {
  double total = 0.0;
  for (Partition u : {Partition::a, Partition::b}) {
    const MetricValue part = partition_metric(partition(params, u), partition_rate(rates, u), kind);
    if (part.diverged) return MetricValue::infinite();
    total += part.value;
  }
  return {total, false};
}

double block_metric_maximal(const BlockParams& params, const BlockParams& rates) {
  double total = 0.0;
  for (Partition u : {Partition::a, Partition::b}) {
    const PartitionView v = partition(params, u);
    const PartitionView dv = partition_rate(rates, u);
    const Vec3 r = bloch_part(v);
    const Vec3 dr = bloch_part(dv);
    const double det = v.det();
    total += v.weight * (dot(dr, dr) + dv.weight * dv.weight) / (8.0 * det) -
             dv.weight * dot(r, dr) / (4.0 * det);
  }
  return total;
}

double partition_transfer(const BlockParams& params, const BlockParams& rates) {
  const PartitionView a = partition(params, Partition::a);
  const PartitionView b = partition(params, Partition::b);
  const PartitionView da = partition_rate(rates, Partition::a);
  const PartitionView db = partition_rate(rates, Partition::b);
  auto det_rate = [](const PartitionView& v, const PartitionView& dv) {
    return 2.0 * (v.weight * dv.weight - dot(bloch_part(v), bloch_part(dv)));
  };
  const double d_a = a.det();
  const double d_b = b.det();
  const double log_rate = det_rate(a, da) / d_a - det_rate(b, db) / d_b;
  const double dd = rates.delta;
  return log_rate - dd * (1.0 / d_a + 1.0 / d_b) - dd * params.delta * (1.0 / d_a - 1.0 / d_b);
}

double block_metric_maximal_rearranged(const BlockParams& params, const BlockParams& rates) {
  double total = rates.delta / 8.0 * partition_transfer(params, rates);
  for (Partition u : {Partition::a, Partition::b}) {
    const PartitionView v = partition(params, u);
    const Vec3 dr = bloch_part(partition_rate(rates, u));
    total += v.weight * dot(dr, dr) / (8.0 * v.det());
  }
  return total;
}

double block_metric_bures(const BlockParams& params, const BlockParams& rates) {
  double total = 0.0;
  for (Partition u : {Partition::a, Partition::b}) {
    const PartitionView v = partition(params, u);
    const PartitionView dv = partition_rate(rates, u);
    const Vec3 dr = bloch_part(dv);
    const double d_det = 2.0 * (v.weight * dv.weight - dot(bloch_part(v), dr));
    total += dot(dr, dr) / (8.0 * v.weight) + d_det * d_det / (32.0 * v.weight * v.det());
  }
  return total;
}

const char* element_kind_name(ElementKind kind) {
  switch (kind) {
    case ElementKind::population:
      return "population";
    case ElementKind::mixed:
      return "mixed";
    case ElementKind::coherence:
      return "coherence";
  }
  return "?";
}

cplx ElementTrajectory::value(double lambda) const {
  const double s = 1.0 - lambda;
  const cplx poly = coeffs[0] + s * (coeffs[1] + s * coeffs[2]);
  return sqrt_factor ? std::sqrt(std::max(s, 0.0)) * poly : poly;
}

std::vector<ElementTrajectory> element_trajectories(const DensityMatrix& rho0, BlockClass cls,
                                                    const GadChannel& ch,
                                                    ChannelLayout layout) {
  if (layout != ChannelLayout::a_only && layout != ChannelLayout::both) {
    throw std::invalid_argument("element trajectories need the a_only or both layout");
  }
  if (!matches_class(rho0, cls)) {
    throw std::invalid_argument(std::string("state does not have the ") +
                                block_class_name(cls) + " block pattern");
  }
  const BlockLayout l = layout_of(cls);
  const double p = ch.p();
  const bool on_b = layout == ChannelLayout::both;

  std::vector<ElementTrajectory> out;
  for (int row = 0; row < 4; ++row) {
    for (int col = row; col < 4; ++col) {
      if (!in_pattern(l, row, col)) continue;
      const int oa = row / 2, ob = row % 2, oap = col / 2, obp = col % 2;
      TPoly total{};
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          const cplx v = rho0(i, j);
          if (v == cplx{}) continue;
          const int ca = i / 2, cb = i % 2, cap = j / 2, cbp = j % 2;
          const TPoly ta = qubit_transfer(p, oa, oap, ca, cap);
          const TPoly tb = on_b ? qubit_transfer(p, ob, obp, cb, cbp)
                                : identity_transfer(ob, obp, cb, cbp);
          const TPoly t = poly_mul(ta, tb);
          for (int k = 0; k < 5; ++k) total[k] += v * t[k];
        }
      }

      ElementTrajectory tr;
      tr.row = row;
      tr.col = col;
      const bool off_a = oa != oap;
      const bool off_b = ob != obp;
      if (row == col) {
        tr.kind = ElementKind::population;
      } else if (on_b) {
        tr.kind = (off_a && off_b) ? ElementKind::coherence : ElementKind::mixed;
      } else {
        tr.kind = off_a ? ElementKind::coherence : ElementKind::mixed;
      }
      const int affected_offdiag = static_cast<int>(off_a) + (on_b ? static_cast<int>(off_b) : 0);
      tr.sqrt_factor = (affected_offdiag % 2) == 1;
      const int shift = tr.sqrt_factor ? 1 : 0;
      for (int k = 0; k < 3; ++k) {
        const int idx = 2 * k + shift;
        if (idx < 5) tr.coeffs[k] = total[idx];
      }
      out.push_back(tr);
    }
  }
  return out;
}

ComplexMatrix evaluate_trajectories(const std::vector<ElementTrajectory>& trajectories,
                                    double lambda) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (const auto& tr : trajectories) {
    const cplx v = tr.value(lambda);
    m(tr.row, tr.col) = v;
    m(tr.col, tr.row) = std::conj(v);
  }
  m.diagonal() = m.diagonal().real().cast<cplx>();
  return m;
}

}  // namespace qgeo
