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

#include "qgeo/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Squared speeds below this are treated as an exactly vanishing increment.
constexpr double kZeroSpeed = 1e-24;

void require_square_match(const DensityMatrix& rho, const ComplexMatrix& a,
                          const char* what) {
  if (a.rows() != rho.dim() || a.cols() != rho.dim()) {
    throw std::invalid_argument(std::string(what) + ": increment dimension mismatch");
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if (max_abs_diff(a, a.adjoint()) > kTol.hermitian * scale) {
    throw std::invalid_argument(std::string(what) + ": increment is not Hermitian");
  }
}

struct Eigenframe {
  Eigen::VectorXd p;  // clamped to zero below the floor
  ComplexMatrix v;
};

Eigenframe eigenframe(const DensityMatrix& rho) {
  EigenDecomposition ed = eig_hermitian(rho);
  for (Eigen::Index k = 0; k < ed.values.size(); ++k) {
    if (ed.values(k) < kTol.eigenvalue_floor) ed.values(k) = 0.0;
  }
  return {ed.values, ed.vectors};
}

}  // namespace

double c_weight(McKind kind, double u, double w) {
  switch (kind) {
    case McKind::bures: {
      const double s = u + w;
      return s > 0.0 ? 2.0 / s : kInf;
    }
    case McKind::minimal:
      return (u > 0.0 && w > 0.0) ? (u + w) / (2.0 * u * w) : kInf;
    case McKind::wigner_yanase: {
      const double s = std::sqrt(u) + std::sqrt(w);
      return s > 0.0 ? 4.0 / (s * s) : kInf;
    }
  }
  return kInf;
}

const char* mc_kind_name(McKind kind) {
  switch (kind) {
    case McKind::bures: return "bures";
    case McKind::minimal: return "minimal";
    case McKind::wigner_yanase: return "wy";
  }
  return "unknown";
}

McKind parse_mc_kind(std::string_view name) {
  if (name == "bures") return McKind::bures;
  if (name == "minimal") return McKind::minimal;
  if (name == "wy" || name == "wigner_yanase") return McKind::wigner_yanase;
  throw std::invalid_argument("unknown metric kind: " + std::string(name));
}

double mc_function(McKind kind, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("mc_function: t must be positive");
  switch (kind) {
    case McKind::bures: return 0.5 * (1.0 + t);
    case McKind::minimal: return 2.0 * t / (1.0 + t);
    case McKind::wigner_yanase: {
      const double s = std::sqrt(t) + 1.0;
      return 0.25 * s * s;
    }
  }
  return 0.0;
}

double c_function(McKind kind, double u, double w) {
  if (!(u > 0.0 && w > 0.0)) {
    throw std::invalid_argument("c_function: arguments must be positive");
  }
  return 1.0 / (w * mc_function(kind, u / w));
}

MetricValue MetricValue::infinite() { return {kInf, true}; }

MetricValue metric_form(const DensityMatrix& rho, const ComplexMatrix& a,
                        const ComplexMatrix& b, McKind kind) {
  require_square_match(rho, a, "metric_form");
  require_square_match(rho, b, "metric_form");
  const Eigenframe ef = eigenframe(rho);
  const ComplexMatrix ra = ef.v.adjoint() * a * ef.v;
  const ComplexMatrix rb = ef.v.adjoint() * b * ef.v;
  double sum = 0.0;
  const Eigen::Index n = rho.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = c_weight(kind, ef.p(i), ef.p(j));
      if (std::isinf(w)) {
        if (std::abs(ra(i, j)) > kTol.support || std::abs(rb(i, j)) > kTol.support) {
          return MetricValue::infinite();
        }
        continue;
      }
      sum += w * (std::conj(ra(i, j)) * rb(i, j)).real();
    }
  }
  return {0.25 * sum, false};
}

MetricValue metric_form(const DensityMatrix& rho, const ComplexMatrix& a, McKind kind) {
  return metric_form(rho, a, a, kind);
}

MetricParts metric_parts(const DensityMatrix& rho, const ComplexMatrix& a, McKind kind) {
  require_square_match(rho, a, "metric_parts");
  const Eigenframe ef = eigenframe(rho);
  const ComplexMatrix ra = ef.v.adjoint() * a * ef.v;
  MetricParts out;
  const Eigen::Index n = rho.dim();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = c_weight(kind, ef.p(i), ef.p(j));
      const double mod2 = std::norm(ra(i, j));
      if (std::isinf(w)) {
        if (std::sqrt(mod2) > kTol.support) {
          return {kInf, kInf, true};
        }
        continue;
      }
      (i == j ? out.classical : out.coherent) += 0.25 * w * mod2;
    }
  }
  return out;
}

SpeedSample speed_numeric(const DensityMatrix& rho0, const GadChannel& ch,
                          ChannelLayout layout, McKind kind, double eps) {
  const double lam = ch.lambda();
  if (!(lam < 1.0)) {
    throw std::invalid_argument("speed_numeric: lambda must be below 1");
  }
  const DensityMatrix rho = apply_channel(rho0, ch, layout);
  const ComplexMatrix d = (1.0 - lam) * lambda_derivative(rho0, ch, layout, eps);
  const MetricParts parts = metric_parts(rho, d, kind);
  SpeedSample s;
  s.lambda = lam;
  if (parts.diverged) {
    s.f_part = s.q_part = s.g_lambda = s.G_lambda = kInf;
    s.diverged = true;
    return s;
  }
  s.f_part = parts.classical;
  s.q_part = parts.coherent;
  s.g_lambda = parts.total();
  s.G_lambda = s.g_lambda / ((1.0 - lam) * (1.0 - lam));
  return s;
}

MetricValue qubit_g_closed(const BlochVector& b0, double alpha, double lambda) {
  if (b0.radius_squared() > 1.0 + kTol.bloch_radius) {
    throw std::invalid_argument("qubit_g_closed: |r| > 1 is not a state");
  }
  const BlochVector b = evolve_bloch_closed(b0, alpha, lambda);
  const double defect = b.purity_defect();
  if (defect < kTol.eigenvalue_floor) return MetricValue::infinite();
  const double z_rel = b.z - alpha;
  const double transverse2 = b.x * b.x + b.y * b.y;
  const double tilt = b.z - 2.0 * alpha;
  const double num = z_rel * z_rel + 0.25 * transverse2 * (1.0 - tilt * tilt);
  return {0.25 * num / defect, false};
}

MetricValue qubit_metric_closed(const BlochVector& b, const BlochVector& db, McKind kind) {
  const double r2 = b.radius_squared();
  if (r2 > 1.0 + kTol.bloch_radius) {
    throw std::invalid_argument("qubit_metric_closed: |r| > 1 is not a state");
  }
  const double r = std::sqrt(r2);
  const double db2 = db.radius_squared();
  double dr = 0.0;
  double dn2 = db2;
  if (r > 0.0) {
    dr = (b.x * db.x + b.y * db.y + b.z * db.z) / r;
    dn2 = std::max(db2 - dr * dr, 0.0);
  }
  const double defect = 1.0 - r2;
  const double p1 = 0.5 * (1.0 + r);
  const double p2 = 0.5 * (1.0 - r);
  const double c = c_weight(kind, p1, p2 < kTol.eigenvalue_floor ? 0.0 : p2);
  const bool radial_blows = defect < kTol.eigenvalue_floor && std::abs(dr) > kTol.support;
  const bool transverse_blows = std::isinf(c) && std::sqrt(dn2) > kTol.support;
  if (radial_blows || transverse_blows) return MetricValue::infinite();
  double value = 0.0;
  if (defect >= kTol.eigenvalue_floor) value += dr * dr / defect;
  if (!std::isinf(c)) value += 0.5 * c * dn2;
  return {0.25 * value, false};
}

double qubit_metric_maximal_cartesian(const BlochVector& b, const BlochVector& db) {
  return 0.25 * db.radius_squared() / b.purity_defect();
}

double qubit_metric_bures_cartesian(const BlochVector& b, const BlochVector& db) {
  const double dot = b.x * db.x + b.y * db.y + b.z * db.z;
  return 0.25 * (db.radius_squared() + dot * dot / b.purity_defect());
}

double hamiltonian_speed_qubit(const BlochVector& b, double omega) {
  return 0.25 * omega * omega * (b.x * b.x + b.y * b.y);
}

SchemeLayout scheme_layout(Scheme s) {
  switch (s) {
    case Scheme::single_qubit:
      return {ChannelLayout::single_qubit, ChannelLayout::single_qubit};
    case Scheme::dissipate_b_rotate_b:
      return {ChannelLayout::b_only, ChannelLayout::b_only};
    case Scheme::dissipate_b_rotate_a:
      return {ChannelLayout::b_only, ChannelLayout::a_only};
    case Scheme::dissipate_both_rotate_b:
      return {ChannelLayout::both, ChannelLayout::b_only};
    case Scheme::dissipate_a_rotate_both:
      return {ChannelLayout::a_only, ChannelLayout::both};
  }
  return {ChannelLayout::single_qubit, ChannelLayout::single_qubit};
}

const char* scheme_label(Scheme s) {
  switch (s) {
    case Scheme::single_qubit: return "single";
    case Scheme::dissipate_b_rotate_b: return "i";
    case Scheme::dissipate_b_rotate_a: return "ii";
    case Scheme::dissipate_both_rotate_b: return "iii";
    case Scheme::dissipate_a_rotate_both: return "iv";
  }
  return "unknown";
}

Scheme parse_scheme(std::string_view label) {
  for (Scheme s : {Scheme::single_qubit, Scheme::dissipate_b_rotate_b,
                   Scheme::dissipate_b_rotate_a, Scheme::dissipate_both_rotate_b,
                   Scheme::dissipate_a_rotate_both}) {
    if (label == scheme_label(s)) return s;
  }
  throw std::invalid_argument("unknown scheme: " + std::string(label));
}

DecompositionCheck decomposition_check(const DensityMatrix& rho0, Scheme scheme,
                                       const GadChannel& ch, const HamiltonianParams& h,
                                       McKind kind, const TimeMap& tm, double eps) {
  const SchemeLayout sl = scheme_layout(scheme);
  if (!(ch.lambda() < 1.0)) {
    throw std::invalid_argument("decomposition_check: lambda must be below 1");
  }
  const Increments inc = increments(rho0, ch, sl.dissipation, h, sl.rotation, eps);
  const DensityMatrix rho = apply_channel(rho0, ch, sl.dissipation);
  // Per unit time: d lambda / dt = eta (1 - lambda).
  const ComplexMatrix a = tm.eta() * (1.0 - ch.lambda()) * inc.dissipative;
  const ComplexMatrix& b = inc.hamiltonian;

  DecompositionCheck out;
  const MetricValue vi = metric_form(rho, a, kind);
  const MetricValue vh = metric_form(rho, b, kind);
  const MetricValue vs = metric_form(rho, a + b, kind);
  out.interaction = vi.value;
  out.hamiltonian = vh.value;
  out.schrodinger = vs.value;
  if (vi.diverged || vh.diverged || vs.diverged) {
    out.diverged = true;
    out.cross_residual = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (vi.value < kZeroSpeed || vh.value < kZeroSpeed) {
    out.zero_speed = true;
    out.separable = true;
    return out;
  }
  const double cross = 0.5 * (vs.value - vi.value - vh.value);
  out.cross_residual = std::abs(cross) / std::sqrt(vi.value * vh.value);
  out.separable = out.cross_residual < kTol.separable_residual;
  return out;
}

DeltaG delta_G(const DensityMatrix& rho, const GadChannel& ch, McKind kind, double eps) {
  if (rho.dim() != 4) throw std::invalid_argument("delta_G: two-qubit state required");
  DeltaG out;
  const SpeedSample global = speed_numeric(rho, ch, ChannelLayout::both, kind, eps);
  const SpeedSample la = speed_numeric(partial_trace(rho, Subsystem::A), ch,
                                       ChannelLayout::single_qubit, kind, eps);
  const SpeedSample lb = speed_numeric(partial_trace(rho, Subsystem::B), ch,
                                       ChannelLayout::single_qubit, kind, eps);
  out.global = global.G_lambda;
  out.local_a = la.G_lambda;
  out.local_b = lb.G_lambda;
  if (global.diverged || la.diverged || lb.diverged) {
    out.diverged = true;
    // +inf when only the global speed diverges, NaN otherwise.
    out.value = (global.diverged && !la.diverged && !lb.diverged)
                    ? kInf
                    : std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.value = out.global - out.local_a - out.local_b;
  return out;
}

std::vector<SpeedPoint> speed_monotonicity_scan(const DensityMatrix& rho0,
                                                const GadChannel& ch,
                                                ChannelLayout layout, McKind kind,
                                                std::span<const double> times,
                                                const TimeMap& tm, double eps) {
  std::vector<double> sorted(times.begin(), times.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<SpeedPoint> out;
  out.reserve(sorted.size());
  for (double t : sorted) {
    const double lam = lambda_of_time(t, tm);
    if (!(lam < 1.0)) break;  // lambda saturates at 1 in double precision
    const SpeedSample s = speed_numeric(rho0, ch.at(lam), layout, kind, eps);
    out.push_back({t, lam, tm.eta() * tm.eta() * s.g_lambda, s.diverged});
  }
  return out;
}

}  // namespace qgeo
