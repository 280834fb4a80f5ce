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

#include <span>
#include <string_view>
#include <vector>

#include "qgeo/channel.hpp"
#include "qgeo/density.hpp"
#include "qgeo/tolerances.hpp"

namespace qgeo {

/// Contractive (monotone) metric, selected by its Morozova-Chentsov function.
enum class McKind {
  bures,          // f(t) = (1 + t) / 2, the quantum Fisher metric
  minimal,        // f(t) = 2t / (1 + t), the largest contractive metric
  wigner_yanase,  // f(t) = (sqrt(t) + 1)^2 / 4
};

const char* mc_kind_name(McKind kind);
/// Accepts "bures", "minimal", "wy" and "wigner_yanase".
McKind parse_mc_kind(std::string_view name);

double mc_function(McKind kind, double t);

/// c^f(u, w) = 1 / (w f(u / w)). Throws std::invalid_argument unless u, w > 0.
double c_function(McKind kind, double u, double w);

/// c^f extended to u, w >= 0 using the simplified closed forms. Returns +inf
/// where the kind diverges on the boundary.
double c_weight(McKind kind, double u, double w);

/// A metric value that may be flagged as divergent. A divergent value
/// carries value = +inf.
struct MetricValue {
  double value = 0.0;
  bool diverged = false;

  static MetricValue infinite();
};

/// Gamma_rho(a, b) = 1/4 sum_ij c^f(p_i, p_j) Re(conj(a_ij) b_ij) in the
/// eigenbasis of rho, with c^f(p, p) = 1/p on the diagonal.
///
/// Eigenvalues below kTol.eigenvalue_floor count as zero. When a weight is
/// infinite there and a or b has support on that component, the result is
/// flagged divergent.
MetricValue metric_form(const DensityMatrix& rho, const ComplexMatrix& a,
                        const ComplexMatrix& b, McKind kind);
MetricValue metric_form(const DensityMatrix& rho, const ComplexMatrix& a, McKind kind);

/// Population (eigenvalue) and coherence (eigenvector rotation) parts of
/// Gamma_rho(a, a).
struct MetricParts {
  double classical = 0.0;
  double coherent = 0.0;
  bool diverged = false;

  double total() const { return classical + coherent; }
};

MetricParts metric_parts(const DensityMatrix& rho, const ComplexMatrix& a, McKind kind);

struct SpeedSample {
  double f_part = 0.0;    // classical part of g
  double q_part = 0.0;    // coherence part of g
  double g_lambda = 0.0;  // time-free speed, (1 - lambda)^2 G
  double G_lambda = 0.0;  // metric component along lambda
  double lambda = 0.0;
  bool diverged = false;
};

/// Speed of lambda -> Phi_lambda(rho0) at ch.lambda() by finite differences
/// in the eigenbasis of the evolved state. ch.lambda() must be below 1.
SpeedSample speed_numeric(const DensityMatrix& rho0, const GadChannel& ch,
                          ChannelLayout layout, McKind kind,
                          double eps = kTol.fd_eps);

/// Closed-form Bures speed g of a thermalising qubit, evaluated on the state
/// evolved to lambda. The frame is rotated about z so that y = 0, which
/// leaves the speed unchanged. Flags divergence when 1 - r^2 < floor.
MetricValue qubit_g_closed(const BlochVector& b0, double alpha, double lambda);

/// Qubit metric in polar form, 1/4 (dr^2 / (1 - r^2) + c^f(p1, p2) / 2 dn^2),
/// for a Bloch displacement db.
MetricValue qubit_metric_closed(const BlochVector& b, const BlochVector& db, McKind kind);

/// 1/4 |db|^2 / (1 - r^2).
double qubit_metric_maximal_cartesian(const BlochVector& b, const BlochVector& db);
/// 1/4 (|db|^2 + (b . db)^2 / (1 - r^2)).
double qubit_metric_bures_cartesian(const BlochVector& b, const BlochVector& db);

/// Bures speed of the free rotation, omega^2 / 4 (x^2 + y^2).
double hamiltonian_speed_qubit(const BlochVector& b, double omega);

/// Infinitesimal dissipation-plus-rotation schemes.
enum class Scheme {
  single_qubit,             // U Phi on one qubit
  dissipate_b_rotate_b,     // I_A (x) U_B Phi_B
  dissipate_b_rotate_a,     // U_A (x) Phi_B
  dissipate_both_rotate_b,  // Phi_A (x) U_B Phi_B
  dissipate_a_rotate_both,  // U_A Phi_A (x) U_B
};

struct SchemeLayout {
  ChannelLayout dissipation;
  ChannelLayout rotation;
};

SchemeLayout scheme_layout(Scheme s);
/// "single", "i", "ii", "iii", "iv".
const char* scheme_label(Scheme s);
Scheme parse_scheme(std::string_view label);

struct DecompositionCheck {
  double cross_residual = 0.0;  // |Gamma(a, b)| / sqrt(Gamma(a, a) Gamma(b, b))
  bool separable = false;
  bool zero_speed = false;      // one increment vanished; residual undefined
  bool diverged = false;
  double schrodinger = 0.0;     // V_S^2
  double interaction = 0.0;     // V_I^2
  double hamiltonian = 0.0;     // V_H^2
};

/// Orthogonality of the dissipative and Hamiltonian increments at
/// Phi_lambda(rho0). The cross term comes from polarization.
DecompositionCheck decomposition_check(const DensityMatrix& rho0, Scheme scheme,
                                       const GadChannel& ch, const HamiltonianParams& h,
                                       McKind kind, const TimeMap& tm = TimeMap{},
                                       double eps = kTol.fd_eps);

struct DeltaG {
  double global = 0.0;   // G^AB under Phi (x) Phi
  double local_a = 0.0;  // G^A of the reduced state under Phi
  double local_b = 0.0;
  double value = 0.0;    // G^AB - G^A - G^B
  bool diverged = false;
};

DeltaG delta_G(const DensityMatrix& rho, const GadChannel& ch, McKind kind,
               double eps = kTol.fd_eps);

struct SpeedPoint {
  double t = 0.0;
  double lambda = 0.0;
  double v2 = 0.0;  // G_tt = eta^2 g
  bool diverged = false;
};

/// Squared speed along the trajectory at the given times, sorted by t.
/// Only ch.p() is used; lambda follows from each time.
std::vector<SpeedPoint> speed_monotonicity_scan(const DensityMatrix& rho0,
                                                const GadChannel& ch,
                                                ChannelLayout layout, McKind kind,
                                                std::span<const double> times,
                                                const TimeMap& tm = TimeMap{},
                                                double eps = kTol.fd_eps);

}  // namespace qgeo
