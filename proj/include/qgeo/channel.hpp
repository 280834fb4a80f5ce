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

#include <array>
#include <vector>

#include "qgeo/density.hpp"
#include "qgeo/tolerances.hpp"

namespace qgeo {

/// Generalized amplitude damping map with excitation probability p and
/// damping lambda. The fixed point has z coordinate alpha = 2p - 1.
class GadChannel {
 public:
  GadChannel(double p, double lambda);
  static GadChannel from_alpha(double alpha, double lambda);

  double p() const { return p_; }
  double lambda() const { return lambda_; }
  double alpha() const { return 2.0 * p_ - 1.0; }

  /// Same bath, different damping.
  GadChannel at(double lambda) const { return GadChannel(p_, lambda); }

 private:
  double p_;
  double lambda_;
};

/// Which qubits the thermalising map acts on.
enum class ChannelLayout { single_qubit, a_only, b_only, both };

Eigen::Index layout_dim(ChannelLayout layout);
const char* layout_name(ChannelLayout layout);

/// Free Hamiltonian H = omega sz / 2 per qubit.
struct HamiltonianParams {
  double omega = 1.0;
};

/// lambda = 1 - exp(-eta t).
class TimeMap {
 public:
  explicit TimeMap(double eta = 1.0);
  double eta() const { return eta_; }

 private:
  double eta_;
};

std::array<ComplexMatrix, 4> gad_kraus(const GadChannel& ch);

/// Kraus operators of the map lifted to the layout (E_i (x) I, I (x) E_i,
/// or E_i (x) E_j for both qubits at the same temperature).
std::vector<ComplexMatrix> lifted_kraus(const GadChannel& ch, ChannelLayout layout);

DensityMatrix apply_channel(const DensityMatrix& rho, const GadChannel& ch,
                            ChannelLayout layout);

/// Closed-form Bloch action: z -> alpha + (z - alpha)(1 - lambda),
/// x, y -> sqrt(1 - lambda) x, y.
BlochVector evolve_bloch_closed(const BlochVector& b0, double alpha, double lambda);

/// Gibbs state (I + alpha sz) / 2.
DensityMatrix fixed_point(double alpha);

/// -i omega / 2 times the sum of sz over the supported qubits.
ComplexMatrix hamiltonian(const HamiltonianParams& h, ChannelLayout support);

/// d/dlambda of lambda -> Phi_lambda(rho0) at ch.lambda(), per unit lambda.
///
/// Central differences in the interior. Within eps of either end of [0, 1]
/// a one-sided second-order stencil is used instead. The result is projected
/// onto Hermitian traceless matrices, which the exact derivative is.
ComplexMatrix lambda_derivative(const DensityMatrix& rho0, const GadChannel& ch,
                                ChannelLayout layout, double eps = kTol.fd_eps);

struct Increments {
  ComplexMatrix dissipative;  // d rho / d lambda at the evolved state
  ComplexMatrix hamiltonian;  // -i [H, rho(lambda)] per unit time
};

/// Increments at rho(lambda) = Phi_lambda(rho0). The Hamiltonian acts on the
/// same qubits as the map unless hamiltonian_support says otherwise.
Increments increments(const DensityMatrix& rho0, const GadChannel& ch,
                      ChannelLayout layout, const HamiltonianParams& h,
                      double eps = kTol.fd_eps);
Increments increments(const DensityMatrix& rho0, const GadChannel& ch,
                      ChannelLayout layout, const HamiltonianParams& h,
                      ChannelLayout hamiltonian_support, double eps = kTol.fd_eps);

double lambda_of_time(double t, const TimeMap& tm);

}  // namespace qgeo
