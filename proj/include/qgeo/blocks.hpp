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
#include <optional>
#include <utility>
#include <vector>

#include "qgeo/channel.hpp"
#include "qgeo/density.hpp"
#include "qgeo/metric.hpp"

namespace qgeo {

/// Two-qubit states whose only coherences pair up basis states into two
/// 2x2 blocks ("partitions" a and b):
///   X:  {|00>,|11>} and {|01>,|10>}  (correlation coherences)
///   Yb: {|00>,|01>} and {|10>,|11>}  (coherences of qubit B)
///   Yc: {|00>,|10>} and {|01>,|11>}  (coherences of qubit A)
enum class BlockClass { X, Yb, Yc };

const char* block_class_name(BlockClass cls);

/// Partition parameters. With rho_ii = (1 + z_i) / 4, each block is
/// (1/4) [[delta_u + z_u, x_u], [conj(x_u), delta_u - z_u]] where
/// delta_a = 1 + delta and delta_b = 1 - delta.
///
/// The same struct holds lambda-derivatives of the parameters.
struct BlockParams {
  double z_a = 0.0;
  double z_b = 0.0;
  cplx x_a{};
  cplx x_b{};
  double delta = 0.0;
};

enum class Partition { a, b };

/// One partition seen as an unnormalised qubit.
struct PartitionView {
  double weight = 0.0;  // delta_u
  double z = 0.0;
  cplx x{};

  double xi() const;   // sqrt(z^2 + |x|^2)
  double det() const;  // D_u = delta_u^2 - xi_u^2
};

PartitionView partition(const BlockParams& params, Partition u);
/// Rates of one partition; the weight rate is +/- d(delta).
PartitionView partition_rate(const BlockParams& rates, Partition u);

bool matches_class(const DensityMatrix& rho, BlockClass cls);
/// First matching class in the order X, Yb, Yc.
std::optional<BlockClass> classify(const DensityMatrix& rho);

BlockParams extract_block_params(const DensityMatrix& rho, BlockClass cls);
/// Throws std::invalid_argument when rho matches no class.
std::pair<BlockClass, BlockParams> classify_and_extract(const DensityMatrix& rho);

DensityMatrix block_density(BlockClass cls, const BlockParams& params);
/// d rho for parameter rates (linear part of block_density).
ComplexMatrix block_increment(BlockClass cls, const BlockParams& rates);

/// {p_a1, p_a2, p_b1, p_b2} with p_u = (delta_u +/- xi_u) / 4.
std::array<double, 4> block_eigenvalues(const BlockParams& params);

/// G = sum_u F^u + Q^u with
///   F^u = (1/8) [delta (d_delta^2 + d_xi^2) - 2 xi d_delta d_xi] / D_u,
///   Q^u = c^f(p_u1, p_u2) |v x dv|^2 / (32 xi^2),
/// where v = (z_u, Re x_u, Im x_u).
MetricValue block_metric(const BlockParams& params, const BlockParams& rates, McKind kind);

/// Largest contractive metric, sum_u delta_u/8 (|dv|^2 + d_delta^2) / D_u
///   - 1/4 d_delta (v . dv) / D_u.
double block_metric_maximal(const BlockParams& params, const BlockParams& rates);

/// Same metric with the partition-transfer term isolated:
///   d_Delta/8 T(D_a, D_b) + sum_u delta_u/8 |dv_u|^2 / D_u,
///   T(X, Y) = d/dlambda log(X/Y) - d_Delta (1/X + 1/Y) - d_Delta Delta (1/X - 1/Y).
double block_metric_maximal_rearranged(const BlockParams& params, const BlockParams& rates);

/// Transfer term T(D_a, D_b) of block_metric_maximal_rearranged.
double partition_transfer(const BlockParams& params, const BlockParams& rates);

/// Bures metric, sum_u |dv_u|^2 / (8 delta_u) + dD_u^2 / (32 delta_u D_u).
double block_metric_bures(const BlockParams& params, const BlockParams& rates);

enum class ElementKind { population, mixed, coherence };

const char* element_kind_name(ElementKind kind);

/// Closed-form evolution of one matrix element,
///   psi(lambda) = (sqrt(1 - lambda) if sqrt_factor) * sum_k coeffs[k] (1 - lambda)^k.
struct ElementTrajectory {
  int row = 0;
  int col = 0;
  ElementKind kind = ElementKind::population;
  bool sqrt_factor = false;
  std::array<cplx, 3> coeffs{};

  cplx value(double lambda) const;
  cplx initial() const { return value(0.0); }
  cplx fixed() const { return value(1.0); }
  /// Coefficient of (1 - lambda)^2 in the population law under Phi (x) Phi.
  cplx quadratic() const { return coeffs[2]; }
};

/// Element laws for every entry in the class's support (diagonal included).
/// layout must be a_only or both.
std::vector<ElementTrajectory> element_trajectories(const DensityMatrix& rho0,
                                                    BlockClass cls,
                                                    const GadChannel& ch,
                                                    ChannelLayout layout);

ComplexMatrix evaluate_trajectories(const std::vector<ElementTrajectory>& trajectories,
                                    double lambda);

}  // namespace qgeo
