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

#include "qgeo/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qgeo {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
  }
}

ComplexMatrix hermitian_traceless(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const cplx shift = h.trace() / static_cast<double>(h.rows());
  h.diagonal().array() -= shift;
  return h;
}

}  // namespace

GadChannel::GadChannel(double p, double lambda) : p_(p), lambda_(lambda) {
  require_unit_interval(p, "GadChannel: p");
  require_unit_interval(lambda, "GadChannel: lambda");
}

GadChannel GadChannel::from_alpha(double alpha, double lambda) {
  if (!(alpha >= -1.0 && alpha <= 1.0)) {
    throw std::invalid_argument("GadChannel: alpha must lie in [-1, 1]");
  }
  return GadChannel(0.5 * (1.0 + alpha), lambda);
}

Eigen::Index layout_dim(ChannelLayout layout) {
  return layout == ChannelLayout::single_qubit ? 2 : 4;
}

const char* layout_name(ChannelLayout layout) {
  switch (layout) {
    case ChannelLayout::single_qubit: return "single_qubit";
    case ChannelLayout::a_only: return "a_only";
    case ChannelLayout::b_only: return "b_only";
    case ChannelLayout::both: return "both";
  }
  return "unknown";
}

TimeMap::TimeMap(double eta) : eta_(eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::invalid_argument("TimeMap: eta must be positive and finite");
  }
}

std::array<ComplexMatrix, 4> gad_kraus(const GadChannel& ch) {
  const double sp = std::sqrt(ch.p());
  const double sq = std::sqrt(1.0 - ch.p());
  const double sl = std::sqrt(ch.lambda());
  const double sk = std::sqrt(1.0 - ch.lambda());
  std::array<ComplexMatrix, 4> e;
  for (auto& m : e) m = ComplexMatrix::Zero(2, 2);
  // |0> is the excited state.
  e[0](0, 0) = sp;
  e[0](1, 1) = sp * sk;
  e[1](0, 1) = sp * sl;
  e[2](0, 0) = sq * sk;
  e[2](1, 1) = sq;
  e[3](1, 0) = sq * sl;
  return e;
}

std::vector<ComplexMatrix> lifted_kraus(const GadChannel& ch, ChannelLayout layout) {
  const auto e = gad_kraus(ch);
  const ComplexMatrix id = pauli::identity(2);
  std::vector<ComplexMatrix> out;
  switch (layout) {
    case ChannelLayout::single_qubit:
      out.assign(e.begin(), e.end());
      break;
    case ChannelLayout::a_only:
      for (const auto& k : e) out.push_back(tensor_product(k, id));
      break;
    case ChannelLayout::b_only:
      for (const auto& k : e) out.push_back(tensor_product(id, k));
      break;
    case ChannelLayout::both:
      for (const auto& ka : e) {
        for (const auto& kb : e) out.push_back(tensor_product(ka, kb));
      }
      break;
  }
  return out;
}

DensityMatrix apply_channel(const DensityMatrix& rho, const GadChannel& ch,
                            ChannelLayout layout) {
  if (rho.dim() != layout_dim(layout)) {
    throw std::invalid_argument(std::string("apply_channel: layout ") +
                                layout_name(layout) +
                                " does not match the state dimension");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& k : lifted_kraus(ch, layout)) {
    out.noalias() += k * rho.matrix() * k.adjoint();
  }
  return DensityMatrix(out);
}

BlochVector evolve_bloch_closed(const BlochVector& b0, double alpha, double lambda) {
  require_unit_interval(lambda, "evolve_bloch_closed: lambda");
  const double s = std::sqrt(1.0 - lambda);
  return {b0.x * s, b0.y * s, alpha + (b0.z - alpha) * (1.0 - lambda)};
}

DensityMatrix fixed_point(double alpha) {
  if (!(alpha >= -1.0 && alpha <= 1.0)) {
    throw std::invalid_argument("fixed_point: alpha must lie in [-1, 1]");
  }
  return density_from_bloch({0.0, 0.0, alpha});
}

ComplexMatrix hamiltonian(const HamiltonianParams& h, ChannelLayout support) {
  if (!std::isfinite(h.omega)) {
    throw std::invalid_argument("hamiltonian: omega must be finite");
  }
  const ComplexMatrix local = 0.5 * h.omega * pauli::sigma_z();
  const ComplexMatrix id = pauli::identity(2);
  switch (support) {
    case ChannelLayout::single_qubit: return local;
    case ChannelLayout::a_only: return tensor_product(local, id);
    case ChannelLayout::b_only: return tensor_product(id, local);
    case ChannelLayout::both:
      return tensor_product(local, id) + tensor_product(id, local);
  }
  return local;
}

namespace {

// Differences sqrt(a) - sqrt(b) without cancellation.
double sqrt_diff(double a, double b) {
  const double den = std::sqrt(a) + std::sqrt(b);
  return den > 0.0 ? (a - b) / den : 0.0;
}

// Entrywise E_k(l1) - E_k(l2) for the single-qubit Kraus operators.
std::array<ComplexMatrix, 4> gad_kraus_difference(double p, double l1, double l2) {
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  const double dk = sqrt_diff(1.0 - l1, 1.0 - l2);
  const double dl = sqrt_diff(l1, l2);
  std::array<ComplexMatrix, 4> e;
  for (auto& m : e) m = ComplexMatrix::Zero(2, 2);
  e[0](1, 1) = sp * dk;
  e[1](0, 1) = sp * dl;
  e[2](0, 0) = sq * dk;
  e[3](1, 0) = sq * dl;
  return e;
}

// Phi_{l1}(rho) - Phi_{l2}(rho) = sum_k D_k rho K1_k^+ + K2_k rho D_k^+, D_k = K1_k - K2_k.
ComplexMatrix orbit_difference(const ComplexMatrix& rho, double p, double l1, double l2,
                               ChannelLayout layout) {
  const auto k1 = gad_kraus(GadChannel(p, l1));
  const auto k2 = gad_kraus(GadChannel(p, l2));
  const auto dk = gad_kraus_difference(p, l1, l2);
  const ComplexMatrix id = pauli::identity(2);
  std::vector<ComplexMatrix> d, a, b;
  switch (layout) {
    case ChannelLayout::single_qubit:
      d.assign(dk.begin(), dk.end());
      a.assign(k1.begin(), k1.end());
      b.assign(k2.begin(), k2.end());
      break;
    case ChannelLayout::a_only:
      for (int i = 0; i < 4; ++i) {
        d.push_back(tensor_product(dk[i], id));
        a.push_back(tensor_product(k1[i], id));
        b.push_back(tensor_product(k2[i], id));
      }
      break;
    case ChannelLayout::b_only:
      for (int i = 0; i < 4; ++i) {
        d.push_back(tensor_product(id, dk[i]));
        a.push_back(tensor_product(id, k1[i]));
        b.push_back(tensor_product(id, k2[i]));
      }
      break;
    case ChannelLayout::both:
      for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
          d.push_back(tensor_product(dk[i], k1[j]) + tensor_product(k2[i], dk[j]));
          a.push_back(tensor_product(k1[i], k1[j]));
          b.push_back(tensor_product(k2[i], k2[j]));
        }
      }
      break;
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
  for (std::size_t k = 0; k < d.size(); ++k) {
    out.noalias() += d[k] * rho * a[k].adjoint();
    out.noalias() += b[k] * rho * d[k].adjoint();
  }
  return out;
}

}  // namespace

ComplexMatrix lambda_derivative(const DensityMatrix& rho0, const GadChannel& ch,
                                ChannelLayout layout, double eps) {
  if (!(eps > 0.0 && eps <= kTol.max_fd_eps)) {
    throw std::invalid_argument("lambda_derivative: eps must lie in (0, 1e-3]");
  }
  if (rho0.dim() != layout_dim(layout)) {
    throw std::invalid_argument("lambda_derivative: layout does not match the state dimension");
  }
  const double lam = ch.lambda();
  const double p = ch.p();
  auto diff = [&](double l1, double l2) {
    return orbit_difference(rho0.matrix(), p, l1, l2, layout);
  };
  ComplexMatrix d;
  if (lam - eps < 0.0) {
    d = (4.0 * diff(lam + eps, lam) - diff(lam + 2.0 * eps, lam)) / (2.0 * eps);
  } else if (lam + eps > 1.0) {
    d = (-4.0 * diff(lam - eps, lam) + diff(lam - 2.0 * eps, lam)) / (2.0 * eps);
  } else {
    const double hi = lam + eps;
    const double lo = lam - eps;
    d = diff(hi, lo) / (hi - lo);
  }
  return hermitian_traceless(d);
}

Increments increments(const DensityMatrix& rho0, const GadChannel& ch,
                      ChannelLayout layout, const HamiltonianParams& h, double eps) {
  return increments(rho0, ch, layout, h, layout, eps);
}

Increments increments(const DensityMatrix& rho0, const GadChannel& ch,
                      ChannelLayout layout, const HamiltonianParams& h,
                      ChannelLayout hamiltonian_support, double eps) {
  if (layout_dim(hamiltonian_support) != layout_dim(layout)) {
    throw std::invalid_argument("increments: Hamiltonian support does not match layout");
  }
  const DensityMatrix rho = apply_channel(rho0, ch, layout);
  const ComplexMatrix ham = hamiltonian(h, hamiltonian_support);
  const cplx minus_i(0.0, -1.0);
  return {lambda_derivative(rho0, ch, layout, eps),
          hermitian_traceless(minus_i * commutator(ham, rho.matrix()))};
}

double lambda_of_time(double t, const TimeMap& tm) {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("lambda_of_time: t must be non-negative");
  }
  return -std::expm1(-tm.eta() * t);
}

}  // namespace qgeo
