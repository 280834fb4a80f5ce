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

#include "qgeo/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qgeo/tolerances.hpp"

namespace qgeo {

namespace {

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

void require_dim(const DensityMatrix& rho, Eigen::Index dim, const char* what) {
  if (rho.dim() != dim) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(dim) + ", got " +
                                std::to_string(rho.dim()));
  }
}

}  // namespace

double BlochVector::radius() const { return std::sqrt(radius_squared()); }

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || (m.rows() != 2 && m.rows() != 4)) {
    throw std::invalid_argument("DensityMatrix: must be 2x2 or 4x4");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("DensityMatrix: non-finite entries");
  }
  if (!is_hermitian(m, kTol.hermitian)) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  m_ = 0.5 * (m + m.adjoint());
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) > kTol.trace) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) +
                                " differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kTol.psd) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(es.eigenvalues().minCoeff()));
  }
}

namespace pauli {

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix sigma_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0,
       1.0, 0.0;
  return m;
}

ComplexMatrix sigma_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, cplx(0.0, -1.0),
       cplx(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix sigma_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0,
       0.0, -1.0;
  return m;
}

}  // namespace pauli

DensityMatrix density_from_bloch(const BlochVector& b) {
  if (b.radius_squared() > 1.0 + kTol.bloch_radius) {
    throw std::invalid_argument("density_from_bloch: |r| > 1 is not a state");
  }
  ComplexMatrix m(2, 2);
  m << 0.5 * (1.0 + b.z), 0.5 * cplx(b.x, -b.y),
       0.5 * cplx(b.x, b.y), 0.5 * (1.0 - b.z);
  return DensityMatrix(m);
}

BlochVector bloch_from_density(const DensityMatrix& rho) {
  require_dim(rho, 2, "bloch_from_density");
  const ComplexMatrix& m = rho.matrix();
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
          (m(0, 0) - m(1, 1)).real()};
}

EigenDecomposition eig_hermitian(const ComplexMatrix& m) {
  if (!is_hermitian(m, kTol.hermitian)) {
    throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  }
  // Eigen sorts ascending; flip to descending.
  const Eigen::Index n = h.rows();
  EigenDecomposition out{Eigen::VectorXd(n), ComplexMatrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

EigenDecomposition eig_hermitian(const DensityMatrix& rho) {
  return eig_hermitian(rho.matrix());
}

ComplexMatrix sqrtm_psd(const ComplexMatrix& m) {
  const EigenDecomposition ed = eig_hermitian(m);
  Eigen::VectorXd root(ed.values.size());
  for (Eigen::Index k = 0; k < ed.values.size(); ++k) {
    const double v = ed.values(k);
    if (v < -kTol.psd) {
      throw std::domain_error("sqrtm_psd: eigenvalue " + std::to_string(v) +
                              " below the PSD floor");
    }
    root(k) = std::sqrt(std::max(v, 0.0));
  }
  return ed.vectors * root.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const ComplexMatrix sa = sqrtm_psd(a.matrix());
  ComplexMatrix inner = sa * b.matrix() * sa;
  inner = 0.5 * (inner + inner.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(inner, Eigen::EigenvaluesOnly);
  double root_sum = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    root_sum += std::sqrt(std::max(es.eigenvalues()(k), 0.0));
  }
  return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  require_dim(rho, 4, "partial_trace");
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  // Basis index = 2 * a + b.
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == Subsystem::A ? m(2 * i + k, 2 * j + k)
                                          : m(2 * k + i, 2 * k + j);
      }
    }
  }
  return DensityMatrix(out);
}

double concurrence(const DensityMatrix& rho) {
  require_dim(rho, 4, "concurrence");
  const ComplexMatrix yy = tensor_product(pauli::sigma_y(), pauli::sigma_y());
  const ComplexMatrix flipped = yy * rho.matrix().conjugate() * yy;
  const ComplexMatrix s = sqrtm_psd(rho.matrix());
  ComplexMatrix r = s * flipped * s;
  r = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r, Eigen::EigenvaluesOnly);
  // Ascending order, so the largest root is the last entry.
  const Eigen::VectorXd& mu = es.eigenvalues();
  double c = std::sqrt(std::max(mu(3), 0.0));
  for (int k = 0; k < 3; ++k) c -= std::sqrt(std::max(mu(k), 0.0));
  return std::clamp(c, 0.0, 1.0);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor_product(a.matrix(), b.matrix()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

ComplexMatrix projector(const ComplexVector& psi) {
  return psi * psi.adjoint();
}

DensityMatrix maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix bell_phi_plus() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix(projector(psi));
}

DensityMatrix werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("werner_state: p must lie in [0, 1]");
  }
  return DensityMatrix(p * bell_phi_plus().matrix() +
                       (1.0 - p) * ComplexMatrix::Identity(4, 4) / 4.0);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qgeo
