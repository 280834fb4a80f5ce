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

#include <complex>
#include <Eigen/Dense>

namespace qgeo {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Bloch coordinates of a qubit, rho = (I + x sx + y sy + z sz) / 2.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double radius_squared() const { return x * x + y * y + z * z; }
  double radius() const;
  /// 1 - r^2, the purity defect that controls every speed divergence.
  double purity_defect() const { return 1.0 - radius_squared(); }
};

/// Trace-one, Hermitian, positive semidefinite 2x2 or 4x4 matrix.
///
/// Construction validates against kTol and throws std::invalid_argument on
/// violation. The stored matrix is the Hermitian part of the input so that
/// rounding noise below the tolerance never leaks into later algebra.
class DensityMatrix {
 public:
  explicit DensityMatrix(const ComplexMatrix& m);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  ComplexMatrix m_;
};

/// Eigenvalues in descending order with matching unitary eigenvector columns.
struct EigenDecomposition {
  Eigen::VectorXd values;
  ComplexMatrix vectors;
};

enum class Subsystem { A, B };

namespace pauli {
ComplexMatrix identity(Eigen::Index dim = 2);
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
}  // namespace pauli

DensityMatrix density_from_bloch(const BlochVector& b);
BlochVector bloch_from_density(const DensityMatrix& rho);

/// Throws std::invalid_argument if m is not Hermitian within kTol.hermitian.
EigenDecomposition eig_hermitian(const ComplexMatrix& m);
EigenDecomposition eig_hermitian(const DensityMatrix& rho);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-kTol.psd, 0) are clamped to zero; anything lower throws.
ComplexMatrix sqrtm_psd(const ComplexMatrix& m);

/// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2.
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix projector(const ComplexVector& psi);

DensityMatrix maximally_mixed(Eigen::Index dim);
/// |Phi+> = (|00> + |11>) / sqrt(2).
DensityMatrix bell_phi_plus();
/// p |Phi+><Phi+| + (1 - p) I / 4.
DensityMatrix werner_state(double p);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qgeo
