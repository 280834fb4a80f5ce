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


#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "qgeo/blocks.hpp"
#include "qgeo/metric.hpp"
#include "qgeo/sampling.hpp"

using namespace qgeo;

namespace {

DensityMatrix random_state(std::uint64_t i, Eigen::Index dim) {
  return draw_full_rank({31, i}, {dim == 2 ? MeasureKind::bloch_ball_uniform : MeasureKind::hs_mixed},
                        dim)
      .state;
}

ComplexMatrix random_direction(std::uint64_t i, Eigen::Index dim) {
  KeyedRng rng({32, i});
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = rng.complex_normal();
  }
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h.diagonal().array() -= h.trace() / static_cast<double>(dim);
  return h;
}

// Bures metric from the symmetric logarithmic derivative, solving
// rho L + L rho = 2 A as a linear system: 1/4 Tr(rho L^2).
double bures_sld_oracle(const ComplexMatrix& rho, const ComplexMatrix& a) {
  const Eigen::Index n = rho.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix sys(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // vec(rho L + L rho) with column-major vec.
      sys.block(i * n, j * n, n, n) = rho(j, i) * id + (i == j ? rho : ComplexMatrix::Zero(n, n));
    }
  }
  const ComplexMatrix rhs_m = 2.0 * a;
  const Eigen::Map<const ComplexVector> rhs(rhs_m.data(), n * n);
  const ComplexVector l_vec = sys.fullPivLu().solve(rhs);
  const Eigen::Map<const ComplexMatrix> l(l_vec.data(), n, n);
  return 0.25 * (rho * l * l).trace().real();
}

// Largest contractive metric, 1/4 Tr(A rho^-1 A).
double maximal_oracle(const ComplexMatrix& rho, const ComplexMatrix& a) {
  return 0.25 * (a * rho.inverse() * a).trace().real();
}

// Wigner-Yanase metric, Tr((d sqrt(rho))^2), with d sqrt(rho) by Richardson-
// extrapolated central differences of the matrix square root.
double wy_oracle(const ComplexMatrix& rho, const ComplexMatrix& a) {
  const double lmin = eig_hermitian(rho).values.minCoeff();
  const double h = 1e-3 * lmin / a.cwiseAbs().maxCoeff();
  auto central = [&](double step) {
    return ComplexMatrix((sqrtm_psd(rho + step * a) - sqrtm_psd(rho - step * a)) / (2.0 * step));
  };
  const ComplexMatrix ds = (4.0 * central(0.5 * h) - central(h)) / 3.0;
  return (ds * ds).trace().real();
}

}  // namespace

TEST_CASE("Morozova-Chentsov functions and their c-functions") {
  CHECK(c_function(McKind::bures, 0.5, 0.5) == doctest::Approx(2.0));
  CHECK(c_function(McKind::bures, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(c_function(McKind::wigner_yanase, 0.25, 0.25) == doctest::Approx(4.0));
  for (McKind k : {McKind::bures, McKind::minimal, McKind::wigner_yanase}) {
    for (double p : {0.01, 0.3, 0.9}) CHECK(c_function(k, p, p) == doctest::Approx(1.0 / p));
    CHECK(c_function(k, 0.2, 0.7) == doctest::Approx(c_weight(k, 0.2, 0.7)).epsilon(1e-14));
    CHECK(c_function(k, 0.2, 0.7) == doctest::Approx(c_function(k, 0.7, 0.2)).epsilon(1e-14));
    CHECK_THROWS_AS(c_function(k, 0.0, 0.5), std::invalid_argument);
    CHECK(mc_function(k, 1.0) == doctest::Approx(1.0));
  }
  CHECK(c_function(McKind::minimal, 0.2, 0.6) == doctest::Approx(0.8 / (2 * 0.2 * 0.6)));
  CHECK(c_function(McKind::minimal, 0.2, 0.6) > c_function(McKind::wigner_yanase, 0.2, 0.6));
  CHECK(c_function(McKind::wigner_yanase, 0.2, 0.6) > c_function(McKind::bures, 0.2, 0.6));
  CHECK(std::isinf(c_weight(McKind::minimal, 0.0, 0.4)));
  CHECK(c_weight(McKind::bures, 0.0, 0.4) == doctest::Approx(5.0));
  CHECK(parse_mc_kind("wy") == McKind::wigner_yanase);
  CHECK(parse_mc_kind("minimal") == McKind::minimal);
  CHECK_THROWS_AS(parse_mc_kind("nope"), std::invalid_argument);
}

TEST_CASE("eigenbasis metric agrees with independent constructions") {
  for (std::uint64_t i = 0; i < 60; ++i) {
    const Eigen::Index dim = i % 2 == 0 ? 2 : 4;
    const DensityMatrix rho = random_state(i, dim);
    const ComplexMatrix a = random_direction(i, dim);
    CHECK(metric_form(rho, a, McKind::bures).value ==
          doctest::Approx(bures_sld_oracle(rho.matrix(), a)).epsilon(1e-9));
    CHECK(metric_form(rho, a, McKind::minimal).value ==
          doctest::Approx(maximal_oracle(rho.matrix(), a)).epsilon(1e-9));
    CHECK(metric_form(rho, a, McKind::wigner_yanase).value ==
          doctest::Approx(wy_oracle(rho.matrix(), a)).epsilon(1e-6));
    const MetricParts parts = metric_parts(rho, a, McKind::bures);
    CHECK(parts.total() == doctest::Approx(metric_form(rho, a, McKind::bures).value).epsilon(1e-13));
  }
}

TEST_CASE("metric form is symmetric and bilinear") {
  const DensityMatrix rho = random_state(5, 4);
  const ComplexMatrix a = random_direction(1, 4);
  const ComplexMatrix b = random_direction(2, 4);
  for (McKind k : {McKind::bures, McKind::minimal, McKind::wigner_yanase}) {
    const double ab = metric_form(rho, a, b, k).value;
    CHECK(ab == doctest::Approx(metric_form(rho, b, a, k).value).epsilon(1e-13));
    const double sum = metric_form(rho, a + b, k).value;
    const double polar = metric_form(rho, a, k).value + metric_form(rho, b, k).value + 2.0 * ab;
    CHECK(sum == doctest::Approx(polar).epsilon(1e-12));
  }
}

TEST_CASE("closed-form qubit speed reference values") {
  CHECK(qubit_g_closed({0.0, 0.0, 0.5}, 0.0, 0.0).value == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  CHECK(qubit_g_closed({0.5, 0.0, 0.0}, 0.0, 0.0).value == doctest::Approx(1.0 / 48.0).epsilon(1e-15));
  CHECK(qubit_g_closed({0.5, 0.0, 0.5}, 0.0, 0.0).value == doctest::Approx(0.1484375).epsilon(1e-15));
  // Rotating about z leaves the speed unchanged.
  CHECK(qubit_g_closed({0.3, 0.4, 0.5}, 0.2, 0.3).value ==
        doctest::Approx(qubit_g_closed({0.5, 0.0, 0.5}, 0.2, 0.3).value).epsilon(1e-14));
  // Fixed point does not move.
  CHECK(qubit_g_closed({0.0, 0.0, 0.4}, 0.4, 0.5).value == 0.0);
  for (double r : {0.1, 0.5, 0.9, 0.999}) {
    const double polar = qubit_g_closed({0.0, 0.0, r}, 0.0, 0.0).value;
    const double equatorial = qubit_g_closed({r, 0.0, 0.0}, 0.0, 0.0).value;
    CHECK(polar / equatorial == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(polar == doctest::Approx(0.25 * r * r / (1.0 - r * r)).epsilon(1e-12));
  }
}

TEST_CASE("closed form matches the finite-difference eigenbasis speed") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_state(1000 + i, 2);
    const BlochVector b = bloch_from_density(rho);
    for (double alpha : {-0.6, 0.0, 0.3, 1.0}) {
      for (double lam : {0.0, 0.3, 0.99}) {
        const SpeedSample s = speed_numeric(rho, GadChannel::from_alpha(alpha, lam),
                                            ChannelLayout::single_qubit, McKind::bures);
        CHECK(s.g_lambda == doctest::Approx(qubit_g_closed(b, alpha, lam).value).epsilon(1e-7));
        CHECK(s.f_part + s.q_part == doctest::Approx(s.g_lambda).epsilon(1e-14));
        CHECK(s.G_lambda * (1.0 - lam) * (1.0 - lam) == doctest::Approx(s.g_lambda).epsilon(1e-14));
      }
    }
  }
  CHECK_THROWS_AS(speed_numeric(random_state(0, 2), GadChannel(0.5, 1.0), ChannelLayout::single_qubit,
                                McKind::bures),
                  std::invalid_argument);
}

TEST_CASE("divergence flag at the Bloch sphere") {
  const double defect = 1e-8;
  const double z = std::sqrt(1.0 - defect);
  const MetricValue g = qubit_g_closed({0.0, 0.0, z}, 0.0, 0.0);
  CHECK_FALSE(g.diverged);
  CHECK(g.value == doctest::Approx(0.25 * z * z / defect).epsilon(1e-6));
  CHECK(qubit_g_closed({0.0, 0.0, 1.0}, 0.0, 0.0).diverged);
  CHECK(qubit_g_closed({0.0, 0.0, std::sqrt(1.0 - 5e-13)}, 0.0, 0.0).diverged);
  CHECK_FALSE(qubit_g_closed({0.0, 0.0, std::sqrt(1.0 - 5e-12)}, 0.0, 0.0).diverged);
  // A pure state leaving the sphere diverges in the eigenbasis form too.
  const SpeedSample s = speed_numeric(density_from_bloch({0.0, 0.0, 1.0}), GadChannel::from_alpha(0.0, 0.0),
                                      ChannelLayout::single_qubit, McKind::bures);
  CHECK(s.diverged);
  CHECK(std::isinf(s.g_lambda));
}

TEST_CASE("polar and Cartesian qubit metric forms") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const DensityMatrix rho = random_state(2000 + i, 2);
    const BlochVector b = bloch_from_density(rho);
    KeyedRng rng({33, i});
    const BlochVector db{rng.normal(), rng.normal(), rng.normal()};
    const ComplexMatrix a = 0.5 * (db.x * pauli::sigma_x() + db.y * pauli::sigma_y() + db.z * pauli::sigma_z());
    for (McKind k : {McKind::bures, McKind::minimal, McKind::wigner_yanase}) {
      CHECK(qubit_metric_closed(b, db, k).value == doctest::Approx(metric_form(rho, a, k).value).epsilon(1e-11));
    }
    CHECK(qubit_metric_maximal_cartesian(b, db) ==
          doctest::Approx(metric_form(rho, a, McKind::minimal).value).epsilon(1e-11));
    CHECK(qubit_metric_bures_cartesian(b, db) ==
          doctest::Approx(metric_form(rho, a, McKind::bures).value).epsilon(1e-11));
  }
}

TEST_CASE("Hamiltonian speed of a qubit") {
  const DensityMatrix rho = random_state(77, 2);
  const BlochVector b = bloch_from_density(rho);
  const HamiltonianParams h{2.5};
  const Increments inc = increments(rho, GadChannel(0.5, 0.0), ChannelLayout::single_qubit, h);
  CHECK(metric_form(rho, inc.hamiltonian, McKind::bures).value ==
        doctest::Approx(hamiltonian_speed_qubit(b, h.omega)).epsilon(1e-12));
}

TEST_CASE("scheme labels") {
  CHECK(parse_scheme("iii") == Scheme::dissipate_both_rotate_b);
  CHECK(std::string(scheme_label(Scheme::dissipate_a_rotate_both)) == "iv");
  CHECK(scheme_layout(Scheme::dissipate_b_rotate_a).rotation == ChannelLayout::a_only);
  CHECK_THROWS_AS(parse_scheme("v"), std::invalid_argument);
}

TEST_CASE("speed decomposition on a single qubit is orthogonal") {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const DensityMatrix rho = random_state(3000 + i, 2);
    const DecompositionCheck c = decomposition_check(rho, Scheme::single_qubit, GadChannel::from_alpha(0.4, 0.3),
                                                     HamiltonianParams{1.3}, McKind::bures);
    CHECK(c.separable);
    CHECK(std::abs(c.schrodinger - c.interaction - c.hamiltonian) <= 1e-12 * c.schrodinger);
  }
}

TEST_CASE("speed decomposition on block states") {
  auto block = [](MeasureKind m, std::uint64_t i) { return draw_full_rank({34, i}, {m}, 4).state; };
  int yb_not_separable = 0;
  for (std::uint64_t i = 0; i < 40; ++i) {
    const GadChannel ch = GadChannel::from_alpha(0.2, 0.4);
    for (MeasureKind m : {MeasureKind::x_state_uniform, MeasureKind::yb_state_uniform, MeasureKind::yc_state_uniform}) {
      CHECK(decomposition_check(block(m, i), Scheme::dissipate_b_rotate_b, ch, {}, McKind::bures).separable);
    }
    if (!decomposition_check(block(MeasureKind::yb_state_uniform, i), Scheme::dissipate_both_rotate_b, ch, {},
                             McKind::bures)
             .separable) {
      ++yb_not_separable;
    }
  }
  CHECK(yb_not_separable > 20);
}

TEST_CASE("Delta G vanishes on product states") {
  for (std::uint64_t i = 0; i < 20; ++i) {
    const DensityMatrix ab = tensor_product(random_state(4000 + i, 2), random_state(5000 + i, 2));
    for (McKind k : {McKind::bures, McKind::minimal, McKind::wigner_yanase}) {
      const DeltaG d = delta_G(ab, GadChannel::from_alpha(0.5, 0.2), k);
      CHECK_FALSE(d.diverged);
      CHECK(std::abs(d.value) < 1e-8 * d.global);
    }
  }
  const DeltaG fixed = delta_G(tensor_product(fixed_point(0.5), fixed_point(0.5)), GadChannel::from_alpha(0.5, 0.0),
                               McKind::bures);
  CHECK(std::abs(fixed.value) < 1e-20);
  const DeltaG bell = delta_G(bell_phi_plus(), GadChannel::from_alpha(0.0, 0.0), McKind::bures);
  CHECK(bell.local_a < 1e-20);
  CHECK(bell.local_b < 1e-20);
  CHECK(bell.diverged);
  CHECK(std::isinf(bell.value));
}

TEST_CASE("speed along a trajectory never increases") {
  std::vector<double> times{2.0, 0.0, 0.5, 1.0, 4.0};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const DensityMatrix rho = random_state(6000 + i, i % 2 == 0 ? 2 : 4);
    const ChannelLayout layout = rho.dim() == 2 ? ChannelLayout::single_qubit : ChannelLayout::both;
    for (McKind k : {McKind::bures, McKind::minimal, McKind::wigner_yanase}) {
      const auto scan = speed_monotonicity_scan(rho, GadChannel::from_alpha(-0.3, 0.0), layout, k, times);
      REQUIRE(scan.size() == times.size());
      for (std::size_t j = 1; j < scan.size(); ++j) {
        CHECK(scan[j].t > scan[j - 1].t);
        CHECK(scan[j].v2 <= scan[j - 1].v2 * (1.0 + 1e-9));
      }
    }
  }
}
