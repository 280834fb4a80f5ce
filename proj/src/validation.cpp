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


#include "qgeo/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <string>

#include "qgeo/parallel.hpp"
#include "qgeo/sampling.hpp"

namespace qgeo {

namespace {

constexpr double kInjectedError = 1e-3;
constexpr std::array<double, 3> kOracleAlphas{0.0, 0.3, 1.0};
constexpr std::array<double, 4> kOracleLambdas{0.0, 0.3, 0.7, 0.99};
constexpr std::array<double, 3> kAsymptoteAlphas{0.0, 0.5, 1.0};
constexpr std::array<McKind, 3> kAllKinds{McKind::bures, McKind::minimal, McKind::wigner_yanase};
constexpr std::array<BlockClass, 3> kClasses{BlockClass::X, BlockClass::Yb, BlockClass::Yc};

std::uint64_t suite_seed(std::uint64_t seed, std::uint64_t tag) { return splitmix64(seed ^ tag); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel_err(double a, double ref) {
  const double scale = std::max(std::abs(ref), std::numeric_limits<double>::min());
  return std::abs(a - ref) / scale;
}

MeasureKind block_measure(BlockClass cls) {
  switch (cls) {
    case BlockClass::X:
      return MeasureKind::x_state_uniform;
    case BlockClass::Yb:
      return MeasureKind::yb_state_uniform;
    case BlockClass::Yc:
      return MeasureKind::yc_state_uniform;
  }
  return MeasureKind::x_state_uniform;
}

ComplexMatrix random_traceless_hermitian(KeyedRng& rng, Eigen::Index dim) {
  ComplexMatrix g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  }
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  h.diagonal().array() -= h.trace() / static_cast<double>(dim);
  return h;
}

ComplexMatrix apply_linear(const ComplexMatrix& a, const GadChannel& ch, ChannelLayout layout) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
  for (const auto& k : lifted_kraus(ch, layout)) out.noalias() += k * a * k.adjoint();
  return out;
}

double speed_for(const BlochVector& b0, double alpha, double lambda, const ValidationOptions& opts) {
  if (opts.kind == McKind::bures) return checked_qubit_g(b0, alpha, lambda, opts).value;
  return speed_numeric(density_from_bloch(b0), GadChannel::from_alpha(alpha, lambda),
                       ChannelLayout::single_qubit, opts.kind, opts.eps)
      .g_lambda;
}

struct Worst {
  double value = 0.0;
  void add(double v) {
    if (std::isnan(v) || v > value) value = std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  }
};

double control_relative(const DecompositionCheck& c) {
  if (c.diverged) return std::numeric_limits<double>::infinity();
  if (!(c.schrodinger > 0.0)) return 0.0;
  return std::abs(c.schrodinger - c.interaction - c.hamiltonian) / c.schrodinger;
}

}  // namespace

MetricValue checked_qubit_g(const BlochVector& b0, double alpha, double lambda,
                            const ValidationOptions& opts) {
  MetricValue v = qubit_g_closed(b0, alpha, lambda);
  if (opts.inject_error && !v.diverged) v.value *= 1.0 + kInjectedError;
  return v;
}

CriterionResult check_oracle_equivalence(const ValidationOptions& opts, int states) {
  const auto start = std::chrono::steady_clock::now();
  const std::uint64_t seed = suite_seed(opts.seed, 0x01);
  auto worst_of = [&](std::size_t i) {
    const DensityMatrix rho =
        draw_full_rank({seed, i}, {MeasureKind::bloch_ball_uniform}, 2).state;
    const BlochVector b = bloch_from_density(rho);
    double w = 0.0;
    for (double alpha : kOracleAlphas) {
      for (double lambda : kOracleLambdas) {
        const MetricValue closed = checked_qubit_g(b, alpha, lambda, opts);
        const SpeedSample num = speed_numeric(rho, GadChannel::from_alpha(alpha, lambda),
                                              ChannelLayout::single_qubit, McKind::bures, opts.eps);
        if (closed.diverged || num.diverged) {
          if (closed.diverged != num.diverged) w = std::numeric_limits<double>::infinity();
          continue;
        }
        w = std::max(w, rel_err(closed.value, num.g_lambda));
      }
    }
    return w;
  };
  Worst worst;
  for (double w : parallel_map(static_cast<std::size_t>(states), opts.workers, worst_of)) worst.add(w);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CriterionResult r{"oracle_equivalence", false, worst.value, 1e-6, ""};
  r.pass = worst.value <= r.bound && seconds < 60.0;
  r.detail = std::to_string(states) + " states x 4 lambda x 3 alpha, runtime bound 60 s";
  r.seconds = seconds;
  return r;
}

CriterionResult check_asymptote(const ValidationOptions& opts, int states, double one_minus_lambda) {
  const std::uint64_t seed = suite_seed(opts.seed, 0x02);
  const double lambda = 1.0 - one_minus_lambda;
  std::array<double, 3> worst_alpha{};
  double spread = 0.0;
  int accepted = 0;
  for (std::uint64_t i = 0; accepted < states; ++i) {
    const BlochVector b =
        bloch_from_density(draw_full_rank({seed, i}, {MeasureKind::bloch_ball_uniform}, 2).state);
    const double x0 = std::hypot(b.x, b.y);
    if (x0 < 0.1) continue;
    ++accepted;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t k = 0; k < kAsymptoteAlphas.size(); ++k) {
      const double g = speed_for(b, kAsymptoteAlphas[k], lambda, opts);
      const double ratio = g / (x0 * x0 * one_minus_lambda / 16.0);
      worst_alpha[k] = std::max(worst_alpha[k], std::abs(ratio - 1.0));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    spread = std::max(spread, hi - lo);
  }
  CriterionResult r{"asymptote", false, 0.0, 0.01, ""};
  r.measured = std::max({worst_alpha[0], worst_alpha[1], worst_alpha[2], spread});
  r.pass = r.measured <= r.bound;
  r.detail = "max |ratio-1| alpha=0: " + fmt("%.3g", worst_alpha[0]) + ", alpha=0.5: " +
             fmt("%.3g", worst_alpha[1]) + ", alpha=1: " + fmt("%.3g", worst_alpha[2]) +
             "; max cross-alpha spread " + fmt("%.3g", spread) + " (" + std::to_string(states) +
             " states, 1-lambda=" + fmt("%.0e", one_minus_lambda) + ")";
  return r;
}

char expected_verdict(Scheme scheme, BlockClass cls) {
  switch (scheme) {
    case Scheme::single_qubit:
    case Scheme::dissipate_b_rotate_b:
      return 'Y';
    case Scheme::dissipate_b_rotate_a:
      return cls == BlockClass::Yc ? 'N' : 'Y';
    case Scheme::dissipate_both_rotate_b:
      return cls == BlockClass::Yb ? 'N' : 'Y';
    case Scheme::dissipate_a_rotate_both:
      return cls == BlockClass::Yc ? 'N' : 'Y';
  }
  return '?';
}

bool OrthoTable::all_match() const {
  for (const auto& c : cells) {
    if (c.verdict != c.expected) return false;
  }
  return control_max_relative <= kControlBound;
}

OrthoTable compute_ortho_table(std::uint64_t seed, int samples, const std::vector<double>& alphas,
                               McKind kind, double eps, int workers) {
  if (alphas.empty()) throw std::invalid_argument("ortho: empty alpha list");
  constexpr std::array<Scheme, 4> schemes{Scheme::dissipate_b_rotate_b, Scheme::dissipate_b_rotate_a,
                                          Scheme::dissipate_both_rotate_b,
                                          Scheme::dissipate_a_rotate_both};
  struct Task {
    Scheme scheme;
    int cls;  // -1 for the single-qubit control
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (Scheme s : schemes) {
    for (int c = 0; c < 3; ++c) {
      for (int k = 0; k < samples; ++k) tasks.push_back({s, c, static_cast<std::size_t>(k)});
    }
  }
  for (int k = 0; k < samples; ++k) tasks.push_back({Scheme::single_qubit, -1, static_cast<std::size_t>(k)});

  auto run = [&](std::size_t t) {
    const Task& task = tasks[t];
    const bool control = task.cls < 0;
    const std::uint64_t s = suite_seed(seed, 0x0a00 + static_cast<std::uint64_t>(task.cls + 1));
    const SampleStream stream{s, task.index};
    const DensityMatrix rho =
        control ? draw_full_rank(stream, {MeasureKind::bloch_ball_uniform}, 2).state
                : draw_full_rank(stream, {block_measure(kClasses[task.cls])}, 4).state;
    KeyedRng rng(stream, 0x5eed);
    const double lambda = rng.uniform(0.0, 0.9);
    const double alpha = alphas[task.index % alphas.size()];
    OrthoSample out;
    out.scheme = task.scheme;
    out.state_class = control ? "qubit" : block_class_name(kClasses[task.cls]);
    out.index = task.index;
    out.alpha = alpha;
    out.lambda = lambda;
    out.check = decomposition_check(rho, task.scheme, GadChannel::from_alpha(alpha, lambda),
                                    HamiltonianParams{}, kind, TimeMap{}, eps);
    return out;
  };

  OrthoTable table;
  table.samples = parallel_map(tasks.size(), workers, run);

  std::size_t pos = 0;
  for (Scheme s : schemes) {
    for (int c = 0; c < 3; ++c) {
      OrthoCell cell;
      cell.scheme = s;
      cell.state_class = block_class_name(kClasses[c]);
      cell.samples = samples;
      cell.expected = expected_verdict(s, kClasses[c]);
      int above = 0;
      for (int k = 0; k < samples; ++k, ++pos) {
        const DecompositionCheck& chk = table.samples[pos].check;
        const double res = chk.diverged ? std::numeric_limits<double>::infinity()
                                        : (chk.zero_speed ? 0.0 : chk.cross_residual);
        cell.max_residual = std::max(cell.max_residual, res);
        if (res > kOrthoNoResidual) ++above;
      }
      cell.frac_above = samples > 0 ? static_cast<double>(above) / samples : 0.0;
      if (samples > 0 && cell.max_residual < kOrthoYes) {
        cell.verdict = 'Y';
      } else if (cell.frac_above >= kOrthoNoFraction) {
        cell.verdict = 'N';
      }
      table.cells.push_back(cell);
    }
  }
  for (int k = 0; k < samples; ++k, ++pos) {
    table.control_max_relative =
        std::max(table.control_max_relative, control_relative(table.samples[pos].check));
  }
  table.control_samples = samples;
  return table;
}

CriterionResult check_orthogonality_table(const ValidationOptions& opts, int samples) {
  const OrthoTable t =
      compute_ortho_table(opts.seed, samples, {0.0, 0.5, 1.0}, opts.kind, opts.eps, opts.workers);
  CriterionResult r{"orthogonality_table", t.all_match(), 0.0, kOrthoYes, ""};
  std::string mismatches;
  for (const auto& c : t.cells) {
    if (c.verdict == 'Y') r.measured = std::max(r.measured, c.max_residual);
    if (c.verdict != c.expected) {
      mismatches += std::string(" ") + scheme_label(c.scheme) + "/" + c.state_class + " got " +
                    c.verdict + " expected " + c.expected + " (max residual " +
                    fmt("%.3g", c.max_residual) + ", frac>1e-3 " + fmt("%.2f", c.frac_above) + ");";
    }
  }
  r.detail = "worst Y-cell residual above; control " + fmt("%.3g", t.control_max_relative) +
             " (bound 1e-10); " + (mismatches.empty() ? std::string("all cells match") : "mismatches:" + mismatches);
  return r;
}

CriterionResult check_single_qubit_control(const ValidationOptions& opts, int samples) {
  const std::uint64_t seed = suite_seed(opts.seed, 0x03);
  auto run = [&](std::size_t i) {
    const SampleStream stream{seed, i};
    const DensityMatrix rho = draw_full_rank(stream, {MeasureKind::bloch_ball_uniform}, 2).state;
    KeyedRng rng(stream, 0x5eed);
    const double alpha = rng.uniform(-1.0, 1.0);
    const double lambda = rng.uniform(0.0, 0.95);
    const HamiltonianParams h{rng.uniform(0.1, 3.0)};
    return control_relative(decomposition_check(rho, Scheme::single_qubit,
                                                GadChannel::from_alpha(alpha, lambda), h, opts.kind,
                                                TimeMap{}, opts.eps));
  };
  Worst worst;
  for (double v : parallel_map(static_cast<std::size_t>(samples), opts.workers, run)) worst.add(v);
  CriterionResult r{"single_qubit_control", false, worst.value, kControlBound, ""};
  r.pass = worst.value <= r.bound;
  r.detail = "max |V_S^2 - V_I^2 - V_H^2| / V_S^2 over " + std::to_string(samples) + " states";
  return r;
}

CriterionResult check_divergence_law(const ValidationOptions& opts) {
  const double defect = 1e-8;
  const double z = std::sqrt(1.0 - defect);
  const BlochVector b{0.0, 0.0, z};
  const double expected = 0.25 * z * z / defect;
  const MetricValue closed = checked_qubit_g(b, 0.0, 0.0, opts);
  const SpeedSample num = speed_numeric(density_from_bloch(b), GadChannel::from_alpha(0.0, 0.0),
                                        ChannelLayout::single_qubit, McKind::bures, opts.eps);
  const double dev = std::max(rel_err(closed.value, expected), rel_err(num.g_lambda, expected));

  bool flags_ok = !closed.diverged && !num.diverged;
  std::string flag_detail;
  for (double d : {1e-6, 1e-9, 1e-11, 2e-12, 1.5e-12, 5e-13, 1e-13, 1e-15, 0.0}) {
    const BlochVector bd{0.0, 0.0, std::sqrt(1.0 - d)};
    const bool flagged = checked_qubit_g(bd, 0.0, 0.0, opts).diverged;
    const bool want = d < kTol.eigenvalue_floor;
    if (flagged != want) {
      flags_ok = false;
      flag_detail += " 1-r^2=" + fmt("%.1e", d) + (flagged ? " flagged;" : " not flagged;");
    }
    const BlochVector bx{std::sqrt(1.0 - d), 0.0, 0.0};
    if (checked_qubit_g(bx, 0.0, 0.0, opts).diverged != want) {
      flags_ok = false;
      flag_detail += " equatorial 1-r^2=" + fmt("%.1e", d) + ";";
    }
  }
  CriterionResult r{"divergence_law", false, dev, 0.01, ""};
  r.pass = dev <= r.bound && flags_ok;
  r.detail = "g=" + fmt("%.6e", closed.value) + " (numeric " + fmt("%.6e", num.g_lambda) +
             ", expected " + fmt("%.6e", expected) + "); divergence flag " +
             (flags_ok ? std::string("matches 1-r^2 < 1e-12") : "mismatch:" + flag_detail);
  return r;
}

CriterionResult check_monotonicity(const ValidationOptions& opts, int trajectories) {
  const std::uint64_t seed = suite_seed(opts.seed, 0x04);
  std::vector<double> times;
  for (int k = 0; k < 40; ++k) times.push_back(0.15 * k);
  auto run = [&](std::size_t i) {
    const SampleStream stream{seed, i};
    const DensityMatrix rho = draw_full_rank(stream, {MeasureKind::bloch_ball_uniform}, 2).state;
    KeyedRng rng(stream, 0x5eed);
    const GadChannel ch = GadChannel::from_alpha(rng.uniform(-1.0, 1.0), 0.0);
    double worst = -std::numeric_limits<double>::infinity();
    for (McKind kind : kAllKinds) {
      const auto scan = speed_monotonicity_scan(rho, ch, ChannelLayout::single_qubit, kind, times,
                                                TimeMap{}, opts.eps);
      for (std::size_t k = 1; k < scan.size(); ++k) {
        if (scan[k].diverged || scan[k - 1].diverged) return std::numeric_limits<double>::infinity();
        const double prev = scan[k - 1].v2;
        const double growth = prev > 0.0 ? (scan[k].v2 - prev) / prev : scan[k].v2;
        worst = std::max(worst, growth);
      }
    }
    return worst;
  };
  double worst = -std::numeric_limits<double>::infinity();
  for (double v : parallel_map(static_cast<std::size_t>(trajectories), opts.workers, run)) {
    worst = std::max(worst, v);
  }
  CriterionResult r{"markov_monotonicity", false, worst, 1e-9, ""};
  r.pass = worst <= r.bound;
  r.detail = "max relative growth of V^2 between consecutive times, " + std::to_string(trajectories) +
             " trajectories x 3 metrics x 40 times";
  return r;
}

CriterionResult check_contractivity(const ValidationOptions& opts, int pairs) {
  const std::uint64_t seed = suite_seed(opts.seed, 0x05);
  auto run = [&](std::size_t i) {
    const SampleStream stream{seed, i};
    KeyedRng rng(stream, 0x5eed);
    const GadChannel ch = GadChannel::from_alpha(rng.uniform(-1.0, 1.0), rng.uniform(0.0, 1.0));
    double worst = -std::numeric_limits<double>::infinity();
    for (ChannelLayout layout : {ChannelLayout::single_qubit, ChannelLayout::both}) {
      const Eigen::Index dim = layout_dim(layout);
      const Measure m{dim == 2 ? MeasureKind::bloch_ball_uniform : MeasureKind::hs_mixed};
      const DensityMatrix rho = draw_full_rank(stream, m, dim).state;
      const ComplexMatrix a = random_traceless_hermitian(rng, dim);
      const DensityMatrix rho_out = apply_channel(rho, ch, layout);
      const ComplexMatrix a_out = apply_linear(a, ch, layout);
      for (McKind kind : kAllKinds) {
        const MetricValue before = metric_form(rho, a, kind);
        const MetricValue after = metric_form(rho_out, 0.5 * (a_out + a_out.adjoint()), kind);
        if (after.diverged) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, after.value / before.value - 1.0);
      }
    }
    return worst;
  };
  double worst = -std::numeric_limits<double>::infinity();
  for (double v : parallel_map(static_cast<std::size_t>(pairs), opts.workers, run)) {
    worst = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(worst, v);
  }
  CriterionResult r{"contractivity", false, worst, 1e-9, ""};
  r.pass = worst <= r.bound;
  r.detail = "max Gamma_Phi(rho)(Phi A) / Gamma_rho(A) - 1 over " + std::to_string(pairs) +
             " qubit and " + std::to_string(pairs) + " two-qubit pairs x 3 metrics";
  return r;
}

CriterionResult check_fidelity_link(const ValidationOptions& opts, int states) {
  const std::uint64_t seed = suite_seed(opts.seed, 0x06);
  constexpr double h = 1e-4;
  auto run = [&](std::size_t i) {
    const SampleStream stream{seed, i};
    const ChannelLayout layout = (i % 2 == 0) ? ChannelLayout::single_qubit : ChannelLayout::both;
    const Eigen::Index dim = layout_dim(layout);
    const Measure m{dim == 2 ? MeasureKind::bloch_ball_uniform : MeasureKind::hs_mixed};
    const DensityMatrix rho0 = draw_full_rank(stream, m, dim).state;
    KeyedRng rng(stream, 0x5eed);
    const GadChannel ch = GadChannel::from_alpha(rng.uniform(-1.0, 1.0), rng.uniform(0.05, 0.9));
    const DensityMatrix mid = apply_channel(rho0, ch, layout);
    auto bures2 = [&](double lam) {
      const double f = fidelity(mid, apply_channel(rho0, ch.at(lam), layout));
      return 2.0 * (1.0 - std::sqrt(f));
    };
    const double via_fidelity =
        (bures2(ch.lambda() + h) + bures2(ch.lambda() - h)) / (2.0 * h * h);
    const SpeedSample s = speed_numeric(rho0, ch, layout, McKind::bures, opts.eps);
    return rel_err(via_fidelity, s.G_lambda);
  };
  Worst worst;
  for (double v : parallel_map(static_cast<std::size_t>(states), opts.workers, run)) worst.add(v);
  CriterionResult r{"fidelity_link", false, worst.value, 1e-4, ""};
  r.pass = worst.value <= r.bound;
  r.detail = "Bures G vs 2(1-sqrt F)/eps^2 at eps=1e-4 (symmetric), " + std::to_string(states) +
             " qubit and two-qubit states";
  return r;
}

CriterionResult check_delta_g_signatures(const ValidationOptions& opts, int diagonal_states) {
  const GadChannel ch = GadChannel::from_alpha(1.0, 0.0);
  double werner_min = std::numeric_limits<double>::infinity();
  double werner_at = -1.0;
  for (int k = 0; k <= 60; ++k) {
    const double p = 0.4 + 0.01 * k;
    const DensityMatrix rho = sample_werner({opts.seed, 0}, p);
    if (!(concurrence(rho) > 0.0)) continue;
    const DeltaG d = delta_G(rho, ch, opts.kind, opts.eps);
    if (d.diverged) continue;
    if (d.value < werner_min) {
      werner_min = d.value;
      werner_at = p;
    }
  }
  const std::uint64_t seed = suite_seed(opts.seed, 0x07);
  auto run = [&](std::size_t i) {
    const DensityMatrix rho =
        draw_full_rank({seed, i}, {MeasureKind::diagonal_uniform}, 4).state;
    const DeltaG d = delta_G(rho, ch, opts.kind, opts.eps);
    return d.diverged ? std::numeric_limits<double>::infinity() : d.value;
  };
  double diag_min = std::numeric_limits<double>::infinity();
  int diag_negative = 0;
  for (double v : parallel_map(static_cast<std::size_t>(diagonal_states), opts.workers, run)) {
    diag_min = std::min(diag_min, v);
    if (v < 0.0) ++diag_negative;
  }
  CriterionResult r{"delta_g_signatures", false, werner_min, 0.0, ""};
  r.pass = werner_min < 0.0 && diag_min < 0.0;
  r.detail = "alpha=1, lambda=0: min Delta G over entangled Werner p in [0.4,1] = " +
             fmt("%.6g", werner_min) + " at p=" + fmt("%.2f", werner_at) + " (needs < 0); " +
             std::to_string(diag_negative) + "/" + std::to_string(diagonal_states) +
             " diagonal states with Delta G < 0, min " + fmt("%.6g", diag_min);
  return r;
}

CriterionResult check_block_fidelity(const ValidationOptions& opts, int states) {
  struct Dev {
    double metric = 0.0;
    double eig = 0.0;
    double traj = 0.0;
  };
  std::vector<std::pair<int, std::size_t>> tasks;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < states; ++i) tasks.emplace_back(c, static_cast<std::size_t>(i));
  }
  auto run = [&](std::size_t t) {
    const auto [c, i] = tasks[t];
    const BlockClass cls = kClasses[c];
    const SampleStream stream{suite_seed(opts.seed, 0x0800 + static_cast<std::uint64_t>(c)), i};
    const DensityMatrix rho = draw_full_rank(stream, {block_measure(cls)}, 4).state;
    KeyedRng rng(stream, 0x5eed);
    const BlockParams params = extract_block_params(rho, cls);
    BlockParams rates;
    rates.delta = rng.uniform(-1.0, 1.0);
    rates.z_a = rng.uniform(-1.0, 1.0);
    rates.z_b = rng.uniform(-1.0, 1.0);
    rates.x_a = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    rates.x_b = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const ComplexMatrix inc = block_increment(cls, rates);

    Dev d;
    for (McKind kind : kAllKinds) {
      const double generic = metric_form(rho, inc, kind).value;
      d.metric = std::max(d.metric, rel_err(block_metric(params, rates, kind).value, generic));
      if (kind == McKind::bures) {
        d.metric = std::max(d.metric, rel_err(block_metric_bures(params, rates), generic));
      }
      if (kind == McKind::minimal) {
        d.metric = std::max(d.metric, rel_err(block_metric_maximal(params, rates), generic));
        d.metric =
            std::max(d.metric, rel_err(block_metric_maximal_rearranged(params, rates), generic));
      }
    }
    auto ev = block_eigenvalues(params);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    const Eigen::VectorXd ref = eig_hermitian(rho).values;
    for (int k = 0; k < 4; ++k) d.eig = std::max(d.eig, std::abs(ev[k] - ref(k)) / ref(0));

    const GadChannel ch(rng.uniform(0.0, 1.0), 0.0);
    for (ChannelLayout layout : {ChannelLayout::a_only, ChannelLayout::both}) {
      const auto traj = element_trajectories(rho, cls, ch, layout);
      for (int k = 0; k < 20; ++k) {
        const double lam = k / 19.0;
        const ComplexMatrix kraus = apply_channel(rho, ch.at(lam), layout).matrix();
        d.traj = std::max(d.traj, max_abs_diff(evaluate_trajectories(traj, lam), kraus));
      }
    }
    return d;
  };
  Dev worst;
  for (const Dev& d : parallel_map(tasks.size(), opts.workers, run)) {
    worst.metric = std::max(worst.metric, d.metric);
    worst.eig = std::max(worst.eig, d.eig);
    worst.traj = std::max(worst.traj, d.traj);
  }
  CriterionResult r{"block_form_fidelity", false, std::max(worst.metric, worst.eig), 1e-8, ""};
  r.pass = worst.metric <= 1e-8 && worst.eig <= 1e-8 && worst.traj <= 1e-12;
  r.detail = "metric rel " + fmt("%.3g", worst.metric) + ", eigenvalue rel " + fmt("%.3g", worst.eig) +
             " (bound 1e-8); trajectories abs " + fmt("%.3g", worst.traj) + " (bound 1e-12); " +
             std::to_string(states) + " states per class, 20 lambda values";
  return r;
}

CriterionResult check_coherence_ratio(const ValidationOptions& opts) {
  double worst_closed = 0.0;
  double worst_numeric = 0.0;
  for (int k = 1; k <= 49; ++k) {
    const double r = 0.02 * k;
    const BlochVector polar{0.0, 0.0, r};
    const BlochVector equatorial{r, 0.0, 0.0};
    const double ratio = checked_qubit_g(polar, 0.0, 0.0, opts).value /
                         qubit_g_closed(equatorial, 0.0, 0.0).value;
    worst_closed = std::max(worst_closed, std::abs(ratio - 4.0));
    const GadChannel ch = GadChannel::from_alpha(0.0, 0.0);
    const double np = speed_numeric(density_from_bloch(polar), ch, ChannelLayout::single_qubit,
                                    McKind::bures, opts.eps).g_lambda;
    const double ne = speed_numeric(density_from_bloch(equatorial), ch, ChannelLayout::single_qubit,
                                    McKind::bures, opts.eps).g_lambda;
    worst_numeric = std::max(worst_numeric, std::abs(np / ne - 4.0));
  }
  CriterionResult r{"coherence_population_ratio", false, worst_closed, 1e-9, ""};
  r.pass = worst_closed <= r.bound && worst_numeric <= 1e-6;
  r.detail = "alpha=0, r in [0.02,0.98]; finite-difference ratio deviation " +
             fmt("%.3g", worst_numeric) + " (bound 1e-6)";
  return r;
}

CriterionResult check_mc_bounds(const ValidationOptions& /*opts*/) {
  double worst = 0.0;
  for (int k = -60; k <= 60; ++k) {
    const double t = std::pow(10.0, k / 10.0);
    const double lo = mc_function(McKind::minimal, t);
    const double hi = mc_function(McKind::bures, t);
    for (McKind kind : kAllKinds) {
      const double f = mc_function(kind, t);
      worst = std::max({worst, (lo - f) / f, (f - hi) / f});
      worst = std::max(worst, std::abs(f - t * mc_function(kind, 1.0 / t)) / f);
    }
  }
  for (McKind kind : kAllKinds) worst = std::max(worst, std::abs(mc_function(kind, 1.0) - 1.0));
  CriterionResult r{"mc_function_bounds", false, worst, 1e-14, ""};
  r.pass = worst <= r.bound;
  r.detail = "f_min <= f <= f_max, f(1) = 1 and f(t) = t f(1/t) on t in [1e-6, 1e6]";
  return r;
}

std::vector<CriterionResult> run_validation_suites(const ValidationOptions& opts) {
  return {
      check_oracle_equivalence(opts),
      check_divergence_law(opts),
      check_coherence_ratio(opts),
      check_single_qubit_control(opts),
      check_monotonicity(opts),
      check_contractivity(opts),
      check_fidelity_link(opts),
      check_block_fidelity(opts),
      check_mc_bounds(opts),
  };
}

}  // namespace qgeo
