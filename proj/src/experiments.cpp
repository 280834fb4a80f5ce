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


#include "qgeo/experiments.hpp"

#include <array>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "qgeo/blocks.hpp"
#include "qgeo/csv.hpp"
#include "qgeo/parallel.hpp"
#include "qgeo/sampling.hpp"

namespace qgeo {

namespace {

using Row = std::vector<std::string>;
using nlohmann::json;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr int kCurvePoints = 100;
constexpr int kMinOrthoSamples = 200;
constexpr double kMinAsymptoteX = 0.1;
constexpr std::array<double, 5> kAsymptoteSteps{1e-1, 1e-2, 1e-3, 1e-4, 1e-5};

std::uint64_t experiment_seed(const ExperimentConfig& cfg, std::uint64_t tag) {
  return splitmix64(cfg.seed ^ (0xe000 + tag));
}

std::string f(double v) { return format_double(v); }

// Bures uses the closed form, other kinds the eigenbasis evaluation.
MetricValue qubit_speed(const BlochVector& b0, double alpha, double lambda, McKind kind,
                        double eps) {
  if (kind == McKind::bures) return qubit_g_closed(b0, alpha, lambda);
  const SpeedSample s = speed_numeric(density_from_bloch(b0), GadChannel::from_alpha(alpha, lambda),
                                      ChannelLayout::single_qubit, kind, eps);
  return {s.g_lambda, s.diverged};
}

struct Sampled {
  DensityMatrix state;
  int rejected;
};

Sampled full_rank(std::uint64_t seed, std::size_t index, MeasureKind kind, Eigen::Index dim) {
  Draw d = draw_full_rank({seed, index}, {kind}, dim);
  return {d.state, d.rejected};
}

std::string rejection_log(const char* what, long rejected, std::size_t draws) {
  return std::string(what) + ": " + std::to_string(rejected) + " rejected draws over " +
         std::to_string(draws) + " samples (PSD rejection or min eigenvalue < 1e-9)";
}

class CsvBuilder {
 public:
  CsvBuilder(const ExperimentConfig& cfg, const std::vector<std::string>& columns) : w_(os_) {
    w_.comment(config_comment(cfg));
    w_.header(columns);
  }
  void row(const Row& r) { w_.row(r); }
  std::string str() const { return os_.str(); }

 private:
  std::ostringstream os_;
  CsvWriter w_;
};

std::vector<ChannelLayout> fig2_layouts(const std::string& layout) {
  if (layout == "single") return {ChannelLayout::a_only};
  if (layout == "both") return {ChannelLayout::both};
  return {ChannelLayout::a_only, ChannelLayout::both};
}

const char* fig_layout_label(ChannelLayout l) { return l == ChannelLayout::both ? "both" : "single"; }

}  // namespace

const char* experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fig1:
      return "fig1";
    case ExperimentKind::fig2:
      return "fig2";
    case ExperimentKind::fig3:
      return "fig3";
    case ExperimentKind::ortho:
      return "ortho";
    case ExperimentKind::asymptote:
      return "asymptote";
    case ExperimentKind::validate:
      return "validate";
    case ExperimentKind::surface:
      return "surface";
  }
  return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
  for (ExperimentKind k : {ExperimentKind::fig1, ExperimentKind::fig2, ExperimentKind::fig3,
                           ExperimentKind::ortho, ExperimentKind::asymptote,
                           ExperimentKind::validate, ExperimentKind::surface}) {
    if (name == experiment_name(k)) return k;
  }
  throw ConfigError("unknown experiment: " + std::string(name));
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env_value) {
  if (flag) return *flag;
  if (env_value == nullptr || *env_value == '\0') return kDefaultSeed;
  const std::string s(env_value);
  if (s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("QGEO_SEED must be a non-negative integer, got '" + s + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(s.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError("QGEO_SEED is out of range");
  return static_cast<std::uint64_t>(v);
}

std::vector<double> default_alphas(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::fig1:
      return {0.0, 0.3, 1.0};
    case ExperimentKind::surface:
      return {0.0};
    case ExperimentKind::validate:
      return {};
    default:
      return {0.0, 0.5, 1.0};
  }
}

std::vector<double> effective_alphas(const ExperimentConfig& cfg) {
  return cfg.alphas.empty() ? default_alphas(cfg.experiment) : cfg.alphas;
}

std::string default_output_path(ExperimentKind kind) {
  const std::string ext = kind == ExperimentKind::validate ? ".json" : ".csv";
  return std::string("./out/") + experiment_name(kind) + ext;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.samples < 1) throw ConfigError("--samples must be at least 1");
  if (cfg.experiment == ExperimentKind::ortho && cfg.samples < kMinOrthoSamples) {
    throw ConfigError("ortho needs at least 200 samples per cell");
  }
  for (double a : cfg.alphas) {
    if (!(a >= -1.0 && a <= 1.0)) throw ConfigError("--alpha values must lie in [-1, 1]");
  }
  if (!(cfg.eps > 0.0 && cfg.eps <= kTol.max_fd_eps)) {
    throw ConfigError("--eps must lie in (0, 1e-3]");
  }
  if (cfg.layout != "single" && cfg.layout != "both" && cfg.layout != "all") {
    throw ConfigError("--layout must be single, both or all");
  }
  if (cfg.workers < 1 || cfg.workers > 256) throw ConfigError("--workers must lie in [1, 256]");
  if (cfg.grid < 3 || cfg.grid > 2001) throw ConfigError("--grid must lie in [3, 2001]");
}

std::string config_comment(const ExperimentConfig& cfg) {
  std::string alphas;
  for (double a : effective_alphas(cfg)) {
    if (!alphas.empty()) alphas += ';';
    alphas += format_short(a);
  }
  std::string s = std::string("qgeo ") + QGEO_VERSION + " experiment=" + experiment_name(cfg.experiment) +
                  " samples=" + std::to_string(cfg.samples) + " alpha=" + alphas +
                  " metric=" + mc_kind_name(cfg.metric) + " seed=" + std::to_string(cfg.seed) +
                  " eps=" + format_short(cfg.eps) + " layout=" + cfg.layout +
                  " grid=" + std::to_string(cfg.grid) + " inject_error=" + format_bool(cfg.inject_error);
  return s;
}

ExperimentResult run_fig1(const ExperimentConfig& cfg) {
  CsvBuilder csv(cfg, {"row_kind", "sample_id", "alpha", "x0", "z0", "r", "Z0", "energy_class", "g",
                       "sqrt_g", "diverged"});
  const std::uint64_t seed = experiment_seed(cfg, 1);
  const auto states = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.workers, [&](std::size_t i) {
    return full_rank(seed, i, MeasureKind::bloch_ball_uniform, 2);
  });
  long rejected = 0;
  for (const auto& s : states) rejected += s.rejected;

  auto emit = [&](const char* kind, std::size_t id, double alpha, double x0, double z0, const MetricValue& g) {
    const double r = std::hypot(x0, z0);
    const double zrel = z0 - alpha;
    csv.row({kind, std::to_string(id), f(alpha), f(x0), f(z0), f(r), f(zrel), zrel > 0.0 ? "Z>0" : "Z<=0",
             f(g.value), f(std::sqrt(g.value)), format_bool(g.diverged)});
  };
  for (double alpha : effective_alphas(cfg)) {
    const auto speeds = parallel_map(states.size(), cfg.workers, [&](std::size_t i) {
      return qubit_speed(bloch_from_density(states[i].state), alpha, 0.0, cfg.metric, cfg.eps);
    });
    for (std::size_t i = 0; i < states.size(); ++i) {
      const BlochVector b = bloch_from_density(states[i].state);
      emit("sample", i, alpha, std::hypot(b.x, b.y), b.z, speeds[i]);
    }
    for (int k = 0; k < kCurvePoints; ++k) {
      const double r = k / static_cast<double>(kCurvePoints);
      emit("polar", k, alpha, 0.0, r, qubit_speed({0.0, 0.0, r}, alpha, 0.0, cfg.metric, cfg.eps));
    }
    for (int k = 0; k < kCurvePoints; ++k) {
      const double r = k / static_cast<double>(kCurvePoints);
      emit("equatorial", k, alpha, r, 0.0, qubit_speed({r, 0.0, 0.0}, alpha, 0.0, cfg.metric, cfg.eps));
    }
  }
  ExperimentResult out;
  out.csv = csv.str();
  out.log.push_back(rejection_log("fig1", rejected, states.size()));
  return out;
}

ExperimentResult run_fig2(const ExperimentConfig& cfg) {
  CsvBuilder csv(cfg, {"row_kind", "sample_id", "alpha", "layout", "state_class", "concurrence", "g",
                       "diverged"});
  const std::uint64_t seed = experiment_seed(cfg, 2);
  const auto states = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.workers, [&](std::size_t i) {
    return full_rank(seed, i, i % 2 == 0 ? MeasureKind::x_state_uniform : MeasureKind::hs_mixed, 4);
  });
  long rejected = 0;
  std::vector<double> conc(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    rejected += states[i].rejected;
    conc[i] = concurrence(states[i].state);
  }
  const DensityMatrix bell = bell_phi_plus();
  for (double alpha : effective_alphas(cfg)) {
    const GadChannel ch = GadChannel::from_alpha(alpha, 0.0);
    const DensityMatrix fixed = tensor_product(fixed_point(alpha), fixed_point(alpha));
    for (ChannelLayout layout : fig2_layouts(cfg.layout)) {
      const auto speeds = parallel_map(states.size(), cfg.workers, [&](std::size_t i) {
        return speed_numeric(states[i].state, ch, layout, cfg.metric, cfg.eps);
      });
      for (std::size_t i = 0; i < states.size(); ++i) {
        csv.row({"sample", std::to_string(i), f(alpha), fig_layout_label(layout),
                 i % 2 == 0 ? "X" : "generic", f(conc[i]), f(speeds[i].g_lambda),
                 format_bool(speeds[i].diverged)});
      }
      const SpeedSample sb = speed_numeric(bell, ch, layout, cfg.metric, cfg.eps);
      csv.row({"reference", "0", f(alpha), fig_layout_label(layout), "bell", f(concurrence(bell)),
               f(sb.g_lambda), format_bool(sb.diverged)});
      const SpeedSample sf = speed_numeric(fixed, ch, layout, cfg.metric, cfg.eps);
      csv.row({"reference", "1", f(alpha), fig_layout_label(layout), "fixed_point",
               f(concurrence(fixed)), f(sf.g_lambda), format_bool(sf.diverged)});
    }
  }
  ExperimentResult out;
  out.csv = csv.str();
  out.log.push_back(rejection_log("fig2", rejected, states.size()));
  return out;
}

ExperimentResult run_fig3(const ExperimentConfig& cfg) {
  CsvBuilder csv(cfg, {"row_kind", "sample_id", "alpha", "state_class", "werner_p", "concurrence", "G_AB",
                       "G_A", "G_B", "delta_G", "diverged"});
  const std::uint64_t seed = experiment_seed(cfg, 3);
  static constexpr std::array<MeasureKind, 3> kinds{MeasureKind::x_state_uniform, MeasureKind::hs_mixed,
                                                    MeasureKind::diagonal_uniform};
  static constexpr std::array<const char*, 3> labels{"X", "generic", "diagonal"};
  const auto states = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.workers, [&](std::size_t i) {
    return full_rank(seed, i, kinds[i % 3], 4);
  });
  long rejected = 0;
  std::vector<double> conc(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    rejected += states[i].rejected;
    conc[i] = concurrence(states[i].state);
  }
  auto emit = [&](const char* kind, std::size_t id, double alpha, const char* cls, double wp,
                  double c, const DeltaG& d) {
    csv.row({kind, std::to_string(id), f(alpha), cls, f(wp), f(c), f(d.global), f(d.local_a),
             f(d.local_b), f(d.value), format_bool(d.diverged)});
  };
  for (double alpha : effective_alphas(cfg)) {
    const GadChannel ch = GadChannel::from_alpha(alpha, 0.0);
    const auto dg = parallel_map(states.size(), cfg.workers, [&](std::size_t i) {
      return delta_G(states[i].state, ch, cfg.metric, cfg.eps);
    });
    for (std::size_t i = 0; i < states.size(); ++i) {
      emit("sample", i, alpha, labels[i % 3], kNan, conc[i], dg[i]);
    }
    for (int k = 0; k <= 60; ++k) {
      const double p = 0.4 + 0.01 * k;
      const DensityMatrix w = sample_werner({cfg.seed, static_cast<std::uint64_t>(k)}, p);
      emit("werner", k, alpha, "werner", p, concurrence(w), delta_G(w, ch, cfg.metric, cfg.eps));
    }
    const DensityMatrix bell = bell_phi_plus();
    emit("reference", 0, alpha, "bell", kNan, concurrence(bell), delta_G(bell, ch, cfg.metric, cfg.eps));
    const DensityMatrix fixed = tensor_product(fixed_point(alpha), fixed_point(alpha));
    emit("reference", 1, alpha, "fixed_point", kNan, concurrence(fixed),
         delta_G(fixed, ch, cfg.metric, cfg.eps));
  }
  ExperimentResult out;
  out.csv = csv.str();
  out.log.push_back(rejection_log("fig3", rejected, states.size()));
  return out;
}

ExperimentResult run_ortho(const ExperimentConfig& cfg) {
  const OrthoTable t = compute_ortho_table(cfg.seed, cfg.samples, effective_alphas(cfg), cfg.metric,
                                           cfg.eps, cfg.workers);
  CsvBuilder csv(cfg, {"scheme", "state_class", "sample_id", "alpha", "lambda", "residual", "V_S2",
                       "V_I2", "V_H2", "separable", "zero_speed", "diverged"});
  for (const auto& s : t.samples) {
    const auto& c = s.check;
    csv.row({scheme_label(s.scheme), s.state_class, std::to_string(s.index), f(s.alpha), f(s.lambda),
             f(c.cross_residual), f(c.schrodinger), f(c.interaction), f(c.hamiltonian),
             format_bool(c.separable), format_bool(c.zero_speed), format_bool(c.diverged)});
  }
  json cells = json::array();
  json table = json::object();
  json expected = json::object();
  for (const auto& c : t.cells) {
    const std::string v(1, c.verdict);
    const std::string e(1, c.expected);
    cells.push_back({{"scheme", scheme_label(c.scheme)},
                     {"state_class", c.state_class},
                     {"samples", c.samples},
                     {"max_residual", c.max_residual},
                     {"fraction_above_1e-3", c.frac_above},
                     {"verdict", v},
                     {"expected", e},
                     {"match", c.verdict == c.expected}});
    table[scheme_label(c.scheme)][c.state_class] = v;
    expected[scheme_label(c.scheme)][c.state_class] = e;
  }
  json report = {{"config", config_comment(cfg)},
                 {"rules", {{"Y", "max residual < 1e-8"}, {"N", "at least 10% of samples with residual > 1e-3"}}},
                 {"cells", cells},
                 {"table", table},
                 {"expected", expected},
                 {"control", {{"samples", t.control_samples},
                              {"max_relative", t.control_max_relative},
                              {"bound", kControlBound},
                              {"pass", t.control_max_relative <= kControlBound}}},
                 {"all_match", t.all_match()}};
  ExperimentResult out;
  out.csv = csv.str();
  out.json = report.dump(2) + "\n";
  for (const auto& c : t.cells) {
    out.log.push_back(std::string("ortho ") + scheme_label(c.scheme) + "/" + c.state_class + ": " +
                      c.verdict + " (expected " + c.expected + ", max residual " + f(c.max_residual) + ")");
  }
  out.log.push_back("ortho control max relative " + f(t.control_max_relative));
  return out;
}

ExperimentResult run_asymptote(const ExperimentConfig& cfg) {
  CsvBuilder csv(cfg, {"sample_id", "alpha", "X0", "one_minus_lambda", "g", "ratio", "status"});
  const std::uint64_t seed = experiment_seed(cfg, 5);
  const auto states = parallel_map(static_cast<std::size_t>(cfg.samples), cfg.workers, [&](std::size_t i) {
    return full_rank(seed, i, MeasureKind::bloch_ball_uniform, 2);
  });
  long excluded = 0;
  for (double alpha : effective_alphas(cfg)) {
    const auto rows = parallel_map(states.size(), cfg.workers, [&](std::size_t i) {
      std::vector<Row> r;
      const BlochVector b = bloch_from_density(states[i].state);
      const double x0 = std::hypot(b.x, b.y);
      if (x0 < kMinAsymptoteX) {
        r.push_back({std::to_string(i), f(alpha), f(x0), f(kNan), f(kNan), f(kNan), "excluded_small_x"});
        return r;
      }
      for (double step : kAsymptoteSteps) {
        const MetricValue g = qubit_speed(b, alpha, 1.0 - step, cfg.metric, cfg.eps);
        const double ratio = g.value / (x0 * x0 * step / 16.0);
        r.push_back({std::to_string(i), f(alpha), f(x0), f(step), f(g.value), f(ratio),
                     g.diverged ? "diverged" : "ok"});
      }
      return r;
    });
    for (const auto& block : rows) {
      for (const auto& r : block) {
        if (r.back() == "excluded_small_x") ++excluded;
        csv.row(r);
      }
    }
  }
  ExperimentResult out;
  out.csv = csv.str();
  out.log.push_back("asymptote: " + std::to_string(excluded) + " (sample, alpha) rows excluded with |X0| < 0.1");
  return out;
}

ExperimentResult run_validate(const ExperimentConfig& cfg) {
  ValidationOptions opts;
  opts.seed = cfg.seed;
  opts.eps = cfg.eps;
  opts.kind = cfg.metric;
  opts.inject_error = cfg.inject_error;
  opts.workers = cfg.workers;
  const auto results = run_validation_suites(opts);
  json criteria = json::array();
  bool all_pass = true;
  ExperimentResult out;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    criteria.push_back({{"name", r.name},
                        {"pass", r.pass},
                        {"measured", r.measured},
                        {"bound", r.bound},
                        {"detail", r.detail}});
    out.log.push_back(std::string(r.pass ? "PASS " : "FAIL ") + r.name + " measured=" + f(r.measured) +
                      " bound=" + f(r.bound) + " | " + r.detail);
  }
  const json report = {{"config", config_comment(cfg)}, {"criteria", criteria}, {"all_pass", all_pass}};
  out.json = report.dump(2) + "\n";
  out.exit_code = all_pass ? 0 : 1;
  return out;
}

ExperimentResult run_surface(const ExperimentConfig& cfg) {
  CsvBuilder csv(cfg, {"row_kind", "id", "x0", "z0", "x", "z", "t", "lambda", "G_tt", "diverged"});
  const double alpha = effective_alphas(cfg).front();
  const TimeMap tm;
  const int n = cfg.grid;
  struct Point {
    double x0, z0;
  };
  std::vector<Point> grid;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x0 = -1.0 + 2.0 * i / (n - 1);
      const double z0 = -1.0 + 2.0 * j / (n - 1);
      if (x0 * x0 + z0 * z0 < 1.0 - kTol.full_rank_resample) grid.push_back({x0, z0});
    }
  }
  const auto speeds = parallel_map(grid.size(), cfg.workers, [&](std::size_t k) {
    return qubit_speed({grid[k].x0, 0.0, grid[k].z0}, alpha, 0.0, cfg.metric, cfg.eps);
  });
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double gtt = tm.eta() * tm.eta() * speeds[k].value;
    csv.row({"grid", std::to_string(k), f(grid[k].x0), f(grid[k].z0), f(grid[k].x0), f(grid[k].z0),
             f(0.0), f(0.0), f(gtt), format_bool(speeds[k].diverged)});
  }
  static constexpr std::array<Point, 5> starts{{{0.9, 0.0}, {0.6, 0.6}, {0.0, 0.9}, {0.5, -0.7}, {-0.8, 0.3}}};
  for (std::size_t id = 0; id < starts.size(); ++id) {
    const BlochVector b0{starts[id].x0, 0.0, starts[id].z0};
    for (int k = 0; k <= 80; ++k) {
      const double t = 0.1 * k;
      const double lam = lambda_of_time(t, tm);
      const BlochVector b = evolve_bloch_closed(b0, alpha, lam);
      const MetricValue g = qubit_speed(b0, alpha, lam, cfg.metric, cfg.eps);
      csv.row({"trajectory", std::to_string(id), f(b0.x), f(b0.z), f(b.x), f(b.z), f(t), f(lam),
               f(tm.eta() * tm.eta() * g.value), format_bool(g.diverged)});
    }
  }
  ExperimentResult out;
  out.csv = csv.str();
  out.log.push_back("surface: " + std::to_string(grid.size()) + " grid points inside r < 1");
  return out;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  switch (cfg.experiment) {
    case ExperimentKind::fig1:
      return run_fig1(cfg);
    case ExperimentKind::fig2:
      return run_fig2(cfg);
    case ExperimentKind::fig3:
      return run_fig3(cfg);
    case ExperimentKind::ortho:
      return run_ortho(cfg);
    case ExperimentKind::asymptote:
      return run_asymptote(cfg);
    case ExperimentKind::validate:
      return run_validate(cfg);
    case ExperimentKind::surface:
      return run_surface(cfg);
  }
  throw ConfigError("unknown experiment");
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& data) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << data;
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

int run_and_write(const ExperimentConfig& cfg, std::ostream& log) {
  ExperimentResult res;
  try {
    res = run_experiment(cfg);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << '\n';
    return 2;
  }
  const std::filesystem::path out = cfg.out.empty() ? default_output_path(cfg.experiment) : cfg.out;
  if (cfg.experiment == ExperimentKind::validate) {
    write_file(out, res.json);
  } else {
    write_file(out, res.csv);
    if (!res.json.empty()) {
      std::filesystem::path j = out;
      j.replace_extension(".json");
      write_file(j, res.json);
      log << "wrote " << j.string() << '\n';
    }
  }
  for (const auto& line : res.log) log << line << '\n';
  log << "wrote " << out.string() << '\n';
  return res.exit_code;
}

}  // namespace qgeo
