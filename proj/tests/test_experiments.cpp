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
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgeo/csv.hpp"
#include "qgeo/experiments.hpp"

using namespace qgeo;

namespace {

struct Table {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Table parse_csv(const std::string& text) {
  Table t;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    REQUIRE(line.find('\r') == std::string::npos);
    if (line.rfind("# ", 0) == 0) {
      t.comments.push_back(line);
    } else if (t.header.empty()) {
      t.header = split(line);
    } else {
      const auto cells = split(line);
      REQUIRE(cells.size() == t.header.size());
      std::map<std::string, std::string> row;
      for (std::size_t i = 0; i < cells.size(); ++i) row[t.header[i]] = cells[i];
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

double num(const std::map<std::string, std::string>& row, const std::string& key) {
  return std::stod(row.at(key));
}

ExperimentConfig small(ExperimentKind kind, int samples) {
  ExperimentConfig cfg;
  cfg.experiment = kind;
  cfg.samples = samples;
  return cfg;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
    CHECK(std::stod(format_short(v)) == v);
  }
  CHECK(format_short(0.3) == "0.3");
  CHECK(format_short(1e-6) == "1e-06");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_bool(true) == "true");
}

TEST_CASE("csv writer enforces the column count") {
  std::ostringstream os;
  CsvWriter w(os);
  w.comment("hello");
  w.header({"a", "b"});
  w.row({"1", "2"});
  CHECK_THROWS(w.row({"1"}));
  CHECK(os.str() == "# hello\na,b\n1,2\n");
}

TEST_CASE("seed precedence is flag, environment, default") {
  CHECK(resolve_seed(7, "9") == 7);
  CHECK(resolve_seed(std::nullopt, "9") == 9);
  CHECK(resolve_seed(std::nullopt, nullptr) == kDefaultSeed);
  CHECK(resolve_seed(std::nullopt, "") == kDefaultSeed);
  CHECK_THROWS_AS(resolve_seed(std::nullopt, "12abc"), ConfigError);
  CHECK_THROWS_AS(resolve_seed(std::nullopt, "-3"), ConfigError);
}

TEST_CASE("experiment names and defaults") {
  for (auto k : {ExperimentKind::fig1, ExperimentKind::fig2, ExperimentKind::fig3, ExperimentKind::ortho,
                 ExperimentKind::asymptote, ExperimentKind::validate, ExperimentKind::surface}) {
    CHECK(parse_experiment(experiment_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_experiment("fig9"), ConfigError);
  CHECK(default_alphas(ExperimentKind::fig1) == std::vector<double>{0.0, 0.3, 1.0});
  CHECK(default_output_path(ExperimentKind::fig2) == "./out/fig2.csv");
  CHECK(default_output_path(ExperimentKind::validate) == "./out/validate.json");
  ExperimentConfig cfg = small(ExperimentKind::fig3, 10);
  CHECK(effective_alphas(cfg) == std::vector<double>{0.0, 0.5, 1.0});
  cfg.alphas = {0.25};
  CHECK(effective_alphas(cfg) == std::vector<double>{0.25});
}

TEST_CASE("invalid configurations are rejected") {
  auto rejects = [](auto mutate) {
    ExperimentConfig cfg = small(ExperimentKind::fig1, 10);
    mutate(cfg);
    CHECK_THROWS_AS(validate_config(cfg), ConfigError);
  };
  rejects([](ExperimentConfig& c) { c.samples = 0; });
  rejects([](ExperimentConfig& c) { c.alphas = {1.5}; });
  rejects([](ExperimentConfig& c) { c.alphas = {std::nan("")}; });
  rejects([](ExperimentConfig& c) { c.eps = 0.0; });
  rejects([](ExperimentConfig& c) { c.eps = 1e-2; });
  rejects([](ExperimentConfig& c) { c.layout = "diagonal"; });
  rejects([](ExperimentConfig& c) { c.workers = 0; });
  rejects([](ExperimentConfig& c) { c.grid = 2; });
  rejects([](ExperimentConfig& c) {
    c.experiment = ExperimentKind::ortho;
    c.samples = 199;
  });
  CHECK_NOTHROW(validate_config(small(ExperimentKind::fig1, 1)));
  CHECK_THROWS_AS(run_experiment(small(ExperimentKind::fig1, 0)), ConfigError);
}

TEST_CASE("header comment lists the data-relevant configuration") {
  ExperimentConfig cfg = small(ExperimentKind::fig1, 12);
  cfg.out = "/tmp/somewhere.csv";
  cfg.workers = 4;
  const std::string c = config_comment(cfg);
  CHECK(c.rfind("qgeo ", 0) == 0);
  CHECK(c.find("experiment=fig1") != std::string::npos);
  CHECK(c.find("samples=12") != std::string::npos);
  CHECK(c.find("alpha=0;0.3;1") != std::string::npos);
  CHECK(c.find("seed=42") != std::string::npos);
  CHECK(c.find("somewhere") == std::string::npos);
  CHECK(c.find("workers") == std::string::npos);
}

TEST_CASE("fig1 reference curves and sample rows") {
  const ExperimentResult res = run_experiment(small(ExperimentKind::fig1, 20));
  CHECK(res.exit_code == 0);
  CHECK(res.csv.find('\r') == std::string::npos);
  const Table t = parse_csv(res.csv);
  REQUIRE(t.comments.size() == 1);
  CHECK(t.comments[0] == "# " + config_comment(small(ExperimentKind::fig1, 20)));
  int samples = 0;
  for (const auto& row : t.rows) {
    const double alpha = num(row, "alpha");
    if (row.at("row_kind") == "sample") {
      ++samples;
      CHECK(num(row, "Z0") == doctest::Approx(num(row, "z0") - alpha));
      CHECK(row.at("energy_class") == (num(row, "Z0") > 0.0 ? "Z>0" : "Z<=0"));
      CHECK(num(row, "r") < 1.0);
    }
    if (alpha == 0.0 && row.at("sample_id") == "50") {
      if (row.at("row_kind") == "equatorial") {
        CHECK(num(row, "sqrt_g") == doctest::Approx(std::sqrt(1.0 / 48.0)).epsilon(1e-12));
      }
      if (row.at("row_kind") == "polar") {
        CHECK(num(row, "g") == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
      }
    }
    if (row.at("row_kind") != "sample") {
      CHECK(num(row, "sqrt_g") == doctest::Approx(std::sqrt(num(row, "g"))));
    }
  }
  CHECK(samples == 20 * 3);
}

TEST_CASE("fig2 rows cover both layouts with finite sample speeds") {
  const Table t = parse_csv(run_experiment(small(ExperimentKind::fig2, 10)).csv);
  std::map<std::string, int> layouts;
  for (const auto& row : t.rows) {
    ++layouts[row.at("layout")];
    if (row.at("row_kind") == "sample") {
      CHECK(row.at("state_class") == (std::stoi(row.at("sample_id")) % 2 == 0 ? "X" : "generic"));
      CHECK(row.at("diverged") == "false");
      CHECK(num(row, "g") >= 0.0);
      CHECK(num(row, "concurrence") >= 0.0);
    } else if (row.at("state_class") == "fixed_point") {
      CHECK(num(row, "g") < 1e-20);
    }
  }
  CHECK(layouts["single"] == layouts["both"]);
  CHECK(layouts.size() == 2);
}

TEST_CASE("fig3 Bell reference has vanishing local speeds at alpha = 0") {
  ExperimentConfig cfg = small(ExperimentKind::fig3, 6);
  cfg.alphas = {0.0};
  const Table t = parse_csv(run_experiment(cfg).csv);
  int werner = 0;
  for (const auto& row : t.rows) {
    if (row.at("state_class") == "bell") {
      CHECK(num(row, "G_A") < 1e-20);
      CHECK(num(row, "G_B") < 1e-20);
    }
    if (row.at("row_kind") == "werner") {
      ++werner;
      if (row.at("diverged") == "true") continue;
      CHECK(num(row, "delta_G") == doctest::Approx(num(row, "G_AB") - num(row, "G_A") - num(row, "G_B")));
    }
  }
  CHECK(werner == 61);
}

TEST_CASE("surface grid respects the disc and trajectories relax") {
  ExperimentConfig cfg = small(ExperimentKind::surface, 1);
  cfg.grid = 11;
  const Table t = parse_csv(run_experiment(cfg).csv);
  std::map<std::string, double> last_lambda;
  for (const auto& row : t.rows) {
    const double x0 = num(row, "x0"), z0 = num(row, "z0");
    CHECK(x0 * x0 + z0 * z0 < 1.0);
    if (row.at("row_kind") == "grid") {
      CHECK(num(row, "lambda") == 0.0);
      CHECK(num(row, "G_tt") >= 0.0);
      if (x0 == 0.0 && z0 == 0.0) CHECK(num(row, "G_tt") < 1e-20);
    } else {
      const std::string id = row.at("id");
      const double lam = num(row, "lambda");
      if (last_lambda.count(id)) CHECK(lam > last_lambda[id]);
      last_lambda[id] = lam;
      CHECK(lam == doctest::Approx(1.0 - std::exp(-num(row, "t"))));
    }
  }
  CHECK(last_lambda.size() == 5);
}

TEST_CASE("asymptote rows flag excluded and converged samples") {
  const Table t = parse_csv(run_experiment(small(ExperimentKind::asymptote, 20)).csv);
  int ok = 0;
  for (const auto& row : t.rows) {
    const std::string status = row.at("status");
    CHECK((status == "ok" || status == "excluded_small_x" || status == "diverged"));
    if (status == "ok") ++ok;
    if (status == "excluded_small_x") CHECK(row.at("ratio") == "nan");
    if (status == "ok" && num(row, "alpha") == 0.0 && num(row, "one_minus_lambda") < 2e-5) {
      CHECK(std::abs(num(row, "ratio") - 1.0) < 1e-2);
    }
  }
  CHECK(ok > 0);
}

TEST_CASE("outputs do not depend on the worker count") {
  for (auto kind : {ExperimentKind::fig1, ExperimentKind::fig2, ExperimentKind::fig3, ExperimentKind::asymptote}) {
    ExperimentConfig a = small(kind, 12);
    ExperimentConfig b = a;
    b.workers = 3;
    const auto ra = run_experiment(a);
    const auto rb = run_experiment(b);
    CHECK(ra.csv == rb.csv);
    CHECK(ra.json == rb.json);
  }
  ExperimentConfig s = small(ExperimentKind::fig1, 12);
  s.seed = 7;
  CHECK(run_experiment(s).csv != run_experiment(small(ExperimentKind::fig1, 12)).csv);
}

TEST_CASE("ortho experiment writes rows and a verdict table") {
  ExperimentConfig cfg = small(ExperimentKind::ortho, 200);
  cfg.workers = 4;
  const ExperimentResult res = run_experiment(cfg);
  const auto j = nlohmann::json::parse(res.json);
  REQUIRE(j.contains("cells"));
  bool saw_i = false, saw_iii_yb = false;
  for (const auto& cell : j["cells"]) {
    if (cell["scheme"] == "i") {
      saw_i = true;
      CHECK(cell["verdict"] == "Y");
    }
    if (cell["scheme"] == "iii" && cell["state_class"] == "Yb") {
      saw_iii_yb = true;
      CHECK(cell["verdict"] == "N");
    }
  }
  CHECK(saw_i);
  CHECK(saw_iii_yb);
  const Table t = parse_csv(res.csv);
  CHECK(t.rows.size() > 200);
}

TEST_CASE("validate reports pass and catches an injected error") {
  ExperimentConfig cfg = small(ExperimentKind::validate, 1);
  cfg.workers = 4;
  const ExperimentResult ok = run_experiment(cfg);
  CHECK(ok.exit_code == 0);
  const auto j = nlohmann::json::parse(ok.json);
  CHECK(j["all_pass"] == true);
  cfg.inject_error = true;
  CHECK(run_experiment(cfg).exit_code == 1);
}
