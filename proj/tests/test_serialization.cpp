// Copyright 2026 The dxcluster Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dxc/experiment.hpp"
#include "dxc/serialization.hpp"

using namespace dxc;

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dxcluster_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

}  // namespace

TEST_SUITE("serialization") {

TEST_CASE("process map JSON layout") {
  const Json j = process_map_to_json(ideal_process_map());
  REQUIRE(j["phi"].size() == 16);
  CHECK(j["rows"][0] == "00");
  CHECK(j["rows"][6] == "xy");
  CHECK(j["columns"][3] == "z");
  CHECK(j["phi"][0][0].get<double>() == doctest::Approx(0.5));
  for (int g = 1; g < 4; ++g) CHECK(std::abs(j["phi"][0][g].get<double>()) < 1e-15);
  // phi^y_{xy} = 1/2 sits in row "xy", column "y".
  CHECK(j["phi"][6][2].get<double>() == doctest::Approx(0.5));
}

TEST_CASE("process map JSON round trip") {
  const auto map = ideal_process_map();
  const auto back = process_map_from_json(Json::parse(process_map_to_json(map).dump()));
  CHECK(back.coefficients() == map.coefficients());
  CHECK_THROWS_AS(process_map_from_json(Json::parse("{\"phi\": [[1,2,3,4]]}")), Error);
}

TEST_CASE("count records round trip through JSON lines") {
  const auto settings = default_settings();
  const std::vector<MeasurementSetting> some(settings.begin() + 60, settings.begin() + 70);
  const auto counts = simulate_counts(ideal_process_map(), some, 1000, 3);
  std::stringstream ss;
  write_count_records(ss, counts);
  const auto back = read_count_records(ss);
  REQUIRE(back.size() == counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    CHECK(back[i].hits == counts[i].hits);
    CHECK(back[i].misses == counts[i].misses);
    CHECK(back[i].setting.describe() == counts[i].setting.describe());
    CHECK(back[i].stream == counts[i].stream);
  }
  std::stringstream bad("{\"setting\":{\"init\":\"+X\",\"photons\":[\"H\"],\"de\":\"+Z\"},"
                        "\"shots\":5,\"hits\":4,\"misses\":4,\"seed\":1,\"stream\":0}\n");
  CHECK_THROWS_AS(read_count_records(bad), Error);
}

TEST_CASE("parameters from JSON") {
  PhysicalParams p;
  update_params_from_json(p, Json::parse(R"({"t_rad": 0.5, "T_BiE": "inf"})"));
  CHECK(p.t_rad == 0.5);
  CHECK(std::isinf(p.T_BiE));
  CHECK(p.T_DE == 3.0);
  CHECK_THROWS_WITH_AS(update_params_from_json(p, Json::parse(R"({"T_DE": "x"})")),
                       doctest::Contains("T_DE"), Error);
  const Json j = params_to_json(PhysicalParams{});
  CHECK(j["T2_star"] == 100.0);
}

TEST_CASE("LE CSV layout") {
  std::vector<LECurvePoint> curve(2);
  curve[0].d = 1;
  curve[0].result.negativity = 0.4;
  curve[1].d = 2;
  curve[1].result.negativity = 0.3;
  ExponentialFit fit;
  fit.n0 = 0.5;
  fit.xi = 4.0;
  std::ostringstream os;
  write_le_csv(os, curve, fit, {"seed: 1"});
  const std::string s = os.str();
  CHECK(s.rfind("# columns:", 0) == 0);
  CHECK(s.find("# seed: 1\n") != std::string::npos);
  CHECK(s.find("d,negativity,N0_fit,xi_fit\n1,0.4,0.5,4\n2,0.3,0.5,4\n") != std::string::npos);
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5, 0.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
}

}  // TEST_SUITE

TEST_SUITE("experiment") {

TEST_CASE("config validation names the field") {
  ExperimentConfig c;
  c.experiment = "nope";
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("experiment"), ConfigError);
  c.experiment = "process-map";
  c.mode = "real";
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("mode"), ConfigError);
  c.mode = "ideal";
  CHECK_NOTHROW(c.validate());
  c.experiment = "tomography";
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("seed"), ConfigError);
  c.seed = 3;
  c.shots = 0;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("shots"), ConfigError);
  c.shots = 10;
  c.experiment = "le-curve";
  c.d_max = 11;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("d_max"), ConfigError);
  c.d_max = 5;
  c.params.t_rad = -1;
  CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("t_rad"), ConfigError);
}

TEST_CASE("config JSON rejects unknown keys and wrong types") {
  ExperimentConfig c;
  CHECK_THROWS_WITH_AS(apply_config_json(c, Json::parse(R"({"shotz": 3})")),
                       doctest::Contains("shotz"), ConfigError);
  CHECK_THROWS_WITH_AS(apply_config_json(c, Json::parse(R"({"seed": -3})")),
                       doctest::Contains("seed"), ConfigError);
  CHECK_THROWS_WITH_AS(apply_config_json(c, Json::parse(R"({"t_rad": "fast"})")),
                       doctest::Contains("t_rad"), ConfigError);
  apply_config_json(c, Json::parse(R"({"experiment": "le-curve", "seed": 9, "T_DE": 2.5, "d_max": 3})"));
  CHECK(c.experiment == "le-curve");
  CHECK(*c.seed == 9);
  CHECK(c.params.T_DE == 2.5);
  CHECK(c.d_max == 3);
}

TEST_CASE("load_config reads a file") {
  const auto dir = scratch_dir("config");
  fs::create_directories(dir);
  {
    std::ofstream os(dir / "c.json");
    os << R"({"experiment": "process-map", "mode": "ideal", "out": "x"})";
  }
  const auto c = load_config((dir / "c.json").string());
  CHECK(c.mode == "ideal");
  CHECK(c.out_dir == "x");
  CHECK_THROWS_AS(load_config((dir / "missing.json").string()), ConfigError);
  {
    std::ofstream os(dir / "bad.json");
    os << "{not json";
  }
  CHECK_THROWS_AS(load_config((dir / "bad.json").string()), ConfigError);
}

TEST_CASE("ideal process-map run writes the TP row") {
  ExperimentConfig c;
  c.experiment = "process-map";
  c.mode = "ideal";
  c.out_dir = scratch_dir("pm").string();
  const auto report = run_experiment(c);
  CHECK(report.ok());
  REQUIRE(report.artifacts.size() == 1);
  const Json j = Json::parse(slurp(report.artifacts[0]));
  CHECK(j["process_map"]["phi"][0] == Json::parse("[0.5, 0.0, 0.0, 0.0]"));
  CHECK(j["config"]["mode"] == "ideal");
  CHECK(j["cp"] == true);
}

TEST_CASE("ideal-state and tripartite runs") {
  ExperimentConfig c;
  c.mode = "ideal";
  c.out_dir = scratch_dir("states").string();
  c.experiment = "ideal-state";
  auto report = run_experiment(c);
  CHECK(report.ok());
  Json j = Json::parse(slurp(report.artifacts[0]));
  CHECK(j["fidelity_to_ideal"].get<double>() == doctest::Approx(1.0));
  CHECK(j["de_projection_plusZ"]["probability"].get<double>() == doctest::Approx(0.5));
  CHECK(j["de_projection_plusZ"]["photon_pair_negativity"].get<double>() == doctest::Approx(0.5));

  c.experiment = "tripartite";
  report = run_experiment(c);
  CHECK(report.ok());
  j = Json::parse(slurp(report.artifacts[0]));
  CHECK(j["genuine_tripartite"] == true);
  CHECK(j["unmeasured"].size() == 16);
}

TEST_CASE("tomography runs are reproducible and embed the seed") {
  ExperimentConfig c;
  c.experiment = "tomography";
  c.mode = "ideal";
  c.shots = 20000;
  c.seed = 11;
  c.out_dir = scratch_dir("tomo_a").string();
  const auto a = run_experiment(c);
  c.out_dir = scratch_dir("tomo_b").string();
  const auto b = run_experiment(c);
  REQUIRE(a.artifacts.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(slurp(a.artifacts[i]) == slurp(b.artifacts[i]));
  const Json j = Json::parse(slurp(a.artifacts[1]));
  CHECK(j["config"]["seed"] == 11);
  CHECK(j["diagnostics"]["stage1_rank"] == 48);

  c.seed = 12;
  c.out_dir = scratch_dir("tomo_c").string();
  const auto other = run_experiment(c);
  CHECK(slurp(other.artifacts[0]) != slurp(a.artifacts[0]));
}

TEST_CASE("le-curve run writes a decreasing CSV") {
  ExperimentConfig c;
  c.experiment = "le-curve";
  c.mode = "ideal";
  c.d_max = 3;
  c.out_dir = scratch_dir("le").string();
  const auto report = run_experiment(c);
  CHECK(report.ok());
  const std::string csv = slurp(report.artifacts[0]);
  CHECK(csv.find("d,negativity,N0_fit,xi_fit") != std::string::npos);
  CHECK(csv.find("# config: ") != std::string::npos);
  CHECK(csv.find("# fit: no decay") != std::string::npos);
}

}  // TEST_SUITE
