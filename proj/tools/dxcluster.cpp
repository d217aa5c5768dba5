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

// Command-line front end: dxcluster run <experiment> [options]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dxc/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitChecks = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dark-exciton photonic cluster state simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment and write its artifacts");
  std::string experiment;
  std::optional<std::string> mode, config_path, out_dir;
  std::optional<std::uint64_t> shots, seed;
  std::optional<std::size_t> d_max, chain_length, m;
  run->add_option("experiment", experiment, "ideal-state | process-map | tomography | le-curve | tripartite")
      ->required();
  run->add_option("--mode", mode, "ideal or model (default model)");
  run->add_option("--config", config_path, "flat JSON config file; flags override its keys");
  run->add_option("--shots", shots, "shots per tomography setting");
  run->add_option("--seed", seed, "master seed");
  run->add_option("--d-max", d_max, "largest qubit distance for le-curve");
  run->add_option("--chain-length", chain_length, "number of cycles for ideal-state");
  run->add_option("--m", m, "first qubit position for le-curve");
  run->add_option("--out", out_dir, "output directory (default ./out)");

  CLI11_PARSE(app, argc, argv);

  try {
    dxc::ExperimentConfig config;
    if (config_path) config = dxc::load_config(*config_path);
    config.experiment = experiment;
    if (mode) config.mode = *mode;
    if (shots) config.shots = *shots;
    if (seed) config.seed = *seed;
    if (d_max) config.d_max = *d_max;
    if (chain_length) config.chain_length = *chain_length;
    if (m) config.m = *m;
    if (out_dir) config.out_dir = *out_dir;

    const auto report = dxc::run_experiment(config);
    std::cout << report.summary;
    for (const auto& a : report.artifacts) std::cout << "wrote " << a << "\n";
    if (!report.ok()) {
      for (const auto& f : report.failed_checks) std::cerr << "check failed: " << f << "\n";
      return kExitChecks;
    }
    return 0;
  } catch (const dxc::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}
