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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dxc/physics_model.hpp"
#include "dxc/serialization.hpp"

namespace dxc {

/// Invalid user configuration; the message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline const std::vector<std::string> kExperiments{"ideal-state", "process-map", "tomography",
                                                   "le-curve", "tripartite"};

struct ExperimentConfig {
  std::string experiment;
  std::string mode = "model";  // "ideal" or "model"
  PhysicalParams params;
  std::uint64_t shots = 1000000;
  std::optional<std::uint64_t> seed;
  std::size_t chain_length = 2;  // cycles for ideal-state
  std::size_t d_max = 5;
  std::size_t m = 1;
  std::string out_dir = "out";

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
  Json to_json() const;
};

/// Reads a flat JSON object. Unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);
void apply_config_json(ExperimentConfig& config, const Json& j);

struct RunReport {
  std::vector<std::string> artifacts;
  std::vector<std::string> failed_checks;
  std::string summary;
  bool ok() const { return failed_checks.empty(); }
};

/// Runs one experiment and writes its artifacts into config.out_dir.
/// Throws ConfigError for bad configuration and Error for numerical failure.
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace dxc
