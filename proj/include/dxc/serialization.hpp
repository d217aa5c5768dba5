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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dxc/entanglement.hpp"
#include "dxc/physics_model.hpp"
#include "dxc/process_map.hpp"
#include "dxc/tomography.hpp"

namespace dxc {

using Json = nlohmann::ordered_json;

/// Process map as a 16 x 4 table: rows are the output pair (alpha, beta) in
/// the order 00, 0x, ..., zz (DE index first), columns are the input gamma
/// in the order 0, x, y, z. The row "00" holds the trace-preservation
/// entries (1/2, 0, 0, 0).
Json process_map_to_json(const ProcessMap& map);
ProcessMap process_map_from_json(const Json& j);

Json params_to_json(const PhysicalParams& p);
/// Reads the PhysicalParams keys present in `j`, leaving the others at
/// their current values. Throws Error naming the field on a type mismatch.
void update_params_from_json(PhysicalParams& p, const Json& j);
bool is_param_key(const std::string& key);

Json setting_to_json(const MeasurementSetting& s);
MeasurementSetting setting_from_json(const Json& j);
Json count_record_to_json(const CountRecord& r);
CountRecord count_record_from_json(const Json& j);

/// One JSON object per line.
void write_count_records(std::ostream& os, const std::vector<CountRecord>& records);
std::vector<CountRecord> read_count_records(std::istream& is);

Json diagnostics_to_json(const ReconstructionDiagnostics& d);

Json le_result_to_json(const LEResult& r);

/// CSV with columns d,negativity,N0_fit,xi_fit. Lines starting with '#'
/// carry the column description and any caller-supplied metadata.
void write_le_csv(std::ostream& os, const std::vector<LECurvePoint>& curve,
                  const ExponentialFit& fit, const std::vector<std::string>& comments);

/// Shortest round-trip decimal text for a double.
std::string format_double(double x);

}  // namespace dxc
