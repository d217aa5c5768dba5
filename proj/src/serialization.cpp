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

#include "dxc/serialization.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

namespace dxc {

namespace {

constexpr std::array<char, 4> kPauliNames{'0', 'x', 'y', 'z'};

// Field table shared by the reader and writer.
struct ParamField {
  const char* name;
  double PhysicalParams::*member;
};

constexpr std::array<ParamField, 7> kParamFields{{
    {"t_rad", &PhysicalParams::t_rad},
    {"t_nonrad", &PhysicalParams::t_nonrad},
    {"T_DE", &PhysicalParams::T_DE},
    {"T_BiE", &PhysicalParams::T_BiE},
    {"T2_star", &PhysicalParams::T2_star},
    {"T_cycle", &PhysicalParams::T_cycle},
    {"init_purity", &PhysicalParams::init_purity},
}};

Json finite_or_null(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

template <typename T>
T get_field(const Json& j, const char* key, const char* what) {
  if (!j.contains(key)) throw Error(std::string(what) + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(std::string(what) + ": field '" + key + "' has the wrong type");
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

Json process_map_to_json(const ProcessMap& map) {
  Json rows = Json::array();
  Json table = Json::array();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      rows.push_back(std::string{kPauliNames[a], kPauliNames[b]});
      Json row = Json::array();
      for (int g = 0; g < 4; ++g) row.push_back(map(g, a, b));
      table.push_back(std::move(row));
    }
  }
  Json columns = Json::array();
  for (char c : kPauliNames) columns.push_back(std::string(1, c));
  Json j;
  j["row_index"] = "alpha beta (DE output, photon output)";
  j["column_index"] = "gamma (DE input)";
  j["rows"] = std::move(rows);
  j["columns"] = std::move(columns);
  j["phi"] = std::move(table);
  return j;
}

ProcessMap process_map_from_json(const Json& j) {
  if (!j.contains("phi") || !j["phi"].is_array() || j["phi"].size() != 16) {
    throw Error("process map JSON: 'phi' must be an array of 16 rows");
  }
  ProcessMap map;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Json& row = j["phi"][static_cast<std::size_t>(a * 4 + b)];
      if (!row.is_array() || row.size() != 4) {
        throw Error("process map JSON: every row of 'phi' must have 4 entries");
      }
      for (int g = 0; g < 4; ++g) {
        const Json& v = row[static_cast<std::size_t>(g)];
        if (!v.is_number()) throw Error("process map JSON: non-numeric entry");
        map.at(g, a, b) = v.get<double>();
      }
    }
  }
  return map;
}

Json params_to_json(const PhysicalParams& p) {
  Json j;
  for (const auto& f : kParamFields) j[f.name] = finite_or_null(p.*f.member);
  return j;
}

bool is_param_key(const std::string& key) {
  for (const auto& f : kParamFields) {
    if (key == f.name) return true;
  }
  return false;
}

void update_params_from_json(PhysicalParams& p, const Json& j) {
  for (const auto& f : kParamFields) {
    if (!j.contains(f.name)) continue;
    const Json& v = j[f.name];
    if (v.is_string() && (v == "inf" || v == "infinity")) {
      p.*f.member = std::numeric_limits<double>::infinity();
    } else if (v.is_number()) {
      p.*f.member = v.get<double>();
    } else {
      throw Error(std::string("config field '") + f.name + "': expected a number");
    }
  }
}

Json setting_to_json(const MeasurementSetting& s) {
  Json photons = Json::array();
  for (auto p : s.photon_projections) photons.push_back(to_string(p));
  Json j;
  j["init"] = to_string(s.init);
  j["photons"] = std::move(photons);
  j["de"] = to_string(s.de_projection);
  j["delay_fraction"] = s.delay_fraction;
  return j;
}

MeasurementSetting setting_from_json(const Json& j) {
  const auto init = parse_spin_state(get_field<std::string>(j, "init", "setting"));
  const auto de = parse_spin_state(get_field<std::string>(j, "de", "setting"));
  std::vector<Polarization> photons;
  for (const auto& p : get_field<std::vector<std::string>>(j, "photons", "setting")) {
    photons.push_back(parse_polarization(p));
  }
  auto s = MeasurementSetting::make(init, std::move(photons), de);
  if (j.contains("delay_fraction")) {
    s.delay_fraction = get_field<double>(j, "delay_fraction", "setting");
    s.validate();
  }
  return s;
}

Json count_record_to_json(const CountRecord& r) {
  Json j;
  j["setting"] = setting_to_json(r.setting);
  j["shots"] = r.shots;
  j["hits"] = r.hits;
  j["misses"] = r.misses;
  j["seed"] = r.seed;
  j["stream"] = r.stream;
  return j;
}

CountRecord count_record_from_json(const Json& j) {
  if (!j.contains("setting")) throw Error("count record: missing field 'setting'");
  CountRecord r;
  r.setting = setting_from_json(j["setting"]);
  r.shots = get_field<std::uint64_t>(j, "shots", "count record");
  r.hits = get_field<std::uint64_t>(j, "hits", "count record");
  r.misses = get_field<std::uint64_t>(j, "misses", "count record");
  r.seed = get_field<std::uint64_t>(j, "seed", "count record");
  r.stream = get_field<std::uint64_t>(j, "stream", "count record");
  if (r.hits + r.misses > r.shots) throw Error("count record: hits + misses exceed shots");
  return r;
}

void write_count_records(std::ostream& os, const std::vector<CountRecord>& records) {
  for (const auto& r : records) os << count_record_to_json(r).dump() << '\n';
}

std::vector<CountRecord> read_count_records(std::istream& is) {
  std::vector<CountRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(count_record_from_json(Json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error("count records line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

Json diagnostics_to_json(const ReconstructionDiagnostics& d) {
  Json j;
  j["one_cycle_records"] = d.one_cycle_records;
  j["two_cycle_records"] = d.two_cycle_records;
  j["stage1_rank"] = d.stage1_rank;
  j["jacobian_rank"] = d.jacobian_rank;
  j["stage1_residual"] = d.stage1_residual;
  j["stage2_residual"] = d.stage2_residual;
  j["stage2_status"] = d.stage2_status;
  j["restart_residuals"] = d.restart_residuals;
  j["restart_spread"] = d.restart_spread;
  j["restart_disagreement"] = d.restart_disagreement;
  j["projected"] = d.projected;
  j["projection_distance"] = d.projection_distance;
  return j;
}

Json le_result_to_json(const LEResult& r) {
  Json bases = Json::array();
  for (const auto& b : r.optimal_bases) bases.push_back({{"theta", b.theta}, {"phi", b.phi}});
  Json j;
  j["m"] = r.m;
  j["n"] = r.n;
  j["negativity"] = r.negativity;
  j["measured"] = r.measured;
  j["optimal_bases"] = std::move(bases);
  j["start_values"] = r.start_values;
  j["start_spread"] = r.start_spread();
  return j;
}

void write_le_csv(std::ostream& os, const std::vector<LECurvePoint>& curve,
                  const ExponentialFit& fit, const std::vector<std::string>& comments) {
  os << "# columns: d = qubit distance, negativity = localizable entanglement, "
        "N0_fit and xi_fit = parameters of N0*exp(-d/xi) fitted to the whole curve\n";
  for (const auto& c : comments) os << "# " << c << '\n';
  os << "d,negativity,N0_fit,xi_fit\n";
  for (const auto& p : curve) {
    os << p.d << ',' << format_double(p.result.negativity) << ',' << format_double(fit.n0) << ','
       << format_double(fit.xi) << '\n';
  }
}

}  // namespace dxc
