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

#include "dxc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dxc/entanglement.hpp"
#include "dxc/protocol.hpp"
#include "dxc/tomography.hpp"

namespace dxc {

namespace {

namespace fs = std::filesystem;

constexpr std::size_t kMaxChainLength = 8;

// Named sub-stream of the master seed.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
  std::vector<std::uint32_t> data{static_cast<std::uint32_t>(seed),
                                  static_cast<std::uint32_t>(seed >> 32)};
  for (char c : name) data.push_back(static_cast<unsigned char>(c));
  std::seed_seq seq(data.begin(), data.end());
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::uint64_t json_uint(const Json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0 && d == std::floor(d) && d < 1.8e19) return static_cast<std::uint64_t>(d);
  }
  throw ConfigError("config field '" + key + "': expected a non-negative integer");
}

std::string json_string(const Json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError("config field '" + key + "': expected a string");
  return v.get<std::string>();
}

ProcessMap source_map(const ExperimentConfig& c, Json& info) {
  if (c.mode == "ideal") return ideal_process_map();
  const auto detailed = model_process_map_detailed(c.params);
  info["truncated_mass"] = detailed.truncated_mass;
  info["quadrature_error"] = detailed.error_estimate;
  info["quadrature_intervals"] = detailed.intervals;
  return detailed.map;
}

DensityMatrix initial_state(const ExperimentConfig& c) {
  const auto target = PureState::spin(SpinState::MinusX);
  if (c.mode == "ideal") return target.density();
  return initialization_state(c.params, target);
}

void write_file(const fs::path& path, const std::string& content, RunReport& report) {
  std::ofstream os(path, std::ios::binary);
  os << content;
  os.close();
  if (!os) throw Error("could not write " + path.string());
  report.artifacts.push_back(path.string());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"real", std::move(re)}, {"imag", std::move(im)}};
}

Json labels_json(const std::vector<std::string>& labels) {
  Json j = Json::array();
  for (const auto& l : labels) j.push_back(l);
  return j;
}

Json base_document(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["config"] = c.to_json();
  return j;
}

// ---------------------------------------------------------------------------

void run_ideal_state(const ExperimentConfig& c, const fs::path& dir, RunReport& report) {
  const std::size_t n = c.chain_length;
  const PureState ideal = ideal_state(n, PureState::spin(SpinState::MinusX));
  DensityMatrix rho = ideal.density();
  Json info;
  if (c.mode == "model") rho = apply_chain(source_map(c, info), initial_state(c), n);

  Json doc = base_document(c);
  for (auto& [k, v] : info.items()) doc[k] = v;
  doc["labels"] = labels_json(rho.labels());
  const double fidelity = jozsa_fidelity(rho.matrix(), ideal.density().matrix(), kCPTol);
  const double purity = (rho.matrix() * rho.matrix()).trace().real();
  doc["fidelity_to_ideal"] = fidelity;
  doc["purity"] = purity;

  // Entanglement of each neighbouring pair after tracing out the rest.
  Json pairs = Json::array();
  const auto& labels = rho.labels();
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    const std::array<std::string, 2> keep{labels[i], labels[i + 1]};
    pairs.push_back({{"pair", {labels[i], labels[i + 1]}},
                     {"negativity", negativity(partial_trace(rho, keep))}});
  }
  doc["neighbour_negativity"] = std::move(pairs);

  std::ostringstream summary;
  summary << "ideal-state (" << c.mode << "), " << n << " cycles: fidelity to ideal "
          << format_double(fidelity) << ", purity " << format_double(purity) << "\n";

  // Measuring the DE along +Z leaves the photons in a cluster state of their own.
  const ComplexVector up = spin_ket(SpinState::PlusZ);
  const std::size_t rest = std::size_t{1} << n;
  const ComplexMatrix proj = tensor_product(up * up.adjoint(), ComplexMatrix::Identity(
      static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(rest)));
  const ComplexMatrix branch = proj * rho.matrix() * proj;
  const double p = branch.trace().real();
  if (p > 1e-14) {
    const ComplexMatrix photons =
        branch.block(0, 0, static_cast<Eigen::Index>(rest), static_cast<Eigen::Index>(rest)) / p;
    const auto projected = project_qubit(ideal, kDELabel, up);
    Json pj;
    pj["probability"] = p;
    pj["photon_fidelity_to_ideal"] =
        jozsa_fidelity(photons, projected.state.density().matrix(), kCPTol);
    if (n == 2) pj["photon_pair_negativity"] = negativity(photons);
    doc["de_projection_plusZ"] = std::move(pj);
    summary << "  DE projected on +Z: probability " << format_double(p) << "\n";
  }
  if (rho.num_qubits() <= 4) doc["density_matrix"] = matrix_to_json(rho.matrix());

  write_file(dir / "ideal_state.json", dump(doc), report);
  report.summary = summary.str();
  if (std::abs(rho.matrix().trace().real() - 1.0) > kTraceTol) {
    report.failed_checks.push_back("state trace differs from 1");
  }
}

void run_process_map(const ExperimentConfig& c, const fs::path& dir, RunReport& report) {
  Json info;
  const ProcessMap map = source_map(c, info);
  const auto cptp = is_cptp(map);
  const double fidelity = process_fidelity(map, ideal_process_map());

  Json doc = base_document(c);
  for (auto& [k, v] : info.items()) doc[k] = v;
  doc["process_map"] = process_map_to_json(map);
  doc["cp"] = cptp.cp;
  doc["tp"] = cptp.tp;
  doc["min_choi_eigenvalue"] = cptp.min_choi_eigenvalue;
  doc["fidelity_to_ideal"] = fidelity;
  write_file(dir / "process_map.json", dump(doc), report);

  std::ostringstream summary;
  summary << "process-map (" << c.mode << "): fidelity to ideal " << format_double(fidelity)
          << ", CP " << (cptp.cp ? "yes" : "no") << ", TP " << (cptp.tp ? "yes" : "no") << "\n";
  report.summary = summary.str();
  if (!cptp.cp || !cptp.tp) report.failed_checks.push_back("process map is not CPTP");
}

void run_tomography(const ExperimentConfig& c, const fs::path& dir, RunReport& report) {
  Json info;
  const ProcessMap truth = source_map(c, info);
  const std::uint64_t count_seed = derive_seed(*c.seed, "counts");
  const auto counts = simulate_counts(truth, default_settings(), c.shots, count_seed);

  ReconstructionOptions opts;
  opts.restart_seed = derive_seed(*c.seed, "restarts");
  const auto rec = reconstruct(counts, opts);
  const auto cptp = is_cptp(rec.map);
  const double fid_truth = process_fidelity(rec.map, truth);
  const double fid_ideal = process_fidelity(rec.map, ideal_process_map());

  std::ostringstream counts_text;
  write_count_records(counts_text, counts);
  write_file(dir / "tomography_counts.jsonl", counts_text.str(), report);

  Json doc = base_document(c);
  for (auto& [k, v] : info.items()) doc[k] = v;
  doc["count_seed"] = count_seed;
  doc["restart_seed"] = opts.restart_seed;
  doc["source_map"] = process_map_to_json(truth);
  doc["reconstructed_map"] = process_map_to_json(rec.map);
  doc["stage1_map"] = process_map_to_json(rec.diagnostics.stage1_map);
  doc["stage2_map"] = process_map_to_json(rec.diagnostics.stage2_map);
  doc["diagnostics"] = diagnostics_to_json(rec.diagnostics);
  doc["fidelity_to_source"] = fid_truth;
  doc["fidelity_to_ideal"] = fid_ideal;
  doc["cp"] = cptp.cp;
  doc["tp"] = cptp.tp;
  write_file(dir / "tomography_report.json", dump(doc), report);

  std::ostringstream summary;
  summary << "tomography (" << c.mode << "), " << c.shots << " shots/setting, seed " << *c.seed
          << ": fidelity to source " << format_double(fid_truth) << ", to ideal "
          << format_double(fid_ideal) << ", stage-1 rank " << rec.diagnostics.stage1_rank
          << ", Jacobian rank " << rec.diagnostics.jacobian_rank << "\n";
  if (rec.diagnostics.restart_disagreement) {
    summary << "  warning: restarts disagree by " << format_double(rec.diagnostics.restart_spread)
            << "\n";
  }
  report.summary = summary.str();
  if (!cptp.cp || !cptp.tp) report.failed_checks.push_back("reconstructed map is not CPTP");
}

void run_le_curve(const ExperimentConfig& c, const fs::path& dir, RunReport& report) {
  Json info;
  const ProcessMap map = source_map(c, info);
  LEOptions opts;
  if (c.seed) opts.seed = derive_seed(*c.seed, "le-starts");
  // LE is evaluated on the ideal |-X> initialization in both modes.
  const DensityMatrix init = PureState::spin(SpinState::MinusX).density();
  const auto curve = le_curve(map, init, c.d_max, c.m, opts);

  std::vector<std::pair<double, double>> points;
  for (const auto& p : curve) points.emplace_back(static_cast<double>(p.d), p.result.negativity);
  ExponentialFit fit;
  try {
    fit = fit_exponential(points);
  } catch (const Error& e) {
    fit.diagnostic = e.what();
    fit.n0 = std::numeric_limits<double>::quiet_NaN();
    fit.xi = std::numeric_limits<double>::quiet_NaN();
  }

  std::vector<std::string> comments{"experiment: le-curve",
                                    "config: " + c.to_json().dump(),
                                    "le_seed: " + std::to_string(opts.seed)};
  if (!fit.diagnostic.empty()) comments.push_back("fit: " + fit.diagnostic);
  std::ostringstream csv;
  write_le_csv(csv, curve, fit, comments);
  write_file(dir / "le_curve.csv", csv.str(), report);

  Json doc = base_document(c);
  for (auto& [k, v] : info.items()) doc[k] = v;
  doc["le_seed"] = opts.seed;
  Json pts = Json::array();
  for (const auto& p : curve) {
    Json pj = le_result_to_json(p.result);
    pj["d"] = p.d;
    pts.push_back(std::move(pj));
  }
  doc["points"] = std::move(pts);
  doc["fit"] = {{"N0", std::isfinite(fit.n0) ? Json(fit.n0) : Json(nullptr)},
                {"xi", std::isfinite(fit.xi) ? Json(fit.xi) : Json(nullptr)},
                {"rms_residual", fit.residual},
                {"points_used", fit.points_used},
                {"decaying", fit.decaying},
                {"diagnostic", fit.diagnostic}};
  write_file(dir / "le_curve.json", dump(doc), report);

  std::ostringstream summary;
  summary << "le-curve (" << c.mode << "), m = " << c.m << ":\n";
  for (const auto& p : curve) {
    summary << "  d = " << p.d << "  N_LE = " << format_double(p.result.negativity) << "\n";
    if (!(p.result.negativity >= 0.0 && p.result.negativity <= 0.5 + 1e-9)) {
      report.failed_checks.push_back("negativity outside [0, 1/2] at d = " +
                                     std::to_string(p.d));
    }
  }
  summary << "  fit: N0 = " << format_double(fit.n0) << ", xi = " << format_double(fit.xi)
          << "\n";
  report.summary = summary.str();
}

void run_tripartite(const ExperimentConfig& c, const fs::path& dir, RunReport& report) {
  const PureState target = ideal_state(2, PureState::spin(SpinState::MinusX));
  DensityMatrix rho = target.density();
  Json info;
  if (c.mode == "model") rho = apply_chain(source_map(c, info), initial_state(c), 2);

  PauliExpectations measurable;
  for (const auto& [k, v] : pauli_expectations(rho)) {
    if (is_measurable(k)) measurable[k] = v;
  }
  const auto bounds = tripartite_fidelity_bounds(measurable, target);
  const double exact = jozsa_fidelity(rho.matrix(), target.density().matrix(), kCPTol);

  Json doc = base_document(c);
  for (auto& [k, v] : info.items()) doc[k] = v;
  doc["labels"] = labels_json(rho.labels());
  Json ex;
  for (const auto& [k, v] : measurable) ex[k] = v;
  doc["measured_expectations"] = std::move(ex);
  doc["unmeasured"] = bounds.unmeasured;
  doc["f_measured"] = bounds.f_measured;
  doc["f_low"] = bounds.f_low;
  doc["f_high"] = bounds.f_high;
  doc["f_low_triangle"] = bounds.f_low_triangle;
  doc["f_high_triangle"] = bounds.f_high_triangle;
  doc["f_exact"] = exact;
  doc["genuine_tripartite"] = bounds.f_low > 0.5;
  write_file(dir / "tripartite.json", dump(doc), report);

  std::ostringstream summary;
  summary << "tripartite (" << c.mode << "): fidelity bounds [" << format_double(bounds.f_low)
          << ", " << format_double(bounds.f_high) << "], exact " << format_double(exact)
          << (bounds.f_low > 0.5 ? ", genuine tripartite entanglement certified" : "") << "\n";
  report.summary = summary.str();
  if (!bounds.consistent) report.failed_checks.push_back("inconsistent fidelity bounds");
  if (exact < bounds.f_low - 1e-9 || exact > bounds.f_high + 1e-9) {
    report.failed_checks.push_back("exact fidelity outside the bounds");
  }
}

}  // namespace

void ExperimentConfig::validate() const {
  if (std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
    throw ConfigError("config field 'experiment': unknown experiment '" + experiment + "'");
  }
  if (mode != "ideal" && mode != "model") {
    throw ConfigError("config field 'mode': expected 'ideal' or 'model', got '" + mode + "'");
  }
  try {
    params.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  if (experiment == "tomography") {
    if (!seed) throw ConfigError("config field 'seed': required for the tomography experiment");
    if (shots == 0) throw ConfigError("config field 'shots': must be > 0");
  }
  if (chain_length < 1 || chain_length > kMaxChainLength) {
    throw ConfigError("config field 'chain_length': must lie in [1, " +
                      std::to_string(kMaxChainLength) + "]");
  }
  if (m < 1) throw ConfigError("config field 'm': must be >= 1");
  if (d_max < 1 || m + d_max > kDefaultChainCap + 1) {
    throw ConfigError("config field 'd_max': need 1 <= d_max and m + d_max <= " +
                      std::to_string(kDefaultChainCap + 1));
  }
  if (out_dir.empty()) throw ConfigError("config field 'out': must not be empty");
}

Json ExperimentConfig::to_json() const {
  Json j;
  j["experiment"] = experiment;
  j["mode"] = mode;
  const Json p = params_to_json(params);
  for (auto& [k, v] : p.items()) j[k] = v;
  j["shots"] = shots;
  j["seed"] = seed ? Json(*seed) : Json(nullptr);
  j["chain_length"] = chain_length;
  j["d_max"] = d_max;
  j["m"] = m;
  return j;
}

void apply_config_json(ExperimentConfig& config, const Json& j) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  for (const auto& [key, v] : j.items()) {
    if (key == "experiment") {
      config.experiment = json_string(v, key);
    } else if (key == "mode") {
      config.mode = json_string(v, key);
    } else if (key == "shots") {
      config.shots = json_uint(v, key);
    } else if (key == "seed") {
      config.seed = json_uint(v, key);
    } else if (key == "chain_length") {
      config.chain_length = json_uint(v, key);
    } else if (key == "d_max") {
      config.d_max = json_uint(v, key);
    } else if (key == "m") {
      config.m = json_uint(v, key);
    } else if (key == "out") {
      config.out_dir = json_string(v, key);
    } else if (!is_param_key(key)) {
      throw ConfigError("config: unknown field '" + key + "'");
    }
  }
  try {
    update_params_from_json(config.params, j);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  ExperimentConfig config;
  apply_config_json(config, j);
  return config;
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ConfigError("config field 'out': cannot create directory '" + config.out_dir + "'");
  }
  RunReport report;
  if (config.experiment == "ideal-state") {
    run_ideal_state(config, dir, report);
  } else if (config.experiment == "process-map") {
    run_process_map(config, dir, report);
  } else if (config.experiment == "tomography") {
    run_tomography(config, dir, report);
  } else if (config.experiment == "le-curve") {
    run_le_curve(config, dir, report);
  } else {
    run_tripartite(config, dir, report);
  }
  return report;
}

}  // namespace dxc
