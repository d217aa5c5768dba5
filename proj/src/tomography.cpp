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

#include "dxc/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>
#include <sstream>

#include <unsupported/Eigen/NonLinearOptimization>

namespace dxc {

namespace {

using Pauli4 = std::array<double, 4>;

// Tr[Pi sigma_a] for the projector onto |v>.
Pauli4 projector_terms(const ComplexVector& v) {
  const ComplexMatrix pi = v * v.adjoint();
  Pauli4 t{};
  for (int a = 0; a < 4; ++a) t[a] = (pi * pauli(a)).trace().real();
  return t;
}

struct SettingTerms {
  Pauli4 rho;                    // Pauli coefficients of the initial state
  Pauli4 de;                     // DE projector terms
  std::vector<Pauli4> photons;   // photon projector terms, first emitted first
};

SettingTerms terms_for(const MeasurementSetting& s, const DensityMatrix& init) {
  SettingTerms t;
  t.rho = pauli_decompose(init.matrix());
  t.de = projector_terms(spin_ket(s.de_projection));
  for (auto p : s.photon_projections) t.photons.push_back(projector_terms(photon_ket(p)));
  return t;
}

using Coeffs = ProcessMap::Coefficients;

inline double phi_at(const double* phi, int g, int a, int b) {
  return phi[ProcessMap::flat_index(g, a, b)];
}

// c[a][b] = sum_g phi^g_ab rho_g
std::array<Pauli4, 4> first_cycle(const double* phi, const Pauli4& rho) {
  std::array<Pauli4, 4> c{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      double s = 0.0;
      for (int g = 0; g < 4; ++g) s += phi_at(phi, g, a, b) * rho[g];
      c[a][b] = s;
    }
  }
  return c;
}

double predict_terms(const double* phi, const SettingTerms& t) {
  const auto c = first_cycle(phi, t.rho);
  if (t.photons.size() == 1) {
    double p = 0.0;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) p += c[a][b] * t.de[a] * t.photons[0][b];
    }
    return p;
  }
  // u_a = sum_b c_ab t1_b ; w_a = sum_{a'b'} phi^a_{a'b'} tDE_a' t2_b'
  double p = 0.0;
  for (int a = 0; a < 4; ++a) {
    double u = 0.0, w = 0.0;
    for (int b = 0; b < 4; ++b) u += c[a][b] * t.photons[0][b];
    for (int a2 = 0; a2 < 4; ++a2) {
      for (int b2 = 0; b2 < 4; ++b2) w += phi_at(phi, a, a2, b2) * t.de[a2] * t.photons[1][b2];
    }
    p += u * w;
  }
  return p;
}

void jacobian_row(const double* phi, const SettingTerms& t, double* row) {
  std::fill(row, row + 64, 0.0);
  if (t.photons.size() == 1) {
    for (int g = 0; g < 4; ++g) {
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          row[ProcessMap::flat_index(g, a, b)] = t.rho[g] * t.de[a] * t.photons[0][b];
        }
      }
    }
    return;
  }
  const auto c = first_cycle(phi, t.rho);
  Pauli4 u{}, w{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) u[a] += c[a][b] * t.photons[0][b];
    for (int a2 = 0; a2 < 4; ++a2) {
      for (int b2 = 0; b2 < 4; ++b2) w[a] += phi_at(phi, a, a2, b2) * t.de[a2] * t.photons[1][b2];
    }
  }
  for (int g = 0; g < 4; ++g) {
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        // phi^g_ab as the second cycle (input g, outputs a, b) ...
        double d = u[g] * t.de[a] * t.photons[1][b];
        // ... and as the first cycle.
        d += w[a] * t.rho[g] * t.photons[0][b];
        row[ProcessMap::flat_index(g, a, b)] = d;
      }
    }
  }
}

std::string param_name(std::size_t flat) {
  static constexpr char kNames[] = {'0', 'x', 'y', 'z'};
  std::string s = "phi^";
  s += kNames[flat / 16];
  s += '_';
  s += kNames[(flat / 4) % 4];
  s += kNames[flat % 4];
  return s;
}

struct FitFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<SettingTerms>* terms;
  const std::vector<double>* freqs;

  int inputs() const { return 64; }
  int values() const { return static_cast<int>(terms->size()); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& r) const {
    for (std::size_t i = 0; i < terms->size(); ++i) {
      r(static_cast<Eigen::Index>(i)) = predict_terms(x.data(), (*terms)[i]) - (*freqs)[i];
    }
    return 0;
  }
  int df(const Eigen::VectorXd& x, Eigen::MatrixXd& j) const {
    std::array<double, 64> row{};
    for (std::size_t i = 0; i < terms->size(); ++i) {
      jacobian_row(x.data(), (*terms)[i], row.data());
      for (int k = 0; k < 64; ++k) j(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
    }
    return 0;
  }
};

struct FitOutcome {
  Eigen::VectorXd x;
  double residual;
  int status;
};

FitOutcome run_fit(const std::vector<SettingTerms>& terms, const std::vector<double>& freqs,
                   Eigen::VectorXd x) {
  FitFunctor functor{&terms, &freqs};
  Eigen::LevenbergMarquardt<FitFunctor> lm(functor);
  lm.parameters.xtol = 1e-15;
  lm.parameters.ftol = 1e-15;
  lm.parameters.gtol = 0.0;
  lm.parameters.maxfev = 20000;
  const int status = static_cast<int>(lm.minimize(x));
  Eigen::VectorXd r(functor.values());
  functor(x, r);
  return {std::move(x), r.norm(), status};
}

ProcessMap to_map(const Eigen::VectorXd& x) {
  Coeffs c;
  for (int i = 0; i < 64; ++i) c[static_cast<std::size_t>(i)] = x(i);
  return ProcessMap(c);
}

Eigen::VectorXd to_vector(const ProcessMap& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.coefficients().data(), 64);
}

ComplexMatrix project_psd(const ComplexMatrix& m) {
  auto [values, vectors] = eigh(m, 1e-8);
  return vectors * values.cwiseMax(0.0).cast<Complex>().asDiagonal() * vectors.adjoint();
}

ComplexMatrix project_tp(const ComplexMatrix& m) {
  const std::array<std::size_t, 1> keep{0};
  const ComplexMatrix marginal = partial_trace(m, 3, keep);
  return m - tensor_product(marginal - ComplexMatrix::Identity(2, 2),
                            ComplexMatrix::Identity(4, 4) / 4.0);
}

}  // namespace

MeasurementSetting MeasurementSetting::make(SpinState init, std::vector<Polarization> photons,
                                            SpinState de_projection) {
  MeasurementSetting s;
  s.init = init;
  s.photon_projections = std::move(photons);
  s.de_projection = de_projection;
  const bool z = de_projection == SpinState::PlusZ || de_projection == SpinState::MinusZ;
  s.delay_fraction = z ? 0.75 : 0.5;
  s.validate();
  return s;
}

void MeasurementSetting::validate() const {
  if (photon_projections.empty() || photon_projections.size() > 2) {
    throw Error("MeasurementSetting: one or two photon projections required");
  }
  for (auto p : photon_projections) {
    if (p != Polarization::H && p != Polarization::V && p != Polarization::D &&
        p != Polarization::R) {
      throw Error("MeasurementSetting: photon projection must be one of H, V, D, R");
    }
  }
  const bool z = de_projection == SpinState::PlusZ || de_projection == SpinState::MinusZ;
  const bool y = de_projection == SpinState::PlusY || de_projection == SpinState::MinusY;
  if (!z && !y) throw Error("MeasurementSetting: DE projection must be +-Z or +-Y");
  if ((z && delay_fraction != 0.75) || (y && delay_fraction != 0.5)) {
    throw Error("MeasurementSetting: analysis delay must be 3/4 T_DE for +-Z and 1/2 T_DE for +-Y");
  }
  if (init == SpinState::MinusZ) {
    throw Error("MeasurementSetting: initialization must be +-X, +-Y or +Z");
  }
}

std::string MeasurementSetting::describe() const {
  std::string s = "init=" + to_string(init) + " photons=";
  for (auto p : photon_projections) s += to_string(p);
  s += " de=" + to_string(de_projection);
  return s;
}

std::vector<MeasurementSetting> default_settings() {
  const std::array inits{SpinState::PlusX, SpinState::MinusX, SpinState::MinusY, SpinState::PlusZ};
  const std::array photons{Polarization::H, Polarization::V, Polarization::D, Polarization::R};
  const std::array des{SpinState::PlusZ, SpinState::MinusZ, SpinState::PlusY, SpinState::MinusY};
  std::vector<MeasurementSetting> out;
  for (auto i : inits) {
    for (auto p : photons) {
      for (auto d : des) out.push_back(MeasurementSetting::make(i, {p}, d));
    }
  }
  for (auto i : inits) {
    for (auto p1 : photons) {
      for (auto p2 : photons) {
        for (auto d : des) out.push_back(MeasurementSetting::make(i, {p1, p2}, d));
      }
    }
  }
  return out;
}

DensityMatrix setting_init_state(const MeasurementSetting& setting, double init_purity) {
  if (init_purity < 0.5 || init_purity > 1.0) {
    throw Error("init_purity must lie in [0.5, 1]");
  }
  const double lambda = 2.0 * init_purity - 1.0;
  const ComplexVector v = spin_ket(setting.init);
  return DensityMatrix(lambda * v * v.adjoint() +
                           (1.0 - lambda) * 0.5 * ComplexMatrix::Identity(2, 2),
                       {kDELabel});
}

double predict_probability(const ProcessMap& map, const MeasurementSetting& setting,
                           const DensityMatrix& init_state) {
  setting.validate();
  const DensityMatrix rho = apply_chain(map, init_state, setting.cycles());
  const ComplexVector de = spin_ket(setting.de_projection);
  ComplexMatrix projector = de * de.adjoint();
  // State order is DE, p_k, ..., p_1: newest photon first.
  for (auto it = setting.photon_projections.rbegin(); it != setting.photon_projections.rend(); ++it) {
    const ComplexVector v = photon_ket(*it);
    projector = tensor_product(projector, v * v.adjoint());
  }
  return (projector * rho.matrix()).trace().real();
}

double predict_probability_pauli(const ProcessMap& map, const MeasurementSetting& setting,
                                 const DensityMatrix& init_state) {
  setting.validate();
  return predict_terms(map.coefficients().data(), terms_for(setting, init_state));
}

std::vector<CountRecord> simulate_counts(const ProcessMap& map,
                                         const std::vector<MeasurementSetting>& settings,
                                         std::uint64_t shots, std::uint64_t seed,
                                         double init_purity) {
  if (shots == 0) throw Error("simulate_counts: shots must be > 0");
  std::vector<CountRecord> out(settings.size());
  auto simulate_one = [&](std::size_t i) {
    const auto& s = settings[i];
    const double p = std::clamp(
        predict_probability(map, s, setting_init_state(s, init_purity)), 0.0, 1.0);
    std::seed_seq seq{seed, static_cast<std::uint64_t>(i)};
    std::mt19937_64 rng(seq);
    std::binomial_distribution<std::uint64_t> draw(shots, p);
    const std::uint64_t hits = p == 0.0 ? 0 : draw(rng);
    out[i] = {s, shots, hits, shots - hits, seed, i};
  };
  // Independent streams per setting; chunks write disjoint slots.
  const std::size_t chunks = 4;
  std::vector<std::future<void>> jobs;
  for (std::size_t c = 0; c < chunks; ++c) {
    jobs.push_back(std::async(std::launch::async, [&, c] {
      for (std::size_t i = c; i < settings.size(); i += chunks) simulate_one(i);
    }));
  }
  for (auto& j : jobs) j.get();
  return out;
}

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_tol * sv(0)) ++rank;
  }
  return rank;
}

Eigen::MatrixXd one_cycle_design(const std::vector<MeasurementSetting>& settings,
                                 double init_purity) {
  std::vector<SettingTerms> terms;
  for (const auto& s : settings) {
    if (s.cycles() == 1) terms.push_back(terms_for(s, setting_init_state(s, init_purity)));
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(terms.size()), 64);
  std::array<double, 64> row{};
  const Coeffs zero{};
  for (std::size_t i = 0; i < terms.size(); ++i) {
    jacobian_row(zero.data(), terms[i], row.data());
    for (int k = 0; k < 64; ++k) a(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
  }
  return a;
}

Eigen::MatrixXd prediction_jacobian(const ProcessMap& map,
                                    const std::vector<MeasurementSetting>& settings,
                                    double init_purity) {
  Eigen::MatrixXd j(static_cast<Eigen::Index>(settings.size()), 64);
  std::array<double, 64> row{};
  for (std::size_t i = 0; i < settings.size(); ++i) {
    const auto t = terms_for(settings[i], setting_init_state(settings[i], init_purity));
    jacobian_row(map.coefficients().data(), t, row.data());
    for (int k = 0; k < 64; ++k) j(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
  }
  return j;
}

Reconstruction reconstruct(const std::vector<CountRecord>& counts,
                           const ReconstructionOptions& options) {
  ReconstructionDiagnostics diag;
  std::vector<SettingTerms> terms;
  std::vector<double> freqs;
  std::vector<MeasurementSetting> settings;
  std::vector<std::size_t> one_idx;
  for (const auto& rec : counts) {
    rec.setting.validate();
    if (rec.shots == 0) throw Error("reconstruct: record with zero shots");
    if (rec.setting.cycles() == 1) {
      ++diag.one_cycle_records;
      one_idx.push_back(terms.size());
    } else {
      ++diag.two_cycle_records;
    }
    settings.push_back(rec.setting);
    terms.push_back(terms_for(rec.setting, setting_init_state(rec.setting, options.init_purity)));
    freqs.push_back(rec.frequency());
  }
  if (diag.two_cycle_records == 0) {
    throw Error("reconstruct: two-cycle settings are required to fix the DE sigma_x rows");
  }

  // Stage 1: linear inversion over the 48 observable coefficients.
  std::vector<std::size_t> observable;
  for (std::size_t k = 0; k < 64; ++k) {
    if ((k / 4) % 4 != 1) observable.push_back(k);
  }
  Eigen::MatrixXd a(static_cast<Eigen::Index>(one_idx.size()), 48);
  Eigen::VectorXd b(static_cast<Eigen::Index>(one_idx.size()));
  std::array<double, 64> row{};
  const Coeffs zero{};
  for (std::size_t i = 0; i < one_idx.size(); ++i) {
    jacobian_row(zero.data(), terms[one_idx[i]], row.data());
    for (std::size_t c = 0; c < 48; ++c) {
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = row[observable[c]];
    }
    b(static_cast<Eigen::Index>(i)) = freqs[one_idx[i]];
  }
  diag.stage1_rank = numerical_rank(a);
  if (diag.stage1_rank < 48) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& v = svd.matrixV();
    std::ostringstream os;
    os << "reconstruct: one-cycle design has rank " << diag.stage1_rank
       << " < 48; unconstrained parameters:";
    for (Eigen::Index c = 0; c < 48; ++c) {
      double weight = 0.0;
      for (Eigen::Index k = diag.stage1_rank; k < 48; ++k) weight += v(c, k) * v(c, k);
      if (weight > 1e-6) os << ' ' << param_name(observable[static_cast<std::size_t>(c)]);
    }
    throw Error(os.str());
  }
  const Eigen::VectorXd stage1 = a.colPivHouseholderQr().solve(b);
  diag.stage1_residual = (a * stage1 - b).norm();

  const ProcessMap ideal = ideal_process_map();
  Eigen::VectorXd seed_vec = to_vector(ideal);
  for (std::size_t c = 0; c < 48; ++c) {
    seed_vec(static_cast<Eigen::Index>(observable[c])) = stage1(static_cast<Eigen::Index>(c));
  }
  diag.stage1_map = to_map(seed_vec);

  // Stage 2: full nonlinear least squares plus randomized restarts.
  std::vector<Eigen::VectorXd> starts{seed_vec};
  for (int r = 0; r < options.restarts; ++r) {
    std::mt19937_64 rng(options.restart_seed + static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    Eigen::VectorXd x = seed_vec;
    for (std::size_t k = 0; k < 64; ++k) {
      if ((k / 4) % 4 == 1) x(static_cast<Eigen::Index>(k)) = u(rng);
    }
    starts.push_back(std::move(x));
  }
  std::vector<FitOutcome> fits(starts.size());
  if (options.parallel) {
    std::vector<std::future<FitOutcome>> jobs;
    for (const auto& s : starts) {
      jobs.push_back(std::async(std::launch::async, run_fit, std::cref(terms),
                                std::cref(freqs), s));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) fits[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i) fits[i] = run_fit(terms, freqs, starts[i]);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < fits.size(); ++i) {
    if (fits[i].residual < fits[best].residual - 1e-12) best = i;
  }
  for (std::size_t i = 1; i < fits.size(); ++i) {
    diag.restart_residuals.push_back(fits[i].residual);
    diag.restart_spread = std::max(diag.restart_spread,
                                   (fits[i].x - fits[best].x).cwiseAbs().maxCoeff());
  }
  diag.restart_disagreement = diag.restart_spread > options.restart_tolerance;
  diag.stage2_residual = fits[best].residual;
  diag.stage2_status = fits[best].status;
  diag.stage2_map = to_map(fits[best].x);
  diag.jacobian_rank = numerical_rank(prediction_jacobian(diag.stage2_map, settings,
                                                          options.init_purity));

  ProcessMap result = diag.stage2_map;
  if (options.project_cptp) {
    result = project_cptp(diag.stage2_map);
    diag.projected = true;
    diag.projection_distance = (choi(result).matrix - choi(diag.stage2_map).matrix).norm();
  }
  return {result, std::move(diag)};
}

ProcessMap project_cptp(const ProcessMap& map) {
  if (map.tp_violation() > 0.25) {
    throw Error("project_cptp: input is too far from trace preserving");
  }
  ComplexMatrix x = choi(map).matrix;
  x = (x + x.adjoint()) / 2.0;
  ComplexMatrix p = ComplexMatrix::Zero(8, 8), q = ComplexMatrix::Zero(8, 8);
  for (int it = 0; it < 10000; ++it) {
    const ComplexMatrix y = project_psd(x + p);
    p = x + p - y;
    const ComplexMatrix next = project_tp(y + q);
    q = y + q - next;
    const double change = (next - x).norm();
    x = next;
    if (change < 1e-10) return ProcessMap::from_choi(x);
  }
  throw Error("project_cptp: alternating projections did not converge in 10^4 iterations");
}

}  // namespace dxc
