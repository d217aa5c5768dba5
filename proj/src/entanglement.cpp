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

#include "dxc/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include <unsupported/Eigen/NonLinearOptimization>

namespace dxc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinBranchProbability = 1e-15;

// Projects qubit q of an n-qubit operator onto |ket> and removes it:
// out = <ket|_q m |ket>_q.
ComplexMatrix project_out(const ComplexMatrix& m, std::size_t num_qubits,
                          std::size_t q, const ComplexVector& ket) {
  const std::size_t d_out = std::size_t{1} << (num_qubits - 1);
  const std::size_t low_bits = num_qubits - 1 - q;
  const std::size_t low_mask = (std::size_t{1} << low_bits) - 1;
  auto expand = [&](std::size_t reduced, std::size_t b) {
    return ((reduced >> low_bits) << (low_bits + 1)) | (b << low_bits) |
           (reduced & low_mask);
  };
  ComplexMatrix out = ComplexMatrix::Zero(d_out, d_out);
  for (std::size_t i = 0; i < d_out; ++i) {
    for (std::size_t j = 0; j < d_out; ++j) {
      Complex acc = 0.0;
      for (std::size_t b = 0; b < 2; ++b) {
        for (std::size_t c = 0; c < 2; ++c) {
          acc += std::conj(ket(b)) * m(expand(i, b), expand(j, c)) * ket(c);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

using Objective = std::function<double(const std::vector<double>&)>;

struct SimplexResult {
  std::vector<double> x;
  double value;
};

// Nelder-Mead maximization.
SimplexResult nelder_mead_max(const Objective& f, std::vector<double> x0,
                              double step, double ftol, int max_evals) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= n; ++i) vals[i] = eval(pts[i]);

  std::vector<std::size_t> order(n + 1);
  while (evals < max_evals) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    const std::size_t best = order.front(), worst = order.back();
    const std::size_t second_worst = order[n - 1];
    if (vals[best] - vals[worst] < ftol) {
      double size = 0.0;
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
          size = std::max(size, std::abs(pts[i][k] - pts[best][k]));
        }
      }
      if (size < 1e-7) break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += pts[i][k] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (pts[worst][k] - centroid[k]);
      return x;
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr > vals[best]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe > fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr > vals[second_worst]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr > vals[worst];
    const auto xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc > std::max(outside ? fr : vals[worst], vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) pts[i][k] = pts[best][k] + 0.5 * (pts[i][k] - pts[best][k]);
      vals[i] = eval(pts[i]);
    }
  }
  const auto it = std::max_element(vals.begin(), vals.end());
  return {pts[static_cast<std::size_t>(it - vals.begin())], *it};
}

std::vector<BlochAngles> to_angles(const std::vector<double>& x) {
  std::vector<BlochAngles> a(x.size() / 2);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = {x[2 * i], x[2 * i + 1]};
  return a;
}

BlochAngles canonical(BlochAngles a) {
  double theta = std::fmod(a.theta, 2.0 * kPi);
  if (theta < 0) theta += 2.0 * kPi;
  double phi = a.phi;
  if (theta > kPi) {
    theta = 2.0 * kPi - theta;
    phi += kPi;
  }
  phi = std::fmod(phi, 2.0 * kPi);
  if (phi < 0) phi += 2.0 * kPi;
  return {theta, phi};
}

struct StartOutcome {
  std::vector<double> x;
  double value;
};

StartOutcome run_start(const Objective& f, std::vector<double> x,
                       const LEOptions& opt) {
  const std::size_t k = x.size() / 2;
  double best = f(x);
  const double step = opt.grid_step_deg * kPi / 180.0;
  const int n_theta = static_cast<int>(std::lround(180.0 / opt.grid_step_deg));
  const int n_phi = static_cast<int>(std::lround(360.0 / opt.grid_step_deg));

  for (int sweep = 0; sweep < opt.max_sweeps && k > 0; ++sweep) {
    const double before = best;
    for (std::size_t q = 0; q < k; ++q) {
      std::vector<double> trial = x;
      for (int it = 0; it <= n_theta; ++it) {
        const bool pole = it == 0 || it == n_theta;
        for (int ip = 0; ip < (pole ? 1 : n_phi); ++ip) {
          trial[2 * q] = it * step;
          trial[2 * q + 1] = ip * step;
          const double v = f(trial);
          if (v > best) {
            best = v;
            x = trial;
          }
        }
      }
      const Objective local = [&](const std::vector<double>& y) {
        std::vector<double> z = x;
        z[2 * q] = y[0];
        z[2 * q + 1] = y[1];
        return f(z);
      };
      const auto refined = nelder_mead_max(local, {x[2 * q], x[2 * q + 1]},
                                           step / 2.0, 1e-13, 400);
      if (refined.value > best) {
        best = refined.value;
        x[2 * q] = refined.x[0];
        x[2 * q + 1] = refined.x[1];
      }
    }
    if (best - before < opt.tolerance) break;
  }
  if (k > 1) {
    const auto refined = nelder_mead_max(f, x, step / 2.0, 1e-13,
                                         static_cast<int>(400 * k));
    if (refined.value > best) {
      best = refined.value;
      x = refined.x;
    }
  }
  return {x, best};
}

// Single-qubit Pauli product: sigma_a sigma_b = phase * sigma_c.
std::pair<int, Complex> pauli_mul(int a, int b) {
  if (a == 0) return {b, 1.0};
  if (b == 0) return {a, 1.0};
  if (a == b) return {0, 1.0};
  const int c = 6 - a - b;
  const bool cyclic = (a == 1 && b == 2) || (a == 2 && b == 3) || (a == 3 && b == 1);
  return {c, cyclic ? Complex{0, 1} : Complex{0, -1}};
}

int pauli_index(char c) {
  switch (c) {
    case '0': return 0;
    case 'x': return 1;
    case 'y': return 2;
    case 'z': return 3;
  }
  throw Error(std::string("invalid Pauli character '") + c + "'");
}

constexpr char kPauliChars[] = {'0', 'x', 'y', 'z'};

ComplexMatrix pauli_string_matrix(const std::string& s) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (char c : s) m = tensor_product(m, pauli(pauli_index(c)));
  return m;
}

std::vector<std::string> all_pauli_strings(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t q = 0; q < n; ++q) {
    std::vector<std::string> next;
    for (const auto& s : out) {
      for (char c : kPauliChars) next.push_back(s + c);
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

double negativity(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw Error("negativity: expected a 4x4 matrix");
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw Error("negativity: non-positive trace");
  // Branch operators of improbable outcomes carry rounding noise that the
  // normalization amplifies; only the Hermitian part is meaningful.
  const ComplexMatrix pt = partial_transpose(rho / tr, 2, 1);
  const RealVector ev = eigh((pt + pt.adjoint()) / 2.0).values;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) sum += std::abs(ev(i)) - ev(i);
  return 0.5 * sum;
}

double negativity(const DensityMatrix& rho) {
  if (rho.num_qubits() != 2) throw Error("negativity: expected a 2-qubit state");
  return negativity(rho.matrix());
}

double fidelity_states(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw Error("fidelity_states: dimension mismatch");
  return jozsa_fidelity(a.matrix(), b.matrix());
}

ComplexVector bloch_ket(const BlochAngles& a, int outcome) {
  ComplexVector v(2);
  const double c = std::cos(a.theta / 2.0), s = std::sin(a.theta / 2.0);
  const Complex e = std::polar(1.0, a.phi);
  if (outcome == 0) {
    v << c, e * s;
  } else {
    v << s, -e * c;
  }
  return v;
}

double average_negativity(const std::vector<Branch>& branches) {
  double total = 0.0;
  for (const auto& b : branches) {
    const double p = b.state.trace().real();
    if (p > kMinBranchProbability) total += p * negativity(b.state);
  }
  return total;
}

double LEResult::start_spread() const {
  if (start_values.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(start_values.begin(), start_values.end());
  return *hi - *lo;
}

BranchEvaluator dense_branches(const DensityMatrix& rho, std::size_t m, std::size_t n) {
  const std::size_t nq = rho.num_qubits();
  if (m == n || m < 1 || n < 1 || m > nq || n > nq) {
    throw Error("localizable_entanglement: invalid qubit pair");
  }
  std::vector<std::size_t> measured;  // 0-based
  for (std::size_t q = 0; q < nq; ++q) {
    if (q + 1 != m && q + 1 != n) measured.push_back(q);
  }
  const ComplexMatrix full = rho.matrix();
  return [full, nq, measured](std::span<const BlochAngles> bases) {
    if (bases.size() != measured.size()) throw Error("dense_branches: wrong basis count");
    std::vector<Branch> branches{{{}, full}};
    // Highest index first so the remaining indices stay valid.
    for (std::size_t k = measured.size(); k-- > 0;) {
      const std::size_t width = nq - (measured.size() - 1 - k);
      std::vector<Branch> next;
      next.reserve(branches.size() * 2);
      for (const auto& b : branches) {
        for (int s = 0; s < 2; ++s) {
          Branch child{b.outcomes, project_out(b.state, width, measured[k],
                                               bloch_ket(bases[k], s))};
          child.outcomes.insert(child.outcomes.begin(), s);
          next.push_back(std::move(child));
        }
      }
      branches = std::move(next);
    }
    return branches;
  };
}

BranchEvaluator chain_branches(const ProcessMap& map, const DensityMatrix& init,
                               std::size_t n_cycles, std::size_t m, std::size_t n) {
  const std::size_t nq = n_cycles + 1;
  if (init.num_qubits() != 1) throw Error("chain_branches: init must be one qubit");
  if (m == n || m < 1 || n < 1 || m > nq || n > nq) {
    throw Error("localizable_entanglement: invalid qubit pair");
  }
  // Photon j sits at position n_cycles + 2 - j.
  auto kept = [&](std::size_t position) { return position == m || position == n; };
  const bool measure_de = !kept(1);
  std::vector<bool> photon_measured(n_cycles + 1, false);
  for (std::size_t j = 1; j <= n_cycles; ++j) photon_measured[j] = !kept(n_cycles + 2 - j);

  // Basis slots follow position order: DE (if measured), then photons newest
  // first, which is photon n_cycles down to 1.
  std::vector<std::size_t> slot_of_photon(n_cycles + 1, 0);
  std::size_t slot = measure_de ? 1 : 0;
  for (std::size_t j = n_cycles; j >= 1; --j) {
    if (photon_measured[j]) slot_of_photon[j] = slot++;
  }
  const std::size_t num_slots = slot;

  const CycleImages images = cycle_images(map);
  const ComplexMatrix start = init.matrix();
  return [=](std::span<const BlochAngles> bases) {
    if (bases.size() != num_slots) throw Error("chain_branches: wrong basis count");
    struct Partial {
      std::vector<int> outcomes;
      ComplexMatrix state;
      std::size_t qubits;
    };
    std::vector<Partial> branches{{std::vector<int>(num_slots, 0), start, 1}};
    for (std::size_t j = 1; j <= n_cycles; ++j) {
      std::vector<Partial> next;
      next.reserve(branches.size() * 2);
      for (auto& b : branches) {
        ComplexMatrix grown = apply_cycle(images, b.state);
        if (!photon_measured[j]) {
          next.push_back({b.outcomes, std::move(grown), b.qubits + 1});
          continue;
        }
        const std::size_t sl = slot_of_photon[j];
        for (int s = 0; s < 2; ++s) {
          Partial child{b.outcomes, project_out(grown, b.qubits + 1, 1, bloch_ket(bases[sl], s)),
                        b.qubits};
          child.outcomes[sl] = s;
          next.push_back(std::move(child));
        }
      }
      branches = std::move(next);
    }
    std::vector<Branch> out;
    out.reserve(branches.size() * (measure_de ? 2 : 1));
    for (auto& b : branches) {
      if (!measure_de) {
        out.push_back({b.outcomes, std::move(b.state)});
        continue;
      }
      for (int s = 0; s < 2; ++s) {
        Branch child{b.outcomes, project_out(b.state, b.qubits, 0, bloch_ket(bases[0], s))};
        child.outcomes[0] = s;
        out.push_back(std::move(child));
      }
    }
    return out;
  };
}

LEResult optimize_localizable(const BranchEvaluator& evaluate,
                              std::size_t num_measured, const LEOptions& options) {
  const Objective f = [&](const std::vector<double>& x) {
    const auto angles = to_angles(x);
    return average_negativity(evaluate(angles));
  };

  LEResult result;
  if (num_measured == 0) {
    const auto branches = evaluate({});
    result.negativity = average_negativity(branches);
    result.start_values = {result.negativity};
    for (const auto& b : branches) {
      const double p = b.state.trace().real();
      result.outcome_table.push_back({b.outcomes, p, negativity(b.state)});
    }
    return result;
  }

  std::vector<std::vector<double>> starts;
  for (const BlochAngles axis : {BlochAngles{kPi / 2, 0.0}, BlochAngles{kPi / 2, kPi / 2},
                                 BlochAngles{0.0, 0.0}}) {
    std::vector<double> x;
    for (std::size_t q = 0; q < num_measured; ++q) {
      x.push_back(axis.theta);
      x.push_back(axis.phi);
    }
    starts.push_back(std::move(x));
  }
  for (int r = 0; r < options.random_starts; ++r) {
    std::mt19937_64 rng(options.seed + static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x;
    for (std::size_t q = 0; q < num_measured; ++q) {
      x.push_back(std::acos(1.0 - 2.0 * u(rng)));
      x.push_back(2.0 * kPi * u(rng));
    }
    starts.push_back(std::move(x));
  }

  std::vector<StartOutcome> outcomes(starts.size());
  if (options.parallel) {
    std::vector<std::future<StartOutcome>> futures;
    for (const auto& s : starts) {
      futures.push_back(std::async(std::launch::async, run_start, std::cref(f), s,
                                   std::cref(options)));
    }
    for (std::size_t i = 0; i < futures.size(); ++i) outcomes[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < starts.size(); ++i) outcomes[i] = run_start(f, starts[i], options);
  }

  std::size_t best = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    result.start_values.push_back(outcomes[i].value);
    if (outcomes[i].value > outcomes[best].value) best = i;
  }
  for (const auto& a : to_angles(outcomes[best].x)) result.optimal_bases.push_back(canonical(a));
  const auto branches = evaluate(result.optimal_bases);
  result.negativity = average_negativity(branches);
  for (const auto& b : branches) {
    const double p = b.state.trace().real();
    result.outcome_table.push_back(
        {b.outcomes, p, p > kMinBranchProbability ? negativity(b.state) : 0.0});
  }
  return result;
}

LEResult localizable_entanglement(const DensityMatrix& rho, std::size_t m,
                                  std::size_t n, const LEOptions& options) {
  if (rho.num_qubits() < 2) throw Error("localizable_entanglement: need at least two qubits");
  const auto evaluate = dense_branches(rho, m, n);
  LEResult result = optimize_localizable(evaluate, rho.num_qubits() - 2, options);
  result.m = m;
  result.n = n;
  for (std::size_t p = 1; p <= rho.num_qubits(); ++p) {
    if (p != m && p != n) result.measured.push_back(p);
  }
  return result;
}

std::vector<LECurvePoint> le_curve(const ProcessMap& map, const DensityMatrix& init,
                                   std::size_t d_max, std::size_t m,
                                   const LEOptions& options, std::size_t cap) {
  if (m < 1) throw Error("le_curve: m must be >= 1");
  if (m + d_max > cap + 1) {
    std::ostringstream os;
    os << "le_curve: m + d_max = " << m + d_max << " exceeds chain cap " << cap << " + 1";
    throw Error(os.str());
  }
  if (map.tp_violation() > kTPTol) throw Error("le_curve: map is not trace preserving");
  std::vector<LECurvePoint> curve;
  for (std::size_t d = 1; d <= d_max; ++d) {
    const std::size_t cycles = m + d - 1;
    const auto evaluate = chain_branches(map, init, cycles, m, m + d);
    LEResult r = optimize_localizable(evaluate, cycles - 1, options);
    r.m = m;
    r.n = m + d;
    for (std::size_t p = 1; p <= cycles + 1; ++p) {
      if (p != r.m && p != r.n) r.measured.push_back(p);
    }
    curve.push_back({d, std::move(r)});
  }
  return curve;
}

namespace {

struct ExpFunctor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  std::vector<std::pair<double, double>> pts;

  int inputs() const { return 2; }
  int values() const { return static_cast<int>(pts.size()); }

  // Parameters: (N0, k) with N = N0 exp(-k d).
  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& r) const {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      r(static_cast<Eigen::Index>(i)) = p(0) * std::exp(-p(1) * pts[i].first) - pts[i].second;
    }
    return 0;
  }
  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& j) const {
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double e = std::exp(-p(1) * pts[i].first);
      j(static_cast<Eigen::Index>(i), 0) = e;
      j(static_cast<Eigen::Index>(i), 1) = -p(0) * pts[i].first * e;
    }
    return 0;
  }
};

}  // namespace

ExponentialFit fit_exponential(std::span<const std::pair<double, double>> curve) {
  ExpFunctor functor;
  for (const auto& pt : curve) {
    if (pt.second > kFitFloor) functor.pts.push_back(pt);
  }
  if (functor.pts.size() < 3) {
    std::ostringstream os;
    os << "fit_exponential: need at least 3 points above " << kFitFloor << ", got "
       << functor.pts.size();
    throw Error(os.str());
  }
  // Seed from a log-linear regression.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double np = static_cast<double>(functor.pts.size());
  for (const auto& [d, v] : functor.pts) {
    const double y = std::log(v);
    sx += d;
    sy += y;
    sxx += d * d;
    sxy += d * y;
  }
  const double denom = np * sxx - sx * sx;
  const double slope = denom != 0.0 ? (np * sxy - sx * sy) / denom : 0.0;
  Eigen::VectorXd p(2);
  p << std::exp((sy - slope * sx) / np), -slope;

  Eigen::LevenbergMarquardt<ExpFunctor> lm(functor);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.parameters.maxfev = 2000;
  lm.minimize(p);

  Eigen::VectorXd r(functor.values());
  functor(p, r);
  ExponentialFit fit;
  fit.points_used = functor.pts.size();
  fit.n0 = p(0);
  fit.residual = std::sqrt(r.squaredNorm() / np);
  if (!(p(1) > 1.0 / kNoDecayXi)) {
    fit.xi = std::numeric_limits<double>::infinity();
    fit.decaying = false;
    fit.diagnostic = "no decay";
  } else {
    fit.xi = 1.0 / p(1);
    fit.decaying = true;
    fit.diagnostic = "ok";
  }
  return fit;
}

PauliExpectations pauli_expectations(const DensityMatrix& rho) {
  PauliExpectations out;
  for (const auto& s : all_pauli_strings(rho.num_qubits())) {
    out[s] = (pauli_string_matrix(s) * rho.matrix()).trace().real();
  }
  return out;
}

bool is_measurable(const std::string& pauli_string) {
  return !pauli_string.empty() && pauli_string[0] != 'x';
}

FidelityBounds tripartite_fidelity_bounds(const PauliExpectations& expectations,
                                          const PureState& target) {
  if (target.num_qubits() != 3) throw Error("tripartite_fidelity_bounds: target must be 3 qubits");
  const auto strings = all_pauli_strings(3);
  std::vector<std::string> missing;
  for (const auto& s : strings) {
    if (is_measurable(s) && !expectations.contains(s)) missing.push_back(s);
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "tripartite_fidelity_bounds: missing measurable expectations:";
    for (const auto& s : missing) os << ' ' << s;
    throw Error(os.str());
  }

  const ComplexVector& psi = target.amplitudes();
  FidelityBounds out;
  double slack = 0.0;
  double tight_low = 0.0, tight_high = 0.0;
  for (const auto& s : strings) {
    const double c = psi.dot(pauli_string_matrix(s) * psi).real();
    if (const auto it = expectations.find(s); it != expectations.end()) {
      out.f_measured += c * it->second / 8.0;
      continue;
    }
    out.unmeasured.push_back(s);
    slack += std::abs(c) / 8.0;

    // Interval for <s> from commuting measured pairs A B = sign * s.
    double lo = -1.0, hi = 1.0;
    for (const auto& a : strings) {
      if (a == "000" || !expectations.contains(a)) continue;
      std::string b(3, '0');
      Complex phase = 1.0;  // a * s = phase * b  =>  a * b = s / phase
      for (int q = 0; q < 3; ++q) {
        const auto [c_idx, ph] = pauli_mul(pauli_index(a[q]), pauli_index(s[q]));
        b[q] = kPauliChars[c_idx];
        phase *= ph;
      }
      if (std::abs(phase.imag()) > 0.5 || !expectations.contains(b)) continue;
      const double sign = phase.real();  // a b = sign * s since a^2 = I and phase is real
      const double ea = expectations.at(a), eb = expectations.at(b);
      for (int sa : {-1, 1}) {
        for (int sb : {-1, 1}) {
          // 1 + sa<A> + sb<B> + sa sb sign <s> >= 0
          const double bound = -1.0 - sa * ea - sb * eb;
          if (sa * sb * sign > 0) {
            lo = std::max(lo, bound);
          } else {
            hi = std::min(hi, -bound);
          }
        }
      }
    }
    if (lo > hi) {
      out.consistent = false;
      lo = -1.0;
      hi = 1.0;
    }
    tight_low += std::min(c * lo, c * hi) / 8.0;
    tight_high += std::max(c * lo, c * hi) / 8.0;
  }
  out.f_low_triangle = out.f_measured - slack;
  out.f_high_triangle = out.f_measured + slack;
  out.f_low = out.f_measured + tight_low;
  out.f_high = out.f_measured + tight_high;
  return out;
}

}  // namespace dxc
