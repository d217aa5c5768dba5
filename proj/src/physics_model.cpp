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

#include "dxc/physics_model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <queue>
#include <sstream>
#include <vector>

namespace dxc {

namespace {

using Vec64 = Eigen::Matrix<double, 64, 1>;

void require_positive(double v, const char* field) {
  if (!(v > 0.0)) {
    std::ostringstream os;
    os << "PhysicalParams." << field << " must be > 0 (got " << v << ")";
    throw Error(os.str());
  }
}

// 15-point Kronrod nodes on [-1, 1] (non-negative half) with weights for the
// Kronrod rule and the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  Vec64 value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod(const std::function<Vec64(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const Vec64 fc = f(c);
  Vec64 k = kKronrodWeights[7] * fc;
  Vec64 g = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const Vec64 sum = f(c - dx) + f(c + dx);
    k += kKronrodWeights[i] * sum;
    if (i % 2 == 1) g += kGaussWeights[i / 2] * sum;
  }
  k *= h;
  g *= h;
  return {a, b, k, (k - g).cwiseAbs().maxCoeff()};
}

struct QuadratureResult {
  Vec64 value;
  double error;
  int intervals;
};

QuadratureResult integrate(const std::function<Vec64(double)>& f, double a,
                           double b, const QuadratureOptions& opt) {
  std::priority_queue<Segment> queue;
  const int n0 = std::max(1, opt.initial_intervals);
  for (int i = 0; i < n0; ++i) {
    queue.push(kronrod(f, a + (b - a) * i / n0, a + (b - a) * (i + 1) / n0));
  }
  auto totals = [&queue]() {
    auto copy = queue;
    Vec64 v = Vec64::Zero();
    double e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };
  for (;;) {
    auto [value, error] = totals();
    const double target = std::max(opt.abs_tol, opt.rel_tol * value.cwiseAbs().maxCoeff());
    if (error <= target) return {value, error, static_cast<int>(queue.size())};
    if (static_cast<int>(queue.size()) >= opt.max_intervals) {
      std::ostringstream os;
      os << "model_process_map: quadrature did not converge (achieved error "
         << error << ", target " << target << ")";
      throw Error(os.str());
    }
    const Segment worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    queue.push(kronrod(f, worst.a, mid));
    queue.push(kronrod(f, mid, worst.b));
  }
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace

void PhysicalParams::validate() const {
  require_positive(t_rad, "t_rad");
  require_positive(T_DE, "T_DE");
  require_positive(T_BiE, "T_BiE");
  require_positive(T2_star, "T2_star");
  if (!(t_nonrad >= 0.0)) throw Error("PhysicalParams.t_nonrad must be >= 0");
  if (!(T_cycle >= 0.0)) throw Error("PhysicalParams.T_cycle must be >= 0");
  if (!(init_purity >= 0.0 && init_purity <= 1.0)) {
    throw Error("PhysicalParams.init_purity must lie in [0, 1]");
  }
}

ComplexMatrix precession(double t, double period) {
  if (std::isinf(period)) return ComplexMatrix::Identity(2, 2);
  const double angle = std::numbers::pi * t / period;
  return std::cos(angle) * ComplexMatrix::Identity(2, 2) -
         Complex{0.0, std::sin(angle)} * pauli(1);
}

DephasingChannel::DephasingChannel(double tau, const PhysicalParams& params)
    : unitary_(precession(tau, params.T_DE)),
      coherence_(std::isinf(params.T2_star) ? 1.0 : std::exp(-tau / params.T2_star)) {
  if (tau < 0.0) throw Error("dephasing_channel: tau must be >= 0");
}

ComplexMatrix DephasingChannel::operator()(const ComplexMatrix& rho) const {
  static const ComplexMatrix kPlus = projector(spin_ket(SpinState::PlusX));
  static const ComplexMatrix kMinus = projector(spin_ket(SpinState::MinusX));
  const ComplexMatrix rotated = unitary_ * rho * unitary_.adjoint();
  return coherence_ * rotated +
         (1.0 - coherence_) * (kPlus * rotated * kPlus + kMinus * rotated * kMinus);
}

DensityMatrix DephasingChannel::operator()(const DensityMatrix& rho) const {
  if (rho.num_qubits() != 1) throw Error("dephasing_channel: expects a 1-qubit state");
  return DensityMatrix((*this)(rho.matrix()), rho.labels());
}

DephasingChannel dephasing_channel(double tau, const PhysicalParams& params) {
  return DephasingChannel(tau, params);
}

ModelMapResult model_process_map_detailed(const PhysicalParams& params,
                                          const QuadratureOptions& quad) {
  params.validate();
  const double window = params.T_cycle - params.t_nonrad;
  if (!(window > 0.0)) {
    throw Error("model_process_map: T_cycle must exceed t_nonrad");
  }
  const double rate = 1.0 / params.t_rad;

  ComplexMatrix emission = ComplexMatrix::Zero(4, 2);
  emission(0, 0) = 1.0;  // |+3> -> |+Z>|R>
  emission(3, 1) = 1.0;  // |-3> -> |-Z>|L>
  const ComplexMatrix id2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix plus_x = projector(spin_ket(SpinState::PlusX));
  const ComplexMatrix minus_x = projector(spin_ket(SpinState::MinusX));

  auto integrand = [&](double t) -> Vec64 {
    const ComplexMatrix emitted = emission * precession(t, params.T_BiE);
    const double tau = window - t;
    const ComplexMatrix u = precession(tau, params.T_DE);
    const double q = std::isinf(params.T2_star) ? 1.0 : std::exp(-tau / params.T2_star);
    const std::array<ComplexMatrix, 3> kraus{
        std::sqrt(q) * tensor_product(u, id2) * emitted,
        std::sqrt(1.0 - q) * tensor_product(plus_x * u, id2) * emitted,
        std::sqrt(1.0 - q) * tensor_product(minus_x * u, id2) * emitted};
    const double weight = rate * std::exp(-rate * t);
    const ProcessMap m = ProcessMap::from_kraus(kraus);
    return weight * Eigen::Map<const Vec64>(m.coefficients().data());
  };

  const QuadratureResult q = integrate(integrand, 0.0, window, quad);
  const double captured = -std::expm1(-rate * window);
  ProcessMap::Coefficients phi;
  for (int i = 0; i < 64; ++i) phi[static_cast<std::size_t>(i)] = q.value(i) / captured;
  return {ProcessMap(phi), std::exp(-rate * window), q.error / captured, q.intervals};
}

ProcessMap model_process_map(const PhysicalParams& params) {
  return model_process_map_detailed(params).map;
}

DensityMatrix initialization_state(const PhysicalParams& params,
                                   const PureState& target) {
  if (target.num_qubits() != 1) {
    throw Error("initialization_state: target must be a single qubit");
  }
  if (params.init_purity < 0.5) {
    throw Error("initialization_state: init_purity below 1/2 (maximally mixed fidelity)");
  }
  if (params.init_purity > 1.0) throw Error("initialization_state: init_purity above 1");
  const double lambda = 2.0 * params.init_purity - 1.0;
  const ComplexVector& v = target.amplitudes();
  return DensityMatrix(lambda * v * v.adjoint() +
                           (1.0 - lambda) * 0.5 * ComplexMatrix::Identity(2, 2),
                       target.labels());
}

}  // namespace dxc
