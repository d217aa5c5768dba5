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

#include "dxc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dxc {

namespace {

std::size_t dim_of(std::size_t num_qubits) { return std::size_t{1} << num_qubits; }

bool bit(std::size_t index, std::size_t num_qubits, std::size_t qubit) {
  return (index >> (num_qubits - 1 - qubit)) & 1U;
}

void require_square_power_of_two(const ComplexMatrix& m, std::size_t num_qubits) {
  const auto d = static_cast<Eigen::Index>(dim_of(num_qubits));
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols() << ", expected " << d
       << "x" << d << " for " << num_qubits << " qubits";
    throw Error(os.str());
  }
}

}  // namespace

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = tensor_product(out, f);
  return out;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    }
  }
  return true;
}

HermitianEigen eigh(const ComplexMatrix& m, double hermitian_tol) {
  if (!is_hermitian(m, hermitian_tol * std::max(1.0, m.cwiseAbs().maxCoeff()))) {
    throw Error("eigh: matrix is not Hermitian");
  }
  const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error("eigh: eigen-decomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a, double negative_tol) {
  if (!is_hermitian(a, 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()))) {
    throw Error("psd_sqrt: input is not Hermitian");
  }
  auto [values, vectors] = eigh(a);
  if (values.size() > 0 && values.minCoeff() < -negative_tol) {
    std::ostringstream os;
    os << "psd_sqrt: eigenvalue " << values.minCoeff() << " below -"
       << negative_tol;
    throw Error(os.str());
  }
  const RealVector roots = values.cwiseMax(0.0).cwiseSqrt();
  return vectors * roots.cast<Complex>().asDiagonal() * vectors.adjoint();
}

namespace {

// Square root with eigenvalues at rounding level set to zero: for
// rank-deficient arguments their square roots (~1e-8) would otherwise
// leak into the fidelity.
ComplexMatrix fidelity_root(const ComplexMatrix& m, double negative_tol) {
  if (!is_hermitian(m, 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff()))) {
    throw Error("fidelity: argument is not Hermitian");
  }
  auto [values, vectors] = eigh(m);
  if (values.size() > 0 && values.minCoeff() < -negative_tol) {
    std::ostringstream os;
    os << "fidelity: eigenvalue " << values.minCoeff() << " below -" << negative_tol;
    throw Error(os.str());
  }
  const double floor = 1e-14 * std::max(1.0, values.cwiseAbs().maxCoeff());
  RealVector roots(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    roots(i) = values(i) > floor ? std::sqrt(values(i)) : 0.0;
  }
  return vectors * roots.cast<Complex>().asDiagonal() * vectors.adjoint();
}

}  // namespace

double jozsa_fidelity(const ComplexMatrix& a, const ComplexMatrix& b,
                      double negative_tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error("fidelity: dimension mismatch");
  }
  // Tr sqrt(sqrt(B) A sqrt(B)) is the trace norm of sqrt(A) sqrt(B); the
  // singular-value form keeps the result symmetric for rank-deficient inputs.
  const ComplexMatrix sa = fidelity_root(a, negative_tol);
  const ComplexMatrix sb = fidelity_root(b, negative_tol);
  const double tr_root = Eigen::JacobiSVD<ComplexMatrix>(sa * sb).singularValues().sum();
  const double norm = a.trace().real() * b.trace().real();
  if (norm <= 0.0) throw Error("fidelity: zero-trace argument");
  return std::clamp(tr_root * tr_root / norm, 0.0, 1.0);
}

const ComplexMatrix& pauli(int k) {
  static const std::array<ComplexMatrix, 4> kPaulis = [] {
    const Complex i{0.0, 1.0};
    std::array<ComplexMatrix, 4> p;
    for (auto& m : p) m = ComplexMatrix::Zero(2, 2);
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -i, i, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  if (k < 0 || k > 3) throw Error("pauli: index out of range");
  return kPaulis[static_cast<std::size_t>(k)];
}

std::array<Complex, 4> pauli_decompose_complex(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error("pauli_decompose: expected a 2x2 matrix");
  }
  std::array<Complex, 4> c{};
  for (int g = 0; g < 4; ++g) c[g] = (pauli(g) * m).trace() / 2.0;
  return c;
}

std::array<double, 4> pauli_decompose(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2 || !is_hermitian(rho)) {
    throw Error("pauli_decompose: expected a Hermitian 2x2 matrix");
  }
  const auto c = pauli_decompose_complex(rho);
  return {c[0].real(), c[1].real(), c[2].real(), c[3].real()};
}

ComplexMatrix pauli_recompose(const std::array<double, 4>& coeffs) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  for (int g = 0; g < 4; ++g) m += coeffs[g] * pauli(g);
  return m;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t num_qubits,
                            std::span<const std::size_t> keep) {
  require_square_power_of_two(m, num_qubits);
  std::vector<bool> kept(num_qubits, false);
  for (auto q : keep) {
    if (q >= num_qubits) throw Error("partial_trace: qubit index out of range");
    kept[q] = true;
  }
  std::vector<std::size_t> keep_sorted(keep.begin(), keep.end());
  std::sort(keep_sorted.begin(), keep_sorted.end());
  keep_sorted.erase(std::unique(keep_sorted.begin(), keep_sorted.end()),
                    keep_sorted.end());

  const std::size_t d = dim_of(num_qubits);
  const std::size_t n_keep = keep_sorted.size();
  // Split every full index into (kept bits, traced bits).
  std::vector<std::size_t> kept_part(d), traced_part(d);
  for (std::size_t idx = 0; idx < d; ++idx) {
    std::size_t k = 0, t = 0;
    for (std::size_t q = 0; q < num_qubits; ++q) {
      if (kept[q]) {
        k = (k << 1) | bit(idx, num_qubits, q);
      } else {
        t = (t << 1) | bit(idx, num_qubits, q);
      }
    }
    kept_part[idx] = k;
    traced_part[idx] = t;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_of(n_keep), dim_of(n_keep));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (traced_part[i] == traced_part[j]) {
        out(kept_part[i], kept_part[j]) += m(i, j);
      }
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t num_qubits,
                                std::size_t qubit) {
  require_square_power_of_two(m, num_qubits);
  if (qubit >= num_qubits) {
    throw Error("partial_transpose: qubit index out of range");
  }
  const std::size_t d = dim_of(num_qubits);
  const std::size_t mask = std::size_t{1} << (num_qubits - 1 - qubit);
  ComplexMatrix out(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t ni = (i & ~mask) | (j & mask);
      const std::size_t nj = (j & ~mask) | (i & mask);
      out(ni, nj) = m(i, j);
    }
  }
  return out;
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, std::vector<std::string> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  require_square_power_of_two(matrix_, labels_.size());
  for (std::size_t a = 0; a < labels_.size(); ++a) {
    for (std::size_t b = a + 1; b < labels_.size(); ++b) {
      if (labels_[a] == labels_[b]) {
        throw Error("DensityMatrix: duplicate label '" + labels_[a] + "'");
      }
    }
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    std::ostringstream os;
    os << "DensityMatrix: trace " << tr << " is not 1";
    throw Error(os.str());
  }
  if (!is_hermitian(matrix_)) throw Error("DensityMatrix: not Hermitian");
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& amplitudes,
                                       std::vector<std::string> labels) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw Error("DensityMatrix::from_pure: zero vector");
  const ComplexVector v = amplitudes / norm;
  return DensityMatrix(v * v.adjoint(), std::move(labels));
}

std::size_t DensityMatrix::index_of(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error("unknown qubit label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

double check_positive(const DensityMatrix& rho, double tol) {
  const double lowest = eigh(rho.matrix()).values.minCoeff();
  if (lowest < -tol) {
    std::ostringstream os;
    os << "DensityMatrix: smallest eigenvalue " << lowest << " below -" << tol;
    throw Error(os.str());
  }
  return lowest;
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  return DensityMatrix(tensor_product(a.matrix(), b.matrix()), std::move(labels));
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep) {
  std::vector<std::size_t> idx;
  idx.reserve(keep.size());
  for (const auto& label : keep) idx.push_back(rho.index_of(label));
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> labels;
  for (auto i : idx) labels.push_back(rho.labels()[i]);
  return DensityMatrix(partial_trace(rho.matrix(), rho.num_qubits(), idx),
                       std::move(labels));
}

ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                std::string_view subsystem) {
  return partial_transpose(rho.matrix(), rho.num_qubits(), rho.index_of(subsystem));
}

}  // namespace dxc
