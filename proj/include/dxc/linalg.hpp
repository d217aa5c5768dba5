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

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace dxc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNegativeEigenTol = 1e-10;

/// Kronecker product; the left factor indexes the most significant bits.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

struct HermitianEigen {
  RealVector values;  // ascending
  ComplexMatrix vectors;
};

/// Eigen-decomposition of a Hermitian matrix; throws on non-Hermitian input.
HermitianEigen eigh(const ComplexMatrix& m, double hermitian_tol = 1e-10);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-negative_tol, 0) are clipped to zero, anything more negative throws.
ComplexMatrix psd_sqrt(const ComplexMatrix& a,
                       double negative_tol = kNegativeEigenTol);

/// Jozsa fidelity Tr[sqrt(sqrt(B) A sqrt(B))]^2 / (Tr[A] Tr[B]) of two
/// Hermitian PSD matrices.
double jozsa_fidelity(const ComplexMatrix& a, const ComplexMatrix& b,
                      double negative_tol = kNegativeEigenTol);

/// Pauli matrices indexed 0, x, y, z.
const ComplexMatrix& pauli(int k);

/// Coefficients rho_g = Tr[sigma_g rho] / 2, g in {0, x, y, z}.
std::array<double, 4> pauli_decompose(const ComplexMatrix& rho);
/// Complex coefficients for arbitrary (non-Hermitian) 2x2 input.
std::array<Complex, 4> pauli_decompose_complex(const ComplexMatrix& m);
ComplexMatrix pauli_recompose(const std::array<double, 4>& coeffs);

// Index-based qubit operations. Qubit 0 is the most significant bit.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t num_qubits,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t num_qubits,
                                std::size_t qubit);

/// Hermitian, unit-trace matrix over an ordered list of qubit labels.
///
/// Construction checks shape, trace and Hermiticity. Positivity costs an
/// eigen-decomposition, so it is checked separately by check_positive().
class DensityMatrix {
 public:
  DensityMatrix(ComplexMatrix matrix, std::vector<std::string> labels);

  static DensityMatrix from_pure(const ComplexVector& amplitudes,
                                 std::vector<std::string> labels);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t num_qubits() const { return labels_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Position of a label; throws Error for unknown labels.
  std::size_t index_of(std::string_view label) const;

 private:
  ComplexMatrix matrix_;
  std::vector<std::string> labels_;
};

/// Smallest eigenvalue; throws if below -tol.
double check_positive(const DensityMatrix& rho, double tol = kNegativeEigenTol);

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state over the kept labels, in their original order.
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep);

ComplexMatrix partial_transpose(const DensityMatrix& rho,
                                std::string_view subsystem);

}  // namespace dxc
