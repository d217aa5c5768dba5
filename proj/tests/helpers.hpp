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

// Shared fixtures for the unit tests.

#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "dxc/linalg.hpp"

namespace dxc::testing {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  }
  return m;
}

// Ginibre ensemble: G G^dagger / Tr.
inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index dim) {
  const ComplexMatrix g = random_complex(rng, dim, dim);
  const ComplexMatrix r = g * g.adjoint();
  return r / r.trace().real();
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rng, dim, dim));
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline std::vector<std::string> qubit_labels(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("q" + std::to_string(i));
  return out;
}

inline DensityMatrix random_state(std::mt19937_64& rng, std::size_t n) {
  return DensityMatrix(random_density(rng, Eigen::Index{1} << n), qubit_labels(n));
}

inline ComplexVector ket(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (auto a : amps) v(i++) = a;
  return v;
}

}  // namespace dxc::testing
