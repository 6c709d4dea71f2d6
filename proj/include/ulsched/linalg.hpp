// Copyright 2026 The Authors.
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

#ifndef ULSCHED_LINALG_HPP_
#define ULSCHED_LINALG_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "ulsched/errors.hpp"

namespace ulsched {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Base-2 log-determinant of a Hermitian positive definite matrix via an
// in-place Cholesky factorization. The matrices handled here are I plus a
// PSD accumulation, so every pivot should sit at or above 1; a pivot at or
// below `tol` aborts with NumericError.
inline double log2_det_hermitian(CMatrix a, double tol = 1e-12) {
  const Eigen::Index n = a.rows();
  double acc = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = a(j, j).real();
    for (Eigen::Index k = 0; k < j; ++k) d -= std::norm(a(j, k));
    if (!(d > tol)) throw NumericError("log2_det_hermitian: pivot below tolerance");
    const double root = std::sqrt(d);
    a(j, j) = root;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      Complex s = a(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
      a(i, j) = s / root;
    }
    acc += std::log2(d);  // pivot d equals L(j,j)^2
  }
  return acc;
}

}  // namespace ulsched

#endif  // ULSCHED_LINALG_HPP_
