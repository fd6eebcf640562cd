/*
 * Copyright (C) 2026 The randwave Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "randwave/rng.hpp"

namespace randwave {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// A d x d unitary drawn from Haar measure on U(d).
///
/// Row l is the eigenbasis index and column i the original basis index, so
/// (l, i) is the coefficient of V f_i along the l-th basis vector.
class HaarUnitary {
 public:
  explicit HaarUnitary(ComplexMatrix entries);

  Index dim() const { return entries_.rows(); }
  const ComplexMatrix& entries() const { return entries_; }
  Complex operator()(Index row, Index col) const { return entries_(row, col); }

  /// max |(U U^H - I)_{ij}|
  double unitarity_residual() const;

 private:
  ComplexMatrix entries_;
};

/// Phase-corrected QR of a complex Ginibre matrix.
HaarUnitary sample_haar_unitary(Index d, Rng& rng);

/// Uniform on the unit sphere of C^d, by normalizing a complex Gaussian.
ComplexVector sample_sphere_vector(Index d, Rng& rng);

/// iid unit-rate exponentials via -log(u), u uniform on (0, 1).
std::vector<double> sample_exponentials(Index d, Rng& rng);

/// iid uniform unit-circle phases.
std::vector<Complex> sample_phases(Index d, Rng& rng);

struct SphereDecomposition {
  std::vector<Complex> phases;
  std::vector<double> exponentials;
  ComplexVector vector;
};

/// X_k = xi_k * sqrt(e_k / sum(e)).
ComplexVector decompose_sphere_vector(std::span<const Complex> phases,
                                      std::span<const double> exponentials);

/// Draws phases and exponentials, then assembles the sphere vector.
SphereDecomposition sample_sphere_decomposition(Index d, Rng& rng);

}  // namespace randwave
