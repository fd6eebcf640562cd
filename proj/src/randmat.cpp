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

#include "randwave/randmat.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "randwave/error.hpp"

namespace randwave {
namespace {

constexpr double kPhaseTolerance = 1e-14;
constexpr double kResampleNorm = 1e-150;

void require_dim(Index d) {
  detail::require(d >= 1, "dimension must be >= 1, got " + std::to_string(d));
}

}  // namespace

HaarUnitary::HaarUnitary(ComplexMatrix entries) : entries_(std::move(entries)) {
  detail::require(entries_.rows() == entries_.cols() && entries_.rows() >= 1,
                  "unitary must be a non-empty square matrix");
}

double HaarUnitary::unitarity_residual() const {
  const ComplexMatrix gram = entries_ * entries_.adjoint();
  return (gram - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

HaarUnitary sample_haar_unitary(Index d, Rng& rng) {
  require_dim(d);
  ComplexMatrix z(d, d);
  for (Index col = 0; col < d; ++col)
    for (Index row = 0; row < d; ++row) z(row, col) = rng.complex_normal();

  const Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const auto& r = qr.matrixQR();
  // Z = Q R is unique once diag(R) > 0; rescale column j of Q by the phase of
  // R_jj (and R by its conjugate) to reach that form. Without this the law
  // depends on the QR convention and is not Haar.
  for (Index j = 0; j < d; ++j) {
    const double modulus = std::abs(r(j, j));
    if (modulus > 0.0) q.col(j) *= r(j, j) / modulus;
  }
  return HaarUnitary(std::move(q));
}

ComplexVector sample_sphere_vector(Index d, Rng& rng) {
  require_dim(d);
  ComplexVector x(d);
  for (;;) {
    for (Index k = 0; k < d; ++k) x(k) = rng.complex_normal();
    const double norm = x.norm();
    if (norm >= kResampleNorm) return x / norm;
  }
}

std::vector<double> sample_exponentials(Index d, Rng& rng) {
  require_dim(d);
  std::vector<double> e(static_cast<std::size_t>(d));
  for (auto& value : e) value = -std::log(rng.uniform_open());
  return e;
}

std::vector<Complex> sample_phases(Index d, Rng& rng) {
  require_dim(d);
  std::vector<Complex> xi(static_cast<std::size_t>(d));
  for (auto& value : xi) value = rng.unit_phase();
  return xi;
}

ComplexVector decompose_sphere_vector(std::span<const Complex> phases,
                                      std::span<const double> exponentials) {
  detail::require(!phases.empty(), "sphere decomposition needs d >= 1");
  detail::require(phases.size() == exponentials.size(),
                  "phases and exponentials differ in length");
  for (const auto& xi : phases)
    detail::require(std::abs(std::abs(xi) - 1.0) <= kPhaseTolerance,
                    "phase is not of unit modulus");
  for (double e : exponentials)
    detail::require(e > 0.0 && std::isfinite(e),
                    "exponential must be positive and finite");

  const double total = std::accumulate(exponentials.begin(), exponentials.end(), 0.0);
  ComplexVector x(static_cast<Index>(phases.size()));
  for (std::size_t k = 0; k < phases.size(); ++k)
    x(static_cast<Index>(k)) = phases[k] * std::sqrt(exponentials[k] / total);
  return x;
}

SphereDecomposition sample_sphere_decomposition(Index d, Rng& rng) {
  SphereDecomposition out;
  out.phases = sample_phases(d, rng);
  out.exponentials = sample_exponentials(d, rng);
  out.vector = decompose_sphere_vector(out.phases, out.exponentials);
  return out;
}

}  // namespace randwave
