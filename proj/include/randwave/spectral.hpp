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

#include <compare>
#include <map>
#include <span>
#include <vector>

#include "randwave/randmat.hpp"

namespace randwave {

/// Integer frequency vector on the torus (length = torus dimension).
using Frequency = std::vector<int>;

/// Normalized exponential e^{i m.x} / (2 pi)^{n/2}, an eigenfunction of
/// sqrt(Laplacian) with eigenvalue |m|.
struct LatticeMode {
  Frequency coords;

  long norm_squared() const;
  double eigenvalue() const;

  auto operator<=>(const LatticeMode&) const = default;
};

/// Half-open eigenvalue window [lower, upper).
struct SpectralWindow {
  double lower = 0.0;
  double upper = 1.0;
  Index index = 0;

  /// [k * width, (k + 1) * width)
  static SpectralWindow unit(Index k, double width = 1.0);

  bool contains(double lambda) const { return lower <= lambda && lambda < upper; }
};

/// Modes of one window, sorted lexicographically.
struct SpectralBlock {
  SpectralWindow window;
  int torus_dim = 2;
  std::vector<LatticeMode> modes;

  Index dim() const { return static_cast<Index>(modes.size()); }
  bool empty() const { return modes.empty(); }
};

/// All m in Z^n with lower <= |m| < upper; n in {1, 2}.
SpectralBlock enumerate_block(const SpectralWindow& window, int torus_dim);

struct WeylCount {
  long count = 0;
  double leading_term = 0.0;  // pi lambda^2 (n = 2), 2 lambda (n = 1)
  double relative_error = 0.0;
};

/// #{m in Z^n : |m| <= lambda}
WeylCount weyl_count(double lambda, int torus_dim);

struct FourierTerm {
  Frequency frequency;
  Complex coefficient;
};

/// Real trigonometric polynomial a(x) = sum_q a(q) e^{i q.x}, acting by
/// multiplication. Coefficients satisfy a(-q) = conj(a(q)).
class Observable {
 public:
  /// Missing Hermitian partners are inserted. Throws on a repeated
  /// frequency, an inconsistent partner pair, a complex a(0), or a frequency
  /// of the wrong length.
  Observable(int torus_dim, std::span<const FourierTerm> terms);

  static Observable constant(int torus_dim, double value);
  /// cos(x_axis)
  static Observable cosine(int torus_dim, int axis = 0);

  int torus_dim() const { return torus_dim_; }
  Complex coefficient(const Frequency& q) const;
  const std::map<Frequency, Complex>& coefficients() const { return coeffs_; }

  /// sum |a(q)|, an upper bound for the operator norm.
  double operator_norm_bound() const;

 private:
  int torus_dim_;
  std::map<Frequency, Complex> coeffs_;
};

/// Torus mean a(0), the normalized Liouville average of the symbol.
double symbol_average(const Observable& obs);

/// Entry (row m', column m) = <A f_m, f_m'> = a(m' - m).
ComplexMatrix observable_matrix(const Observable& obs, const SpectralBlock& block);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column l pairs with values[l]
  int sweeps = 0;
};

/// Cyclic complex Jacobi; stops once the off-diagonal Frobenius mass falls
/// below tolerance * ||A||_F. Throws ValidationError when the input is not
/// Hermitian to 1e-12 * max|a_ij|.
HermitianEigen hermitian_eigen(const ComplexMatrix& matrix,
                               double tolerance = 1e-12);

/// Ascending eigenvalues of a Hermitian matrix.
std::vector<double> projected_eigenvalues(const ComplexMatrix& matrix);

struct Recentered {
  std::vector<double> eta;
  double mean = 0.0;
};

Recentered recenter(std::span<const double> nu);

/// Pi_k A Pi_k on one block together with its spectrum.
class ProjectedObservable {
 public:
  ProjectedObservable(const Observable& obs, SpectralBlock block);

  const SpectralBlock& block() const { return block_; }
  Index dim() const { return block_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<double>& eigs() const { return eigen_.values; }
  const ComplexMatrix& eigenvectors() const { return eigen_.vectors; }
  const std::vector<double>& recentered() const { return recentered_.eta; }
  double mean() const { return recentered_.mean; }
  double second_moment() const { return second_moment_; }
  double symbol_average() const { return symbol_average_; }
  double norm_bound() const { return norm_bound_; }

 private:
  SpectralBlock block_;
  ComplexMatrix matrix_;
  HermitianEigen eigen_;
  Recentered recentered_;
  double second_moment_ = 0.0;
  double symbol_average_ = 0.0;
  double norm_bound_ = 0.0;
};

/// (1/d) sum nu^m
double szego_moment(const ProjectedObservable& projected, int m);

/// -||A|| <= nu_1 and nu_d <= ||A||
bool trivial_bound_check(const ProjectedObservable& projected);

struct GrowthFit {
  double exponent = 0.0;  // slope of log d_k against log k
  double intercept = 0.0;
};

/// Least-squares fit of log d against log k over blocks with k >= 1, d >= 1.
GrowthFit fit_dimension_growth(std::span<const SpectralBlock> blocks);

}  // namespace randwave
