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

#include "randwave/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

#include "randwave/error.hpp"

namespace randwave {
namespace {

void require_torus_dim(int n) {
  detail::require(n == 1 || n == 2,
                  "torus dimension must be 1 or 2, got " + std::to_string(n));
}

long square(long v) { return v * v; }

// floor(sqrt(v)) for v >= 0, exact for integers below 2^52.
long floor_sqrt(double v) {
  auto r = static_cast<long>(std::sqrt(v));
  while (r > 0 && static_cast<double>(square(r)) > v) --r;
  while (static_cast<double>(square(r + 1)) <= v) ++r;
  return r;
}

Frequency negate(const Frequency& q) {
  Frequency out(q.size());
  std::transform(q.begin(), q.end(), out.begin(), [](int v) { return -v; });
  return out;
}

Frequency add(const Frequency& a, const Frequency& b) {
  Frequency out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

}  // namespace

long LatticeMode::norm_squared() const {
  long sum = 0;
  for (int c : coords) sum += square(c);
  return sum;
}

double LatticeMode::eigenvalue() const {
  return std::sqrt(static_cast<double>(norm_squared()));
}

SpectralWindow SpectralWindow::unit(Index k, double width) {
  detail::require(k >= 0, "window index must be nonnegative");
  detail::require(width > 0.0 && std::isfinite(width), "window width must be positive");
  const auto kk = static_cast<double>(k);
  return {kk * width, (kk + 1.0) * width, k};
}

SpectralBlock enumerate_block(const SpectralWindow& window, int torus_dim) {
  require_torus_dim(torus_dim);
  detail::require(window.lower >= 0.0 && window.lower < window.upper &&
                      std::isfinite(window.upper),
                  "window must satisfy 0 <= lower < upper");
  SpectralBlock block;
  block.window = window;
  block.torus_dim = torus_dim;

  // Compare squared norms so integer window edges are classified exactly.
  const double lo2 = window.lower * window.lower;
  const double hi2 = window.upper * window.upper;
  const auto inside = [&](long r2) {
    const auto v = static_cast<double>(r2);
    return lo2 <= v && v < hi2;
  };
  const auto reach = static_cast<int>(std::ceil(window.upper));
  if (torus_dim == 1) {
    for (int a = -reach; a <= reach; ++a)
      if (inside(square(a))) block.modes.push_back({{a}});
  } else {
    for (int a = -reach; a <= reach; ++a)
      for (int b = -reach; b <= reach; ++b)
        if (inside(square(a) + square(b))) block.modes.push_back({{a, b}});
  }
  return block;
}

WeylCount weyl_count(double lambda, int torus_dim) {
  require_torus_dim(torus_dim);
  detail::require_domain(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive");
  const double l2 = lambda * lambda;
  const long r = floor_sqrt(l2);
  WeylCount out;
  if (torus_dim == 1) {
    out.count = 2 * r + 1;
    out.leading_term = 2.0 * lambda;
  } else {
    for (long a = -r; a <= r; ++a)
      out.count += 2 * floor_sqrt(l2 - static_cast<double>(square(a))) + 1;
    out.leading_term = std::numbers::pi * l2;
  }
  out.relative_error = static_cast<double>(out.count) / out.leading_term - 1.0;
  return out;
}

Observable::Observable(int torus_dim, std::span<const FourierTerm> terms)
    : torus_dim_(torus_dim) {
  require_torus_dim(torus_dim);
  for (const auto& term : terms) {
    detail::require(term.frequency.size() == static_cast<std::size_t>(torus_dim),
                    "frequency vector length does not match the torus dimension");
    detail::require(std::isfinite(term.coefficient.real()) &&
                        std::isfinite(term.coefficient.imag()),
                    "Fourier coefficient must be finite");
    detail::require(coeffs_.emplace(term.frequency, term.coefficient).second,
                    "duplicate frequency in observable");
  }
  const Frequency zero(static_cast<std::size_t>(torus_dim), 0);
  if (auto it = coeffs_.find(zero); it != coeffs_.end())
    detail::require(it->second.imag() == 0.0, "the zero-frequency coefficient must be real");

  std::map<Frequency, Complex> partners;
  for (const auto& [q, value] : coeffs_) {
    const Frequency minus = negate(q);
    if (auto it = coeffs_.find(minus); it != coeffs_.end()) {
      detail::require(it->second == std::conj(value),
                      "coefficients at q and -q are not complex conjugates");
    } else {
      partners.emplace(minus, std::conj(value));
    }
  }
  coeffs_.merge(partners);
}

Observable Observable::constant(int torus_dim, double value) {
  const FourierTerm term{Frequency(static_cast<std::size_t>(torus_dim), 0), value};
  return Observable(torus_dim, std::span(&term, 1));
}

Observable Observable::cosine(int torus_dim, int axis) {
  detail::require(axis >= 0 && axis < torus_dim, "cosine axis out of range");
  Frequency q(static_cast<std::size_t>(torus_dim), 0);
  q[static_cast<std::size_t>(axis)] = 1;
  const FourierTerm term{q, 0.5};
  return Observable(torus_dim, std::span(&term, 1));
}

Complex Observable::coefficient(const Frequency& q) const {
  const auto it = coeffs_.find(q);
  return it == coeffs_.end() ? Complex{} : it->second;
}

double Observable::operator_norm_bound() const {
  double sum = 0.0;
  for (const auto& [q, value] : coeffs_) sum += std::abs(value);
  return sum;
}

double symbol_average(const Observable& obs) {
  return obs.coefficient(Frequency(static_cast<std::size_t>(obs.torus_dim()), 0)).real();
}

ComplexMatrix observable_matrix(const Observable& obs, const SpectralBlock& block) {
  detail::require(obs.torus_dim() == block.torus_dim,
                  "observable and block live on different tori");
  const Index d = block.dim();
  std::map<Frequency, Index> position;
  for (Index i = 0; i < d; ++i) position.emplace(block.modes[static_cast<std::size_t>(i)].coords, i);

  ComplexMatrix matrix = ComplexMatrix::Zero(d, d);
  for (Index col = 0; col < d; ++col) {
    const Frequency& m = block.modes[static_cast<std::size_t>(col)].coords;
    for (const auto& [q, value] : obs.coefficients()) {
      const auto it = position.find(add(m, q));
      if (it != position.end()) matrix(it->second, col) = value;
    }
  }
  return matrix;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& matrix, double tolerance) {
  detail::require(matrix.rows() == matrix.cols(), "matrix must be square");
  const Index d = matrix.rows();
  HermitianEigen out;
  if (d == 0) return out;

  const double scale = matrix.cwiseAbs().maxCoeff();
  detail::require((matrix - matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale,
                  "matrix is not Hermitian");

  ComplexMatrix a = 0.5 * (matrix + matrix.adjoint());
  ComplexMatrix v = ComplexMatrix::Identity(d, d);
  const double threshold = tolerance * a.norm();

  const auto off_diagonal = [&] {
    double sum = 0.0;
    for (Index q = 0; q < d; ++q)
      for (Index p = 0; p < d; ++p)
        if (p != q) sum += std::norm(a(p, q));
    return std::sqrt(sum);
  };

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal() > threshold; ++sweep) {
    for (Index p = 0; p + 1 < d; ++p) {
      for (Index q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double modulus = std::abs(apq);
        if (modulus == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // Rotate the phase of a_pq away, then apply the real symmetric
        // Jacobi rotation that annihilates it.
        const double theta = (aqq - app) / (2.0 * modulus);
        const double t = std::isinf(theta * theta)
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) /
                                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex phase = std::conj(apq) / modulus;

        const Complex gqp = -s * phase;
        const Complex gqq = c * phase;
        for (ComplexMatrix* target : {&a, &v}) {
          auto col_p = target->col(p);
          auto col_q = target->col(q);
          const ComplexVector saved = col_p;
          col_p = c * saved + gqp * col_q;
          col_q = s * saved + gqq * col_q;
        }
        for (Index k = 0; k < d; ++k) {
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app - t * modulus;
        a(q, q) = aqq + t * modulus;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (off_diagonal() > threshold)
    throw std::runtime_error("Jacobi eigensolver did not converge");

  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
    return a(x, x).real() < a(y, y).real();
  });
  out.values.resize(static_cast<std::size_t>(d));
  out.vectors.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    const Index src = order[static_cast<std::size_t>(i)];
    out.values[static_cast<std::size_t>(i)] = a(src, src).real();
    out.vectors.col(i) = v.col(src);
  }
  out.sweeps = sweep;
  return out;
}

std::vector<double> projected_eigenvalues(const ComplexMatrix& matrix) {
  return hermitian_eigen(matrix).values;
}

Recentered recenter(std::span<const double> nu) {
  detail::require(!nu.empty(), "cannot recenter an empty spectrum");
  Recentered out;
  out.mean = std::accumulate(nu.begin(), nu.end(), 0.0) / static_cast<double>(nu.size());
  out.eta.reserve(nu.size());
  for (double v : nu) out.eta.push_back(v - out.mean);
  return out;
}

ProjectedObservable::ProjectedObservable(const Observable& obs, SpectralBlock block)
    : block_(std::move(block)) {
  detail::require(!block_.empty(), "cannot project onto an empty block");
  matrix_ = observable_matrix(obs, block_);
  eigen_ = hermitian_eigen(matrix_);
  recentered_ = recenter(eigen_.values);
  for (double v : recentered_.eta) second_moment_ += v * v;
  symbol_average_ = randwave::symbol_average(obs);
  norm_bound_ = obs.operator_norm_bound();
}

double szego_moment(const ProjectedObservable& projected, int m) {
  detail::require(m >= 1, "moment order must be >= 1");
  double sum = 0.0;
  for (double v : projected.eigs()) sum += std::pow(v, m);
  return sum / static_cast<double>(projected.dim());
}

bool trivial_bound_check(const ProjectedObservable& projected) {
  const double bound = projected.norm_bound();
  const double slack = 64.0 * std::numeric_limits<double>::epsilon() * bound;
  const auto& nu = projected.eigs();
  return -bound - slack <= nu.front() && nu.back() <= bound + slack;
}

GrowthFit fit_dimension_growth(std::span<const SpectralBlock> blocks) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  double n = 0.0;
  for (const auto& block : blocks) {
    if (block.window.index < 1 || block.dim() < 1) continue;
    const double x = std::log(static_cast<double>(block.window.index));
    const double y = std::log(static_cast<double>(block.dim()));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  detail::require(n >= 2.0, "growth fit needs at least two blocks with k >= 1");
  const double denom = n * sxx - sx * sx;
  detail::require(denom > 0.0, "growth fit needs two distinct block indices");
  GrowthFit fit;
  fit.exponent = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.exponent * sx) / n;
  return fit;
}

}  // namespace randwave
