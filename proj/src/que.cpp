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

#include "randwave/que.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "randwave/concentration.hpp"
#include "randwave/error.hpp"
#include "randwave/parallel.hpp"

namespace randwave {
namespace {

void require_pair(const ProjectedObservable& projected, Index dim, Index i, Index j) {
  detail::require(dim == projected.dim(),
                  "unitary dimension " + std::to_string(dim) +
                      " does not match block dimension " + std::to_string(projected.dim()));
  detail::require(i >= 0 && i < dim && j >= 0 && j < dim, "column index out of range");
}

Eigen::Map<const Eigen::VectorXd> as_vector(const std::vector<double>& v) {
  return {v.data(), static_cast<Index>(v.size())};
}

}  // namespace

Complex matrix_coefficient(const ProjectedObservable& projected, const HaarUnitary& v,
                           Index i, Index j) {
  require_pair(projected, v.dim(), i, j);
  const auto& nu = projected.eigs();
  Complex sum{};
  for (Index l = 0; l < v.dim(); ++l)
    sum += nu[static_cast<std::size_t>(l)] * v(l, i) * std::conj(v(l, j));
  return sum;
}

Complex mode_basis_coefficient(const ProjectedObservable& projected, const ComplexMatrix& u,
                               Index i, Index j) {
  detail::require(u.rows() == u.cols(), "basis matrix must be square");
  require_pair(projected, u.rows(), i, j);
  const ComplexVector image = projected.matrix() * u.col(i);
  return u.col(j).dot(image);
}

Complex direct_matrix_coefficient(const ProjectedObservable& projected, const HaarUnitary& v,
                                  Index i, Index j) {
  require_pair(projected, v.dim(), i, j);
  const ComplexMatrix& basis = projected.eigenvectors();
  const ComplexVector ui = basis * v.entries().col(i);
  const ComplexVector uj = basis * v.entries().col(j);
  return uj.dot(projected.matrix() * ui);
}

double recentered_diagonal(const ProjectedObservable& projected, const HaarUnitary& v,
                           Index j) {
  require_pair(projected, v.dim(), j, j);
  return quadratic_form(projected.recentered(), v, j);
}

double que_threshold(Index d, double c) {
  detail::require_domain(d >= 2, "threshold needs d >= 2, got " + std::to_string(d));
  detail::require_domain(c > 0.0, "threshold constant C must be positive");
  const auto n = static_cast<double>(d);
  return c * std::log(n) / n;
}

double DeviationRecord::exceed_frequency() const {
  return trial_count == 0 ? 0.0
                          : static_cast<double>(exceed_count) / static_cast<double>(trial_count);
}

double DeviationRecord::median_sup() const {
  if (sup_deviations.empty()) return 0.0;
  std::vector<double> sorted = sup_deviations;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = sorted.size() / 2;
  return sorted.size() % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

std::vector<double> sample_block_diagonals(const ProjectedObservable& projected, Rng& rng) {
  const HaarUnitary v = sample_haar_unitary(projected.dim(), rng);
  const Eigen::RowVectorXd values =
      as_vector(projected.eigs()).transpose() * v.entries().cwiseAbs2();
  return {values.data(), values.data() + values.size()};
}

DeviationRecord block_deviation_experiment(const ProjectedObservable& projected,
                                           std::size_t trials, double c, const Rng& rng,
                                           unsigned workers) {
  const Index d = projected.dim();
  detail::require(d >= 2, "deviation experiment needs d >= 2");
  detail::require(trials >= 1, "deviation experiment needs at least one trial");

  DeviationRecord record;
  record.block_index = projected.block().window.index;
  record.dim = d;
  record.symbol_avg = projected.symbol_average();
  record.second_moment = projected.second_moment();
  record.alpha = que_threshold(d, c);
  record.trial_count = trials;
  record.sup_deviations.assign(trials, 0.0);

  const auto eta = as_vector(projected.recentered());
  const auto nu = as_vector(projected.eigs());
  parallel_for(trials, workers, [&](std::size_t t) {
    Rng stream = rng.split(t);
    const HaarUnitary v = sample_haar_unitary(d, stream);
    const Eigen::MatrixXd weights = v.entries().cwiseAbs2();
    const Eigen::RowVectorXd deviations = eta.transpose() * weights;
    record.sup_deviations[t] = deviations.cwiseAbs().maxCoeff();
    if (t == 0) {
      const Eigen::RowVectorXd diag = nu.transpose() * weights;
      record.diagonals.assign(diag.data(), diag.data() + diag.size());
    }
  });

  record.exceed_count = static_cast<std::size_t>(
      std::count_if(record.sup_deviations.begin(), record.sup_deviations.end(),
                    [&](double s) { return s > record.alpha; }));
  const auto params = LargeDeviationParams::from_recentered(projected.recentered());
  record.predicted_bound =
      std::min(1.0, static_cast<double>(d) * large_deviation_bound(params, record.alpha));
  record.lln_remainder = lln_remainder(record.second_moment, d);
  return record;
}

std::vector<ErgodicAverageRecord> ergodic_average(std::span<const double> diagonals,
                                                  double symbol_avg,
                                                  std::span<const std::size_t> n_grid) {
  std::vector<ErgodicAverageRecord> out;
  out.reserve(n_grid.size());
  for (std::size_t n : n_grid) {
    detail::require(n >= 1, "ergodic average needs N >= 1");
    detail::require(n <= diagonals.size(),
                    "ergodic average needs " + std::to_string(n) + " basis functions, have " +
                        std::to_string(diagonals.size()));
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = diagonals[j] - symbol_avg;
      sum += dev * dev;
    }
    out.push_back({n, sum / static_cast<double>(n)});
  }
  return out;
}

std::vector<ErgodicAverageRecord> ergodic_average(std::span<const DeviationRecord> records,
                                                  std::span<const std::size_t> n_grid) {
  // Each record may carry its own a(0); store deviations and average against 0.
  std::vector<double> deviations;
  for (const auto& record : records)
    for (double value : record.diagonals) deviations.push_back(value - record.symbol_avg);
  return ergodic_average(deviations, 0.0, n_grid);
}

SummabilityResult summability_check(std::span<const DeviationRecord> records) {
  detail::require(records.size() >= 4, "summability check needs at least four blocks");
  SummabilityResult out;
  double running = 0.0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, n = 0.0;
  for (const auto& record : records) {
    running += record.predicted_bound;
    out.partial_sums.push_back(running);
    if (record.predicted_bound > 0.0) {
      const double x = std::log(static_cast<double>(record.dim));
      const double y = std::log(record.predicted_bound);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      n += 1.0;
    }
  }
  if (n < 2.0) {
    out.slope = -std::numeric_limits<double>::infinity();
    out.verdict = true;
    return out;
  }
  const double denom = n * sxx - sx * sx;
  out.slope = denom > 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  out.verdict = out.slope <= -2.0;
  return out;
}

}  // namespace randwave
