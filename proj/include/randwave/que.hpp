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

#include <cstddef>
#include <span>
#include <vector>

#include "randwave/randmat.hpp"
#include "randwave/rng.hpp"
#include "randwave/spectral.hpp"

namespace randwave {

/// sum_l nu_l V_{l,i} conj(V_{l,j}), with V expressed in the eigenbasis of
/// the projected observable.
Complex matrix_coefficient(const ProjectedObservable& projected,
                           const HaarUnitary& v, Index i, Index j);

/// <A u_i, u_j> in the mode basis, for an arbitrary unitary U whose columns
/// are the new basis vectors u_i written in the lattice modes f_m.
Complex mode_basis_coefficient(const ProjectedObservable& projected,
                               const ComplexMatrix& u, Index i, Index j);

/// Same quantity as matrix_coefficient, computed without the eigenvalues:
/// maps V to the mode basis through the eigenvectors (U = T V) and applies
/// the projected matrix directly.
Complex direct_matrix_coefficient(const ProjectedObservable& projected,
                                  const HaarUnitary& v, Index i, Index j);

/// sum_l eta_l |V_{l,j}|^2 = <A g_j, g_j> - a(0). Exact on the torus.
double recentered_diagonal(const ProjectedObservable& projected,
                           const HaarUnitary& v, Index j);

/// alpha = C log(d) / d; d >= 2.
double que_threshold(Index d, double c);

struct DeviationRecord {
  Index block_index = 0;
  Index dim = 0;
  double symbol_avg = 0.0;
  double second_moment = 0.0;
  double alpha = 0.0;
  std::size_t trial_count = 0;
  std::vector<double> sup_deviations;  // one per trial
  std::size_t exceed_count = 0;
  double predicted_bound = 0.0;  // min(1, d * large_deviation_bound)
  double lln_remainder = 0.0;
  std::vector<double> diagonals;  // <A g_j, g_j> for every column of trial 0

  double exceed_frequency() const;
  double median_sup() const;
};

/// Samples `trials` Haar bases of the block; trial t draws from rng.split(t).
DeviationRecord block_deviation_experiment(const ProjectedObservable& projected,
                                           std::size_t trials, double c,
                                           const Rng& rng,
                                           unsigned workers = 1);

/// <A g_j, g_j> for all columns of one Haar basis of the block (any d >= 1).
std::vector<double> sample_block_diagonals(const ProjectedObservable& projected,
                                           Rng& rng);

struct ErgodicAverageRecord {
  std::size_t n = 0;
  double cesaro_mean = 0.0;
};

/// (1/N) sum_{j <= N} |<A g_j, g_j> - a(0)|^2 over the basis functions of
/// the records taken in (block, column) order.
std::vector<ErgodicAverageRecord> ergodic_average(
    std::span<const DeviationRecord> records, std::span<const std::size_t> n_grid);

/// Same, from a flat sequence of diagonal coefficients.
std::vector<ErgodicAverageRecord> ergodic_average(
    std::span<const double> diagonals, double symbol_avg,
    std::span<const std::size_t> n_grid);

struct SummabilityResult {
  std::vector<double> partial_sums;
  double slope = 0.0;  // fitted log(bound) against log(d)
  bool verdict = false;
};

/// Partial sums of predicted_bound; verdict holds when the bounds decay at
/// least like d^-2 (fitted slope <= -2). Blocks with a zero bound count as
/// decaying; with fewer than two positive bounds the verdict is true.
/// Requires at least four records.
SummabilityResult summability_check(std::span<const DeviationRecord> records);

}  // namespace randwave
