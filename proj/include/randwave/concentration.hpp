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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "randwave/randmat.hpp"
#include "randwave/rng.hpp"

namespace randwave {

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Tail bounds for a sum of d unit exponentials at relative deviation delta.
struct TailBoundReport {
  double delta = 0.0;
  Index dim = 0;
  double bound_quadratic = 1.0;  // closed form exp(-c delta^2 d)
  double bound_optimized = 1.0;  // exact minimum of the MGF bound over t
  std::optional<double> exact_tail;
  std::optional<MonteCarloEstimate> empirical;
};

enum class TailSide { upper, lower };

/// P(sum e_k > (1 + delta) d): quadratic exp(-(2/5) delta^2 d),
/// optimized exp(-d (delta - log(1 + delta))), exact Gamma(d, 1) tail.
TailBoundReport chernoff_upper_exponential_sum(double delta, Index d);

/// P(sum e_k < (1 - delta) d): quadratic exp(-delta^2 d / 2),
/// optimized exp(d (delta + log(1 - delta))), exact Gamma(d, 1) tail.
TailBoundReport chernoff_lower_exponential_sum(double delta, Index d);

/// Regularized lower incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double regularized_gamma_q(double a, double x);

/// Tail of a Gamma(d, 1) variable (the sum of d unit exponentials).
/// upper: P(S > threshold); lower: P(S < threshold).
double gamma_tail_exact(Index d, double threshold, TailSide side);

struct LlnDecomposition {
  double theta = 0.0;
  bool event = false;
};

/// Writes sum(e) = (1 + theta) d on the event (1 - delta) d < sum(e) < (1 + delta) d;
/// theta = 0 off the event.
LlnDecomposition lln_decompose(std::span<const double> exponentials,
                               double delta);

/// Recentered spectrum of a projected observable: sum(eta) = 0,
/// |eta_l| <= sup_bound, second_moment = sum(eta^2).
class LargeDeviationParams {
 public:
  /// Computes sup_bound = max|eta| and second_moment from eta.
  static LargeDeviationParams from_recentered(std::vector<double> eta);

  /// Validates a caller-supplied bound pair against eta.
  LargeDeviationParams(std::vector<double> eta, double sup_bound,
                       double second_moment);

  const std::vector<double>& recentered_eigs() const { return eta_; }
  Index dim() const { return static_cast<Index>(eta_.size()); }
  double sup_bound() const { return sup_bound_; }
  double second_moment() const { return second_moment_; }

 private:
  std::vector<double> eta_;
  double sup_bound_;
  double second_moment_;
};

/// Two-sided bound on P(|sum eta_l |U_{l,i}|^2| > alpha):
/// min(1, 2 exp(-t alpha d + M t^2)) with t = min(alpha d / (2M), 1 / (2D)).
/// The MGF step uses -log(1 - x) <= x + x^2 for |x| <= 1/2, which needs 2tD <= 1.
/// Returns 0 when M = 0.
double large_deviation_bound(const LargeDeviationParams& params, double alpha);

/// The M exp(-c d) remainder from the law-of-large-numbers event failing,
/// with c = 2/5. Reported alongside, never folded into, large_deviation_bound.
double lln_remainder(double second_moment, Index d);

/// sum_l eigs_l |U_{l,column}|^2
double quadratic_form(std::span<const double> eigs, const HaarUnitary& unitary,
                      Index column);

using StatisticSampler = std::function<double(Rng&)>;

/// Frequency of |statistic| > threshold over `trials` draws.
///
/// Trial t draws from rng.split(t), so the estimate is independent of the
/// worker count. Requires trials >= 100.
MonteCarloEstimate empirical_tail(const StatisticSampler& sampler,
                                  double threshold, std::size_t trials,
                                  const Rng& rng, unsigned workers = 1);

}  // namespace randwave
