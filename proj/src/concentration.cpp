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

#include "randwave/concentration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "randwave/error.hpp"
#include "randwave/parallel.hpp"

namespace randwave {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 100000;

// Largest t for which 1 - t >= exp(-t - 5 t^2 / 8) holds on (0, t].
constexpr double kQuadraticUpperT = 0.25;

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

void require_delta(double delta) {
  detail::require_domain(delta > 0.0 && delta < 1.0,
                         "delta must lie in (0, 1), got " + std::to_string(delta));
}

// lgamma(a) - [(a - 1/2) log a - a + log(2 pi) / 2], for a >= 10.
double stirling_error(double a) {
  const double inv = 1.0 / a;
  const double inv2 = inv * inv;
  return inv *
         (1.0 / 12 -
          inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680 - inv2 / 1188))));
}

// log(1 + u) - u without cancellation near 0.
double log1p_minus(double u) {
  if (std::abs(u) > 0.01) return std::log1p(u) - u;
  double term = u;
  double sum = 0.0;
  for (int n = 2; n < 40; ++n) {
    term *= -u;
    const double add = term / n;
    sum += add;
    if (std::abs(add) < kEps * std::abs(sum)) break;
  }
  return sum;
}

// log(x^a e^-x / Gamma(a)), accurate for large a with x near a.
double log_gamma_prefactor(double a, double x) {
  if (a < 10.0) return a * std::log(x) - x - std::lgamma(a);
  return 0.5 * std::log(a / (2.0 * std::numbers::pi)) - stirling_error(a) +
         a * log1p_minus((x - a) / a);
}

// Power series for P(a, x); converges well for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(log_gamma_prefactor(a, x));
}

// Modified Lentz continued fraction for Q(a, x); x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return std::exp(log_gamma_prefactor(a, x)) * h;
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  detail::require_domain(a > 0.0, "incomplete gamma needs a > 0");
  detail::require_domain(x >= 0.0, "incomplete gamma needs x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return clamp_probability(gamma_p_series(a, x));
  return clamp_probability(1.0 - gamma_q_continued_fraction(a, x));
}

double regularized_gamma_q(double a, double x) {
  detail::require_domain(a > 0.0, "incomplete gamma needs a > 0");
  detail::require_domain(x >= 0.0, "incomplete gamma needs x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return clamp_probability(1.0 - gamma_p_series(a, x));
  return clamp_probability(gamma_q_continued_fraction(a, x));
}

double gamma_tail_exact(Index d, double threshold, TailSide side) {
  detail::require(d >= 1, "dimension must be >= 1");
  detail::require_domain(threshold > 0.0, "threshold must be positive");
  const auto a = static_cast<double>(d);
  return side == TailSide::upper ? regularized_gamma_q(a, threshold)
                                 : regularized_gamma_p(a, threshold);
}

TailBoundReport chernoff_upper_exponential_sum(double delta, Index d) {
  require_delta(delta);
  detail::require(d >= 1, "dimension must be >= 1");
  const auto n = static_cast<double>(d);

  // Minimize -t delta + (5/8) t^2 over 0 < t <= 1/4: t = 4 delta / 5 when
  // delta <= 5/16, giving exp(-(2/5) delta^2 d); otherwise the endpoint.
  const double t = std::min(0.8 * delta, kQuadraticUpperT);
  TailBoundReport report;
  report.delta = delta;
  report.dim = d;
  report.bound_quadratic = clamp_probability(std::exp(n * (-t * delta + 0.625 * t * t)));
  report.bound_optimized = clamp_probability(std::exp(-n * (delta - std::log1p(delta))));
  report.exact_tail = gamma_tail_exact(d, (1.0 + delta) * n, TailSide::upper);
  return report;
}

TailBoundReport chernoff_lower_exponential_sum(double delta, Index d) {
  require_delta(delta);
  detail::require(d >= 1, "dimension must be >= 1");
  const auto n = static_cast<double>(d);

  TailBoundReport report;
  report.delta = delta;
  report.dim = d;
  report.bound_quadratic = clamp_probability(std::exp(-0.5 * delta * delta * n));
  report.bound_optimized = clamp_probability(std::exp(n * (delta + std::log1p(-delta))));
  report.exact_tail = gamma_tail_exact(d, (1.0 - delta) * n, TailSide::lower);
  return report;
}

LlnDecomposition lln_decompose(std::span<const double> exponentials, double delta) {
  detail::require(!exponentials.empty(), "need at least one exponential");
  require_delta(delta);
  const auto n = static_cast<double>(exponentials.size());
  const double total = std::accumulate(exponentials.begin(), exponentials.end(), 0.0);
  LlnDecomposition out;
  out.event = (1.0 - delta) * n < total && total < (1.0 + delta) * n;
  if (out.event) out.theta = total / n - 1.0;
  return out;
}

LargeDeviationParams LargeDeviationParams::from_recentered(std::vector<double> eta) {
  double sup = 0.0;
  double m = 0.0;
  for (double v : eta) {
    sup = std::max(sup, std::abs(v));
    m += v * v;
  }
  return LargeDeviationParams(std::move(eta), sup, m);
}

LargeDeviationParams::LargeDeviationParams(std::vector<double> eta, double sup_bound,
                                           double second_moment)
    : eta_(std::move(eta)), sup_bound_(sup_bound), second_moment_(second_moment) {
  detail::require(!eta_.empty(), "recentered eigenvalues must be non-empty");
  double sum = 0.0;
  double max_abs = 0.0;
  double m = 0.0;
  for (double v : eta_) {
    sum += v;
    max_abs = std::max(max_abs, std::abs(v));
    m += v * v;
  }
  const auto d = static_cast<double>(eta_.size());
  detail::require(sup_bound_ >= max_abs, "sup bound D is below max |eta|");
  detail::require(std::abs(sum) <= 1e-10 * d * std::max(sup_bound_, max_abs),
                  "recentered eigenvalues do not sum to zero");
  detail::require(std::abs(second_moment_ - m) <= 1e-12 * std::max(m, 1e-300),
                  "second moment M does not match sum(eta^2)");
}

double large_deviation_bound(const LargeDeviationParams& params, double alpha) {
  detail::require_domain(alpha > 0.0, "alpha must be positive");
  const double m = params.second_moment();
  if (m == 0.0) return 0.0;
  const double ad = alpha * static_cast<double>(params.dim());
  const double t = std::min(ad / (2.0 * m), 1.0 / (2.0 * params.sup_bound()));
  return clamp_probability(2.0 * std::exp(-t * ad + m * t * t));
}

double lln_remainder(double second_moment, Index d) {
  return clamp_probability(second_moment * std::exp(-0.4 * static_cast<double>(d)));
}

double quadratic_form(std::span<const double> eigs, const HaarUnitary& unitary,
                      Index column) {
  detail::require(static_cast<Index>(eigs.size()) == unitary.dim(),
                  "eigenvalue count does not match the unitary dimension");
  detail::require(column >= 0 && column < unitary.dim(), "column index out of range");
  double sum = 0.0;
  for (Index l = 0; l < unitary.dim(); ++l)
    sum += eigs[static_cast<std::size_t>(l)] * std::norm(unitary(l, column));
  return sum;
}

MonteCarloEstimate empirical_tail(const StatisticSampler& sampler, double threshold,
                                  std::size_t trials, const Rng& rng,
                                  unsigned workers) {
  detail::require(trials >= 100, "empirical_tail needs at least 100 trials");
  std::vector<unsigned char> hit(trials, 0);
  parallel_for(trials, workers, [&](std::size_t t) {
    Rng stream = rng.split(t);
    hit[t] = std::abs(sampler(stream)) > threshold ? 1 : 0;
  });
  const auto count = static_cast<double>(std::count(hit.begin(), hit.end(), 1));
  const auto n = static_cast<double>(trials);
  MonteCarloEstimate out;
  out.trials = trials;
  out.estimate = count / n;
  out.standard_error = std::sqrt(out.estimate * (1.0 - out.estimate) / n);
  return out;
}

}  // namespace randwave
