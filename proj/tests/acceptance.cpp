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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "randwave/cli/commands.hpp"
#include "randwave/cli/config.hpp"
#include "randwave/concentration.hpp"
#include "randwave/ks.hpp"
#include "randwave/que.hpp"
#include "randwave/randmat.hpp"
#include "randwave/rng.hpp"
#include "randwave/spectral.hpp"

namespace rw = randwave;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260501;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

struct Moments {
  double sum = 0.0, sum_sq = 0.0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++n;
  }
  double mean() const { return sum / static_cast<double>(n); }
  double se() const {
    const double m = mean();
    const double var = (sum_sq / static_cast<double>(n) - m * m) * n / (n - 1.0);
    return std::sqrt(std::max(var, 0.0) / static_cast<double>(n));
  }
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

rw::ProjectedObservable cosine_block(rw::Index k) {
  return rw::ProjectedObservable(rw::Observable::cosine(2),
                                 rw::enumerate_block(rw::SpectralWindow::unit(k), 2));
}

Outcome haar_moments() {
  Outcome o;
  const rw::Rng root = rw::Rng(kSeed).split(1);
  for (rw::Index d : {2, 8, 32}) {
    Moments m2, m4;
    double residual = 0.0;
    rw::Rng rng = root.split(static_cast<std::uint64_t>(d));
    for (int s = 0; s < 100000; ++s) {
      const rw::HaarUnitary u = rw::sample_haar_unitary(d, rng);
      const double a2 = std::norm(u(0, 0));
      m2.add(a2);
      m4.add(a2 * a2);
      residual = std::max(residual, u.unitarity_residual());
    }
    const double dd = static_cast<double>(d);
    const double e2 = 1.0 / dd, e4 = 2.0 / (dd * (dd + 1.0));
    o.check(std::abs(m2.mean() - e2) <= 4.0 * m2.se(), fmt("d=%ld E|U|^2=%.6g", long(d), m2.mean()));
    o.check(std::abs(m4.mean() - e4) <= 4.0 * m4.se(), fmt("d=%ld E|U|^4=%.6g", long(d), m4.mean()));
    o.check(residual <= 1e-12, fmt("d=%ld residual=%.3g", long(d), residual));
  }
  if (o.pass) o.detail = "moments within 4 SE, residual <= 1e-12";
  return o;
}

Outcome sphere_law() {
  Outcome o;
  rw::Rng gauss = rw::Rng(kSeed).split(2);
  rw::Rng decomp = rw::Rng(kSeed).split(3);
  std::vector<double> a, b;
  for (int s = 0; s < 10000; ++s) {
    a.push_back(std::norm(rw::sample_sphere_vector(16, gauss)(0)));
    b.push_back(std::norm(rw::sample_sphere_decomposition(16, decomp).vector(0)));
  }
  const rw::KsResult ks = rw::ks_two_sample(a, b);
  o.check(ks.p_value >= 1e-3, "rejected");
  o.detail = fmt("KS D=%.4f p=%.4f", ks.statistic, ks.p_value) + (o.pass ? "" : " " + o.detail);
  return o;
}

Outcome exponential_concentration() {
  Outcome o;
  const rw::Rng root = rw::Rng(kSeed).split(4);
  const double spot = rw::gamma_tail_exact(100, 110.0, rw::TailSide::upper);
  o.check(std::abs(spot - 0.15827867006008709) <= 1e-12, fmt("Q(100,110)=%.12g", spot));
  constexpr std::size_t trials = 100000;
  for (rw::Index d : {100, 500, 2000}) {
    const rw::Rng stream = root.split(static_cast<std::uint64_t>(d));
    std::vector<double> sums(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      rw::Rng rng = stream.split(t);
      double s = 0.0;
      for (double e : rw::sample_exponentials(d, rng)) s += e;
      sums[t] = s;
    }
    for (double delta : {0.05, 0.1, 0.2}) {
      const double dd = static_cast<double>(d);
      const double threshold = (1.0 + delta) * dd;
      const auto hits = std::count_if(sums.begin(), sums.end(), [&](double s) { return s > threshold; });
      const double emp = static_cast<double>(hits) / trials;
      const rw::TailBoundReport r = rw::chernoff_upper_exponential_sum(delta, d);
      const double exact = r.exact_tail.value();
      // Binomial standard error, floored at its value under the exact tail so
      // that zero-hit cells keep a meaningful tolerance.
      const double se = std::sqrt(std::max(emp * (1 - emp), exact * (1 - exact)) / trials);
      const std::string at = fmt("delta=%.2f d=%ld", delta, long(d));
      o.check(emp <= exact + 4 * se, at + " empirical above exact+4SE");
      o.check(exact <= r.bound_optimized, at + " exact above optimized");
      o.check(r.bound_optimized <= r.bound_quadratic, at + " optimized above quadratic");
      o.check(std::abs(emp - exact) <= 4 * se, at + " empirical off oracle");
    }
  }
  if (o.pass) o.detail = fmt("9 grid points ordered; Q(100,110)=%.9f", spot);
  return o;
}

rw::Observable random_observable(rw::Rng& rng) {
  std::vector<rw::FourierTerm> terms;
  terms.push_back({{0, 0}, rng.normal()});
  for (int q1 = 0; q1 <= 2; ++q1)
    for (int q2 = -2; q2 <= 2; ++q2) {
      if (q1 == 0 && q2 <= 0) continue;
      if (rng.uniform_open() < 0.5) terms.push_back({{q1, q2}, rng.complex_normal()});
    }
  return rw::Observable(2, terms);
}

Outcome combinatorial_reduction() {
  Outcome o;
  rw::Rng rng = rw::Rng(kSeed).split(5);
  double worst = 0.0, worst_imag = 0.0;
  int instances = 0;
  while (instances < 100) {
    const auto k = static_cast<rw::Index>(rng() % 8);
    const rw::SpectralBlock block = rw::enumerate_block(rw::SpectralWindow::unit(k), 2);
    if (block.dim() > 50) continue;
    const rw::ProjectedObservable p(random_observable(rng), block);
    const rw::HaarUnitary v = rw::sample_haar_unitary(p.dim(), rng);
    for (rw::Index i = 0; i < p.dim(); ++i) {
      worst_imag = std::max(worst_imag, std::abs(rw::matrix_coefficient(p, v, i, i).imag()));
      for (rw::Index j = 0; j < p.dim(); ++j)
        worst = std::max(worst, std::abs(rw::matrix_coefficient(p, v, i, j) -
                                         rw::direct_matrix_coefficient(p, v, i, j)));
    }
    ++instances;
  }
  o.check(worst <= 1e-10 && worst_imag <= 1e-12, "tolerance exceeded");
  o.detail = fmt("max diff=%.3g max diag imag=%.3g", worst, worst_imag) + (o.pass ? "" : " " + o.detail);
  return o;
}

Outcome local_weyl() {
  Outcome o;
  const rw::Observable a = rw::Observable::cosine(2);
  double worst = 0.0;
  for (rw::Index k = 0; k <= 64; ++k) {
    const rw::SpectralBlock block = rw::enumerate_block(rw::SpectralWindow::unit(k), 2);
    if (block.empty()) continue;
    const rw::ComplexMatrix m = rw::observable_matrix(a, block);
    worst = std::max(worst, std::abs(m.trace().real() / static_cast<double>(block.dim())));
  }
  o.check(worst <= 1e-12, fmt("trace/d=%.3g", worst));
  double ratio = 0.0;
  for (double lambda : {50.0, 100.0, 200.0})
    ratio = std::max(ratio, std::abs(rw::weyl_count(lambda, 2).relative_error));
  o.check(ratio <= 0.01, fmt("Gauss ratio=%.3g", ratio));
  if (o.pass) o.detail = fmt("max |trace/d|=%.3g, max Gauss-circle error=%.4g", worst, ratio);
  return o;
}

struct QueStudy {
  std::vector<std::vector<rw::DeviationRecord>> per_seed;  // [seed][block]
};

QueStudy run_que_study() {
  QueStudy study;
  std::vector<rw::ProjectedObservable> blocks;
  for (rw::Index k : {8, 16, 32, 64}) blocks.push_back(cosine_block(k));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const rw::Rng root = rw::Rng(kSeed + s).split(6);
    std::vector<rw::DeviationRecord> records;
    for (const auto& p : blocks)
      records.push_back(rw::block_deviation_experiment(
          p, 200, 4.0, root.split(static_cast<std::uint64_t>(p.block().window.index))));
    study.per_seed.push_back(std::move(records));
  }
  return study;
}

Outcome large_deviation_domination(const QueStudy& study) {
  Outcome o;
  std::string summary;
  for (const auto& r : study.per_seed.front()) {
    const double f = r.exceed_frequency();
    const double se = std::sqrt(f * (1 - f) / static_cast<double>(r.trial_count));
    o.check(f <= r.predicted_bound + 4 * se, fmt("k=%ld freq=%.3f bound=%.3g", long(r.block_index), f,
                                                 r.predicted_bound));
    summary += fmt("%sk=%ld d=%ld freq=%.3f bound=%.3g", summary.empty() ? "" : ", ",
                   long(r.block_index), long(r.dim), f, r.predicted_bound);
  }
  o.detail = summary + (o.pass ? "" : " | " + o.detail);
  return o;
}

Outcome que_trend(const QueStudy& study) {
  Outcome o;
  int decreasing = 0;
  for (const auto& records : study.per_seed) {
    bool ok = true;
    for (std::size_t i = 0; i + 1 < records.size(); ++i)
      ok = ok && records[i + 1].median_sup() < records[i].median_sup();
    decreasing += ok;
  }
  const std::size_t seeds = study.per_seed.size();
  o.check(decreasing * 10 >= static_cast<int>(seeds) * 9, "median trend");
  const rw::SummabilityResult sum = rw::summability_check(study.per_seed.front());
  o.check(sum.verdict, fmt("summability slope=%.3f > -2", sum.slope));
  o.detail = fmt("median decreasing in %d/%zu seeds; summability slope=%.3f verdict=%s", decreasing,
                 seeds, sum.slope, sum.verdict ? "true" : "false");
  return o;
}

Outcome ergodicity_trend() {
  Outcome o;
  const rw::Observable a = rw::Observable::cosine(2);
  std::vector<rw::ProjectedObservable> blocks;
  std::size_t total = 0;
  for (rw::Index k = 0; total < 2000; ++k) {
    blocks.emplace_back(a, rw::enumerate_block(rw::SpectralWindow::unit(k), 2));
    total += static_cast<std::size_t>(blocks.back().dim());
  }
  const std::vector<std::size_t> grid{200, 2000};
  int below = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const rw::Rng root = rw::Rng(kSeed + s).split(7);
    std::vector<double> diagonals;
    for (const auto& p : blocks) {
      rw::Rng rng = root.split(static_cast<std::uint64_t>(p.block().window.index));
      for (double g : rw::sample_block_diagonals(p, rng)) diagonals.push_back(g);
    }
    const auto avg = rw::ergodic_average(diagonals, rw::symbol_average(a), grid);
    below += avg[1].cesaro_mean < avg[0].cesaro_mean;
  }
  o.check(below * 100 >= 95 * 50, "trend");
  o.detail = fmt("Cesaro mean at N=2000 below N=200 in %d/50 repetitions", below);
  return o;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  Outcome o;
  const fs::path base = fs::temp_directory_path() / "randwave_acceptance_determinism";
  fs::remove_all(base);
  rw::cli::RunConfig config = rw::cli::parse_config(R"({
    "seed": 99, "n": 2, "k_range": [2, 9], "trials": 60,
    "observable": [[[1, 0], 0.5, 0.0], [[0, 1], 0.0, 0.25]],
    "haar_dims": [3, 9], "haar_samples": 3000,
    "deltas": [0.1], "tail_dims": [40, 90], "tail_trials": 3000
  })");
  int files = 0;
  for (const char* command : {"haar-test", "concentration", "spectrum", "que"}) {
    std::vector<fs::path> dirs;
    for (unsigned workers : {1u, 4u}) {
      config.workers = workers;
      config.output_dir = (base / (std::string(command) + "_w" + std::to_string(workers))).string();
      std::ostringstream out, log;
      o.check(rw::cli::run_subcommand(command, config, out, log) == rw::cli::kExitOk,
              std::string(command) + " failed");
      dirs.emplace_back(config.output_dir);
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++files;
      o.check(slurp(entry.path()) == slurp(dirs[1] / entry.path().filename()),
              entry.path().filename().string() + " differs");
    }
  }
  fs::remove_all(base);
  o.detail = fmt("%d data files compared across workers 1 and 4", files) + (o.pass ? "" : ": " + o.detail);
  return o;
}

template <typename F>
bool report(int id, const char* name, F&& run) {
  const auto start = std::chrono::steady_clock::now();
  const Outcome o = run();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] criterion %d %-28s %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), secs);
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main() {
  int failures = 0;
  failures += !report(1, "haar moments", haar_moments);
  failures += !report(2, "sphere decomposition law", sphere_law);
  failures += !report(3, "exponential-sum tails", exponential_concentration);
  failures += !report(4, "combinatorial reduction", combinatorial_reduction);
  failures += !report(5, "torus local Weyl identity", local_weyl);
  QueStudy study;
  const auto start = std::chrono::steady_clock::now();
  study = run_que_study();
  std::printf("(deviation study: %.1f s)\n",
              std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  failures += !report(6, "large-deviation domination", [&] { return large_deviation_domination(study); });
  failures += !report(7, "que trend", [&] { return que_trend(study); });
  failures += !report(8, "ergodicity trend", ergodicity_trend);
  failures += !report(9, "determinism", determinism);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
