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

#include "randwave/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "randwave/cli/table.hpp"
#include "randwave/concentration.hpp"
#include "randwave/parallel.hpp"
#include "randwave/que.hpp"
#include "randwave/randmat.hpp"
#include "randwave/spectral.hpp"

namespace randwave::cli {
namespace {

namespace fs = std::filesystem;

// Stream indices under the master seed, one per subcommand.
enum Purpose : std::uint64_t { kHaarStream = 1, kTailStream = 2, kQueStream = 4 };

std::int64_t as_int(Index v) { return static_cast<std::int64_t>(v); }
std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::vector<std::optional<ProjectedObservable>> project_blocks(const RunConfig& config,
                                                               std::ostream& log) {
  const Observable obs = config.make_observable();
  const auto count = static_cast<std::size_t>(config.k_max - config.k_min + 1);
  std::vector<SpectralBlock> blocks(count);
  for (std::size_t i = 0; i < count; ++i)
    blocks[i] = enumerate_block(
        SpectralWindow::unit(config.k_min + static_cast<Index>(i), config.window_width),
        config.torus_dim);

  std::vector<std::optional<ProjectedObservable>> projected(count);
  parallel_for(count, config.workers, [&](std::size_t i) {
    if (!blocks[i].empty()) projected[i].emplace(obs, blocks[i]);
  });
  for (std::size_t i = 0; i < count; ++i)
    if (blocks[i].empty())
      log << "skipping empty block k=" << blocks[i].window.index << "\n";
  return projected;
}

int run_haar_test(const RunConfig& config, std::ostream& log) {
  const Rng root = Rng(*config.seed).split(kHaarStream);
  Table table{"haar",
              {"d", "samples", "mean_abs2", "se_abs2", "expected_abs2", "mean_abs4", "se_abs4",
               "expected_abs4", "max_unitarity_residual"},
              {}};
  for (std::size_t g = 0; g < config.haar_dims.size(); ++g) {
    const Index d = config.haar_dims[g];
    const std::size_t n = config.haar_samples;
    const Rng dim_stream = root.split(g);
    std::vector<double> abs2(n), residual(n);
    parallel_for(n, config.workers, [&](std::size_t s) {
      Rng stream = dim_stream.split(s);
      const HaarUnitary u = sample_haar_unitary(d, stream);
      abs2[s] = std::norm(u(0, 0));
      residual[s] = u.unitarity_residual();
    });
    double m2 = 0.0, m4 = 0.0, m8 = 0.0;
    for (double v : abs2) {
      m2 += v;
      m4 += v * v;
      m8 += v * v * v * v;
    }
    const auto nn = static_cast<double>(n);
    m2 /= nn;
    m4 /= nn;
    m8 /= nn;
    const auto dd = static_cast<double>(d);
    const double se2 = std::sqrt(std::max(0.0, m4 - m2 * m2) / nn);
    const double se4 = std::sqrt(std::max(0.0, m8 - m4 * m4) / nn);
    table.add_row({as_int(d), as_int(n), m2, se2, 1.0 / dd, m4, se4, 2.0 / (dd * (dd + 1.0)),
                   *std::max_element(residual.begin(), residual.end())});
    log << "haar-test d=" << d << " done\n";
  }
  write_table(table, config.output_dir, config.format);
  return kExitOk;
}

int run_concentration(const RunConfig& config, std::ostream& log) {
  const Rng root = Rng(*config.seed).split(kTailStream);
  Table table{"tails", {"delta", "d", "empirical", "se", "exact", "opt_bound", "quad_bound"}, {}};
  std::uint64_t grid_index = 0;
  for (double delta : config.deltas) {
    for (Index d : config.tail_dims) {
      const TailBoundReport report = chernoff_upper_exponential_sum(delta, d);
      const auto sampler = [d](Rng& rng) {
        const auto e = sample_exponentials(d, rng);
        double sum = 0.0;
        for (double v : e) sum += v;
        return sum;
      };
      const MonteCarloEstimate mc =
          empirical_tail(sampler, (1.0 + delta) * static_cast<double>(d), config.tail_trials,
                         root.split(grid_index++), config.workers);
      table.add_row({delta, as_int(d), mc.estimate, mc.standard_error, *report.exact_tail,
                     report.bound_optimized, report.bound_quadratic});
      log << "concentration delta=" << delta << " d=" << d << " done\n";
    }
  }
  write_table(table, config.output_dir, config.format);
  return kExitOk;
}

int run_spectrum(const RunConfig& config, std::ostream& log) {
  const auto projected = project_blocks(config, log);
  Table blocks{"blocks", {"k", "d", "lambda_lo", "lambda_hi", "mean", "M", "nu_min", "nu_max"}, {}};
  Table spectra{"spectra", {"k", "index", "nu", "eta"}, {}};
  Table weyl{"weyl", {"lambda", "count", "leading_term", "ratio"}, {}};
  for (const auto& p : projected) {
    if (!p) continue;
    const auto& window = p->block().window;
    blocks.add_row({as_int(window.index), as_int(p->dim()), window.lower, window.upper,
                    p->mean(), p->second_moment(), p->eigs().front(), p->eigs().back()});
    for (std::size_t l = 0; l < p->eigs().size(); ++l)
      spectra.add_row({as_int(window.index), as_int(l), p->eigs()[l], p->recentered()[l]});
  }
  for (Index k = config.k_min; k <= config.k_max; ++k) {
    const double lambda = SpectralWindow::unit(k, config.window_width).upper;
    const WeylCount w = weyl_count(lambda, config.torus_dim);
    weyl.add_row({lambda, static_cast<std::int64_t>(w.count), w.leading_term,
                  static_cast<double>(w.count) / w.leading_term});
  }
  write_table(blocks, config.output_dir, config.format);
  write_table(spectra, config.output_dir, config.format);
  write_table(weyl, config.output_dir, config.format);
  log << "spectrum: " << blocks.rows.size() << " blocks\n";
  return kExitOk;
}

std::vector<std::size_t> default_grid(std::size_t total) {
  std::vector<std::size_t> grid;
  for (std::size_t n = 1; n < total; n *= 2) grid.push_back(n);
  if (total > 0) grid.push_back(total);
  return grid;
}

int run_que(const RunConfig& config, std::ostream& log) {
  const Rng root = Rng(*config.seed).split(kQueStream);
  const auto projected = project_blocks(config, log);

  Table que{"que", {"k", "d", "alpha", "trials", "exceed", "median_sup", "predicted_bound"}, {}};
  std::vector<DeviationRecord> records;
  std::vector<double> deviations;  // <A g_j, g_j> - a(0), in (k, column) order
  for (const auto& p : projected) {
    if (!p) continue;
    const Index k = p->block().window.index;
    const Rng block_stream = root.split(static_cast<std::uint64_t>(k));
    if (p->dim() < 2) {
      log << "block k=" << k << " has d=1; no deviation threshold, diagonal only\n";
      Rng stream = block_stream.split(0);
      for (double v : sample_block_diagonals(*p, stream)) deviations.push_back(v - p->symbol_average());
      continue;
    }
    DeviationRecord record =
        block_deviation_experiment(*p, config.trials, config.c, block_stream, config.workers);
    for (double v : record.diagonals) deviations.push_back(v - record.symbol_avg);
    que.add_row({as_int(record.block_index), as_int(record.dim), record.alpha,
                 as_int(record.trial_count), as_int(record.exceed_count), record.median_sup(),
                 record.predicted_bound});
    log << "que k=" << k << " d=" << record.dim << " exceed=" << record.exceed_count << "/"
        << record.trial_count << "\n";
    records.push_back(std::move(record));
  }

  const std::vector<std::size_t> grid =
      config.n_grid.empty() ? default_grid(deviations.size()) : config.n_grid;
  Table ergodic{"ergodic", {"N", "cesaro_mean"}, {}};
  for (const auto& e : ergodic_average(deviations, 0.0, grid))
    ergodic.add_row({as_int(e.n), e.cesaro_mean});

  Table summability{"summability",
                    {"k", "d", "predicted_bound", "partial_sum", "slope", "verdict"},
                    {}};
  if (records.size() >= 4) {
    const SummabilityResult result = summability_check(records);
    for (std::size_t i = 0; i < records.size(); ++i)
      summability.add_row({as_int(records[i].block_index), as_int(records[i].dim),
                           records[i].predicted_bound, result.partial_sums[i], result.slope,
                           result.verdict});
    log << "summability slope=" << result.slope << " verdict=" << (result.verdict ? "true" : "false")
        << "\n";
  } else {
    log << "summability check skipped: needs at least four blocks with d >= 2\n";
  }

  write_table(que, config.output_dir, config.format);
  write_table(ergodic, config.output_dir, config.format);
  write_table(summability, config.output_dir, config.format);
  return kExitOk;
}

// Reads a table written by write_table back as strings.
std::optional<std::pair<std::vector<std::string>, std::vector<std::vector<std::string>>>>
read_table(const fs::path& path, OutputFormat format) {
  std::ifstream file(path);
  if (!file) return std::nullopt;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  if (format == OutputFormat::csv) {
    const auto split = [](const std::string& line) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      return cells;
    };
    std::string line;
    if (std::getline(file, line)) header = split(line);
    while (std::getline(file, line))
      if (!line.empty()) rows.push_back(split(line));
  } else {
    const auto doc = nlohmann::ordered_json::parse(file);
    for (const auto& object : doc) {
      if (header.empty())
        for (const auto& [key, value] : object.items()) header.push_back(key);
      std::vector<std::string> row;
      for (const auto& [key, value] : object.items())
        row.push_back(value.is_number_float() ? format_double(value.get<double>()) : value.dump());
      rows.push_back(std::move(row));
    }
  }
  return std::make_pair(std::move(header), std::move(rows));
}

std::string shorten(const std::string& cell) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) return cell;
  if (cell.find_first_of(".eE") == std::string::npos) return cell;
  std::ostringstream out;
  out << std::setprecision(6) << value;
  return out.str();
}

int run_report(const RunConfig& config, std::ostream& out) {
  static const std::vector<std::pair<std::string, std::string>> kSections = {
      {"haar", "Haar unitary moments"},
      {"tails", "Exponential-sum tails (upper side)"},
      {"blocks", "Spectral blocks"},
      {"weyl", "Lattice counts against the Weyl term"},
      {"que", "Per-block deviation experiment"},
      {"summability", "Summability of predicted bounds"},
      {"ergodic", "Cesaro means"}};
  std::size_t found = 0;
  for (const auto& [stem, title] : kSections) {
    const auto path =
        fs::path(config.output_dir) / (stem + "." + std::string(format_extension(config.format)));
    const auto table = read_table(path, config.format);
    if (!table) continue;
    ++found;
    const auto& [header, rows] = *table;
    out << "== " << title << " (" << path.filename().string() << ", " << rows.size()
        << " rows) ==\n";
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
    std::vector<std::vector<std::string>> shown;
    for (const auto& row : rows) {
      std::vector<std::string> cells;
      for (std::size_t i = 0; i < row.size() && i < header.size(); ++i) {
        cells.push_back(shorten(row[i]));
        width[i] = std::max(width[i], cells.back().size());
      }
      shown.push_back(std::move(cells));
    }
    for (std::size_t i = 0; i < header.size(); ++i)
      out << std::setw(static_cast<int>(width[i]) + 2) << header[i];
    out << "\n";
    for (const auto& row : shown) {
      for (std::size_t i = 0; i < row.size(); ++i)
        out << std::setw(static_cast<int>(width[i]) + 2) << row[i];
      out << "\n";
    }
    out << "\n";
  }
  if (found == 0) {
    out << "no result files found in " << config.output_dir << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace

std::uint64_t resolve_seed(const RunConfig& config, const std::optional<std::uint64_t>& cli_seed) {
  if (cli_seed) return *cli_seed;
  if (config.seed) return *config.seed;
  if (const char* env = std::getenv("QML_SEED"); env != nullptr && *env != '\0') {
    std::uint64_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ConfigError("QML_SEED", "expected an unsigned 64-bit integer");
    return value;
  }
  throw ConfigError("seed", "no seed in --seed, the configuration, or QML_SEED");
}

int run_subcommand(std::string_view name, const RunConfig& config, std::ostream& out,
                   std::ostream& log) {
  try {
    if (name == "report") return run_report(config, out);
    if (!config.seed) throw ConfigError("seed", "seed must be resolved before running");
    if (name == "haar-test") return run_haar_test(config, log);
    if (name == "concentration") return run_concentration(config, log);
    if (name == "spectrum") return run_spectrum(config, log);
    if (name == "que") return run_que(config, log);
    log << "error: unknown subcommand " << name << "\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    log << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    log << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace randwave::cli
