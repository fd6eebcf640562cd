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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "randwave/error.hpp"
#include "randwave/spectral.hpp"

namespace randwave::cli {

enum class OutputFormat { csv, json };

/// Validation failure carrying the offending key path (e.g. "observable[2][0]").
class ConfigError : public ValidationError {
 public:
  ConfigError(std::string key_path, const std::string& message);
  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

struct RunConfig {
  std::optional<std::uint64_t> seed;
  int torus_dim = 2;
  double window_width = 1.0;
  Index k_min = 0;
  Index k_max = 0;
  std::vector<FourierTerm> observable;
  std::size_t trials = 200;
  double c = 4.0;
  unsigned workers = 1;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::csv;

  // Study grids for the haar-test, concentration and que subcommands.
  std::vector<Index> haar_dims{2, 8, 32};
  std::size_t haar_samples = 100000;
  std::vector<double> deltas{0.05, 0.1, 0.2};
  std::vector<Index> tail_dims{100, 500, 2000};
  std::size_t tail_trials = 100000;
  std::vector<std::size_t> n_grid;  // empty: doubling grid up to the basis count

  Observable make_observable() const { return Observable(torus_dim, observable); }
};

/// Parses and validates a JSON run configuration. Unknown keys are rejected.
RunConfig parse_config(std::string_view text);

OutputFormat parse_format(std::string_view name);
std::string_view format_extension(OutputFormat format);

}  // namespace randwave::cli
