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

#include "randwave/cli/config.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

namespace randwave::cli {
namespace {

using nlohmann::json;

const std::set<std::string, std::less<>> kKnownKeys = {
    "seed",         "n",           "window_width", "k_range",  "observable",
    "trials",       "C",           "workers",      "output_dir", "format",
    "haar_dims",    "haar_samples", "deltas",      "tail_dims", "tail_trials",
    "n_grid"};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path, message);
}

std::int64_t get_integer(const json& value, const std::string& path) {
  if (!value.is_number_integer()) fail(path, "expected an integer");
  return value.get<std::int64_t>();
}

std::int64_t get_positive(const json& value, const std::string& path) {
  const auto v = get_integer(value, path);
  if (v < 1) fail(path, "must be >= 1");
  return v;
}

double get_real(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  const double v = value.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

const json& get_array(const json& value, const std::string& path) {
  if (!value.is_array()) fail(path, "expected an array");
  return value;
}

template <typename T, typename Read>
std::vector<T> read_list(const json& value, const std::string& path, Read read) {
  std::vector<T> out;
  const json& array = get_array(value, path);
  if (array.empty()) fail(path, "must not be empty");
  for (std::size_t i = 0; i < array.size(); ++i)
    out.push_back(read(array[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<FourierTerm> read_observable(const json& value, int torus_dim) {
  const json& array = get_array(value, "observable");
  if (array.empty()) fail("observable", "must list at least one frequency");
  std::vector<FourierTerm> terms;
  std::set<Frequency> seen;
  for (std::size_t i = 0; i < array.size(); ++i) {
    const std::string path = "observable[" + std::to_string(i) + "]";
    const json& entry = array[i];
    if (!entry.is_array() || entry.size() != 3)
      fail(path, "expected [frequency_vector, re, im]");
    const json& q = get_array(entry[0], path + "[0]");
    if (q.size() != static_cast<std::size_t>(torus_dim))
      fail(path + "[0]", "frequency length must equal n = " + std::to_string(torus_dim));
    FourierTerm term;
    for (std::size_t c = 0; c < q.size(); ++c) {
      const auto v = get_integer(q[c], path + "[0][" + std::to_string(c) + "]");
      if (std::abs(v) > 1000000) fail(path + "[0]", "frequency component too large");
      term.frequency.push_back(static_cast<int>(v));
    }
    term.coefficient = {get_real(entry[1], path + "[1]"), get_real(entry[2], path + "[2]")};
    if (!seen.insert(term.frequency).second) fail(path, "duplicate frequency entry");
    terms.push_back(std::move(term));
  }
  try {
    (void)Observable(torus_dim, terms);
  } catch (const ValidationError& e) {
    fail("observable", e.what());
  }
  return terms;
}

}  // namespace

ConfigError::ConfigError(std::string key_path, const std::string& message)
    : ValidationError(key_path + ": " + message), key_path_(std::move(key_path)) {}

OutputFormat parse_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("format", "expected \"csv\" or \"json\", got \"" + std::string(name) + "\"");
}

std::string_view format_extension(OutputFormat format) {
  return format == OutputFormat::csv ? "csv" : "json";
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("$", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("$", "configuration must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!kKnownKeys.contains(key)) fail(key, "unknown key");

  RunConfig config;
  if (doc.contains("seed")) {
    const json& seed = doc["seed"];
    if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0))
      fail("seed", "expected a nonnegative 64-bit integer");
    config.seed = seed.get<std::uint64_t>();
  }

  if (!doc.contains("n")) fail("n", "required key missing");
  const auto n = get_integer(doc["n"], "n");
  if (n != 1 && n != 2) fail("n", "torus dimension must be 1 or 2");
  config.torus_dim = static_cast<int>(n);

  if (doc.contains("window_width")) {
    config.window_width = get_real(doc["window_width"], "window_width");
    if (config.window_width <= 0.0) fail("window_width", "must be positive");
  }

  if (!doc.contains("k_range")) fail("k_range", "required key missing");
  const json& range = get_array(doc["k_range"], "k_range");
  if (range.size() != 2) fail("k_range", "expected [k_min, k_max]");
  config.k_min = get_integer(range[0], "k_range[0]");
  config.k_max = get_integer(range[1], "k_range[1]");
  if (config.k_min < 0) fail("k_range", "block indices must be nonnegative");
  if (config.k_min > config.k_max) fail("k_range", "k_min exceeds k_max");

  if (!doc.contains("observable")) fail("observable", "required key missing");
  config.observable = read_observable(doc["observable"], config.torus_dim);

  if (doc.contains("trials"))
    config.trials = static_cast<std::size_t>(get_positive(doc["trials"], "trials"));
  if (doc.contains("C")) {
    config.c = get_real(doc["C"], "C");
    if (config.c <= 0.0) fail("C", "must be positive");
  }
  if (doc.contains("workers")) {
    const auto w = get_positive(doc["workers"], "workers");
    if (w > 1024) fail("workers", "at most 1024 workers");
    config.workers = static_cast<unsigned>(w);
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) fail("output_dir", "expected a string");
    config.output_dir = doc["output_dir"].get<std::string>();
    if (config.output_dir.empty()) fail("output_dir", "must not be empty");
  }
  if (doc.contains("format")) {
    if (!doc["format"].is_string()) fail("format", "expected a string");
    config.format = parse_format(doc["format"].get<std::string>());
  }

  const auto read_dim = [](const json& v, const std::string& path) -> Index {
    return get_positive(v, path);
  };
  if (doc.contains("haar_dims"))
    config.haar_dims = read_list<Index>(doc["haar_dims"], "haar_dims", read_dim);
  if (doc.contains("haar_samples"))
    config.haar_samples = static_cast<std::size_t>(get_positive(doc["haar_samples"], "haar_samples"));
  if (doc.contains("deltas"))
    config.deltas = read_list<double>(doc["deltas"], "deltas", [](const json& v, const std::string& p) {
      const double delta = get_real(v, p);
      if (delta <= 0.0 || delta >= 1.0) fail(p, "delta must lie in (0, 1)");
      return delta;
    });
  if (doc.contains("tail_dims"))
    config.tail_dims = read_list<Index>(doc["tail_dims"], "tail_dims", read_dim);
  if (doc.contains("tail_trials")) {
    config.tail_trials = static_cast<std::size_t>(get_positive(doc["tail_trials"], "tail_trials"));
    if (config.tail_trials < 100) fail("tail_trials", "must be >= 100");
  }
  if (doc.contains("n_grid"))
    config.n_grid = read_list<std::size_t>(doc["n_grid"], "n_grid", [](const json& v, const std::string& p) {
      return static_cast<std::size_t>(get_positive(v, p));
    });
  return config;
}

}  // namespace randwave::cli
