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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "randwave/cli/commands.hpp"
#include "randwave/cli/config.hpp"
#include "randwave/cli/table.hpp"

namespace randwave::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("randwave_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
  return out;
}

const char* kCosine = R"("n": 2, "observable": [[[1, 0], 0.5, 0.0], [[-1, 0], 0.5, 0.0]])";

RunConfig config_for(const std::string& body, const fs::path& out_dir) {
  RunConfig config = parse_config("{" + body + "}");
  config.output_dir = out_dir.string();
  return config;
}

int run(std::string_view name, const RunConfig& config, std::string* log_text = nullptr) {
  std::ostringstream out, log;
  const int status = run_subcommand(name, config, out, log);
  if (log_text) *log_text = log.str() + out.str();
  return status;
}

void expect_config_error(const std::string& text, const std::string& key) {
  try {
    parse_config(text);
    ADD_FAILURE() << "no error for " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(e.key_path().find(key), std::string::npos) << e.key_path();
    EXPECT_NE(std::string(e.what()).find(key), std::string::npos) << e.what();
  }
}

TEST(Config, MinimalDocumentUsesDefaults) {
  const RunConfig c = parse_config(std::string("{\"k_range\": [8, 16], ") + kCosine + "}");
  EXPECT_FALSE(c.seed.has_value());
  EXPECT_EQ(c.torus_dim, 2);
  EXPECT_EQ(c.window_width, 1.0);
  EXPECT_EQ(c.k_min, 8);
  EXPECT_EQ(c.k_max, 16);
  EXPECT_EQ(c.trials, 200u);
  EXPECT_EQ(c.c, 4.0);
  EXPECT_EQ(c.workers, 1u);
  EXPECT_EQ(c.output_dir, "out");
  EXPECT_EQ(c.format, OutputFormat::csv);
  ASSERT_EQ(c.observable.size(), 2u);
  EXPECT_EQ(c.make_observable().coefficient({1, 0}), Complex(0.5, 0.0));
}

TEST(Config, FullDocument) {
  const RunConfig c = parse_config(R"({
    "seed": 42, "n": 1, "window_width": 2.0, "k_range": [1, 3],
    "observable": [[[2], 0.0, -0.5]], "trials": 150, "C": 3.5, "workers": 2,
    "output_dir": "results", "format": "json", "n_grid": [1, 4]
  })");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.torus_dim, 1);
  EXPECT_EQ(c.window_width, 2.0);
  EXPECT_EQ(c.trials, 150u);
  EXPECT_EQ(c.c, 3.5);
  EXPECT_EQ(c.workers, 2u);
  EXPECT_EQ(c.format, OutputFormat::json);
  EXPECT_EQ(c.n_grid, (std::vector<std::size_t>{1, 4}));
  EXPECT_EQ(c.make_observable().coefficient({-2}), Complex(0.0, 0.5));
}

TEST(Config, ErrorsNameTheKey) {
  const std::string obs = kCosine;
  expect_config_error("{\"k_range\": [16, 8], " + obs + "}", "k_range");
  expect_config_error("{\"k_range\": [-1, 8], " + obs + "}", "k_range");
  expect_config_error("{" + obs + "}", "k_range");
  expect_config_error(R"({"n": 2, "k_range": [1, 2]})", "observable");
  expect_config_error(R"({"n": 2, "k_range": [1, 2], "observable": [[[1, 0], 0.5, 0.0], [[1, 0], 0.5, 0.0]]})",
                      "observable");
  expect_config_error(R"({"n": 2, "k_range": [1, 2], "observable": [[[1, 0, 0], 0.5, 0.0]]})", "observable");
  expect_config_error("{\"k_range\": [1, 2], \"bogus\": 1, " + obs + "}", "bogus");
  expect_config_error("{\"k_range\": [1, 2], \"trials\": 0, " + obs + "}", "trials");
  expect_config_error("{\"k_range\": [1, 2], \"C\": -2, " + obs + "}", "C");
  expect_config_error(R"({"n": 3, "k_range": [1, 2], "observable": [[[1, 0, 0], 0.5, 0.0]]})", "n");
  expect_config_error("{\"k_range\": [1, 2], \"format\": \"xml\", " + obs + "}", "format");
  EXPECT_THROW(parse_config("{not json"), ValidationError);
}

TEST(Seed, ResolutionOrder) {
  RunConfig c;
  c.seed = 5;
  EXPECT_EQ(resolve_seed(c, 9), 9u);
  EXPECT_EQ(resolve_seed(c, std::nullopt), 5u);
  c.seed.reset();
  ::setenv("QML_SEED", "123", 1);
  EXPECT_EQ(resolve_seed(c, std::nullopt), 123u);
  ::setenv("QML_SEED", "abc", 1);
  EXPECT_THROW(resolve_seed(c, std::nullopt), ConfigError);
  ::unsetenv("QML_SEED");
  EXPECT_THROW(resolve_seed(c, std::nullopt), ConfigError);
}

TEST(Table, CsvAndJson) {
  Table t{"demo", {"a", "b", "c", "d"}, {}};
  t.add_row({std::int64_t{3}, 0.1, std::string("x"), true});
  EXPECT_EQ(to_csv(t), "a,b,c,d\n3,0.10000000000000001,x,true\n");
  const auto j = nlohmann::json::parse(to_json(t));
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["a"], 3);
  EXPECT_EQ(j[0]["b"].get<double>(), 0.1);
  EXPECT_EQ(j[0]["d"], true);
  EXPECT_THROW(t.add_row({std::int64_t{1}}), ValidationError);
}

TEST(Commands, SpectrumOfFirstRing) {
  const fs::path dir = scratch("spectrum");
  RunConfig c = config_for(std::string("\"seed\": 1, \"k_range\": [1, 1], ") + kCosine, dir);
  ASSERT_EQ(run("spectrum", c), kExitOk);
  const auto rows = lines(slurp(dir / "blocks.csv"));
  ASSERT_EQ(rows.size(), 2u);
  const auto cells = split_csv(rows[1]);
  EXPECT_EQ(cells[0], "1");
  EXPECT_EQ(cells[1], "8");
  EXPECT_NEAR(std::stod(cells[5]), 2.0, 1e-12);  // M
  EXPECT_NEAR(std::stod(cells[6]), -1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(std::stod(cells[7]), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(lines(slurp(dir / "spectra.csv")).size(), 9u);
  EXPECT_TRUE(fs::exists(dir / "weyl.csv"));
}

TEST(Commands, QueOnConstantObservable) {
  const fs::path dir = scratch("que_const");
  RunConfig c = config_for(R"("seed": 2, "n": 2, "k_range": [3, 6], "trials": 20, "observable": [[[0, 0], 1.0, 0.0]])",
                           dir);
  ASSERT_EQ(run("que", c), kExitOk);
  const auto que = lines(slurp(dir / "que.csv"));
  ASSERT_EQ(que.size(), 5u);
  for (std::size_t i = 1; i < que.size(); ++i) {
    const auto cells = split_csv(que[i]);
    EXPECT_EQ(cells[4], "0");
    EXPECT_EQ(std::stod(cells[6]), 0.0);
  }
  for (const auto& row : lines(slurp(dir / "summability.csv")))
    if (row.rfind("k,", 0) != 0) EXPECT_EQ(split_csv(row).back(), "true");
  for (const auto& row : lines(slurp(dir / "ergodic.csv")))
    if (row.rfind("N,", 0) != 0) EXPECT_LE(std::abs(std::stod(split_csv(row)[1])), 1e-28);
}

TEST(Commands, QueOutputIsProbabilityValuedAndWorkerIndependent) {
  const fs::path one = scratch("que_w1");
  const fs::path four = scratch("que_w4");
  const std::string body = std::string("\"seed\": 7, \"k_range\": [2, 6], \"trials\": 100, ") + kCosine;
  RunConfig a = config_for(body, one);
  RunConfig b = config_for(body, four);
  b.workers = 4;
  ASSERT_EQ(run("que", a), kExitOk);
  ASSERT_EQ(run("que", b), kExitOk);
  for (const char* name : {"que.csv", "ergodic.csv", "summability.csv"})
    EXPECT_EQ(slurp(one / name), slurp(four / name)) << name;

  const auto que = lines(slurp(one / "que.csv"));
  EXPECT_EQ(que[0], "k,d,alpha,trials,exceed,median_sup,predicted_bound");
  for (std::size_t i = 1; i < que.size(); ++i) {
    const double bound = std::stod(split_csv(que[i])[6]);
    EXPECT_GE(bound, 0.0);
    EXPECT_LE(bound, 1.0);
  }
}

TEST(Commands, JsonFormatAndReport) {
  const fs::path dir = scratch("json");
  RunConfig c = config_for(std::string("\"seed\": 3, \"k_range\": [1, 4], \"format\": \"json\", ") + kCosine,
                           dir);
  ASSERT_EQ(run("spectrum", c), kExitOk);
  const auto blocks = nlohmann::json::parse(slurp(dir / "blocks.json"));
  ASSERT_EQ(blocks.size(), 4u);
  EXPECT_EQ(blocks[0]["d"], 8);
  std::string text;
  EXPECT_EQ(run("report", c, &text), kExitOk);
  EXPECT_NE(text.find("blocks"), std::string::npos);

  const fs::path empty = scratch("empty_report");
  RunConfig e = config_for(std::string("\"k_range\": [1, 4], ") + kCosine, empty);
  EXPECT_EQ(run("report", e), kExitValidation);
}

TEST(Commands, ConcentrationAndHaarTables) {
  const fs::path dir = scratch("tails");
  RunConfig c = config_for(std::string("\"seed\": 4, \"k_range\": [1, 1], \"deltas\": [0.2], "
                                       "\"tail_dims\": [50], \"tail_trials\": 2000, "
                                       "\"haar_dims\": [4], \"haar_samples\": 500, ") +
                               kCosine,
                           dir);
  ASSERT_EQ(run("concentration", c), kExitOk);
  ASSERT_EQ(run("haar-test", c), kExitOk);
  const auto tails = lines(slurp(dir / "tails.csv"));
  ASSERT_EQ(tails.size(), 2u);
  const auto cells = split_csv(tails[1]);
  const double exact = std::stod(cells[4]), opt = std::stod(cells[5]), quad = std::stod(cells[6]);
  EXPECT_LE(exact, opt);
  EXPECT_LE(opt, quad);
  const auto haar = split_csv(lines(slurp(dir / "haar.csv"))[1]);
  EXPECT_EQ(haar[0], "4");
  EXPECT_NEAR(std::stod(haar[4]), 0.25, 0.0);
}

TEST(Commands, ErrorsMapToExitCodes) {
  RunConfig c;
  c.output_dir = scratch("errors").string();
  EXPECT_EQ(run("spectrum", c), kExitValidation);  // no seed
  c.seed = 1;
  EXPECT_EQ(run("frobnicate", c), kExitValidation);
  c.observable = {{{1, 0}, 0.5}};
  c.k_min = 1;
  c.k_max = 1;
  c.tail_trials = 10;
  EXPECT_EQ(run("concentration", c), kExitValidation);
}

}  // namespace
}  // namespace randwave::cli
