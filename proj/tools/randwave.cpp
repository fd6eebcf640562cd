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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "randwave/cli/commands.hpp"
#include "randwave/cli/config.hpp"

namespace {

using namespace randwave::cli;

std::string read_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw ConfigError("--config", "cannot open " + path);
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random-wave quantum ergodicity laboratory on the flat torus"};
  std::string command;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> format;
  std::optional<unsigned> workers;

  app.add_option("command", command, "haar-test | concentration | spectrum | que | report")
      ->required()
      ->check(CLI::IsMember({"haar-test", "concentration", "spectrum", "que", "report"}));
  app.add_option("--config", config_path, "JSON run configuration")->required();
  app.add_option("--seed", seed, "master seed (overrides the configuration)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--workers", workers, "worker threads")->check(CLI::Range(1u, 1024u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitValidation;
  }

  RunConfig config;
  try {
    config = parse_config(read_file(config_path));
    if (out_dir) config.output_dir = *out_dir;
    if (format) config.format = parse_format(*format);
    if (workers) config.workers = *workers;
    if (command != "report") config.seed = resolve_seed(config, seed);
  } catch (const randwave::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
  return run_subcommand(command, config, std::cout, std::cerr);
}
