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

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "randwave/cli/config.hpp"

namespace randwave::cli {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

/// A fixed-header data table written as CSV or a JSON array of objects.
struct Table {
  std::string name;  // file stem, e.g. "blocks"
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

/// Doubles use 17 significant digits.
std::string format_double(double value);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

/// Writes <dir>/<name>.<csv|json> and returns the path.
std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir,
                                  OutputFormat format);

}  // namespace randwave::cli
