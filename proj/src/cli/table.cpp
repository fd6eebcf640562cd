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

#include "randwave/cli/table.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "randwave/error.hpp"

namespace randwave::cli {

void Table::add_row(std::vector<Cell> row) {
  detail::require(row.size() == header.size(), "row width does not match header of " + name);
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

namespace {

struct CsvCell {
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_double(v); }
  std::string operator()(const std::string& v) const { return v; }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
};

}  // namespace

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << std::visit(CsvCell{}, row[i]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json object;
    for (std::size_t i = 0; i < row.size(); ++i)
      std::visit([&](const auto& v) { object[table.header[i]] = v; }, row[i]);
    array.push_back(std::move(object));
  }
  return array.dump(2) + "\n";
}

std::filesystem::path write_table(const Table& table, const std::filesystem::path& dir,
                                  OutputFormat format) {
  std::filesystem::create_directories(dir);
  const auto path = dir / (table.name + "." + std::string(format_extension(format)));
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << (format == OutputFormat::csv ? to_csv(table) : to_json(table));
  return path;
}

}  // namespace randwave::cli
