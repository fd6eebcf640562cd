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
#include <optional>
#include <iosfwd>
#include <string_view>

#include "randwave/cli/config.hpp"

namespace randwave::cli {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitInternal = 2 };

/// Runs one of haar-test, concentration, spectrum, que, report.
/// Data files go to config.output_dir; progress lines go to `log`,
/// the report subcommand prints its summary to `out`.
int run_subcommand(std::string_view name, const RunConfig& config, std::ostream& out,
                   std::ostream& log);

/// Resolves the seed: explicit override, then the config, then $QML_SEED.
std::uint64_t resolve_seed(const RunConfig& config, const std::optional<std::uint64_t>& cli_seed);

}  // namespace randwave::cli
