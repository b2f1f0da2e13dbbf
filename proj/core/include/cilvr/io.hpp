// Copyright 2026 The cilvr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cilvr/calibration.hpp"

namespace cilvr::io {

/// Shortest decimal string that parses back to the same double.
[[nodiscard]] std::string format_double(double x);

/// One RFC-4180 record terminated by LF. Fields holding a comma, quote or
/// line break are quoted.
[[nodiscard]] std::string csv_record(const std::vector<std::string>& fields);
[[nodiscard]] std::string csv_record(std::initializer_list<std::string_view> fields);

/// Writes to a sibling temporary file and renames it over path.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// CSV with header tenor_days,iv (tenor/365 years, iv as a decimal), or JSON
/// {"pillars": [{"tenor_days": .., "iv": ..}, ...]} when the extension is .json.
/// Throws ConfigError on malformed input.
[[nodiscard]] calib::IVTermStructure read_term_structure(const std::filesystem::path& path);
[[nodiscard]] calib::IVTermStructure parse_term_structure_csv(std::string_view text);
[[nodiscard]] calib::IVTermStructure parse_term_structure_json(std::string_view text);

/// Library version string.
[[nodiscard]] std::string_view version();

}  // namespace cilvr::io
