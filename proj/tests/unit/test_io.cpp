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

#include <filesystem>
#include <limits>

#include <gtest/gtest.h>

#include "cilvr/errors.hpp"
#include "cilvr/io.hpp"

using namespace cilvr;

TEST(Io, ShortestRoundTrip) {
    EXPECT_EQ(io::format_double(0.1), "0.1");
    EXPECT_EQ(io::format_double(100.0), "100");
    EXPECT_EQ(io::format_double(1e-5), "1e-05");
    const double x = 0.1 + 0.2;
    EXPECT_EQ(std::stod(io::format_double(x)), x);
    EXPECT_EQ(io::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Io, CsvQuoting) {
    EXPECT_EQ(io::csv_record({"a", "b"}), "a,b\n");
    EXPECT_EQ(io::csv_record({"x,y", "say \"hi\""}), "\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST(Io, AtomicWriteReplacesFile) {
    const auto dir = std::filesystem::temp_directory_path() / "cilvr_io_test";
    std::filesystem::create_directories(dir);
    const auto p = dir / "f.txt";
    io::write_file_atomic(p, "one");
    io::write_file_atomic(p, "two");
    EXPECT_EQ(io::read_file(p), "two");
    EXPECT_FALSE(std::filesystem::exists(dir / "f.txt.tmp"));
    std::filesystem::remove_all(dir);
}

TEST(Io, TermStructureCsv) {
    const auto ts = io::parse_term_structure_csv("tenor_days,iv\n7,0.8\r\n\n# note\n365,0.6\n");
    ASSERT_EQ(ts.pillars().size(), 2u);
    EXPECT_DOUBLE_EQ(ts.pillars()[0].tenor, 7.0 / 365.0);
    EXPECT_DOUBLE_EQ(ts.pillars()[1].iv, 0.6);
    EXPECT_THROW((void)io::parse_term_structure_csv("days,vol\n7,0.8\n30,0.7\n"), ConfigError);
    EXPECT_THROW((void)io::parse_term_structure_csv("tenor_days,iv\n7,abc\n30,0.7\n"), ConfigError);
    EXPECT_THROW((void)io::parse_term_structure_csv("tenor_days,iv\n7,0.8\n"), ConfigError);
}

TEST(Io, TermStructureJson) {
    const auto ts = io::parse_term_structure_json(R"({"pillars":[{"tenor_days":7,"iv":0.8},{"tenor_days":30,"iv":0.7}]})");
    EXPECT_EQ(ts.pillars().size(), 2u);
    EXPECT_THROW((void)io::parse_term_structure_json("{\"pillars\": 3}"), ConfigError);
    EXPECT_THROW((void)io::parse_term_structure_json("not json"), ConfigError);
}
