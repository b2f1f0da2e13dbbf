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

#include "cilvr/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cilvr/errors.hpp"

namespace cilvr::io {

std::string format_double(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    return std::string(buf.data(), res.ptr);
}

namespace {

void append_field(std::string& out, std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
}

template <class Range>
std::string record(const Range& fields) {
    std::string out;
    bool first = true;
    for (const auto& f : fields) {
        if (!first) {
            out += ',';
        }
        first = false;
        append_field(out, f);
    }
    out += '\n';
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, std::size_t line) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        std::ostringstream os;
        os << "line " << line << ": cannot parse number '" << s << "'";
        throw ConfigError(os.str());
    }
    return v;
}

}  // namespace

std::string csv_record(const std::vector<std::string>& fields) { return record(fields); }

std::string csv_record(std::initializer_list<std::string_view> fields) { return record(fields); }

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ConfigError("cannot open " + tmp.string() + " for writing");
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw ConfigError("failed writing " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw ConfigError("cannot move output into place at " + path.string());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

calib::IVTermStructure parse_term_structure_csv(std::string_view text) {
    std::vector<calib::Pillar> pillars;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;
    while (std::getline(in, raw)) {
        ++line;
        const auto row = trim(raw);
        if (row.empty() || row[0] == '#') {
            continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("line " + std::to_string(line) + ": expected tenor_days,iv");
        }
        const auto a = trim(std::string_view(row).substr(0, comma));
        const auto b = trim(std::string_view(row).substr(comma + 1));
        if (!header_seen) {
            header_seen = true;
            if (a == "tenor_days" && b == "iv") {
                continue;
            }
            throw ConfigError("term structure CSV must start with header tenor_days,iv");
        }
        pillars.push_back({parse_number(a, line) / 365.0, parse_number(b, line)});
    }
    try {
        return calib::IVTermStructure(std::move(pillars));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid term structure: ") + e.what());
    }
}

calib::IVTermStructure parse_term_structure_json(std::string_view text) {
    std::vector<calib::Pillar> pillars;
    try {
        const auto doc = nlohmann::json::parse(text);
        for (const auto& p : doc.at("pillars")) {
            pillars.push_back({p.at("tenor_days").get<double>() / 365.0, p.at("iv").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed term structure JSON: ") + e.what());
    }
    try {
        return calib::IVTermStructure(std::move(pillars));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid term structure: ") + e.what());
    }
}

calib::IVTermStructure read_term_structure(const std::filesystem::path& path) {
    const auto text = read_file(path);
    if (path.extension() == ".json") {
        return parse_term_structure_json(text);
    }
    return parse_term_structure_csv(text);
}

std::string_view version() { return CILVR_VERSION; }

}  // namespace cilvr::io
