// Copyright 2026 The su11-parity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Table output: CSV with one header row and trailing `# key=value` summary
// lines, or a JSON document with the same fields. Numbers use the shortest
// decimal form that reads back to the same double.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <variant>
#include <vector>

#include "json.hpp"

namespace su11::cli {

inline std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    if (x == 0.0) {
        x = 0.0;  // drop the sign of negative zero
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

/// A table cell: a number, text, or empty.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> summary;
};

namespace detail {

inline std::string cell_text(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        return format_number(*d);
    }
    if (const auto* s = std::get_if<std::string>(&c)) {
        return *s;
    }
    return {};
}

inline nlohmann::json cell_json(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) {
            return format_number(*d);
        }
        // integral values print without a fraction, as in the CSV
        if (std::trunc(*d) == *d && std::abs(*d) < 9007199254740992.0) {
            return static_cast<long long>(*d);
        }
        return *d;
    }
    if (const auto* s = std::get_if<std::string>(&c)) {
        return *s;
    }
    return nullptr;
}

inline std::string join_line(const std::vector<std::string>& parts) {
    std::string line;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) {
            line += ',';
        }
        line += parts[i];
    }
    return line;
}

}  // namespace detail

inline std::string to_csv(const Table& t) {
    std::string out = detail::join_line(t.columns) + "\n";
    for (const auto& row : t.rows) {
        std::vector<std::string> parts;
        parts.reserve(row.size());
        for (const Cell& c : row) {
            parts.push_back(detail::cell_text(c));
        }
        out += detail::join_line(parts) + "\n";
    }
    for (const auto& [key, value] : t.summary) {
        out += "# " + key + "=" + detail::cell_text(value) + "\n";
    }
    return out;
}

/// {"command", "columns", "rows": [{column: value}], "summary": {key: value}}.
/// Non-finite numbers are written as the strings "inf", "-inf", "nan".
inline std::string to_json(const std::string& command, const Table& t) {
    nlohmann::ordered_json doc;
    doc["command"] = command;
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) {
            r[t.columns[i]] = detail::cell_json(row[i]);
        }
        doc["rows"].push_back(std::move(r));
    }
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto& [key, value] : t.summary) {
        summary[key] = detail::cell_json(value);
    }
    doc["summary"] = std::move(summary);
    return doc.dump(2) + "\n";
}

namespace detail {

inline Cell parse_cell(const std::string& text) {
    if (text.empty()) {
        return std::monostate{};
    }
    if (text == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    if (text == "-inf") {
        return -std::numeric_limits<double>::infinity();
    }
    if (text == "nan") {
        return std::numeric_limits<double>::quiet_NaN();
    }
    double x = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    if (res.ec == std::errc{} && res.ptr == text.data() + text.size()) {
        return x;
    }
    return text;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t end = line.find(sep, begin);
        parts.push_back(line.substr(begin, end == std::string::npos ? std::string::npos : end - begin));
        if (end == std::string::npos) {
            return parts;
        }
        begin = end + 1;
    }
}

}  // namespace detail

/// Parses CSV written by to_csv, reading every numeric cell back as a double.
inline Table read_csv(std::istream& in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("empty CSV");
    }
    t.columns = detail::split(line, ',');
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw std::runtime_error("malformed summary line: " + line);
            }
            t.summary.emplace_back(line.substr(2, eq - 2), detail::parse_cell(line.substr(eq + 1)));
            continue;
        }
        std::vector<Cell> row;
        for (const std::string& part : detail::split(line, ',')) {
            row.push_back(detail::parse_cell(part));
        }
        if (row.size() != t.columns.size()) {
            throw std::runtime_error("CSV row width differs from the header");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace su11::cli
