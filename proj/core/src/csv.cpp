// Copyright 2026 The GPA Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>

#include "gpa/errors.hpp"
#include "gpa/experiments.hpp"

namespace gpa::experiments {

std::string format_number(double value) {
    if (value == 0.0) {
        value = 0.0; // drops the sign of -0
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", value);
    std::string out(buf);
    if (out == "-0") {
        out = "0";
    }
    return out;
}

std::string CsvTable::to_string() const {
    std::string out;
    auto put_row = [&](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += row[i];
        }
        out += '\n';
    };
    put_row(header);
    for (const auto &row : rows) {
        put_row(row);
    }
    return out;
}

CsvTable parse_csv(std::string_view text) {
    CsvTable table;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            cells.emplace_back(line.substr(start, comma - start));
            if (comma == std::string_view::npos) {
                break;
            }
            start = comma + 1;
        }
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw ArgumentError("csv line " + std::to_string(line_no) + " has " +
                                std::to_string(cells.size()) + " cells, header has " +
                                std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty()) {
        throw ArgumentError("csv input is empty");
    }
    return table;
}

} // namespace gpa::experiments
