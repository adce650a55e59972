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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gpa/errors.hpp"
#include "gpa/experiments.hpp"

namespace gpa::experiments {

namespace {

constexpr std::array<std::string_view, 6> kPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape_xml(std::string_view s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += ch;
        }
    }
    return out;
}

std::string fixed2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
    return buf;
}

double parse_cell(const std::string &cell, std::size_t row, std::size_t col) {
    double v = 0.0;
    const char *first = cell.data();
    const char *last = cell.data() + cell.size();
    if (first != last && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (cell.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw ArgumentError("csv row " + std::to_string(row + 1) + " column " +
                            std::to_string(col + 1) + " is not a number: '" + cell +
                            "'");
    }
    return v;
}

std::pair<double, double> padded_range(double lo, double hi) {
    if (hi - lo < 1e-12) {
        return {lo - 0.5, hi + 0.5};
    }
    return {lo, hi};
}

} // namespace

std::string emit_plot(std::string_view csv_text, const PlotStyle &style) {
    const CsvTable table = parse_csv(csv_text);
    if (table.header.size() < 2) {
        throw ArgumentError("a chart needs at least two csv columns");
    }
    if (table.rows.empty()) {
        throw ArgumentError("csv has no data rows");
    }
    if (style.width < 200 || style.height < 150) {
        throw ArgumentError("chart is too small");
    }
    const std::size_t cols = table.header.size();
    std::vector<std::vector<double>> data(cols);
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            data[c].push_back(parse_cell(table.rows[r][c], r, c));
        }
    }
    const auto [x_lo, x_hi] = padded_range(
        *std::min_element(data[0].begin(), data[0].end()),
        *std::max_element(data[0].begin(), data[0].end()));
    double y_min = data[1][0];
    double y_max = data[1][0];
    for (std::size_t c = 1; c < cols; ++c) {
        y_min = std::min(y_min, *std::min_element(data[c].begin(), data[c].end()));
        y_max = std::max(y_max, *std::max_element(data[c].begin(), data[c].end()));
    }
    const auto [y_lo, y_hi] = padded_range(y_min, y_max);

    const double left = 70.0;
    const double right = 20.0;
    const double top = 40.0;
    const double bottom = 50.0;
    const double pw = style.width - left - right;
    const double ph = style.height - top - bottom;
    auto sx = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * pw; };
    auto sy = [&](double y) { return top + ph - (y - y_lo) / (y_hi - y_lo) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width
        << "\" height=\"" << style.height << "\" viewBox=\"0 0 " << style.width << ' '
        << style.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!style.title.empty()) {
        svg << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\"24\" "
            << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
            << escape_xml(style.title) << "</text>\n";
    }
    svg << "<g stroke=\"#333\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top + ph) << "\" x2=\""
        << fixed2(left + pw) << "\" y2=\"" << fixed2(top + ph) << "\"/>\n";
    svg << "<line x1=\"" << fixed2(left) << "\" y1=\"" << fixed2(top) << "\" x2=\""
        << fixed2(left) << "\" y2=\"" << fixed2(top + ph) << "\"/>\n";
    svg << "</g>\n";

    constexpr int kTicks = 5;
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / kTicks;
        const double yv = y_lo + (y_hi - y_lo) * i / kTicks;
        svg << "<text x=\"" << fixed2(sx(xv)) << "\" y=\"" << fixed2(top + ph + 16)
            << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
        svg << "<text x=\"" << fixed2(left - 6) << "\" y=\"" << fixed2(sy(yv) + 4)
            << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
    }
    svg << "</g>\n";

    const std::string y_label = cols == 2 ? table.header[1] : "value";
    svg << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\""
        << fixed2(static_cast<double>(style.height) - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_xml(table.header[0]) << "</text>\n";
    svg << "<text x=\"16\" y=\"" << fixed2(top + ph / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << fixed2(top + ph / 2) << ")\">"
        << escape_xml(y_label) << "</text>\n";

    for (std::size_t c = 1; c < cols; ++c) {
        svg << "<polyline fill=\"none\" stroke=\"" << kPalette[(c - 1) % kPalette.size()]
            << "\" stroke-width=\"2\" points=\"";
        for (std::size_t r = 0; r < data[0].size(); ++r) {
            if (r > 0) {
                svg << ' ';
            }
            svg << fixed2(sx(data[0][r])) << ',' << fixed2(sy(data[c][r]));
        }
        svg << "\"/>\n";
    }

    if (cols > 2) {
        const double lx = left + pw - 150;
        svg << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
        for (std::size_t c = 1; c < cols; ++c) {
            const double ly = top + 10 + 18.0 * static_cast<double>(c - 1);
            svg << "<line x1=\"" << fixed2(lx) << "\" y1=\"" << fixed2(ly) << "\" x2=\""
                << fixed2(lx + 24) << "\" y2=\"" << fixed2(ly) << "\" stroke=\""
                << kPalette[(c - 1) % kPalette.size()] << "\" stroke-width=\"2\"/>\n";
            svg << "<text x=\"" << fixed2(lx + 30) << "\" y=\"" << fixed2(ly + 4) << "\">"
                << escape_xml(table.header[c]) << "</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void emit_plot_file(const std::string &csv_path, const std::string &svg_path,
                    const PlotStyle &style) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot read " + csv_path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string svg = emit_plot(buf.str(), style);
    write_file_atomic(svg_path, svg);
}

} // namespace gpa::experiments
