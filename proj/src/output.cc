// Copyright 2026 The rmtoolbox Authors
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

#include "rmt/output.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rmt/errors.h"

namespace rmt {

namespace {

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", x);
    return buf;
}

std::vector<std::string> split_csv(const std::string &line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string xml_escape(const std::string &s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

// Round step of roughly range/5 from {1, 2, 5} x 10^k.
double nice_step(double range) {
    double raw = range / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) return m * mag;
    }
    return 10.0 * mag;
}

const char *kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"};

}  // namespace

void write_table_csv(std::ostream &out, const Table &table) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << table.columns[c];
    }
    out << '\n';
    for (const auto &row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw InvalidArgument("table row width differs from the header");
        }
        for (size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << format_number(row[c]);
        }
        out << '\n';
    }
}

Table read_table_csv(std::istream &in) {
    Table t;
    std::string line;
    if (!std::getline(in, line)) {
        throw InvalidArgument("empty CSV");
    }
    t.columns = split_csv(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split_csv(line);
        if (cells.size() != t.columns.size()) {
            throw InvalidArgument("CSV row width differs from the header");
        }
        std::vector<double> row;
        for (const std::string &cell : cells) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::logic_error &) {
                throw InvalidArgument("non-numeric CSV cell: " + cell);
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

void write_svg_plot(std::ostream &out, const Table &table, const PlotSpec &spec) {
    if (table.rows.empty()) {
        throw InvalidArgument("cannot plot an empty table");
    }
    const double width = 720, height = 480, left = 80, right = 190, top = 50, bottom = 70;
    const double plot_w = width - left - right, plot_h = height - top - bottom;

    std::vector<double> xs = table.column_values(spec.x_column);
    double x_lo = *std::min_element(xs.begin(), xs.end());
    double x_hi = *std::max_element(xs.begin(), xs.end());
    double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
    for (const PlotSeries &s : spec.series) {
        std::vector<double> ys = table.column_values(s.column);
        std::vector<double> err =
            s.error_column.empty() ? std::vector<double>(ys.size(), 0.0) : table.column_values(s.error_column);
        for (size_t i = 0; i < ys.size(); ++i) {
            if (!std::isfinite(ys[i])) continue;
            y_lo = std::min(y_lo, ys[i] - err[i]);
            y_hi = std::max(y_hi, ys[i] + err[i]);
        }
    }
    for (double h : spec.hlines) {
        y_lo = std::min(y_lo, h);
        y_hi = std::max(y_hi, h);
    }
    if (!std::isfinite(y_lo)) y_lo = 0.0, y_hi = 1.0;
    if (x_hi <= x_lo) x_hi = x_lo + 1.0;
    if (y_hi <= y_lo) y_hi = y_lo + 1.0;
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    auto px = [&](double x) { return left + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) { return top + (y_hi - y) / (y_hi - y_lo) * plot_h; };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
        << xml_escape(spec.title) << "</text>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
        << "\" fill=\"none\" stroke=\"black\"/>\n";

    double xs_step = nice_step(x_hi - x_lo);
    for (double t = std::ceil(x_lo / xs_step) * xs_step; t <= x_hi + 1e-12; t += xs_step) {
        out << "<line x1=\"" << px(t) << "\" y1=\"" << top + plot_h << "\" x2=\"" << px(t) << "\" y2=\""
            << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << px(t) << "\" y=\"" << top + plot_h + 20 << "\" text-anchor=\"middle\">"
            << short_number(std::abs(t) < 1e-12 ? 0.0 : t) << "</text>\n";
    }
    double ys_step = nice_step(y_hi - y_lo);
    for (double t = std::ceil(y_lo / ys_step) * ys_step; t <= y_hi + 1e-12; t += ys_step) {
        out << "<line x1=\"" << left - 5 << "\" y1=\"" << py(t) << "\" x2=\"" << left << "\" y2=\"" << py(t)
            << "\" stroke=\"black\"/>\n";
        out << "<text x=\"" << left - 8 << "\" y=\"" << py(t) + 4 << "\" text-anchor=\"end\">"
            << short_number(std::abs(t) < 1e-12 ? 0.0 : t) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 20 << "\" text-anchor=\"middle\">"
        << xml_escape(spec.x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << top + plot_h / 2 << ")\">" << xml_escape(spec.y_label) << "</text>\n";

    for (double h : spec.hlines) {
        out << "<line x1=\"" << left << "\" y1=\"" << py(h) << "\" x2=\"" << left + plot_w << "\" y2=\"" << py(h)
            << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }
    for (double v : spec.vlines) {
        if (v < x_lo || v > x_hi) continue;
        out << "<line x1=\"" << px(v) << "\" y1=\"" << top << "\" x2=\"" << px(v) << "\" y2=\"" << top + plot_h
            << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    }

    for (size_t k = 0; k < spec.series.size(); ++k) {
        const PlotSeries &s = spec.series[k];
        const char *color = kPalette[k % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::vector<double> ys = table.column_values(s.column);
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (size_t i = 0; i < ys.size(); ++i) {
            if (std::isfinite(ys[i])) out << px(xs[i]) << ',' << py(ys[i]) << ' ';
        }
        out << "\"/>\n";
        if (!s.error_column.empty()) {
            std::vector<double> err = table.column_values(s.error_column);
            for (size_t i = 0; i < ys.size(); ++i) {
                if (!std::isfinite(ys[i])) continue;
                out << "<line x1=\"" << px(xs[i]) << "\" y1=\"" << py(ys[i] - err[i]) << "\" x2=\"" << px(xs[i])
                    << "\" y2=\"" << py(ys[i] + err[i]) << "\" stroke=\"" << color << "\"/>\n";
                out << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i]) << "\" r=\"2.5\" fill=\"" << color
                    << "\"/>\n";
            }
        }
        const double ly = top + 10 + 18.0 * static_cast<double>(k);
        out << "<line x1=\"" << left + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\"" << left + plot_w + 32
            << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + plot_w + 38 << "\" y=\"" << ly + 4 << "\">"
            << xml_escape(s.label.empty() ? s.column : s.label) << "</text>\n";
    }
    out << "</svg>\n";
}

nlohmann::json json_summary(const std::string &experiment, const nlohmann::json &config, uint64_t seed,
                            const Table &table, const nlohmann::json &extra) {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["config"] = config;
    j["columns"] = table.columns;
    j["rows"] = table.rows.size();
    j["data"] = table.rows;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
}

std::vector<std::filesystem::path> emit_outputs(const Table &table, const std::filesystem::path &dir,
                                                const std::string &stem, const std::vector<std::string> &formats,
                                                const PlotSpec &plot, const nlohmann::json &summary) {
    if (table.rows.empty()) {
        throw InvalidArgument("nothing to write: the table is empty");
    }
    for (const std::string &f : formats) {
        if (f != "csv" && f != "svg" && f != "json") {
            throw InvalidArgument("unknown output format: " + f);
        }
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw InvalidArgument("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    for (const std::string &f : formats) {
        std::filesystem::path path = dir / (stem + "." + f);
        std::ofstream out(path);
        if (!out) {
            throw InvalidArgument("cannot write " + path.string());
        }
        if (f == "csv") {
            write_table_csv(out, table);
        } else if (f == "svg") {
            write_svg_plot(out, table, plot);
        } else {
            out << summary.dump(2) << '\n';
        }
        if (!out) {
            throw InvalidArgument("write failed for " + path.string());
        }
        written.push_back(path);
    }
    return written;
}

}  // namespace rmt
