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

// CSV, SVG and JSON writers for experiment tables.

#ifndef RMT_OUTPUT_H
#define RMT_OUTPUT_H

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "rmt/experiments.h"

namespace rmt {

/// Header row, then one row per grid point. Numbers are written with 17
/// significant digits so that reading them back is exact.
void write_table_csv(std::ostream &out, const Table &table);
Table read_table_csv(std::istream &in);

struct PlotSeries {
    std::string column;
    std::string label;
    /// Optional column of symmetric error bars.
    std::string error_column;
};

struct PlotSpec {
    std::string title;
    std::string x_column;
    std::string x_label;
    std::string y_label;
    std::vector<PlotSeries> series;
    /// Dashed reference lines.
    std::vector<double> hlines;
    std::vector<double> vlines;
};

/// Static line plot with labeled axes, ticks and a legend.
void write_svg_plot(std::ostream &out, const Table &table, const PlotSpec &spec);

/// Experiment name, library version, seed, echoed configuration, columns and
/// row count, plus any caller-provided `extra` fields.
nlohmann::json json_summary(const std::string &experiment, const nlohmann::json &config, uint64_t seed,
                            const Table &table, const nlohmann::json &extra = nlohmann::json::object());

/// Writes <dir>/<stem>.{csv,svg,json} for each requested format ("csv",
/// "svg", "json"). Creates `dir` if needed. Throws InvalidArgument on an
/// unknown format, an empty table or an unwritable path.
std::vector<std::filesystem::path> emit_outputs(const Table &table, const std::filesystem::path &dir,
                                                const std::string &stem, const std::vector<std::string> &formats,
                                                const PlotSpec &plot, const nlohmann::json &summary);

}  // namespace rmt

#endif
