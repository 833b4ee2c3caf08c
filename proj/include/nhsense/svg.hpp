#pragma once

#include <string>
#include <vector>

#include "nhsense/table.hpp"

namespace nhsense {

struct PlotOptions {
    bool log_x = false;
    int width = 720;
    int height = 480;
    std::string title;
};

/// Standalone SVG line plot: axes with ticks, one polyline per y column,
/// legend from column names, 5% y padding beyond the data extrema.
/// Requires at least two rows and existing column names.
std::string render_svg_plot(const ResultTable& table, const std::string& x_column,
                            const std::vector<std::string>& y_columns,
                            const PlotOptions& options = {});

void emit_svg_plot(const ResultTable& table, const std::string& x_column,
                   const std::vector<std::string>& y_columns, const std::string& path,
                   const PlotOptions& options = {});

}  // namespace nhsense
