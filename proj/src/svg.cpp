#include "nhsense/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace nhsense {

namespace {

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

struct Axis {
    double lo, hi;
    double map(double v, double pix_lo, double pix_hi) const {
        const double t = (v - lo) / (hi - lo);
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    const double span = hi - lo;
    if (!(span > 0.0)) return {lo};
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    }
    std::vector<double> ticks;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step)
        ticks.push_back(v);
    return ticks;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

std::string render_svg_plot(const ResultTable& table, const std::string& x_column,
                            const std::vector<std::string>& y_columns,
                            const PlotOptions& options) {
    table.validate();
    if (table.rows.size() < 2)
        throw std::invalid_argument("svg plot: need at least two rows");
    const int xi = table.column_index(x_column);
    if (xi < 0) throw std::invalid_argument("svg plot: missing column " + x_column);
    std::vector<int> yi;
    for (const auto& name : y_columns) {
        const int idx = table.column_index(name);
        if (idx < 0) throw std::invalid_argument("svg plot: missing column " + name);
        yi.push_back(idx);
    }
    if (yi.empty()) throw std::invalid_argument("svg plot: no y columns");

    auto xval = [&](const std::vector<double>& row) {
        const double v = row[static_cast<std::size_t>(xi)];
        if (options.log_x && !(v > 0.0))
            throw std::invalid_argument("svg plot: log-x with non-positive x value");
        return options.log_x ? std::log10(v) : v;
    };

    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& row : table.rows) {
        xlo = std::min(xlo, xval(row));
        xhi = std::max(xhi, xval(row));
        for (int idx : yi) {
            const double v = row[static_cast<std::size_t>(idx)];
            if (std::isnan(v)) continue;
            ylo = std::min(ylo, v);
            yhi = std::max(yhi, v);
        }
    }
    if (!(xhi > xlo)) xhi = xlo + 1.0;
    if (!(yhi > ylo)) yhi = ylo + 1.0;
    const double pad = 0.05 * (yhi - ylo);
    Axis xa{xlo, xhi}, ya{ylo - pad, yhi + pad};

    const double ml = 72, mr = 24, mt = options.title.empty() ? 20 : 40, mb = 48;
    const double W = options.width, H = options.height;
    const double px0 = ml, px1 = W - mr, py0 = H - mb, py1 = mt;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    if (!options.title.empty())
        os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
           << options.title << "</text>\n";

    os << "<g stroke=\"#cccccc\" stroke-width=\"1\" font-size=\"11\" fill=\"#333333\">\n";
    for (double t : nice_ticks(xa.lo, xa.hi)) {
        const double px = xa.map(t, px0, px1);
        os << "<line x1=\"" << px << "\" y1=\"" << py0 << "\" x2=\"" << px << "\" y2=\"" << py1
           << "\"/>\n";
        const double label = options.log_x ? std::pow(10.0, t) : t;
        os << "<text x=\"" << px << "\" y=\"" << py0 + 16
           << "\" text-anchor=\"middle\" stroke=\"none\">" << fmt(label) << "</text>\n";
    }
    for (double t : nice_ticks(ya.lo, ya.hi)) {
        const double py = ya.map(t, py0, py1);
        os << "<line x1=\"" << px0 << "\" y1=\"" << py << "\" x2=\"" << px1 << "\" y2=\"" << py
           << "\"/>\n";
        os << "<text x=\"" << px0 - 6 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" stroke=\"none\">" << fmt(t) << "</text>\n";
    }
    os << "</g>\n";
    os << "<rect x=\"" << px0 << "\" y=\"" << py1 << "\" width=\"" << px1 - px0
       << "\" height=\"" << py0 - py1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (px0 + px1) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_column
       << (options.log_x ? " (log scale)" : "") << "</text>\n";

    for (std::size_t s = 0; s < yi.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\""
           << kSeriesColors[s % (sizeof(kSeriesColors) / sizeof(kSeriesColors[0]))]
           << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& row : table.rows) {
            const double v = row[static_cast<std::size_t>(yi[s])];
            if (std::isnan(v)) continue;
            os << xa.map(xval(row), px0, px1) << "," << ya.map(v, py0, py1) << " ";
        }
        os << "\"/>\n";
        const double ly = py1 + 16 + 16 * static_cast<double>(s);
        os << "<line x1=\"" << px1 - 130 << "\" y1=\"" << ly << "\" x2=\"" << px1 - 106
           << "\" y2=\"" << ly << "\" stroke=\""
           << kSeriesColors[s % (sizeof(kSeriesColors) / sizeof(kSeriesColors[0]))]
           << "\" stroke-width=\"2\"/>\n";
        os << "<text x=\"" << px1 - 100 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
           << y_columns[s] << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void emit_svg_plot(const ResultTable& table, const std::string& x_column,
                   const std::vector<std::string>& y_columns, const std::string& path,
                   const PlotOptions& options) {
    atomic_write_file(path, render_svg_plot(table, x_column, y_columns, options));
}

}  // namespace nhsense
