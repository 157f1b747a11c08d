#include "zetalaw/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "zetalaw/errors.hpp"

namespace zetalaw::cli {

namespace {

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string escape(const std::string& s) {
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

std::string tick(double v) {
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

}  // namespace

std::string line_chart(const std::vector<Series>& series, const ChartOptions& opt) {
    const double left = 70, right = 20, top = 40, bottom = 50;
    const double w = opt.width - left - right;
    const double h = opt.height - top - bottom;

    auto tx = [&](double v) { return opt.log_x ? std::log10(v) : v; };
    auto ty = [&](double v) { return opt.log_y ? std::log10(v) : v; };
    auto drawable = [&](double x, double y) {
        return std::isfinite(x) && std::isfinite(y) && (!opt.log_x || x > 0) && (!opt.log_y || y > 0);
    };

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& s : series)
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (drawable(s.x[i], s.y[i])) {
                x0 = std::min(x0, tx(s.x[i]));
                x1 = std::max(x1, tx(s.x[i]));
                y0 = std::min(y0, ty(s.y[i]));
                y1 = std::max(y1, ty(s.y[i]));
            }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x0 -= 0.5, x1 += 0.5;
    if (y1 == y0) y0 -= 0.5, y1 += 0.5;
    auto px = [&](double v) { return left + (tx(v) - x0) / (x1 - x0) * w; };
    auto py = [&](double v) { return top + h - (ty(v) - y0) / (y1 - y0) * h; };
    auto untx = [&](double v) { return opt.log_x ? std::pow(10.0, v) : v; };
    auto unty = [&](double v) { return opt.log_y ? std::pow(10.0, v) : v; };

    std::ostringstream svg;
    svg.precision(6);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << opt.width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
        << escape(opt.title) << "</text>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top + h << "\" x2=\"" << left + w << "\" y2=\"" << top + h
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + h
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << left << "\" y=\"" << top + h + 16 << "\" text-anchor=\"start\">" << tick(untx(x0))
        << "</text>\n";
    svg << "<text x=\"" << left + w << "\" y=\"" << top + h + 16 << "\" text-anchor=\"end\">" << tick(untx(x1))
        << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << top + h << "\" text-anchor=\"end\">" << tick(unty(y0))
        << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\">" << tick(unty(y1))
        << "</text>\n";
    svg << "<text x=\"" << left + w / 2 << "\" y=\"" << opt.height - 10 << "\" text-anchor=\"middle\">"
        << escape(opt.x_label) << (opt.log_x ? " (log)" : "") << "</text>\n";
    svg << "<text transform=\"translate(16," << top + h / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
        << escape(opt.y_label) << (opt.log_y ? " (log)" : "") << "</text>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* colour = kPalette[k % kPalette.size()];
        std::ostringstream path;
        path.precision(6);
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (drawable(s.x[i], s.y[i])) path << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"" << path.str()
            << "\"/>\n";
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (drawable(s.x[i], s.y[i]))
                svg << "<circle cx=\"" << px(s.x[i]) << "\" cy=\"" << py(s.y[i]) << "\" r=\"2.5\" fill=\"" << colour
                    << "\"/>\n";
        svg << "<text x=\"" << left + w - 4 << "\" y=\"" << top + 14 + 14 * static_cast<double>(k)
            << "\" text-anchor=\"end\" fill=\"" << colour << "\">" << escape(s.name) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    out << text;
}

}  // namespace zetalaw::cli
