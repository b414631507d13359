#include "palms/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "palms/errors.hpp"

namespace palms {

namespace {

constexpr int kWidth = 640, kHeight = 420;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 55;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
    std::ostringstream ss;
    ss.precision(6);
    ss << v;
    return ss.str();
}

struct Scale {
    double lo, hi;
    double px0, px1;
    double map(double v) const {
        double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return px0 + t * (px1 - px0);
    }
};

void axis_range(double& lo, double& hi) {
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
}

}  // namespace

void svg_line_chart(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
    double ylo = xlo, yhi = -xlo;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.xs.size(); ++i) {
            xlo = std::min(xlo, s.xs[i]);
            xhi = std::max(xhi, s.xs[i]);
            ylo = std::min(ylo, s.ys[i]);
            yhi = std::max(yhi, s.ys[i]);
        }
    if (!std::isfinite(xlo)) {
        xlo = 0;
        xhi = 1;
        ylo = 0;
        yhi = 1;
    }
    axis_range(xlo, xhi);
    axis_range(ylo, yhi);
    Scale sx{xlo, xhi, double(kLeft), double(kWidth - kRight)};
    Scale sy{ylo, yhi, double(kHeight - kBottom), double(kTop)};

    std::ofstream out(path);
    if (!out) throw data_error("svg_line_chart: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">" << title << "</text>\n";

    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";

    for (int t = 0; t <= 4; ++t) {
        double fx = xlo + t * (xhi - xlo) / 4;
        double fy = ylo + t * (yhi - ylo) / 4;
        out << "<text x=\"" << num(sx.map(fx)) << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << num(fx)
            << "</text>\n";
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy.map(fy) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(fy)
            << "</text>\n";
    }
    out << "<text x=\"" << (kLeft + kWidth - kRight) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\">" << x_label
        << "</text>\n";
    out << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 " << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label
        << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            out << num(sx.map(s.xs[i])) << "," << num(sy.map(s.ys[i])) << " ";
        out << "\"/>\n";
        for (std::size_t i = 0; i < s.xs.size(); ++i)
            out << "<circle cx=\"" << num(sx.map(s.xs[i])) << "\" cy=\"" << num(sy.map(s.ys[i]))
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << kWidth - kRight - 6 << "\" y=\"" << kTop + 16 * (si + 1)
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\" fill=\"" << color
            << "\">" << s.name << "</text>\n";
    }
    out << "</svg>\n";
}

void svg_bar_chart(const std::string& path, const std::string& title, const std::string& y_label,
                   const std::vector<std::string>& labels, const std::vector<double>& values) {
    if (labels.size() != values.size())
        throw parameter_error("svg_bar_chart: labels/values length mismatch");
    double hi = 0.0;
    for (double v : values) hi = std::max(hi, v);
    if (hi <= 0.0) hi = 1.0;
    hi *= 1.05;
    Scale sy{0.0, hi, double(kHeight - kBottom), double(kTop)};

    std::ofstream out(path);
    if (!out) throw data_error("svg_bar_chart: cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\" "
           "font-family=\"sans-serif\">" << title << "</text>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
        << kHeight - kBottom << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
        << kWidth - kRight << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        double fy = t * hi / 4;
        out << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy.map(fy) + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" << num(fy)
            << "</text>\n";
    }
    out << "<text x=\"18\" y=\"" << (kTop + kHeight - kBottom) / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 18 " << (kTop + kHeight - kBottom) / 2 << ")\">" << y_label
        << "</text>\n";

    double span = double(kWidth - kLeft - kRight);
    double slot = span / values.size();
    for (std::size_t i = 0; i < values.size(); ++i) {
        double x0 = kLeft + i * slot + 0.15 * slot;
        double w = 0.7 * slot;
        double ytop = sy.map(values[i]);
        out << "<rect x=\"" << num(x0) << "\" y=\"" << num(ytop) << "\" width=\"" << num(w)
            << "\" height=\"" << num(double(kHeight - kBottom) - ytop) << "\" fill=\""
            << kPalette[i % 6] << "\"/>\n";
        out << "<text x=\"" << num(x0 + w / 2) << "\" y=\"" << kHeight - kBottom + 18
            << "\" text-anchor=\"middle\" font-size=\"11\" font-family=\"sans-serif\">" << labels[i]
            << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace palms
