#pragma once

// Least-squares fits and deterministic CSV / SVG emitters for the
// experiment harness.  Output bytes depend only on the input data.

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace snowflake {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
    std::size_t n = 0;
};

inline LinearFit fit_linear(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_linear: size mismatch");
    std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("fit_linear: need at least two points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0) throw std::invalid_argument("fit_linear: degenerate x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    f.n = n;
    return f;
}

// Fit ln y = slope ln x + intercept; slope is the growth exponent.
inline LinearFit fit_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<double> lx, ly;
    lx.reserve(xs.size());
    ly.reserve(ys.size());
    for (double x : xs) {
        if (x <= 0) throw std::invalid_argument("fit_loglog: nonpositive x");
        lx.push_back(std::log(x));
    }
    for (double y : ys) {
        if (y <= 0) throw std::invalid_argument("fit_loglog: nonpositive y");
        ly.push_back(std::log(y));
    }
    return fit_linear(lx, ly);
}

inline std::string csv_number(double v) {
    std::ostringstream ss;
    ss << std::setprecision(12) << v;
    return ss.str();
}

inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::invalid_argument("write_csv: ragged row");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
}

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

// Log-log scatter with the fitted power law drawn through it.
inline void write_loglog_svg(std::ostream& os, const std::string& title,
                             const std::vector<double>& xs, const std::vector<double>& ys,
                             const LinearFit& fit) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("write_loglog_svg: bad data");
    const double W = 640, H = 480, ML = 70, MR = 20, MT = 50, MB = 50;
    double xmin = std::log10(xs[0]), xmax = xmin;
    double ymin = std::log10(ys[0]), ymax = ymin;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i] <= 0 || ys[i] <= 0)
            throw std::invalid_argument("write_loglog_svg: nonpositive point");
        double lx = std::log10(xs[i]), ly = std::log10(ys[i]);
        xmin = std::min(xmin, lx);
        xmax = std::max(xmax, lx);
        ymin = std::min(ymin, ly);
        ymax = std::max(ymax, ly);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double lx) { return ML + (lx - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double ly) { return H - MB - (ly - ymin) / (ymax - ymin) * (H - MT - MB); };
    using detail::svg_num;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
       << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
          "font-size=\"15\">"
       << title << "</text>\n";
    // axes
    os << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
       << H - MB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ML << "\" y=\"" << H - MB + 20
       << "\" font-family=\"monospace\" font-size=\"11\">1e" << svg_num(xmin) << "</text>\n";
    os << "<text x=\"" << W - MR << "\" y=\"" << H - MB + 20
       << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e" << svg_num(xmax)
       << "</text>\n";
    os << "<text x=\"" << ML - 6 << "\" y=\"" << H - MB
       << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e" << svg_num(ymin)
       << "</text>\n";
    os << "<text x=\"" << ML - 6 << "\" y=\"" << MT + 4
       << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"11\">1e" << svg_num(ymax)
       << "</text>\n";
    // fitted line, converted from natural-log coefficients
    const double ln10 = std::log(10.0);
    auto fit_ly = [&](double lx) { return fit.slope * lx + fit.intercept / ln10; };
    os << "<line x1=\"" << svg_num(px(xmin)) << "\" y1=\"" << svg_num(py(fit_ly(xmin)))
       << "\" x2=\"" << svg_num(px(xmax)) << "\" y2=\"" << svg_num(py(fit_ly(xmax)))
       << "\" stroke=\"#c02020\" stroke-width=\"1.5\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        os << "<circle cx=\"" << svg_num(px(std::log10(xs[i]))) << "\" cy=\""
           << svg_num(py(std::log10(ys[i]))) << "\" r=\"3\" fill=\"#2040c0\"/>\n";
    }
    os << "<text x=\"" << W - MR << "\" y=\"" << MT
       << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"12\">slope "
       << svg_num(fit.slope) << "  r2 " << svg_num(fit.r2) << "</text>\n";
    os << "</svg>\n";
}

}  // namespace snowflake
