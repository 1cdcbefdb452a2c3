#include "nushift/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "nushift/errors.hpp"

namespace nushift {

void write_line_chart_svg(const std::string& path, std::span<const double> xs,
                          std::span<const double> ys, const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw OutOfDomain("svg chart needs matching xs/ys with >= 2 points");
    const double W = 640, H = 400, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = *std::min_element(xs.begin(), xs.end());
    double x1 = *std::max_element(xs.begin(), xs.end());
    double y0 = *std::min_element(ys.begin(), ys.end());
    double y1 = *std::max_element(ys.begin(), ys.end());
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb); };

    std::ofstream out(path);
    if (!out) throw OutOfDomain("cannot write " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
        << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
        << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    std::ostringstream ticks;
    for (int i = 0; i <= 4; ++i) {
        const double x = x0 + (x1 - x0) * i / 4;
        const double y = y0 + (y1 - y0) * i / 4;
        ticks << "<text x=\"" << px(x) << "\" y=\"" << H - mb + 18
              << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                 "font-size=\"11\">" << x << "</text>\n"
              << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
              << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
                 "font-size=\"11\">" << y << "</text>\n";
    }
    out << ticks.str()
        << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\">" << x_label << "</text>\n"
        << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"12\" transform=\"rotate(-90 16 " << (mt + H - mb) / 2
        << ")\">" << y_label << "</text>\n"
        << "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out << ' ';
        out << px(xs[i]) << ',' << py(ys[i]);
    }
    out << "\"/>\n</svg>\n";
}

} // namespace nushift
