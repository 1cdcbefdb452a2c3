#pragma once

#include <span>
#include <string>

namespace nushift {

/// Renders a single-series line chart to an SVG file. Derived artifact
/// only; plots are never read back.
void write_line_chart_svg(const std::string& path, std::span<const double> xs,
                          std::span<const double> ys, const std::string& title,
                          const std::string& x_label,
                          const std::string& y_label);

} // namespace nushift
