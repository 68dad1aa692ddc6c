#pragma once

#include <cmath>
#include <ostream>
#include <span>
#include <string>
#include <string_view>

#include "vinesim/csv_io.hpp"
#include "vinesim/field.hpp"
#include "vinesim/phase_result.hpp"

namespace vinesim {

/// Plot styling. Only line, circle and text elements inside a viewBox are
/// emitted.
struct SvgStyle {
  double px_per_m = 3.0;
  double margin_px = 40.0;
  std::string marker_label = "Disease Spots";
  std::string path_label = "Path";
};

inline std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Path plot: field rows (class "row"), the agent path split into along-row
/// segments (class "row-pass") and headland segments (class "headland"), one
/// circle per marker (class "spot") and a legend.
inline void write_path_svg(std::ostream& out, const FieldGeometry& field, const PhaseResult& phase,
                           std::span<const FieldPoint> markers, std::string_view title,
                           const SvgStyle& style = {}) {
  const double s = style.px_per_m, m = style.margin_px;
  const Point2 o = field.origin();
  const double width_m = (field.num_rows() - 1) * field.row_spacing();
  const double height_m = field.row_length();
  const double w = width_m * s + 2 * m;
  const double h = height_m * s + 2 * m + 40.0;
  // North (large Y) at the top.
  auto px = [&](const Point2& p) { return m + (p.x - o.x) * s; };
  auto py = [&](const Point2& p) { return m + 30.0 + (height_m - (p.y - o.y)) * s; };
  auto num = [](double v) { return format_number(std::round(v * 100.0) / 100.0); };
  auto line = [&](std::string_view cls, const Point2& a, const Point2& b, std::string_view stroke, double width) {
    out << "<line class=\"" << cls << "\" x1=\"" << num(px(a)) << "\" y1=\"" << num(py(a)) << "\" x2=\""
        << num(px(b)) << "\" y2=\"" << num(py(b)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width
        << "\"/>\n";
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
  out << "<text x=\"" << num(m) << "\" y=\"20\" font-size=\"14\">" << xml_escape(title) << "</text>\n";

  for (int r = 0; r < field.num_rows(); ++r)
    line("row", field.to_cartesian({r, 0.0}), field.to_cartesian({r, field.row_length()}), "#4a78d0", 0.6);

  for (std::size_t k = 1; k < phase.path.size(); ++k) {
    const Point2& a = phase.path[k - 1];
    const Point2& b = phase.path[k];
    if (a == b) continue;
    line(a.x == b.x ? "row-pass" : "headland", a, b, "black", 1.2);
  }

  for (const auto& p : markers) {
    const Point2 c = field.to_cartesian(p);
    out << "<circle class=\"spot\" cx=\"" << num(px(c)) << "\" cy=\"" << num(py(c))
        << "\" r=\"3\" fill=\"red\"/>\n";
  }

  const double ly = h - 12.0;
  out << "<text x=\"" << num(m) << "\" y=\"" << num(ly) << "\" font-size=\"12\" fill=\"red\">x "
      << xml_escape(style.marker_label) << "</text>\n";
  out << "<text x=\"" << num(m + 160.0) << "\" y=\"" << num(ly) << "\" font-size=\"12\">&#8212; "
      << xml_escape(style.path_label) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace vinesim
