#pragma once

#include <string>

#include "hdta/tipomset.hpp"

namespace hdta {

namespace detail {

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace detail

/// Plain-text Gantt of activity intervals over a 0..d axis, one event per
/// row, mirroring the interval pictures of the paper figures.
inline std::string render_intervals_text(const Tipomset& t, size_t width = 60) {
  std::string out;
  size_t labelw = 1;
  for (const auto& l : t.under.labels) labelw = std::max(labelw, l.size());
  double d = detail::to_double(t.duration);
  if (d <= 0) d = 1;
  for (size_t x = 0; x < t.size(); ++x) {
    std::string row = t.under.labels[x];
    row.resize(labelw, ' ');
    row += " |";
    size_t a = static_cast<size_t>(detail::to_double(t.start[x]) / d * (width - 1));
    size_t b = static_cast<size_t>(detail::to_double(t.end[x]) / d * (width - 1));
    for (size_t i = 0; i < width; ++i)
      row += i >= a && i <= b ? '#' : ' ';
    row += "| [" + to_string(t.start[x]) + ".." + to_string(t.end[x]) + "]";
    out += row + "\n";
  }
  std::string axis(labelw, ' ');
  axis += " 0";
  axis.resize(labelw + 2 + width, ' ');
  axis += "d=" + to_string(t.duration);
  out += axis + "\n";
  return out;
}

/// Deterministic SVG (fixed ordering and geometry, no metadata).
inline std::string render_intervals_svg(const Tipomset& t) {
  const int width = 640, rowh = 28, pad = 60, top = 20;
  int height = top * 2 + rowh * static_cast<int>(t.size());
  double d = detail::to_double(t.duration);
  if (d <= 0) d = 1;
  auto xpos = [&](const Rat& r) {
    return pad + (width - 2 * pad) * detail::to_double(r) / d;
  };
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
                  "\" height=\"" + std::to_string(height) + "\">\n";
  s += "<line x1=\"" + std::to_string(pad) + "\" y1=\"" + std::to_string(height - top) +
       "\" x2=\"" + std::to_string(width - pad) + "\" y2=\"" + std::to_string(height - top) +
       "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + std::to_string(pad) + "\" y=\"" + std::to_string(height - 4) +
       "\" font-size=\"12\">0</text>\n";
  s += "<text x=\"" + std::to_string(width - pad) + "\" y=\"" + std::to_string(height - 4) +
       "\" font-size=\"12\">" + to_string(t.duration) + "</text>\n";
  for (size_t x = 0; x < t.size(); ++x) {
    int y = top + rowh * static_cast<int>(x);
    double a = xpos(t.start[x]), b = xpos(t.end[x]);
    s += "<rect x=\"" + std::to_string(static_cast<int>(a)) + "\" y=\"" + std::to_string(y) +
         "\" width=\"" + std::to_string(std::max(2, static_cast<int>(b - a))) + "\" height=\"" +
         std::to_string(rowh - 10) + "\" fill=\"#4a7\" stroke=\"black\"/>\n";
    s += "<text x=\"8\" y=\"" + std::to_string(y + rowh / 2) + "\" font-size=\"14\">" +
         t.under.labels[x] + "</text>\n";
    s += "<text x=\"" + std::to_string(static_cast<int>(b) + 6) + "\" y=\"" +
         std::to_string(y + rowh / 2) + "\" font-size=\"10\">[" + to_string(t.start[x]) + ".." +
         to_string(t.end[x]) + "]</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace hdta
