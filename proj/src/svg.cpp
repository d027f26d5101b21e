// Copyright (c) the levelset authors
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

#include "levelset/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "levelset/error.hpp"

namespace levelset {
namespace {

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Gray(double v) {
  const double c = std::clamp(v, 0.0, 1.0);
  const int level = static_cast<int>(std::lround(255.0 * (1.0 - c)));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", level, level, level);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string RenderHeatmap(const Eigen::MatrixXd& grid, const std::vector<Overlay>& overlays,
                          const HeatmapStyle& style) {
  if (grid.rows() < 1 || grid.cols() < 1) throw InputError("heatmap grid is empty");
  if (!(style.cell_size > 0.0)) throw InputError("cell size must be positive");
  const double s = style.cell_size;
  const double margin = style.title.empty() && style.row_labels.empty() ? 0.0 : 40.0;
  const double width = grid.cols() * s + 2 * margin;
  const double height = grid.rows() * s + 2 * margin;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Num(width) << "\" height=\""
     << Num(height) << "\" viewBox=\"0 0 " << Num(width) << ' ' << Num(height) << "\">\n";
  if (!style.title.empty()) {
    os << "<text x=\"" << Num(margin) << "\" y=\"" << Num(margin * 0.6) << "\" font-size=\"12\">"
       << Escape(style.title) << "</text>\n";
  }
  os << "<g transform=\"translate(" << Num(margin) << ',' << Num(margin) << ")\">\n";
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.cols(); ++c) {
      os << "<rect class=\"cell\" x=\"" << Num(c * s) << "\" y=\"" << Num(r * s) << "\" width=\""
         << Num(s) << "\" height=\"" << Num(s) << "\" fill=\"" << Gray(grid(r, c)) << "\"/>\n";
    }
  }
  for (size_t r = 0; r < style.row_labels.size() && r < static_cast<size_t>(grid.rows()); ++r) {
    os << "<text class=\"row-label\" x=\"-4\" y=\"" << Num((r + 0.5) * s)
       << "\" font-size=\"8\" text-anchor=\"end\">" << Escape(style.row_labels[r]) << "</text>\n";
  }
  for (size_t c = 0; c < style.column_labels.size() && c < static_cast<size_t>(grid.cols()); ++c) {
    if (style.column_labels[c].empty()) continue;
    os << "<text class=\"column-label\" x=\"" << Num((c + 0.5) * s) << "\" y=\""
       << Num(grid.rows() * s + 10) << "\" font-size=\"8\" text-anchor=\"middle\">"
       << Escape(style.column_labels[c]) << "</text>\n";
  }
  for (const Overlay& ov : overlays) {
    os << "<polyline class=\"overlay\" data-name=\"" << Escape(ov.name) << "\" fill=\"none\" stroke=\""
       << Escape(ov.color.empty() ? "red" : ov.color) << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < ov.points.size(); ++k) {
      os << (k ? " " : "") << Num(ov.points[k].x() * s) << ',' << Num(ov.points[k].y() * s);
    }
    os << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void EmitHeatmap(const Eigen::MatrixXd& grid, const std::vector<Overlay>& overlays,
                 const std::string& path, const HeatmapStyle& style) {
  const std::string text = RenderHeatmap(grid, overlays, style);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InputError("cannot write " + path);
  os << text;
  if (!os) throw InputError("write failed: " + path);
}

}  // namespace levelset
