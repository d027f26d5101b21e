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

#ifndef LEVELSET_SVG_HPP_
#define LEVELSET_SVG_HPP_

#include <Eigen/Core>

#include <string>
#include <vector>

namespace levelset {

/// Polyline in cell units: x runs along columns, y along rows, and cell
/// (r, c) covers [c, c + 1] x [r, r + 1].
struct Overlay {
  std::string name;
  std::string color;
  std::vector<Eigen::Vector2d> points;
};

struct HeatmapStyle {
  double cell_size = 8.0;
  std::string title;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
};

/// Grayscale heatmap, 0 white and 1 black; values are clipped to [0, 1].
/// Output depends only on the arguments.
std::string RenderHeatmap(const Eigen::MatrixXd& grid, const std::vector<Overlay>& overlays,
                          const HeatmapStyle& style = {});

void EmitHeatmap(const Eigen::MatrixXd& grid, const std::vector<Overlay>& overlays,
                 const std::string& path, const HeatmapStyle& style = {});

}  // namespace levelset

#endif  // LEVELSET_SVG_HPP_
