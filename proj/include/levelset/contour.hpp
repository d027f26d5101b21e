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

#ifndef LEVELSET_CONTOUR_HPP_
#define LEVELSET_CONTOUR_HPP_

#include <Eigen/Core>

#include <utility>
#include <vector>

#include "levelset/feature.hpp"

namespace levelset {

/// Zero crossings of a real grid field, linked into polylines.
///
/// A node counts as negative when its value is < 0 and as non-negative
/// otherwise; every grid edge joining the two classes carries one crossing,
/// placed by linear interpolation. Saddle cells are resolved by the sign of
/// the cell-center average.
struct ContourSet {
  struct Edge {
    int i0, j0, i1, j1;  // grid nodes bracketing the crossing
  };

  std::vector<Eigen::Vector2d> points;
  std::vector<Edge> edges;
  // Crossing indices in traversal order; open chains end on the grid border.
  std::vector<std::vector<int>> chains;
  std::vector<bool> closed;

  int size() const { return static_cast<int>(points.size()); }

  /// Total polyline length including the closing segment of loops.
  double Length() const;

  /// Consecutive point pairs of all chains.
  std::vector<std::pair<Eigen::Vector2d, Eigen::Vector2d>> Segments() const;
};

/// `values(i, j)` is the field at (grid.node(i), grid.node(j)).
ContourSet ExtractZeroContours(const Eigen::MatrixXd& values, const GridSpec& grid);

}  // namespace levelset

#endif  // LEVELSET_CONTOUR_HPP_
