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

#ifndef LEVELSET_METRICS_HPP_
#define LEVELSET_METRICS_HPP_

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <vector>

#include "levelset/coefficients.hpp"
#include "levelset/contour.hpp"
#include "levelset/point_cloud.hpp"

namespace levelset {

struct Metrics {
  double mean_distance = 0.0;
  double max_distance = 0.0;
  std::optional<double> correlation;
  std::optional<double> sos_residual;
};

/// Default resolution of the rasterized zero-set oracle.
inline constexpr int kOracleResolution = 1024;

/// Zero crossings of f on the grid, f(x, y) sampled at the nodes.
ContourSet RasterizeZeroSet(const std::function<double(double, double)>& f, const GridSpec& grid);

/// Zero set of the real potential of c on a grid_res^2 grid.
ContourSet RasterizeZeroSet(const CoefficientVector& c, int grid_res = kOracleResolution);

/// Euclidean distance from each point to the nearest contour segment.
Eigen::VectorXd DistancesToContour(const PointCloud& x, const ContourSet& contour);

/// Mean and max of DistancesToContour.
Metrics DistanceMetrics(const PointCloud& x, const ContourSet& contour);

/// | ||x_i|| - radius | for a circle centred at the origin.
Eigen::VectorXd CircleDistances(const PointCloud& x, double radius);

/// Sum over basis functions of |psi_i(x_j)|^2, maximised over the points.
double SosResidual(const std::vector<CoefficientVector>& basis, const PointCloud& x);

/// Per-cell boolean raster over the (res - 1)^2 cells of a grid; cell (i, j)
/// spans nodes i..i+1 in x and j..j+1 in y.
struct CellMask {
  int cells_per_side = 0;
  std::vector<unsigned char> bits;

  bool at(int i, int j) const { return bits[static_cast<size_t>(j) * cells_per_side + i] != 0; }
  long count() const;
};

/// Cells whose corner values do not all share one sign class.
CellMask SignChangeMask(const Eigen::MatrixXd& values);

/// Cells of the 2-D grid meeting the sublevel set
/// { r : sum_i |psi_i(r)|^2 <= threshold }.
///
/// Each candidate cell is decided by a box-constrained Gauss-Newton minimum
/// of the sum of squares; candidates come from a Lipschitz bound on its
/// square root taken from the node values and node gradients.
CellMask SosSublevelMask(const std::vector<CoefficientVector>& basis, const GridSpec& grid,
                         double threshold);

/// |A and B| / |A or B|; 1 when both are empty.
double IntersectionOverUnion(const CellMask& a, const CellMask& b);

/// Largest |cos| between `test` and a unit vector in the span of the
/// reference eigenvectors whose eigenvalues lie within `cluster` (relative)
/// of reference eigenvalue `index` (0-based, ascending order).
double SubspaceAlignment(const Eigen::VectorXd& reference_values,
                         const Eigen::MatrixXd& reference_vectors, int index,
                         const Eigen::VectorXd& test, double cluster = 0.1);

}  // namespace levelset

#endif  // LEVELSET_METRICS_HPP_
