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

#include "levelset/point_cloud.hpp"

#include <cmath>
#include <string>

#include "levelset/error.hpp"

namespace levelset {
namespace {

void CheckFinite(const Eigen::MatrixXd& coords) {
  if (coords.rows() < 1 || coords.cols() < 1) throw InputError("point cloud must not be empty");
  for (Eigen::Index j = 0; j < coords.cols(); ++j) {
    for (Eigen::Index d = 0; d < coords.rows(); ++d) {
      if (!std::isfinite(coords(d, j))) {
        throw InputError("point " + std::to_string(j) + " has a non-finite coordinate");
      }
    }
  }
}

}  // namespace

PointCloud::PointCloud(Eigen::MatrixXd coords) : coords_(std::move(coords)) {
  CheckFinite(coords_);
  for (Eigen::Index j = 0; j < coords_.cols(); ++j) {
    for (Eigen::Index d = 0; d < coords_.rows(); ++d) {
      if (std::abs(coords_(d, j)) > 0.5) {
        throw InputError("point " + std::to_string(j) + " lies outside [-1/2, 1/2]");
      }
    }
  }
}

PointCloud PointCloud::Clamped(Eigen::MatrixXd coords, long* clamped_count) {
  CheckFinite(coords);
  long clamped = 0;
  for (Eigen::Index j = 0; j < coords.cols(); ++j) {
    for (Eigen::Index d = 0; d < coords.rows(); ++d) {
      double& v = coords(d, j);
      if (v > 0.5 || v < -0.5) {
        v = v > 0.5 ? 0.5 : -0.5;
        ++clamped;
      }
    }
  }
  if (clamped_count) *clamped_count = clamped;
  return PointCloud(std::move(coords));
}

}  // namespace levelset
