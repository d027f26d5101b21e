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

#ifndef LEVELSET_POINT_CLOUD_HPP_
#define LEVELSET_POINT_CLOUD_HPP_

#include <Eigen/Core>

namespace levelset {

/// N points in [-1/2, 1/2]^n stored as the columns of an n x N matrix.
class PointCloud {
 public:
  /// Throws InputError for an empty cloud, non-finite coordinates, or
  /// coordinates outside the unit box.
  explicit PointCloud(Eigen::MatrixXd coords);

  /// Clips every coordinate into [-1/2, 1/2]; non-finite input still throws.
  static PointCloud Clamped(Eigen::MatrixXd coords, long* clamped_count = nullptr);

  int dims() const { return static_cast<int>(coords_.rows()); }
  int count() const { return static_cast<int>(coords_.cols()); }
  const Eigen::MatrixXd& coords() const { return coords_; }
  Eigen::VectorXd point(int i) const { return coords_.col(i); }

 private:
  Eigen::MatrixXd coords_;
};

}  // namespace levelset

#endif  // LEVELSET_POINT_CLOUD_HPP_
