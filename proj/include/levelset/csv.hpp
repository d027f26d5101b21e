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

#ifndef LEVELSET_CSV_HPP_
#define LEVELSET_CSV_HPP_

#include <Eigen/Core>

#include <iosfwd>
#include <string>
#include <vector>

#include "levelset/point_cloud.hpp"

namespace levelset {

/// %.17g, used for every number written.
std::string FormatDouble(double v);

/// Header x0,...,x{n-1}, one row per point.
void WritePointCloudCsv(const PointCloud& x, std::ostream& os);
void SavePointCloud(const PointCloud& x, const std::string& path);

/// Parses the point-cloud CSV. Errors name the 1-based data row.
PointCloud ReadPointCloudCsv(std::istream& is);
PointCloud LoadPointCloud(const std::string& path);

/// Matrix with an optional header line.
void WriteMatrixCsv(const Eigen::MatrixXd& m, std::ostream& os,
                    const std::vector<std::string>& header = {});
void SaveMatrixCsv(const Eigen::MatrixXd& m, const std::string& path,
                   const std::vector<std::string>& header = {});

}  // namespace levelset

#endif  // LEVELSET_CSV_HPP_
