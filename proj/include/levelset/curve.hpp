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

#ifndef LEVELSET_CURVE_HPP_
#define LEVELSET_CURVE_HPP_

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "levelset/coefficients.hpp"
#include "levelset/contour.hpp"
#include "levelset/point_cloud.hpp"

namespace levelset {

/// splitmix64 finaliser applied along a counter path; used to derive
/// per-trial seeds from a master seed independently of execution order.
std::uint64_t DeriveSeed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Ground-truth curve psi = 0 in the unit square.
struct CurveInstance {
  CoefficientVector coefficients;  // unit norm, conjugate symmetric
  // Irreducible factors for product curves; empty otherwise.
  std::vector<CoefficientVector> factors;
  std::uint64_t seed = 0;
  int grid_resolution = 256;
};

/// Random real bandlimited curve with support `lambda` (2-D, symmetric about
/// its center).
///
/// Coefficients are complex Gaussian folded onto the conjugate-symmetric
/// subspace and normalised. With a k = 0 coefficient, it is shifted so that
/// the 256^2 grid minimum and maximum of psi straddle zero; otherwise the draw
/// is repeated from derived seeds until the grid shows a sign change.
CurveInstance RandomCurve(const FourierSupport& lambda, std::uint64_t seed);

/// psi = prod_j psi_j with independent random factors; the product support is
/// recentred.
CurveInstance RandomProductCurve(const std::vector<FourierSupport>& factor_supports,
                                 std::uint64_t seed);

/// Zero crossings of the real form of psi on a grid_res^2 grid.
ContourSet CurveContours(const CoefficientVector& c, int grid_res);

/// `count` points on psi = 0.
///
/// Crossings from marching squares are ordered by arc position and the
/// crossings nearest to the stratum centres (i + 1/2) L / count are kept; each
/// is then refined by bisection along its grid edge until |psi| < 1e-13.
/// Throws SamplingError if the grid shows fewer than `count` crossings.
PointCloud SampleCurve(const CoefficientVector& c, int count, int grid_res = 512);
PointCloud SampleCurve(const CurveInstance& curve, int count, int grid_res = 512);

/// Samples counts[j] points on factor j and concatenates them.
PointCloud SampleFactors(const CurveInstance& curve, const std::vector<int>& counts,
                         int grid_res = 512);

/// Adds i.i.d. N(0, sigma_noise^2) to every coordinate and clips to the unit
/// box. sigma_noise = 0 returns the input unchanged.
PointCloud AddNoise(const PointCloud& x, double sigma_noise, std::uint64_t seed);

}  // namespace levelset

#endif  // LEVELSET_CURVE_HPP_
