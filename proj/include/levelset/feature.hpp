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

#ifndef LEVELSET_FEATURE_HPP_
#define LEVELSET_FEATURE_HPP_

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "levelset/coefficients.hpp"
#include "levelset/point_cloud.hpp"
#include "levelset/support.hpp"

namespace levelset {

inline constexpr double kDefaultRankTol = 1e-8;

/// |Gamma| x N matrix whose column i is the exponential feature map of x_i.
struct FeatureMatrix {
  FourierSupport support;
  Eigen::MatrixXcd entries;
};

/// |Gamma| x |Gamma| Hermitian PSD matrix Q = sum_i conj(phi(x_i)) phi(x_i)^T,
/// so that c^H Q c = sum_i |psi(x_i)|^2.
struct GramQ {
  FourierSupport support;
  Eigen::MatrixXcd matrix;
  int sample_count = 0;
};

/// phi_Gamma(x)[m] = exp(j 2 pi k_m . x).
Eigen::VectorXcd FeatureMap(const Eigen::VectorXd& x, const FourierSupport& gamma);

/// psi(r) = sum_k c_k exp(j 2 pi k . r).
Complex EvaluatePsi(const CoefficientVector& c, const Eigen::VectorXd& r);

/// exp(-j pi s.r) psi(r), real up to rounding for conjugate-symmetric c.
/// For other vectors this is the real part of psi itself.
double EvaluateRealPsi(const CoefficientVector& c, const Eigen::VectorXd& r);

FeatureMatrix BuildFeatureMatrix(const PointCloud& x, const FourierSupport& gamma);
GramQ BuildGramQ(const PointCloud& x, const FourierSupport& gamma);

/// Count of singular values above rel_tol * sigma_max.
int FeatureRank(const FeatureMatrix& phi, double rel_tol = kDefaultRankTol);

struct Recovery {
  CoefficientVector coefficients;
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  // Eigenvalues within rank_tol * lambda_max of the smallest one.
  int nullity = 0;
  bool ambiguous = false;
  // True when the eigenvector was replaced by its conjugate-symmetric part.
  bool projected = false;
  std::vector<std::string> warnings;
};

/// Unit-norm minimiser of c^H Q c.
///
/// When the support has a center of symmetry the eigenvector is rotated and
/// projected onto the conjugate-symmetric subspace, provided that raises the
/// residual by at most 1e-8 * lambda_max. A smallest eigenvalue of
/// multiplicity > 1 is reported through `ambiguous` and `warnings` rather
/// than thrown; the caller should switch to NullspaceBasis.
Recovery RecoverCoefficients(const GramQ& q, double rank_tol = kDefaultRankTol);

/// Orthonormal eigenvectors of Q with eigenvalue <= rank_tol * lambda_max,
/// each phase-normalised. Empty when Q is positive definite at that
/// tolerance.
std::vector<CoefficientVector> NullspaceBasis(const GramQ& q, double rank_tol = kDefaultRankTol);

/// Regular 2-D grid of `resolution` nodes per axis spanning [lo, hi].
struct GridSpec {
  int resolution = 256;
  double lo = -0.5;
  double hi = 0.5;

  double step() const { return (hi - lo) / (resolution - 1); }
  double node(int i) const { return i == resolution - 1 ? hi : lo + i * step(); }
  Eigen::VectorXd nodes() const;
};

/// values(i, j) is the field at (node(i), node(j)).
struct Field2D {
  GridSpec grid;
  Eigen::MatrixXd values;
};

/// psi on every node of a 2-D grid (separable evaluation).
Eigen::MatrixXcd EvaluateOnGrid(const CoefficientVector& c, const GridSpec& grid);

/// exp(-j pi s.r) psi(r) on the grid; real for conjugate-symmetric c.
Eigen::MatrixXd EvaluateRealOnGrid(const CoefficientVector& c, const GridSpec& grid);

/// sum_i |psi_i(r)|^2 over the basis functions. Throws on an empty basis.
Field2D SumOfSquaresField(const std::vector<CoefficientVector>& basis, const GridSpec& grid);

/// Per-axis bandwidth K1 x K2 of a 2-D support.
struct Bandwidth {
  int k1 = 1;
  int k2 = 1;
};

struct SampleBounds {
  // Strict lower bounds N_j > per_factor_bound[j], and the smallest integer
  // above each.
  std::vector<long> per_factor_bound;
  std::vector<long> per_factor_min;
  long total_bound = 0;
  long total_min = 0;
  std::vector<std::string> warnings;
};

/// Sample counts guaranteeing unique recovery of a curve whose potential has
/// bandwidth `total` and the given irreducible factors. With `gamma` the
/// bounds are for an overestimated support of that size.
SampleBounds MinSamples(const std::vector<Bandwidth>& factors, Bandwidth total,
                        std::optional<Bandwidth> gamma = std::nullopt);

/// Total bound alone; only the factor count is needed.
long TotalSampleBound(Bandwidth total, int factor_count,
                      std::optional<Bandwidth> gamma = std::nullopt);

/// "sub-sampled" warning text when n does not exceed the bound.
std::optional<std::string> SubsampledWarning(long n, long bound);

}  // namespace levelset

#endif  // LEVELSET_FEATURE_HPP_
