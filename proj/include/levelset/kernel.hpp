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

#ifndef LEVELSET_KERNEL_HPP_
#define LEVELSET_KERNEL_HPP_

#include <Eigen/Core>

#include <optional>
#include <string>

#include "levelset/point_cloud.hpp"
#include "levelset/support.hpp"

namespace levelset {

enum class KernelKind { kDirichlet, kGaussian };

/// A shift-invariant kernel kappa(x_j - x_i).
struct KernelDescriptor {
  KernelKind kind = KernelKind::kGaussian;
  int dims = 2;
  std::optional<FourierSupport> support;  // dirichlet only
  double sigma = 0.0;                     // gaussian only
  // Sum over the 3^n nearest periodic images instead of the plain Gaussian.
  bool periodized = false;

  /// Requires a support symmetric about 0.
  static KernelDescriptor Dirichlet(FourierSupport gamma);
  static KernelDescriptor Gaussian(double sigma, int dims, bool periodized = false);

  std::string Describe() const;
};

/// Real N x N symmetric Gram matrix, entry (i, j) = kappa(x_j - x_i).
struct KernelGram {
  Eigen::MatrixXd matrix;
  KernelDescriptor descriptor;
  int source_count = 0;
};

/// sum_{k in Gamma} exp(j 2 pi k.r) for 0-symmetric Gamma (real valued).
/// Rect supports use the separable closed form sin(K pi r) / sin(pi r).
double DirichletKernel(const Eigen::VectorXd& r, const FourierSupport& gamma);

/// exp(-|r|^2 / (2 sigma^2)).
double GaussianKernel(const Eigen::VectorXd& r, double sigma);

/// Gaussian summed over the periodic images r + m, m in {-1, 0, 1}^n.
double PeriodizedGaussianKernel(const Eigen::VectorXd& r, double sigma);

double EvaluateKernel(const Eigen::VectorXd& r, const KernelDescriptor& kernel);

/// Upper triangle is evaluated and mirrored, so the result is exactly
/// symmetric.
KernelGram GramMatrix(const PointCloud& x, const KernelDescriptor& kernel);
KernelGram GramMatrix(const Eigen::MatrixXd& points, const KernelDescriptor& kernel);

/// Count of eigenvalues above rel_tol * lambda_max.
int NumericalRank(const Eigen::MatrixXd& symmetric, double rel_tol);
inline int NumericalRank(const KernelGram& k, double rel_tol) {
  return NumericalRank(k.matrix, rel_tol);
}

struct EffectiveBandwidth {
  double cutoff = 0.0;          // |k| < 3 / (pi sigma)
  double support_estimate = 0;  // (6 / (pi sigma))^n
};

/// Frequencies beyond the cutoff carry negligible Gaussian Fourier weight.
EffectiveBandwidth GaussianEffectiveBandwidth(double sigma, int dims);

}  // namespace levelset

#endif  // LEVELSET_KERNEL_HPP_
