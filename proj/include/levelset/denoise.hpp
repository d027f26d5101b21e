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

#ifndef LEVELSET_DENOISE_HPP_
#define LEVELSET_DENOISE_HPP_

#include <Eigen/Core>

#include <optional>
#include <vector>

#include "levelset/kernel.hpp"
#include "levelset/point_cloud.hpp"

namespace levelset {

/// Settings for kernel nuclear-norm denoising by IRLS.
struct IrlsConfig {
  double lambda = 0.01;   // regularisation weight
  double sigma = 0.1;     // Gaussian kernel width
  // Smoothing gamma; unset means 1e-2 * lambda_max(K(Y)).
  std::optional<double> gamma0;
  double gamma_decay = 0.8;
  // Floor for gamma; unset means 1e-8 * lambda_max(K(Y)).
  std::optional<double> gamma_min;
  int max_iters = 50;
  double conv_tol = 1e-6;  // relative Frobenius change of X
  // Zero out negative weights (classical non-negative graph).
  bool clamp_weights = false;

  /// Throws InputError on non-positive or out-of-range fields.
  void Validate() const;
};

/// W, D = diag(W 1), L = D - W.
struct LaplacianTriple {
  Eigen::MatrixXd weights;
  Eigen::VectorXd degrees;
  Eigen::MatrixXd laplacian;
};

struct IrlsRecord {
  int iteration = 0;
  double gamma = 0.0;
  double data_term = 0.0;       // |X_n - Y|^2
  double trace_term = 0.0;      // trace(K(X_n) Q_n)
  double surrogate_before = 0;  // surrogate at X_{n-1} with Q_n
  double surrogate = 0.0;       // surrogate at X_n with Q_n
  double nuclear_norm = 0.0;    // sum_i sqrt(lambda_i(K(X_n)))
  double objective = 0.0;       // |X_n - Y|^2 + 2 lambda trace((K(X_n) + gamma I)^{1/2})
  double relative_change = 0.0;
  double negative_weight_fraction = 0.0;
};

struct IrlsTrace {
  std::vector<IrlsRecord> records;
  bool converged = false;
  long clamped_coordinates = 0;
};

struct IrlsResult {
  PointCloud denoised;
  IrlsTrace trace;
  // Laplacians built in the first and in the last iteration.
  LaplacianTriple first_laplacian;
  LaplacianTriple final_laplacian;
};

/// (K + gamma I)^{-1/2} through the eigendecomposition of K. Eigenvalues of K
/// below zero (rounding) are treated as zero.
Eigen::MatrixXd HalfInverse(const Eigen::MatrixXd& k, double gamma);

/// W = -(1/sigma^2) (K o Q), symmetrised; L_ii is the negated sum of the
/// off-diagonal entries of its row taken in index order, so that row sums
/// evaluated in that order are exactly zero.
LaplacianTriple LaplacianFrom(const Eigen::MatrixXd& k, const Eigen::MatrixXd& q, double sigma,
                              bool clamp_weights = false);

/// Row sums of L accumulated off-diagonal first (index order), then the
/// diagonal.
Eigen::VectorXd OrderedRowSums(const Eigen::MatrixXd& l);

/// |X - Y|_F^2 + lambda trace(K Q).
double SurrogateCost(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const Eigen::MatrixXd& k,
                     const Eigen::MatrixXd& q, double lambda);

/// trace(X L X^T) and the equivalent pairwise sum over i < j of
/// W_ij |x_i - x_j|^2.
double LaplacianQuadraticForm(const Eigen::MatrixXd& x, const Eigen::MatrixXd& l);
double PairwiseQuadraticForm(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w);

struct Spectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, largest-modulus entry positive
};

Spectrum LaplacianSpectrum(const Eigen::MatrixXd& l);

/// Classical Laplacian with Gaussian weights W_ij = kappa(x_j - x_i), i != j.
LaplacianTriple GaussianLaplacian(const Eigen::MatrixXd& points, double sigma);

/// Minimises |X - Y|^2 + lambda |Phi(X)|_* by iteratively reweighted least
/// squares.
///
/// Each iteration builds K = K(X_{n-1}), Q = (K + gamma_n I)^{-1/2} and the
/// Laplacian of W = -(K o Q)/sigma^2, then solves
/// X_n (I + lambda L) = Y row by row. gamma decays geometrically down to its
/// floor. Stops when the relative change drops below conv_tol.
IrlsResult IrlsDenoise(const PointCloud& y, const IrlsConfig& cfg);

}  // namespace levelset

#endif  // LEVELSET_DENOISE_HPP_
