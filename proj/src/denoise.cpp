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

#include "levelset/denoise.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "levelset/error.hpp"

namespace levelset {
namespace {

Eigen::VectorXd SymmetricEigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
  return eig.eigenvalues();
}

// Builds D and L from symmetric weights with the ordered-row-sum diagonal.
LaplacianTriple FromWeights(Eigen::MatrixXd w) {
  const Eigen::Index n = w.rows();
  LaplacianTriple out;
  out.degrees = Eigen::VectorXd::Zero(n);
  out.laplacian = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double off = 0.0;
    double degree = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      degree += w(i, j);
      if (j == i) continue;
      out.laplacian(i, j) = -w(i, j);
      off += out.laplacian(i, j);
    }
    out.laplacian(i, i) = -off;
    out.degrees[i] = degree;
  }
  out.weights = std::move(w);
  return out;
}

}  // namespace

void IrlsConfig::Validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InputError("irls lambda must be >= 0");
  if (!positive(sigma)) throw InputError("irls sigma must be positive");
  if (gamma0 && !positive(*gamma0)) throw InputError("irls gamma0 must be positive");
  if (!positive(gamma_decay) || gamma_decay > 1.0) {
    throw InputError("irls gamma_decay must lie in (0, 1]");
  }
  if (gamma_min && !positive(*gamma_min)) throw InputError("irls gamma_min must be positive");
  if (max_iters < 1) throw InputError("irls max_iters must be at least 1");
  if (!positive(conv_tol)) throw InputError("irls conv_tol must be positive");
}

Eigen::MatrixXd HalfInverse(const Eigen::MatrixXd& k, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InputError("half inverse needs gamma > 0");
  if (k.rows() != k.cols()) throw InputError("half inverse needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
  const Eigen::VectorXd scale =
      (eig.eigenvalues().cwiseMax(0.0).array() + gamma).rsqrt().matrix();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd q = v * scale.asDiagonal() * v.transpose();
  return 0.5 * (q + q.transpose());
}

LaplacianTriple LaplacianFrom(const Eigen::MatrixXd& k, const Eigen::MatrixXd& q, double sigma,
                              bool clamp_weights) {
  if (k.rows() != q.rows() || k.cols() != q.cols() || k.rows() != k.cols()) {
    throw InputError("kernel and weight matrices must be square and of equal size");
  }
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  Eigen::MatrixXd w = -(k.cwiseProduct(q)) / (sigma * sigma);
  w = (0.5 * (w + w.transpose())).eval();
  if (clamp_weights) w = w.cwiseMax(0.0);
  return FromWeights(std::move(w));
}

Eigen::VectorXd OrderedRowSums(const Eigen::MatrixXd& l) {
  Eigen::VectorXd sums(l.rows());
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < l.cols(); ++j) {
      if (j != i) s += l(i, j);
    }
    sums[i] = s + l(i, i);
  }
  return sums;
}

double SurrogateCost(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y, const Eigen::MatrixXd& k,
                     const Eigen::MatrixXd& q, double lambda) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw InputError("X and Y differ in shape");
  if (k.rows() != x.cols() || q.rows() != x.cols() || k.cols() != q.cols()) {
    throw InputError("kernel matrices do not match the point count");
  }
  // trace(K Q) = sum_ij K_ij Q_ji
  return (x - y).squaredNorm() + lambda * k.cwiseProduct(q.transpose()).sum();
}

double LaplacianQuadraticForm(const Eigen::MatrixXd& x, const Eigen::MatrixXd& l) {
  return (x * l * x.transpose()).trace();
}

double PairwiseQuadraticForm(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < x.cols(); ++j) {
      sum += w(i, j) * (x.col(i) - x.col(j)).squaredNorm();
    }
  }
  return sum;
}

Spectrum LaplacianSpectrum(const Eigen::MatrixXd& l) {
  if (l.rows() != l.cols()) throw InputError("spectrum needs a square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(l);
  if (eig.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
  Spectrum out{eig.eigenvalues(), eig.eigenvectors()};
  for (Eigen::Index c = 0; c < out.vectors.cols(); ++c) {
    Eigen::Index pivot = 0;
    const double top = out.vectors.col(c).cwiseAbs().maxCoeff();
    while (std::abs(out.vectors(pivot, c)) < top * (1.0 - 1e-12)) ++pivot;
    if (out.vectors(pivot, c) < 0.0) out.vectors.col(c) *= -1.0;
  }
  return out;
}

LaplacianTriple GaussianLaplacian(const Eigen::MatrixXd& points, double sigma) {
  Eigen::MatrixXd w =
      GramMatrix(points, KernelDescriptor::Gaussian(sigma, static_cast<int>(points.rows()))).matrix;
  w.diagonal().setZero();
  return FromWeights(std::move(w));
}

IrlsResult IrlsDenoise(const PointCloud& y, const IrlsConfig& cfg) {
  cfg.Validate();
  const Eigen::MatrixXd& target = y.coords();
  const Eigen::Index n = target.cols();
  const KernelDescriptor kernel = KernelDescriptor::Gaussian(cfg.sigma, y.dims());

  Eigen::MatrixXd x = target;
  Eigen::MatrixXd k = GramMatrix(x, kernel).matrix;
  const double lambda_max = SymmetricEigenvalues(k).maxCoeff();
  double gamma = cfg.gamma0.value_or(1e-2 * lambda_max);
  const double gamma_min = cfg.gamma_min.value_or(1e-8 * lambda_max);

  IrlsTrace trace;
  LaplacianTriple first;
  LaplacianTriple last;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const Eigen::MatrixXd q = HalfInverse(k, gamma);
    LaplacianTriple lap = LaplacianFrom(k, q, cfg.sigma, cfg.clamp_weights);
    if ((lap.laplacian.array() != lap.laplacian.transpose().array()).any() ||
        (OrderedRowSums(lap.laplacian).array() != 0.0).any()) {
      throw NumericalError("laplacian lost symmetry or zero row sums", it);
    }

    IrlsRecord rec;
    rec.iteration = it;
    rec.gamma = gamma;
    rec.surrogate_before = SurrogateCost(x, target, k, q, cfg.lambda);
    long negative = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) negative += (i != j && lap.weights(i, j) < 0.0);
    }
    rec.negative_weight_fraction = n > 1 ? static_cast<double>(negative) / (n * (n - 1)) : 0.0;

    const Eigen::LDLT<Eigen::MatrixXd> solver(identity + cfg.lambda * lap.laplacian);
    if (solver.info() != Eigen::Success || !(solver.rcond() > 1e-14)) {
      throw NumericalError("I + lambda L is numerically singular at iteration " + std::to_string(it), it);
    }
    Eigen::MatrixXd next = solver.solve(target.transpose()).transpose();
    if (!next.allFinite()) {
      throw NumericalError("non-finite iterate at iteration " + std::to_string(it), it);
    }

    const Eigen::MatrixXd k_next = GramMatrix(next, kernel).matrix;
    const Eigen::VectorXd mu = SymmetricEigenvalues(k_next).cwiseMax(0.0);
    rec.data_term = (next - target).squaredNorm();
    rec.trace_term = k_next.cwiseProduct(q.transpose()).sum();
    rec.surrogate = rec.data_term + cfg.lambda * rec.trace_term;
    rec.nuclear_norm = mu.cwiseSqrt().sum();
    rec.objective = rec.data_term + 2.0 * cfg.lambda * (mu.array() + gamma).sqrt().sum();
    const double base = x.norm();
    rec.relative_change = (next - x).norm() / (base > 0.0 ? base : 1.0);
    trace.records.push_back(rec);

    if (it == 1) first = lap;
    last = std::move(lap);
    x = std::move(next);
    k = k_next;
    if (rec.relative_change < cfg.conv_tol) {
      trace.converged = true;
      break;
    }
    gamma = std::max(cfg.gamma_decay * gamma, gamma_min);
  }

  long clamped = 0;
  PointCloud out = PointCloud::Clamped(x, &clamped);
  trace.clamped_coordinates = clamped;
  return IrlsResult{std::move(out), std::move(trace), std::move(first), std::move(last)};
}

}  // namespace levelset
