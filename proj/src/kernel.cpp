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

#include "levelset/kernel.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <sstream>

#include "levelset/error.hpp"
#include "levelset/parallel.hpp"

namespace levelset {
namespace {

using std::numbers::pi;

// sin(K pi r) / sin(pi r) for odd K; the removable singularities at integer r
// use the Taylor expansion K (1 - (K^2 - 1) pi^2 d^2 / 6) in d = r - round(r).
double Dirichlet1D(double r, int k) {
  const double d = r - std::round(r);
  const double s = std::sin(pi * r);
  if (std::abs(s) < 1e-8) {
    return k * (1.0 - (static_cast<double>(k) * k - 1.0) * pi * pi * d * d / 6.0);
  }
  return std::sin(k * pi * r) / s;
}

}  // namespace

KernelDescriptor KernelDescriptor::Dirichlet(FourierSupport gamma) {
  if (!gamma.IsSymmetricAboutZero()) {
    throw InputError("dirichlet kernel needs a support symmetric about 0 (complex kernels are unsupported)");
  }
  KernelDescriptor k;
  k.kind = KernelKind::kDirichlet;
  k.dims = gamma.dims();
  k.support = std::move(gamma);
  return k;
}

KernelDescriptor KernelDescriptor::Gaussian(double sigma, int dims, bool periodized) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InputError("gaussian sigma must be positive");
  if (dims < 1) throw InputError("kernel dimension must be at least 1");
  KernelDescriptor k;
  k.kind = KernelKind::kGaussian;
  k.dims = dims;
  k.sigma = sigma;
  k.periodized = periodized;
  return k;
}

std::string KernelDescriptor::Describe() const {
  std::ostringstream os;
  if (kind == KernelKind::kDirichlet) {
    os << "dirichlet(" << support->Describe() << ")";
  } else {
    os << (periodized ? "periodized-gaussian(" : "gaussian(") << sigma << ")";
  }
  return os.str();
}

double DirichletKernel(const Eigen::VectorXd& r, const FourierSupport& gamma) {
  if (r.size() != gamma.dims()) throw InputError("dimension mismatch in dirichlet kernel");
  if (!gamma.IsSymmetricAboutZero()) {
    throw InputError("dirichlet kernel needs a support symmetric about 0");
  }
  if (gamma.shape() == ShapeKind::kRect) {
    double value = 1.0;
    for (int d = 0; d < gamma.dims(); ++d) value *= Dirichlet1D(r[d], gamma.extents()[d]);
    return value;
  }
  double value = 0.0;
  for (int m = 0; m < gamma.size(); ++m) {
    value += std::cos(2.0 * pi * gamma.frequency(m).cast<double>().dot(r));
  }
  return value;
}

double GaussianKernel(const Eigen::VectorXd& r, double sigma) {
  if (!(sigma > 0.0)) throw InputError("gaussian sigma must be positive");
  return std::exp(-r.squaredNorm() / (2.0 * sigma * sigma));
}

double PeriodizedGaussianKernel(const Eigen::VectorXd& r, double sigma) {
  const Eigen::Index n = r.size();
  Eigen::VectorXi offset = Eigen::VectorXi::Constant(n, -1);
  double sum = 0.0;
  while (true) {
    sum += GaussianKernel(r + offset.cast<double>(), sigma);
    Eigen::Index d = n - 1;
    for (; d >= 0; --d) {
      if (++offset[d] <= 1) break;
      offset[d] = -1;
    }
    if (d < 0) break;
  }
  return sum;
}

double EvaluateKernel(const Eigen::VectorXd& r, const KernelDescriptor& kernel) {
  if (kernel.kind == KernelKind::kDirichlet) return DirichletKernel(r, *kernel.support);
  return kernel.periodized ? PeriodizedGaussianKernel(r, kernel.sigma)
                           : GaussianKernel(r, kernel.sigma);
}

KernelGram GramMatrix(const Eigen::MatrixXd& points, const KernelDescriptor& kernel) {
  if (points.rows() != kernel.dims) throw InputError("dimension mismatch between points and kernel");
  const Eigen::Index n = points.cols();
  Eigen::MatrixXd k(n, n);
  ParallelFor(static_cast<std::size_t>(n), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    for (Eigen::Index j = i; j < n; ++j) {
      k(i, j) = EvaluateKernel(points.col(j) - points.col(i), kernel);
    }
  });
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) k(i, j) = k(j, i);
  }
  return KernelGram{std::move(k), kernel, static_cast<int>(n)};
}

KernelGram GramMatrix(const PointCloud& x, const KernelDescriptor& kernel) {
  return GramMatrix(x.coords(), kernel);
}

int NumericalRank(const Eigen::MatrixXd& symmetric, double rel_tol) {
  if (symmetric.rows() != symmetric.cols()) throw InputError("rank needs a square matrix");
  if (symmetric.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double top = lambda.cwiseAbs().maxCoeff();
  if (top == 0.0) return 0;
  return static_cast<int>((lambda.array() > rel_tol * top).count());
}

EffectiveBandwidth GaussianEffectiveBandwidth(double sigma, int dims) {
  if (!(sigma > 0.0)) throw InputError("gaussian sigma must be positive");
  if (dims < 1) throw InputError("dimension must be at least 1");
  return {3.0 / (pi * sigma), std::pow(6.0 / (pi * sigma), dims)};
}

}  // namespace levelset
