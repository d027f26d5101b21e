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

#include "levelset/feature.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <numbers>
#include <sstream>

#include "levelset/error.hpp"
#include "levelset/parallel.hpp"

namespace levelset {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void CheckDims(int point_dims, const FourierSupport& support) {
  if (point_dims != support.dims()) {
    std::ostringstream os;
    os << "dimension mismatch: point has " << point_dims << " coordinates, support has "
       << support.dims();
    throw InputError(os.str());
  }
}

// Per-axis exponentials exp(j 2 pi (k - shift) x_i) for k in [lo, hi].
Eigen::MatrixXcd AxisExponentials(const Eigen::VectorXd& x, int lo, int hi, double shift) {
  Eigen::MatrixXcd e(x.size(), hi - lo + 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    for (int k = lo; k <= hi; ++k) e(i, k - lo) = std::polar(1.0, kTwoPi * (k - shift) * x[i]);
  }
  return e;
}

Eigen::MatrixXcd GridEvaluate(const CoefficientVector& c, const GridSpec& grid, double shift1,
                              double shift2) {
  if (c.support.dims() != 2) throw InputError("grid evaluation needs a 2-D support");
  if (grid.resolution < 2) throw InputError("grid resolution must be at least 2");
  const Eigen::VectorXi lo = c.support.lower();
  const Eigen::VectorXi hi = c.support.upper();
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(hi[0] - lo[0] + 1, hi[1] - lo[1] + 1);
  for (int m = 0; m < c.size(); ++m) {
    const Eigen::VectorXi k = c.support.frequency(m);
    coeffs(k[0] - lo[0], k[1] - lo[1]) = c.values[m];
  }
  const Eigen::VectorXd nodes = grid.nodes();
  const Eigen::MatrixXcd ex = AxisExponentials(nodes, lo[0], hi[0], shift1);
  const Eigen::MatrixXcd ey = AxisExponentials(nodes, lo[1], hi[1], shift2);
  return ex * coeffs * ey.transpose();
}

Eigen::VectorXd HalfCenter(const CoefficientVector& c) {
  if (!c.conj_symmetric) return Eigen::VectorXd::Zero(c.support.dims());
  return c.support.SymmetryCenterTwice()->cast<double>() * 0.5;
}

}  // namespace

Eigen::VectorXcd FeatureMap(const Eigen::VectorXd& x, const FourierSupport& gamma) {
  CheckDims(static_cast<int>(x.size()), gamma);
  const Eigen::VectorXd phase = gamma.frequencies().cast<double>().transpose() * x;
  Eigen::VectorXcd out(gamma.size());
  for (int m = 0; m < gamma.size(); ++m) out[m] = std::polar(1.0, kTwoPi * phase[m]);
  return out;
}

Complex EvaluatePsi(const CoefficientVector& c, const Eigen::VectorXd& r) {
  return c.values.transpose() * FeatureMap(r, c.support);
}

double EvaluateRealPsi(const CoefficientVector& c, const Eigen::VectorXd& r) {
  CheckDims(static_cast<int>(r.size()), c.support);
  const Eigen::VectorXd center = HalfCenter(c);
  double sum = 0.0;
  for (int m = 0; m < c.size(); ++m) {
    const double phase = kTwoPi * (c.support.frequency(m).cast<double>() - center).dot(r);
    sum += (c.values[m] * std::polar(1.0, phase)).real();
  }
  return sum;
}

FeatureMatrix BuildFeatureMatrix(const PointCloud& x, const FourierSupport& gamma) {
  CheckDims(x.dims(), gamma);
  FeatureMatrix phi{gamma, Eigen::MatrixXcd(gamma.size(), x.count())};
  ParallelFor(static_cast<std::size_t>(x.count()), [&](std::size_t i) {
    const auto col = static_cast<Eigen::Index>(i);
    phi.entries.col(col) = FeatureMap(x.coords().col(col), gamma);
  });
  return phi;
}

GramQ BuildGramQ(const PointCloud& x, const FourierSupport& gamma) {
  const FeatureMatrix phi = BuildFeatureMatrix(x, gamma);
  Eigen::MatrixXcd q = phi.entries.conjugate() * phi.entries.transpose();
  // Exact Hermitian symmetry; the product is symmetric only up to rounding.
  q = (0.5 * (q + q.adjoint())).eval();
  return GramQ{gamma, std::move(q), x.count()};
}

int FeatureRank(const FeatureMatrix& phi, double rel_tol) {
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(phi.entries);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  return static_cast<int>((s.array() > rel_tol * s[0]).count());
}

Recovery RecoverCoefficients(const GramQ& q, double rank_tol) {
  if (q.matrix.rows() != q.support.size() || q.matrix.cols() != q.support.size()) {
    throw InputError("Q does not match its support");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(q.matrix);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition of Q failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double lambda_min = lambda[0];
  const double lambda_max = std::max(lambda[lambda.size() - 1], 0.0);
  const double tol = rank_tol * lambda_max;

  Recovery out{CoefficientVector(q.support, eig.eigenvectors().col(0)), 0.0, 0.0, 0, false, false, {}};
  out.min_eigenvalue = lambda_min;
  out.max_eigenvalue = lambda_max;
  out.nullity = static_cast<int>((lambda.array() <= lambda_min + tol).count());
  out.ambiguous = out.nullity > 1;
  if (out.ambiguous) {
    std::ostringstream os;
    os << "ambiguous minimum eigenvector: smallest eigenvalue has multiplicity " << out.nullity
       << "; use the nullspace basis";
    out.warnings.push_back(os.str());
  }

  Eigen::VectorXcd v = eig.eigenvectors().col(0);
  bool projected = false;
  if (q.support.SymmetryCenterTwice()) {
    const std::vector<int> partner = q.support.PartnerIndices();
    Complex pairing = 0.0;
    for (Eigen::Index m = 0; m < v.size(); ++m) pairing += v[m] * v[partner[m]];
    if (std::abs(pairing) > 1e-8) {
      const Eigen::VectorXcd rotated = v * std::polar(1.0, -0.5 * std::arg(pairing));
      Eigen::VectorXcd sym = 0.5 * (rotated + ConjugateMirror(q.support, rotated));
      const double norm = sym.norm();
      if (norm > 0.5) {
        sym /= norm;
        const double residual = (sym.adjoint() * q.matrix * sym)(0, 0).real();
        if (residual - lambda_min <= 1e-8 * lambda_max) {
          v = sym;
          projected = true;
        }
      }
    }
  }
  if (projected) {
    NormalizeSign(v);
  } else {
    NormalizePhase(v);
  }
  out.coefficients = CoefficientVector(q.support, std::move(v), projected);
  out.projected = projected;

  if (q.support.dims() == 2 && q.support.shape() == ShapeKind::kRect && q.sample_count > 0) {
    const Bandwidth bw{q.support.extents()[0], q.support.extents()[1]};
    if (auto w = SubsampledWarning(q.sample_count, TotalSampleBound(bw, 1))) {
      out.warnings.push_back(*w);
    }
  }
  return out;
}

std::vector<CoefficientVector> NullspaceBasis(const GramQ& q, double rank_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(q.matrix);
  if (eig.info() != Eigen::Success) throw NumericalError("eigendecomposition of Q failed");
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  const double tol = rank_tol * std::max(lambda[lambda.size() - 1], 0.0);
  std::vector<CoefficientVector> basis;
  for (Eigen::Index i = 0; i < lambda.size() && lambda[i] <= tol; ++i) {
    Eigen::VectorXcd v = eig.eigenvectors().col(i);
    NormalizePhase(v);
    basis.emplace_back(q.support, std::move(v));
  }
  return basis;
}

Eigen::VectorXd GridSpec::nodes() const {
  Eigen::VectorXd out(resolution);
  for (int i = 0; i < resolution; ++i) out[i] = node(i);
  return out;
}

Eigen::MatrixXcd EvaluateOnGrid(const CoefficientVector& c, const GridSpec& grid) {
  return GridEvaluate(c, grid, 0.0, 0.0);
}

Eigen::MatrixXd EvaluateRealOnGrid(const CoefficientVector& c, const GridSpec& grid) {
  const Eigen::VectorXd center = HalfCenter(c);
  return GridEvaluate(c, grid, center[0], center[1]).real();
}

Field2D SumOfSquaresField(const std::vector<CoefficientVector>& basis, const GridSpec& grid) {
  if (basis.empty()) throw InputError("sum-of-squares field needs a non-empty basis");
  Field2D field{grid, Eigen::MatrixXd::Zero(grid.resolution, grid.resolution)};
  for (const auto& c : basis) field.values += EvaluateOnGrid(c, grid).cwiseAbs2();
  return field;
}

long TotalSampleBound(Bandwidth total, int factor_count, std::optional<Bandwidth> gamma) {
  if (factor_count < 1) throw InputError("at least one irreducible factor is required");
  const long outer = gamma ? gamma->k1 + gamma->k2 : total.k1 + total.k2;
  return outer * (total.k1 + total.k2 + 2L * (factor_count - 1));
}

SampleBounds MinSamples(const std::vector<Bandwidth>& factors, Bandwidth total,
                        std::optional<Bandwidth> gamma) {
  if (factors.empty()) throw InputError("at least one irreducible factor is required");
  if (total.k1 < 1 || total.k2 < 1) throw InputError("bandwidths must be positive");
  if (gamma && (gamma->k1 < total.k1 || gamma->k2 < total.k2)) {
    throw InputError("overestimated support must contain the true support");
  }
  SampleBounds out;
  const long outer = gamma ? gamma->k1 + gamma->k2 : total.k1 + total.k2;
  long sum1 = 0;
  long sum2 = 0;
  for (const Bandwidth& f : factors) {
    if (f.k1 < 1 || f.k2 < 1) throw InputError("bandwidths must be positive");
    const long bound = outer * (f.k1 + f.k2);
    out.per_factor_bound.push_back(bound);
    out.per_factor_min.push_back(bound + 1);
    sum1 += f.k1;
    sum2 += f.k2;
  }
  const int j = static_cast<int>(factors.size());
  if (sum1 - (j - 1) != total.k1 || sum2 - (j - 1) != total.k2) {
    out.warnings.push_back(
        "factor bandwidths are inconsistent with the total bandwidth "
        "(expected sum of factor sizes minus (J-1) per axis)");
  }
  out.total_bound = TotalSampleBound(total, j, gamma);
  out.total_min = out.total_bound + 1;
  return out;
}

std::optional<std::string> SubsampledWarning(long n, long bound) {
  if (n > bound) return std::nullopt;
  std::ostringstream os;
  os << "sub-sampled: " << n << " points do not exceed the sampling bound " << bound;
  return os.str();
}

}  // namespace levelset
