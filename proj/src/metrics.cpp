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

#include "levelset/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "levelset/curve.hpp"
#include "levelset/error.hpp"
#include "levelset/feature.hpp"
#include "levelset/parallel.hpp"

namespace levelset {
namespace {

double PointSegmentDistance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                            const Eigen::Vector2d& b) {
  const Eigen::Vector2d d = b - a;
  const double len2 = d.squaredNorm();
  double t = len2 > 0.0 ? (p - a).dot(d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (p - (a + t * d)).norm();
}

// psi_i and its gradient for every basis function at one 2-D point, using
// separable exponentials.
struct BasisEval {
  Eigen::VectorXcd value;
  Eigen::VectorXcd dx;
  Eigen::VectorXcd dy;
};

class BasisEvaluator {
 public:
  explicit BasisEvaluator(const std::vector<CoefficientVector>& basis) {
    const FourierSupport& s = basis.front().support;
    lo_ = s.lower();
    hi_ = s.upper();
    coeffs_.resize(basis.size());
    for (size_t b = 0; b < basis.size(); ++b) {
      if (!(basis[b].support == s)) throw InputError("basis functions must share one support");
      Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(hi_[0] - lo_[0] + 1, hi_[1] - lo_[1] + 1);
      for (int m = 0; m < s.size(); ++m) {
        const Eigen::VectorXi k = s.frequency(m);
        c(k[0] - lo_[0], k[1] - lo_[1]) = basis[b].values[m];
      }
      coeffs_[b] = std::move(c);
    }
  }

  BasisEval operator()(double x, double y) const {
    const int nx = hi_[0] - lo_[0] + 1;
    const int ny = hi_[1] - lo_[1] + 1;
    Eigen::VectorXcd ex(nx), dex(nx), ey(ny), dey(ny);
    const double two_pi = 2.0 * std::numbers::pi;
    for (int a = 0; a < nx; ++a) {
      const int k = lo_[0] + a;
      ex[a] = std::polar(1.0, two_pi * k * x);
      dex[a] = Complex(0.0, two_pi * k) * ex[a];
    }
    for (int a = 0; a < ny; ++a) {
      const int k = lo_[1] + a;
      ey[a] = std::polar(1.0, two_pi * k * y);
      dey[a] = Complex(0.0, two_pi * k) * ey[a];
    }
    const int n = static_cast<int>(coeffs_.size());
    BasisEval out{Eigen::VectorXcd(n), Eigen::VectorXcd(n), Eigen::VectorXcd(n)};
    for (int b = 0; b < n; ++b) {
      const Eigen::VectorXcd cy = coeffs_[b] * ey;
      const Eigen::VectorXcd cdy = coeffs_[b] * dey;
      out.value[b] = (ex.transpose() * cy)(0);
      out.dx[b] = (dex.transpose() * cy)(0);
      out.dy[b] = (ex.transpose() * cdy)(0);
    }
    return out;
  }

 private:
  Eigen::VectorXi lo_;
  Eigen::VectorXi hi_;
  std::vector<Eigen::MatrixXcd> coeffs_;
};

double SumSquares(const BasisEval& e) { return e.value.squaredNorm(); }

// Box-constrained Gauss-Newton on the stacked residuals psi_i; returns the
// smallest sum of squares seen.
double CellMinimum(const BasisEvaluator& eval, double x0, double x1, double y0, double y1,
                   double corner_x, double corner_y, double threshold) {
  double best = std::numeric_limits<double>::infinity();
  const double starts[2][2] = {{corner_x, corner_y}, {0.5 * (x0 + x1), 0.5 * (y0 + y1)}};
  for (const auto& st : starts) {
    double x = st[0];
    double y = st[1];
    BasisEval e = eval(x, y);
    double f = SumSquares(e);
    best = std::min(best, f);
    for (int it = 0; it < 12 && best > threshold; ++it) {
      // Normal equations of the real 2-parameter least-squares problem.
      Eigen::Matrix2d jtj;
      jtj(0, 0) = e.dx.squaredNorm();
      jtj(1, 1) = e.dy.squaredNorm();
      jtj(0, 1) = jtj(1, 0) = e.dx.dot(e.dy).real();
      const Eigen::Vector2d jtr(e.dx.dot(e.value).real(), e.dy.dot(e.value).real());
      jtj.diagonal().array() += 1e-14 * (jtj.trace() + 1e-300);
      const Eigen::Vector2d step = -jtj.ldlt().solve(jtr);
      double t = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 8; ++ls, t *= 0.5) {
        const double nx = std::clamp(x + t * step[0], x0, x1);
        const double ny = std::clamp(y + t * step[1], y0, y1);
        const BasisEval trial = eval(nx, ny);
        const double ft = SumSquares(trial);
        if (ft < f) {
          x = nx;
          y = ny;
          e = trial;
          f = ft;
          moved = true;
          break;
        }
      }
      best = std::min(best, f);
      if (!moved) break;
    }
    if (best <= threshold) break;
  }
  return best;
}

}  // namespace

ContourSet RasterizeZeroSet(const std::function<double(double, double)>& f, const GridSpec& grid) {
  Eigen::MatrixXd values(grid.resolution, grid.resolution);
  for (int j = 0; j < grid.resolution; ++j) {
    for (int i = 0; i < grid.resolution; ++i) values(i, j) = f(grid.node(i), grid.node(j));
  }
  return ExtractZeroContours(values, grid);
}

ContourSet RasterizeZeroSet(const CoefficientVector& c, int grid_res) {
  return CurveContours(c, grid_res);
}

Eigen::VectorXd DistancesToContour(const PointCloud& x, const ContourSet& contour) {
  if (x.dims() != 2) throw InputError("contour distances need 2-D points");
  const auto segments = contour.Segments();
  if (segments.empty() && contour.points.empty()) throw InputError("empty zero set");
  Eigen::VectorXd out(x.count());
  ParallelFor(x.count(), [&](long j) {
    const Eigen::Vector2d p = x.coords().col(j);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [a, b] : segments) best = std::min(best, PointSegmentDistance(p, a, b));
    for (const auto& q : contour.points) best = std::min(best, (p - q).norm());
    out[j] = best;
  });
  return out;
}

Metrics DistanceMetrics(const PointCloud& x, const ContourSet& contour) {
  const Eigen::VectorXd d = DistancesToContour(x, contour);
  Metrics m;
  m.mean_distance = d.mean();
  m.max_distance = d.maxCoeff();
  return m;
}

Eigen::VectorXd CircleDistances(const PointCloud& x, double radius) {
  return (x.coords().colwise().norm().array() - radius).abs().matrix().transpose();
}

double SosResidual(const std::vector<CoefficientVector>& basis, const PointCloud& x) {
  double worst = 0.0;
  for (int j = 0; j < x.count(); ++j) {
    double s = 0.0;
    for (const auto& c : basis) s += std::norm(EvaluatePsi(c, x.point(j)));
    worst = std::max(worst, s);
  }
  return worst;
}

long CellMask::count() const {
  return static_cast<long>(std::count(bits.begin(), bits.end(), 1));
}

CellMask SignChangeMask(const Eigen::MatrixXd& values) {
  if (values.rows() != values.cols() || values.rows() < 2) throw InputError("square grid expected");
  const int n = static_cast<int>(values.rows()) - 1;
  CellMask mask{n, std::vector<unsigned char>(static_cast<size_t>(n) * n, 0)};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int neg = (values(i, j) < 0) + (values(i + 1, j) < 0) + (values(i, j + 1) < 0) +
                      (values(i + 1, j + 1) < 0);
      mask.bits[static_cast<size_t>(j) * n + i] = (neg != 0 && neg != 4) ? 1 : 0;
    }
  }
  return mask;
}

CellMask SosSublevelMask(const std::vector<CoefficientVector>& basis, const GridSpec& grid,
                         double threshold) {
  if (basis.empty()) throw InputError("sum-of-squares mask needs a non-empty basis");
  if (basis.front().support.dims() != 2) throw InputError("sum-of-squares mask is 2-D");
  const int res = grid.resolution;
  const int n = res - 1;
  const BasisEvaluator eval(basis);

  // sqrt(S) and a gradient bound for it at every node.
  Eigen::MatrixXd root = Eigen::MatrixXd::Zero(res, res);
  Eigen::MatrixXd slope = Eigen::MatrixXd::Zero(res, res);
  for (const auto& c : basis) {
    const double two_pi = 2.0 * std::numbers::pi;
    Eigen::VectorXcd vx(c.support.size()), vy(c.support.size());
    for (int m = 0; m < c.support.size(); ++m) {
      const Eigen::VectorXi k = c.support.frequency(m);
      vx[m] = Complex(0.0, two_pi * k[0]) * c.values[m];
      vy[m] = Complex(0.0, two_pi * k[1]) * c.values[m];
    }
    root += EvaluateOnGrid(c, grid).cwiseAbs2();
    slope += EvaluateOnGrid(CoefficientVector(c.support, vx), grid).cwiseAbs2();
    slope += EvaluateOnGrid(CoefficientVector(c.support, vy), grid).cwiseAbs2();
  }
  root = root.cwiseSqrt();
  slope = slope.cwiseSqrt();

  const double root_thr = std::sqrt(threshold);
  const double diag = grid.step() * std::sqrt(2.0);
  CellMask mask{n, std::vector<unsigned char>(static_cast<size_t>(n) * n, 0)};
  ParallelFor(n, [&](long jl) {
    const int j = static_cast<int>(jl);
    for (int i = 0; i < n; ++i) {
      const double lo_root = std::min({root(i, j), root(i + 1, j), root(i, j + 1), root(i + 1, j + 1)});
      const double hi_root = std::max({root(i, j), root(i + 1, j), root(i, j + 1), root(i + 1, j + 1)});
      const double hi_slope =
          std::max({slope(i, j), slope(i + 1, j), slope(i, j + 1), slope(i + 1, j + 1)});
      // sqrt(S) is Lipschitz with constant <= max |grad|; twice the largest
      // node gradient bounds it on one cell.
      if (hi_root - 2.0 * diag * hi_slope > root_thr) continue;
      int ci = i;
      int cj = j;
      for (int dj = 0; dj < 2; ++dj) {
        for (int di = 0; di < 2; ++di) {
          if (root(i + di, j + dj) < root(ci, cj)) {
            ci = i + di;
            cj = j + dj;
          }
        }
      }
      if (lo_root * lo_root <= threshold ||
          CellMinimum(eval, grid.node(i), grid.node(i + 1), grid.node(j), grid.node(j + 1),
                      grid.node(ci), grid.node(cj), threshold) <= threshold) {
        mask.bits[static_cast<size_t>(j) * n + i] = 1;
      }
    }
  });
  return mask;
}

double IntersectionOverUnion(const CellMask& a, const CellMask& b) {
  if (a.cells_per_side != b.cells_per_side) throw InputError("masks differ in size");
  long inter = 0;
  long uni = 0;
  for (size_t k = 0; k < a.bits.size(); ++k) {
    inter += a.bits[k] && b.bits[k];
    uni += a.bits[k] || b.bits[k];
  }
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double SubspaceAlignment(const Eigen::VectorXd& reference_values,
                         const Eigen::MatrixXd& reference_vectors, int index,
                         const Eigen::VectorXd& test, double cluster) {
  if (index < 0 || index >= reference_values.size()) throw InputError("eigenvector index out of range");
  if (reference_vectors.rows() != test.size()) throw InputError("eigenvector length mismatch");
  const double center = reference_values[index];
  const double radius = cluster * std::abs(center);
  double proj2 = 0.0;
  for (Eigen::Index m = 0; m < reference_values.size(); ++m) {
    if (std::abs(reference_values[m] - center) <= radius || m == index) {
      const double p = reference_vectors.col(m).dot(test);
      proj2 += p * p;
    }
  }
  const double tn = test.norm();
  if (tn == 0.0) throw InputError("zero test vector");
  return std::min(1.0, std::sqrt(proj2) / tn);
}

}  // namespace levelset
