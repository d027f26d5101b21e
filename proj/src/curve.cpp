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

#include "levelset/curve.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "levelset/error.hpp"
#include "levelset/feature.hpp"

namespace levelset {
namespace {

std::uint64_t SplitMix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr int kSignCheckResolution = 256;
constexpr int kMaxDraws = 1000;

Eigen::VectorXcd DrawSymmetric(const FourierSupport& support, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXcd z(support.size());
  for (int m = 0; m < support.size(); ++m) {
    const double re = normal(rng);
    const double im = normal(rng);
    z[m] = Complex(re, im);
  }
  Eigen::VectorXcd c = 0.5 * (z + ConjugateMirror(support, z));
  return c / c.norm();
}

CoefficientVector AsSymmetric(const CoefficientVector& c) {
  if (c.conj_symmetric) return c;
  if (c.support.SymmetryCenterTwice() && c.SymmetryDefect() <= 1e-9 * c.values.norm()) {
    return CoefficientVector(c.support, c.values, true);
  }
  throw InputError("curve sampling needs conjugate-symmetric coefficients (a real potential)");
}

// Bisection along the crossing edge on the real potential.
std::optional<Eigen::Vector2d> RefineOnEdge(const CoefficientVector& c, const Eigen::Vector2d& a,
                                            const Eigen::Vector2d& b,
                                            const Eigen::Vector2d& guess) {
  auto g = [&](double t) { return EvaluateRealPsi(c, a + t * (b - a)); };
  double lo = 0.0;
  double hi = 1.0;
  double g_lo = g(lo);
  double g_hi = g(hi);
  if (g_lo == 0.0) return a;
  if (g_hi == 0.0) return b;
  if ((g_lo < 0.0) == (g_hi < 0.0)) {
    if (std::abs(EvaluateRealPsi(c, guess)) < 1e-13) return guess;
    return std::nullopt;
  }
  double t = 0.5;
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    const double g_mid = g(t);
    if (std::abs(g_mid) < 1e-13 || hi - lo < 1e-17) break;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = t;
      g_lo = g_mid;
    } else {
      hi = t;
    }
  }
  return a + t * (b - a);
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = SplitMix(master);
  for (std::uint64_t v : path) s = SplitMix(s ^ SplitMix(v + 0x632be59bd9b4e019ULL));
  return s;
}

CurveInstance RandomCurve(const FourierSupport& lambda, std::uint64_t seed) {
  if (lambda.dims() != 2) throw InputError("random curves are 2-D");
  if (!lambda.SymmetryCenterTwice()) throw InputError("curve support must be symmetric about its center");
  const GridSpec check{kSignCheckResolution};
  const std::optional<int> zero = lambda.IndexOf(Eigen::VectorXi::Zero(2));
  const bool has_constant = zero && lambda.SymmetryCenterTwice()->isZero();

  for (int draw = 0; draw < kMaxDraws; ++draw) {
    const std::uint64_t s = draw == 0 ? seed : DeriveSeed(seed, {static_cast<std::uint64_t>(draw)});
    CoefficientVector c(lambda, DrawSymmetric(lambda, s), true);
    Eigen::MatrixXd g = EvaluateRealOnGrid(c, check);
    if (has_constant) {
      c.values[*zero] -= 0.5 * (g.minCoeff() + g.maxCoeff());
      c.values /= c.values.norm();
      g = EvaluateRealOnGrid(c, check);
    }
    if (g.minCoeff() < 0.0 && g.maxCoeff() > 0.0) {
      return CurveInstance{std::move(c), {}, seed, kSignCheckResolution};
    }
  }
  throw SamplingError("could not draw a curve with a non-empty zero set");
}

CurveInstance RandomProductCurve(const std::vector<FourierSupport>& factor_supports,
                                 std::uint64_t seed) {
  if (factor_supports.empty()) throw InputError("product curve needs at least one factor");
  std::vector<CoefficientVector> factors;
  for (size_t j = 0; j < factor_supports.size(); ++j) {
    factors.push_back(RandomCurve(factor_supports[j], DeriveSeed(seed, {j})).coefficients);
  }
  CoefficientVector product = factors.front();
  for (size_t j = 1; j < factors.size(); ++j) product = Multiply(product, factors[j]);
  product.values /= product.values.norm();
  return CurveInstance{Recenter(product), std::move(factors), seed, kSignCheckResolution};
}

ContourSet CurveContours(const CoefficientVector& c, int grid_res) {
  const GridSpec grid{grid_res};
  return ExtractZeroContours(EvaluateRealOnGrid(AsSymmetric(c), grid), grid);
}

PointCloud SampleCurve(const CoefficientVector& coefficients, int count, int grid_res) {
  if (count < 1) throw InputError("sample count must be at least 1");
  const CoefficientVector c = AsSymmetric(coefficients);
  const GridSpec grid{grid_res};
  const ContourSet contours = CurveContours(c, grid_res);
  const int total = contours.size();
  if (total < count) {
    throw SamplingError("zero set has " + std::to_string(total) + " grid crossings, " +
                        std::to_string(count) + " requested; increase the grid resolution");
  }

  // Crossings in traversal order with their cumulative arc position.
  std::vector<int> order;
  std::vector<double> position;
  double length = 0.0;
  for (size_t k = 0; k < contours.chains.size(); ++k) {
    const auto& chain = contours.chains[k];
    for (size_t m = 0; m < chain.size(); ++m) {
      if (m > 0) length += (contours.points[chain[m]] - contours.points[chain[m - 1]]).norm();
      order.push_back(chain[m]);
      position.push_back(length);
    }
    if (contours.closed[k] && chain.size() > 2) {
      length += (contours.points[chain.front()] - contours.points[chain.back()]).norm();
    }
  }

  Eigen::MatrixXd out(2, count);
  int prev = -1;
  int filled = 0;
  for (int i = 0; i < count; ++i) {
    const double target = (i + 0.5) * length / count;
    const auto it = std::lower_bound(position.begin(), position.end(), target);
    int pick = static_cast<int>(it - position.begin());
    if (pick > 0 && (pick == total || target - position[pick - 1] < position[pick] - target)) --pick;
    pick = std::clamp(pick, prev + 1, total - (count - i));
    std::optional<Eigen::Vector2d> refined;
    while (!refined && pick <= total - (count - i)) {
      const ContourSet::Edge& e = contours.edges[order[pick]];
      const Eigen::Vector2d a(grid.node(e.i0), grid.node(e.j0));
      const Eigen::Vector2d b(grid.node(e.i1), grid.node(e.j1));
      refined = RefineOnEdge(c, a, b, contours.points[order[pick]]);
      if (!refined) ++pick;
    }
    if (!refined) throw SamplingError("could not refine enough zero crossings");
    const Eigen::VectorXd p = *refined;
    if (std::abs(EvaluatePsi(c, p)) >= 1e-10) {
      throw SamplingError("refined sample does not satisfy |psi| < 1e-10");
    }
    out.col(filled++) = p;
    prev = pick;
  }
  return PointCloud(std::move(out));
}

PointCloud SampleCurve(const CurveInstance& curve, int count, int grid_res) {
  return SampleCurve(curve.coefficients, count, grid_res);
}

PointCloud SampleFactors(const CurveInstance& curve, const std::vector<int>& counts, int grid_res) {
  if (curve.factors.size() != counts.size()) throw InputError("one sample count per factor is required");
  std::vector<Eigen::MatrixXd> parts;
  Eigen::Index total = 0;
  for (size_t j = 0; j < counts.size(); ++j) {
    parts.push_back(SampleCurve(curve.factors[j], counts[j], grid_res).coords());
    total += parts.back().cols();
  }
  Eigen::MatrixXd out(2, total);
  Eigen::Index col = 0;
  for (const auto& p : parts) {
    out.middleCols(col, p.cols()) = p;
    col += p.cols();
  }
  return PointCloud(std::move(out));
}

PointCloud AddNoise(const PointCloud& x, double sigma_noise, std::uint64_t seed) {
  if (!(sigma_noise >= 0.0) || !std::isfinite(sigma_noise)) {
    throw InputError("noise level must be non-negative");
  }
  if (sigma_noise == 0.0) return x;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma_noise);
  Eigen::MatrixXd out = x.coords();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    for (Eigen::Index d = 0; d < out.rows(); ++d) out(d, j) += normal(rng);
  }
  return PointCloud::Clamped(std::move(out));
}

}  // namespace levelset
