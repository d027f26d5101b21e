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
#include <numbers>
#include <random>

#include "doctest.h"
#include "levelset/curve.hpp"
#include "levelset/denoise.hpp"
#include "levelset/error.hpp"
#include "levelset/kernel.hpp"

namespace levelset {
namespace {

Eigen::MatrixXd RandomPsd(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n / 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
  return a * a.transpose();
}

PointCloud NoisyCircle(int count, double radius, double noise, unsigned seed) {
  Eigen::MatrixXd x(2, count);
  for (int i = 0; i < count; ++i) {
    const double t = 2 * std::numbers::pi * (i + 0.3) / count;
    x.col(i) << radius * std::cos(t), radius * std::sin(t);
  }
  return AddNoise(PointCloud(x), noise, seed);
}

double MeanCircleDistance(const Eigen::MatrixXd& x, double radius) {
  return (x.colwise().norm().array() - radius).abs().mean();
}

TEST_CASE("half inverse") {
  const Eigen::MatrixXd i5 = Eigen::MatrixXd::Identity(5, 5);
  CHECK((HalfInverse(i5, 1e-12) - i5).cwiseAbs().maxCoeff() < 1e-11);
  CHECK((HalfInverse(3.0 * i5, 1.0) - 0.5 * i5).cwiseAbs().maxCoeff() < 1e-15);
  const Eigen::MatrixXd k = RandomPsd(50, 3);
  const double gamma = 0.01;
  const Eigen::MatrixXd q = HalfInverse(k, gamma);
  CHECK(q == q.transpose());
  const Eigen::MatrixXd r = q * q * (k + gamma * Eigen::MatrixXd::Identity(50, 50));
  CHECK((r - Eigen::MatrixXd::Identity(50, 50)).cwiseAbs().maxCoeff() < 1e-8);
  CHECK_THROWS_AS(HalfInverse(k, 0.0), InputError);
  CHECK_THROWS_AS(HalfInverse(k, -1.0), InputError);
}

TEST_CASE("laplacian of identity inputs vanishes") {
  const double sigma = 0.5;
  const Eigen::MatrixXd i2 = Eigen::MatrixXd::Identity(2, 2);
  const LaplacianTriple t = LaplacianFrom(i2, i2, sigma);
  CHECK((t.weights + i2 / (sigma * sigma)).norm() == 0.0);
  CHECK((t.degrees.array() + 1.0 / (sigma * sigma)).abs().maxCoeff() == 0.0);
  CHECK(t.laplacian.norm() == 0.0);
  CHECK_THROWS_AS(LaplacianFrom(i2, Eigen::MatrixXd::Identity(3, 3), sigma), InputError);
}

TEST_CASE("laplacian rows sum to zero and match the pairwise form") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  for (int n : {3, 17, 60}) {
    Eigen::MatrixXd x(2, n);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = u(rng);
    const Eigen::MatrixXd k = GramMatrix(x, KernelDescriptor::Gaussian(0.15, 2)).matrix;
    const LaplacianTriple t = LaplacianFrom(k, HalfInverse(k, 0.05), 0.15);
    CHECK((OrderedRowSums(t.laplacian).array() == 0.0).all());
    CHECK(t.laplacian == t.laplacian.transpose());
    CHECK(t.weights == t.weights.transpose());
    const double lq = LaplacianQuadraticForm(x, t.laplacian);
    // Direct expansion of sum_{i<j} W_ij |x_i - x_j|^2.
    double brute = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) brute += t.weights(i, j) * (x.col(i) - x.col(j)).squaredNorm();
    }
    CHECK(lq == doctest::Approx(brute).epsilon(1e-8));
    CHECK(PairwiseQuadraticForm(x, t.weights) == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("clamped weights are non-negative") {
  const PointCloud y = NoisyCircle(40, 0.3, 0.02, 1);
  const Eigen::MatrixXd k = GramMatrix(y, KernelDescriptor::Gaussian(0.1, 2)).matrix;
  const LaplacianTriple t = LaplacianFrom(k, HalfInverse(k, 1e-3), 0.1, true);
  CHECK(t.weights.minCoeff() >= 0.0);
  CHECK((OrderedRowSums(t.laplacian).array() == 0.0).all());
}

TEST_CASE("surrogate cost") {
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(2, 6);
  const Eigen::MatrixXd i6 = Eigen::MatrixXd::Identity(6, 6);
  CHECK(SurrogateCost(x, x, i6, i6, 0.0) == 0.0);
  const Eigen::MatrixXd y = x.array() + 0.1;
  CHECK(SurrogateCost(x, y, i6, i6, 0.5) == doctest::Approx(12 * 0.01 + 0.5 * 6));
}

TEST_CASE("laplacian spectrum") {
  const Spectrum zero = LaplacianSpectrum(Eigen::MatrixXd::Zero(4, 4));
  CHECK(zero.values.cwiseAbs().maxCoeff() == 0.0);

  Eigen::Matrix3d path;
  path << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  const Spectrum s = LaplacianSpectrum(path);
  CHECK(std::abs(s.values[0]) < 1e-14);
  CHECK(s.values[1] == doctest::Approx(1.0));
  CHECK(s.values[2] == doctest::Approx(3.0));
  const Eigen::Vector3d ones = Eigen::Vector3d::Ones().normalized();
  CHECK(std::abs(s.vectors.col(0).dot(ones)) == doctest::Approx(1.0));

  const PointCloud y = NoisyCircle(30, 0.3, 0.02, 2);
  const Spectrum g = LaplacianSpectrum(GaussianLaplacian(y.coords(), 0.1).laplacian);
  CHECK(std::abs(g.vectors.col(0).dot(Eigen::VectorXd::Ones(30).normalized())) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("irls with lambda 0 returns the input") {
  const PointCloud y = NoisyCircle(50, 0.3, 0.02, 3);
  IrlsConfig cfg;
  cfg.lambda = 0.0;
  const IrlsResult r = IrlsDenoise(y, cfg);
  CHECK(r.denoised.coords() == y.coords());
  CHECK(r.trace.records.size() == 1);
  CHECK(r.trace.converged);
}

TEST_CASE("irls on a single point") {
  Eigen::MatrixXd one(2, 1);
  one << 0.1, -0.2;
  const IrlsResult r = IrlsDenoise(PointCloud(one), IrlsConfig{});
  CHECK(r.denoised.coords() == one);
  CHECK(r.final_laplacian.laplacian.norm() == 0.0);
}

TEST_CASE("irls config validation") {
  IrlsConfig cfg;
  cfg.sigma = 0.0;
  CHECK_THROWS_AS(cfg.Validate(), InputError);
  cfg = IrlsConfig{};
  cfg.gamma_decay = 1.5;
  CHECK_THROWS_AS(cfg.Validate(), InputError);
  cfg = IrlsConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.Validate(), InputError);
  cfg = IrlsConfig{};
  cfg.lambda = -1.0;
  CHECK_THROWS_AS(cfg.Validate(), InputError);
}

TEST_CASE("irls denoises a circle") {
  const PointCloud y = NoisyCircle(200, 0.3, 0.02, 11);
  IrlsConfig cfg;
  cfg.sigma = 0.2;
  cfg.lambda = 0.02;
  const IrlsResult r = IrlsDenoise(y, cfg);
  CHECK(r.trace.records.size() <= 50);
  CHECK(r.denoised.coords().allFinite());
  const double before = MeanCircleDistance(y.coords(), 0.3);
  const double after = MeanCircleDistance(r.denoised.coords(), 0.3);
  MESSAGE("mean distance " << before << " -> " << after);
  CHECK(after <= 0.5 * before);
  for (const IrlsRecord& rec : r.trace.records) {
    CHECK(rec.surrogate <= rec.surrogate_before + 1e-9);
  }
}

TEST_CASE("objective is non-increasing at fixed gamma") {
  const PointCloud y = NoisyCircle(120, 0.3, 0.02, 5);
  IrlsConfig cfg;
  cfg.gamma_decay = 1.0;
  cfg.max_iters = 30;
  const IrlsResult r = IrlsDenoise(y, cfg);
  for (size_t i = 1; i < r.trace.records.size(); ++i) {
    CHECK(r.trace.records[i].gamma == r.trace.records[0].gamma);
    CHECK(r.trace.records[i].objective <= r.trace.records[i - 1].objective + 1e-9);
  }
}

TEST_CASE("gamma decays to its floor") {
  const PointCloud y = NoisyCircle(30, 0.3, 0.02, 6);
  IrlsConfig cfg;
  cfg.gamma0 = 1.0;
  cfg.gamma_decay = 0.5;
  cfg.gamma_min = 0.2;
  cfg.max_iters = 6;
  cfg.conv_tol = 1e-300;
  const IrlsResult r = IrlsDenoise(y, cfg);
  REQUIRE(r.trace.records.size() == 6);
  CHECK(r.trace.records[0].gamma == 1.0);
  CHECK(r.trace.records[1].gamma == 0.5);
  CHECK(r.trace.records[2].gamma == 0.25);
  CHECK(r.trace.records[3].gamma == 0.2);
  CHECK(r.trace.records[5].gamma == 0.2);
}

}  // namespace
}  // namespace levelset
