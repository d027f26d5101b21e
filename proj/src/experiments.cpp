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

#include "levelset/experiments.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include "levelset/curve.hpp"
#include "levelset/error.hpp"
#include "levelset/feature.hpp"
#include "levelset/parallel.hpp"

namespace levelset {
namespace {

constexpr int kMaxCurveRedraws = 20;

}  // namespace

void PhaseTransitionConfig::Validate() const {
  if (ks.empty()) throw InputError("phase transition needs at least one bandwidth");
  for (int k : ks) {
    if (k < 1 || k > 32) throw InputError("bandwidth K must lie in [1, 32]");
  }
  if (n_min < 1 || n_max < n_min || n_step < 1) throw InputError("sample-count range is empty");
  if (trials < 1) throw InputError("trial count must be positive");
  if (!(success_threshold > 0.0 && success_threshold <= 1.0)) {
    throw InputError("success threshold must lie in (0, 1]");
  }
  if (grid_resolution < 8) throw InputError("grid resolution must be at least 8");
}

std::vector<int> PhaseTransitionConfig::SampleCounts() const {
  std::vector<int> ns;
  for (int n = n_min; n <= n_max; n += n_step) ns.push_back(n);
  return ns;
}

PhaseTransitionResult RunPhaseTransition(const PhaseTransitionConfig& cfg) {
  cfg.Validate();
  PhaseTransitionResult out;
  out.config = cfg;
  out.ks = cfg.ks;
  out.ns = cfg.SampleCounts();
  const long nk = static_cast<long>(out.ks.size());
  const long nn = static_cast<long>(out.ns.size());
  for (int k : out.ks) {
    const SampleBounds b = MinSamples({Bandwidth{k, k}}, Bandwidth{k, k});
    out.theory_bound.push_back(b.total_bound);
    out.theory_min.push_back(b.total_min);
    out.support_size.push_back(static_cast<long>(k) * k);
  }

  std::vector<unsigned char> hit(static_cast<size_t>(nk * nn * cfg.trials), 0);
  std::atomic<long> redraws{0};
  ParallelFor(nk * nn * cfg.trials, [&](long flat) {
    const long t = flat % cfg.trials;
    const long cell = flat / cfg.trials;
    const int k = out.ks[cell / nn];
    const int n = out.ns[cell % nn];
    const std::uint64_t trial_seed =
        DeriveSeed(cfg.seed, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(n),
                              static_cast<std::uint64_t>(t)});
    const FourierSupport lambda = FourierSupport::Rect({k, k});
    for (int attempt = 0; attempt < kMaxCurveRedraws; ++attempt) {
      const std::uint64_t s =
          attempt == 0 ? trial_seed : DeriveSeed(trial_seed, {0x72656472ULL, static_cast<std::uint64_t>(attempt)});
      try {
        const CurveInstance curve = RandomCurve(lambda, s);
        const PointCloud x = SampleCurve(curve, n, cfg.grid_resolution);
        const Recovery rec = RecoverCoefficients(BuildGramQ(x, lambda));
        hit[flat] = Correlation(rec.coefficients, curve.coefficients) > cfg.success_threshold;
        return;
      } catch (const SamplingError&) {
        redraws.fetch_add(1);
      }
    }
    throw SamplingError("no samplable curve after repeated redraws");
  });

  out.success = Eigen::MatrixXd::Zero(nk, nn);
  for (long cell = 0; cell < nk * nn; ++cell) {
    int wins = 0;
    for (int t = 0; t < cfg.trials; ++t) wins += hit[cell * cfg.trials + t];
    out.success(cell / nn, cell % nn) = static_cast<double>(wins) / cfg.trials;
  }
  out.curve_redraws = redraws.load();
  return out;
}

void DenoiseBenchmarkConfig::Validate() const {
  if (count < 2) throw InputError("benchmark needs at least two points");
  if (!(radius > 0.0 && radius < 0.5)) throw InputError("circle radius must lie in (0, 0.5)");
  if (!(noise >= 0.0)) throw InputError("noise level must be non-negative");
  if (eigenvector_index < 0 || eigenvector_index >= count) {
    throw InputError("eigenvector index out of range");
  }
  if (oracle_resolution < 8) throw InputError("oracle resolution must be at least 8");
  irls.Validate();
}

DenoiseBenchmarkResult RunDenoiseBenchmark(const DenoiseBenchmarkConfig& cfg) {
  cfg.Validate();
  std::mt19937_64 rng(DeriveSeed(cfg.seed, {0}));
  const double offset = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  Eigen::MatrixXd clean(2, cfg.count);
  for (int i = 0; i < cfg.count; ++i) {
    const double theta = 2.0 * std::numbers::pi * (i + offset) / cfg.count;
    clean(0, i) = cfg.radius * std::cos(theta);
    clean(1, i) = cfg.radius * std::sin(theta);
  }
  PointCloud clean_cloud(clean);
  PointCloud noisy = AddNoise(clean_cloud, cfg.noise, DeriveSeed(cfg.seed, {1}));
  IrlsResult irls = IrlsDenoise(noisy, cfg.irls);

  const double r2 = cfg.radius * cfg.radius;
  const ContourSet oracle = RasterizeZeroSet([r2](double x, double y) { return x * x + y * y - r2; },
                                             GridSpec{cfg.oracle_resolution});
  auto analytic = [&](const PointCloud& x) {
    const Eigen::VectorXd d = CircleDistances(x, cfg.radius);
    Metrics m;
    m.mean_distance = d.mean();
    m.max_distance = d.maxCoeff();
    return m;
  };

  DenoiseBenchmarkResult out{cfg,
                             clean_cloud,
                             noisy,
                             std::move(irls),
                             DistanceMetrics(noisy, oracle),
                             {},
                             analytic(noisy),
                             {},
                             0.0,
                             {},
                             {},
                             {},
                             {},
                             0.0,
                             0.0,
                             0.0};
  out.after = DistanceMetrics(out.irls.denoised, oracle);
  out.after_analytic = analytic(out.irls.denoised);
  out.reduction = out.before_analytic.mean_distance > 0.0
                      ? 1.0 - out.after_analytic.mean_distance / out.before_analytic.mean_distance
                      : 0.0;

  out.noisy_spectrum = LaplacianSpectrum(GaussianLaplacian(noisy.coords(), cfg.irls.sigma).laplacian);
  out.first_spectrum = LaplacianSpectrum(out.irls.first_laplacian.laplacian);
  out.final_spectrum = LaplacianSpectrum(out.irls.final_laplacian.laplacian);
  out.clean_spectrum = LaplacianSpectrum(GaussianLaplacian(clean, cfg.irls.sigma).laplacian);
  const int idx = cfg.eigenvector_index;
  auto align = [&](const Spectrum& s) {
    return SubspaceAlignment(out.clean_spectrum.values, out.clean_spectrum.vectors, idx,
                             s.vectors.col(idx));
  };
  out.noisy_alignment = align(out.noisy_spectrum);
  out.first_alignment = align(out.first_spectrum);
  out.final_alignment = align(out.final_spectrum);
  return out;
}

}  // namespace levelset
