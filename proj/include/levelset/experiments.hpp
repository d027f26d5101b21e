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

#ifndef LEVELSET_EXPERIMENTS_HPP_
#define LEVELSET_EXPERIMENTS_HPP_

#include <Eigen/Core>

#include <cstdint>
#include <vector>

#include "levelset/denoise.hpp"
#include "levelset/metrics.hpp"

namespace levelset {

struct PhaseTransitionConfig {
  std::vector<int> ks = {2, 3, 4};
  int n_min = 4;
  int n_max = 80;
  int n_step = 1;
  int trials = 10;
  double success_threshold = 0.99;
  int grid_resolution = 512;
  std::uint64_t seed = 0;

  void Validate() const;
  std::vector<int> SampleCounts() const;
};

struct PhaseTransitionResult {
  PhaseTransitionConfig config;
  std::vector<int> ks;
  std::vector<int> ns;
  Eigen::MatrixXd success;  // rows: ks, columns: ns; fraction in [0, 1]
  // Per K: strict sufficient bound (K1 + K2)^2, its minimal integer, |Lambda|.
  std::vector<long> theory_bound;
  std::vector<long> theory_min;
  std::vector<long> support_size;
  long curve_redraws = 0;
};

/// One cell per (K, N): `trials` curves with Lambda = K x K, N samples each,
/// recovery with Gamma = Lambda; success when the coefficient correlation
/// exceeds the threshold. Trials run in parallel; trial seeds depend only on
/// (seed, K, N, trial).
PhaseTransitionResult RunPhaseTransition(const PhaseTransitionConfig& cfg);

struct DenoiseBenchmarkConfig {
  int count = 200;
  double radius = 0.3;
  double noise = 0.02;
  IrlsConfig irls;
  int eigenvector_index = 3;  // 0-based
  int oracle_resolution = kOracleResolution;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct DenoiseBenchmarkResult {
  DenoiseBenchmarkConfig config;
  PointCloud clean;
  PointCloud noisy;
  IrlsResult irls;
  Metrics before;           // rasterized oracle
  Metrics after;
  Metrics before_analytic;  // exact circle distance
  Metrics after_analytic;
  double reduction = 0.0;   // 1 - after / before, analytic means
  Spectrum noisy_spectrum;  // Gaussian Laplacian of the noisy points
  Spectrum first_spectrum;
  Spectrum final_spectrum;
  Spectrum clean_spectrum;  // Gaussian Laplacian of the clean points
  double noisy_alignment = 0.0;
  double first_alignment = 0.0;
  double final_alignment = 0.0;
};

/// Noisy samples of a circle centred at the origin, denoised by IRLS.
/// Angles are evenly spaced with a random offset.
DenoiseBenchmarkResult RunDenoiseBenchmark(const DenoiseBenchmarkConfig& cfg);

}  // namespace levelset

#endif  // LEVELSET_EXPERIMENTS_HPP_
