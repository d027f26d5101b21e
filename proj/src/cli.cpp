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

#include "levelset/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levelset/config.hpp"
#include "levelset/csv.hpp"
#include "levelset/curve.hpp"
#include "levelset/denoise.hpp"
#include "levelset/error.hpp"
#include "levelset/experiments.hpp"
#include "levelset/feature.hpp"
#include "levelset/kernel.hpp"
#include "levelset/metrics.hpp"
#include "levelset/svg.hpp"

namespace levelset {
namespace {

namespace fs = std::filesystem;

struct Params {
  std::uint64_t seed = 0;
  std::string out = "out";
  std::string config;

  std::string points;
  std::string coefficients;
  std::vector<int> lambda_size = {3, 3};
  std::vector<int> gamma_size = {3, 3};
  std::string kernel = "dirichlet";
  double sigma = 0.1;
  bool periodized = false;
  double rank_tol = kDefaultRankTol;
  int grid = 256;

  IrlsConfig irls;
  double gamma0 = 0.0;
  double gamma_min = 0.0;

  std::vector<int> curve_k = {3, 3};
  int count = 40;
  int curve_grid = 512;
  double noise = 0.0;

  PhaseTransitionConfig sweep;

  int k1 = 3;
  int k2 = 3;
  int factors = 1;
  std::vector<std::string> factor_bandwidths;
  int l1 = 0;
  int l2 = 0;
};

std::string Timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json ErrorLine(const std::string& kind, const std::string& message) {
  return Json{{"level", "error"}, {"kind", kind}, {"message", message}};
}

Json Finite(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json VectorJson(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Finite(v[i]));
  return out;
}

Json CoefficientsJson(const CoefficientVector& c) {
  Json terms = Json::array();
  for (int m = 0; m < c.size(); ++m) {
    const Eigen::VectorXi k = c.support.frequency(m);
    terms.push_back({{"k", std::vector<int>(k.data(), k.data() + k.size())},
                     {"re", c.values[m].real()},
                     {"im", c.values[m].imag()}});
  }
  return Json{{"dims", c.support.dims()}, {"conj_symmetric", c.conj_symmetric}, {"terms", terms}};
}

CoefficientVector CoefficientsFromJson(const Json& doc) {
  const Json* node = &doc;
  if (doc.contains("result") && doc["result"].contains("coefficients")) node = &doc["result"]["coefficients"];
  else if (doc.contains("coefficients")) node = &doc["coefficients"];
  try {
    const int dims = node->at("dims").get<int>();
    std::vector<std::vector<int>> elems;
    std::vector<Complex> vals;
    for (const auto& t : node->at("terms")) {
      elems.push_back(t.at("k").get<std::vector<int>>());
      vals.emplace_back(t.at("re").get<double>(), t.at("im").get<double>());
    }
    FourierSupport s = FourierSupport::Explicit(dims, elems);
    Eigen::VectorXcd v(s.size());
    for (size_t m = 0; m < elems.size(); ++m) {
      v[*s.IndexOf(Eigen::Map<const Eigen::VectorXi>(elems[m].data(), dims))] = vals[m];
    }
    CoefficientVector c(s, v);
    if (s.SymmetryCenterTwice() && c.SymmetryDefect() <= 1e-9 * v.norm()) c.conj_symmetric = true;
    return c;
  } catch (const Json::exception& e) {
    throw InputError(std::string("coefficient file: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InputError("cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

FourierSupport RectFrom(const std::vector<int>& sizes, const char* what) {
  if (sizes.empty()) throw InputError(std::string(what) + " needs at least one size");
  for (int k : sizes) {
    if (k < 1) throw InputError(std::string(what) + " sizes must be positive");
  }
  return FourierSupport::Rect(sizes);
}

Bandwidth ParseBandwidth(const std::string& text) {
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    size_t used1 = 0;
    size_t used2 = 0;
    const int a = std::stoi(text.substr(0, x), &used1);
    const int b = std::stoi(text.substr(x + 1), &used2);
    if (used1 != x || used2 != text.size() - x - 1) throw std::invalid_argument(text);
    return Bandwidth{a, b};
  } catch (const std::exception&) {
    throw InputError("factor bandwidth '" + text + "' must look like K1xK2");
  }
}

class Runner {
 public:
  Runner(Params& p, Json& doc, std::ostream& err) : p_(p), doc_(doc), err_(err) {}

  void Warn(const std::string& message) {
    doc_["warnings"].push_back(message);
    err_ << Json{{"level", "warning"}, {"message", message}}.dump() << '\n';
  }

  std::string File(const std::string& name) {
    doc_["files"].push_back(name);
    return (fs::path(p_.out) / name).string();
  }

  PointCloud Points() {
    if (p_.points.empty()) throw InputError("--points (or inputs.points) is required");
    return LoadPointCloud(p_.points);
  }

  void WriteField(const Eigen::MatrixXd& values, const std::string& name) {
    // Rows follow y, columns follow x.
    SaveMatrixCsv(values.transpose(), File(name));
  }

  void Recover() {
    const PointCloud x = Points();
    const FourierSupport gamma = RectFrom(p_.gamma_size, "gamma");
    if (gamma.dims() != x.dims()) throw InputError("support and point dimensions differ");
    doc_["parameters"] = {{"points", p_.points}, {"gamma", p_.gamma_size},
                          {"rank_tol", p_.rank_tol}, {"grid", p_.grid}};
    const Recovery rec = RecoverCoefficients(BuildGramQ(x, gamma), p_.rank_tol);
    for (const auto& w : rec.warnings) Warn(w);
    double residual = 0.0;
    for (int j = 0; j < x.count(); ++j) residual = std::max(residual, std::abs(EvaluatePsi(rec.coefficients, x.point(j))));
    Json& r = doc_["result"];
    r["coefficients"] = CoefficientsJson(rec.coefficients);
    r["min_eigenvalue"] = rec.min_eigenvalue;
    r["max_eigenvalue"] = rec.max_eigenvalue;
    r["nullity"] = rec.nullity;
    r["ambiguous"] = rec.ambiguous;
    r["projected"] = rec.projected;
    r["max_abs_psi_at_samples"] = residual;
    if (x.dims() == 2) {
      const GridSpec grid{p_.grid};
      WriteField(EvaluateOnGrid(rec.coefficients, grid).cwiseAbs2(), "sos_field.csv");
      if (rec.coefficients.conj_symmetric) {
        WriteField(EvaluateRealOnGrid(rec.coefficients, grid), "psi_field.csv");
      }
    }
  }

  void Nullspace() {
    const PointCloud x = Points();
    const FourierSupport gamma = RectFrom(p_.gamma_size, "gamma");
    if (gamma.dims() != x.dims()) throw InputError("support and point dimensions differ");
    doc_["parameters"] = {{"points", p_.points}, {"gamma", p_.gamma_size},
                          {"rank_tol", p_.rank_tol}, {"grid", p_.grid}};
    const GramQ q = BuildGramQ(x, gamma);
    const std::vector<CoefficientVector> basis = NullspaceBasis(q, p_.rank_tol);
    Json& r = doc_["result"];
    r["nullity"] = basis.size();
    r["basis"] = Json::array();
    for (const auto& c : basis) r["basis"].push_back(CoefficientsJson(c));
    if (have_lambda_) {
      const FourierSupport lambda = RectFrom(p_.lambda_size, "lambda");
      doc_["parameters"]["lambda"] = p_.lambda_size;
      const long shifts = ShiftCount(lambda, gamma);
      r["shift_count"] = shifts;
      r["rank_bound"] = RankBound(lambda, gamma);
      if (static_cast<long>(basis.size()) != shifts) {
        Warn("nullity " + std::to_string(basis.size()) + " differs from the shift count " +
             std::to_string(shifts));
      }
    }
    if (basis.empty()) {
      Warn("nullspace is empty at this tolerance");
      return;
    }
    r["sos_residual"] = SosResidual(basis, x);
    if (x.dims() == 2) {
      const Field2D field = SumOfSquaresField(basis, GridSpec{p_.grid});
      r["sos_max"] = field.values.maxCoeff();
      WriteField(field.values, "sos_field.csv");
    }
  }

  void Rank() {
    const PointCloud x = Points();
    Json params = {{"points", p_.points}, {"kernel", p_.kernel}, {"rank_tol", p_.rank_tol}};
    Json& r = doc_["result"];
    if (p_.kernel == "dirichlet") {
      const FourierSupport gamma = RectFrom(p_.gamma_size, "gamma");
      const FourierSupport lambda = RectFrom(p_.lambda_size, "lambda");
      if (gamma.dims() != x.dims() || lambda.dims() != x.dims()) {
        throw InputError("support and point dimensions differ");
      }
      params["gamma"] = p_.gamma_size;
      params["lambda"] = p_.lambda_size;
      const KernelGram k = GramMatrix(x, KernelDescriptor::Dirichlet(gamma));
      const int rank = FeatureRank(BuildFeatureMatrix(x, gamma), p_.rank_tol);
      const long bound = RankBound(lambda, gamma);
      r["rank"] = rank;
      r["bound"] = bound;
      r["flag"] = rank == bound ? "tight" : (rank < bound ? "below" : "violated");
      r["kernel"] = k.descriptor.Describe();
      r["kernel_rank"] = NumericalRank(k, p_.rank_tol);
      if (x.dims() == 2) {
        const Bandwidth lb{p_.lambda_size[0], p_.lambda_size[1]};
        const Bandwidth gb{p_.gamma_size[0], p_.gamma_size[1]};
        if (auto w = SubsampledWarning(x.count(), TotalSampleBound(lb, 1, gb))) Warn(*w);
      }
    } else if (p_.kernel == "gaussian") {
      params["sigma"] = p_.sigma;
      params["periodized"] = p_.periodized;
      const KernelGram k = GramMatrix(x, KernelDescriptor::Gaussian(p_.sigma, x.dims(), p_.periodized));
      const EffectiveBandwidth eb = GaussianEffectiveBandwidth(p_.sigma, x.dims());
      r["rank"] = NumericalRank(k, p_.rank_tol);
      r["bound"] = nullptr;
      r["flag"] = "unbounded";
      r["kernel"] = k.descriptor.Describe();
      r["effective_cutoff"] = eb.cutoff;
      r["effective_support_estimate"] = eb.support_estimate;
    } else {
      throw InputError("kernel must be 'dirichlet' or 'gaussian'");
    }
    doc_["parameters"] = params;
  }

  void Denoise() {
    const PointCloud y = Points();
    IrlsConfig cfg = p_.irls;
    if (have_gamma0_) cfg.gamma0 = p_.gamma0;
    if (have_gamma_min_) cfg.gamma_min = p_.gamma_min;
    cfg.Validate();
    Json params = {{"points", p_.points},         {"lambda", cfg.lambda},
                   {"sigma", cfg.sigma},          {"gamma_decay", cfg.gamma_decay},
                   {"max_iters", cfg.max_iters},  {"conv_tol", cfg.conv_tol},
                   {"clamp_weights", cfg.clamp_weights}};
    params["gamma0"] = cfg.gamma0 ? Json(*cfg.gamma0) : Json(nullptr);
    params["gamma_min"] = cfg.gamma_min ? Json(*cfg.gamma_min) : Json(nullptr);
    doc_["parameters"] = params;
    Json& r = doc_["result"];
    try {
      const IrlsResult res = IrlsDenoise(y, cfg);
      SavePointCloud(res.denoised, File("denoised.csv"));
      r["converged"] = res.trace.converged;
      r["iterations"] = res.trace.records.size();
      r["clamped_coordinates"] = res.trace.clamped_coordinates;
      Json trace = Json::array();
      for (const IrlsRecord& rec : res.trace.records) {
        trace.push_back({{"iteration", rec.iteration},
                         {"gamma", rec.gamma},
                         {"data_term", rec.data_term},
                         {"trace_term", rec.trace_term},
                         {"surrogate_before", rec.surrogate_before},
                         {"surrogate", rec.surrogate},
                         {"nuclear_norm", rec.nuclear_norm},
                         {"objective", rec.objective},
                         {"relative_change", rec.relative_change},
                         {"negative_weight_fraction", rec.negative_weight_fraction}});
      }
      r["trace"] = trace;
      if (res.trace.clamped_coordinates > 0) {
        Warn(std::to_string(res.trace.clamped_coordinates) + " denoised coordinates clamped to the unit box");
      }
      const Spectrum first = LaplacianSpectrum(res.first_laplacian.laplacian);
      const Spectrum last = LaplacianSpectrum(res.final_laplacian.laplacian);
      Eigen::MatrixXd spectra(first.values.size(), 2);
      spectra << first.values, last.values;
      SaveMatrixCsv(spectra, File("laplacian_spectra.csv"), {"first", "final"});
    } catch (const NumericalError& e) {
      r["failed_iteration"] = e.iteration();
      throw;
    }
  }

  void SampleCurveCmd() {
    Json params = {{"count", p_.count}, {"grid_resolution", p_.curve_grid}, {"noise", p_.noise}};
    CoefficientVector c = [&] {
      if (!p_.coefficients.empty()) {
        params["coefficients"] = p_.coefficients;
        return CoefficientsFromJson(ReadJsonFile(p_.coefficients));
      }
      params["k"] = p_.curve_k;
      const FourierSupport lambda = RectFrom(p_.curve_k, "k");
      return RandomCurve(lambda, DeriveSeed(p_.seed, {0})).coefficients;
    }();
    doc_["parameters"] = params;
    PointCloud x = SampleCurve(c, p_.count, p_.curve_grid);
    double residual = 0.0;
    for (int j = 0; j < x.count(); ++j) residual = std::max(residual, std::abs(EvaluatePsi(c, x.point(j))));
    if (p_.noise > 0.0) x = AddNoise(x, p_.noise, DeriveSeed(p_.seed, {1}));
    SavePointCloud(x, File("points.csv"));
    Json& r = doc_["result"];
    r["coefficients"] = CoefficientsJson(c);
    r["count"] = x.count();
    r["max_abs_psi_before_noise"] = residual;
  }

  void PhaseTransition() {
    PhaseTransitionConfig cfg = p_.sweep;
    cfg.seed = p_.seed;
    cfg.Validate();
    doc_["parameters"] = {{"ks", cfg.ks},         {"n_min", cfg.n_min},
                          {"n_max", cfg.n_max},   {"n_step", cfg.n_step},
                          {"trials", cfg.trials}, {"threshold", cfg.success_threshold},
                          {"grid_resolution", cfg.grid_resolution},
                          {"gamma_policy", "gamma = lambda"}};
    const PhaseTransitionResult res = RunPhaseTransition(cfg);
    Json& r = doc_["result"];
    r["ks"] = res.ks;
    r["ns"] = res.ns;
    r["success"] = Json::array();
    for (Eigen::Index i = 0; i < res.success.rows(); ++i) r["success"].push_back(VectorJson(res.success.row(i).transpose()));
    r["theory_bound"] = res.theory_bound;
    r["theory_min_N"] = res.theory_min;
    r["support_size"] = res.support_size;
    r["curve_redraws"] = res.curve_redraws;

    std::vector<std::string> header = {"K"};
    for (int n : res.ns) header.push_back("N" + std::to_string(n));
    Eigen::MatrixXd table(res.success.rows(), res.success.cols() + 1);
    for (Eigen::Index i = 0; i < res.success.rows(); ++i) {
      table(i, 0) = res.ks[i];
      table.row(i).tail(res.success.cols()) = res.success.row(i);
    }
    SaveMatrixCsv(table, File("phase_transition.csv"), header);

    auto column_of = [&](long n) { return static_cast<double>(n - cfg.n_min) / cfg.n_step + 0.5; };
    Overlay theory{"theory_bound", "red", {}};
    Overlay support{"support_size", "blue", {}};
    for (size_t i = 0; i < res.ks.size(); ++i) {
      theory.points.emplace_back(column_of(res.theory_bound[i]), i + 0.5);
      support.points.emplace_back(column_of(res.support_size[i]), i + 0.5);
    }
    HeatmapStyle style;
    style.title = "success rate (rows K, columns N)";
    for (int k : res.ks) style.row_labels.push_back("K=" + std::to_string(k));
    for (int n : res.ns) style.column_labels.push_back(n % 10 == 0 ? std::to_string(n) : "");
    EmitHeatmap(res.success, {theory, support}, File("phase_transition.svg"), style);
  }

  void Bounds() {
    const Bandwidth total{p_.k1, p_.k2};
    std::optional<Bandwidth> gamma;
    if (p_.l1 > 0 || p_.l2 > 0) gamma = Bandwidth{p_.l1, p_.l2};
    Json params = {{"k1", p_.k1}, {"k2", p_.k2}, {"factors", p_.factors}};
    params["l1"] = gamma ? Json(p_.l1) : Json(nullptr);
    params["l2"] = gamma ? Json(p_.l2) : Json(nullptr);
    std::vector<Bandwidth> factor_bw;
    for (const auto& s : p_.factor_bandwidths) factor_bw.push_back(ParseBandwidth(s));
    params["factor_bandwidths"] = p_.factor_bandwidths;
    doc_["parameters"] = params;
    if (p_.factors < 1) throw InputError("--factors must be at least 1");
    if (!factor_bw.empty() && static_cast<int>(factor_bw.size()) != p_.factors) {
      throw InputError("one bandwidth per factor is required");
    }
    if (factor_bw.empty() && p_.factors == 1) factor_bw.push_back(total);
    Json& r = doc_["result"];
    if (factor_bw.empty()) {
      const long bound = TotalSampleBound(total, p_.factors, gamma);
      r["total_bound"] = bound;
      r["total_min_N"] = bound + 1;
      r["per_factor_bound"] = nullptr;
      r["per_factor_min_N"] = nullptr;
      Warn("per-factor counts need --factor-bandwidths");
      return;
    }
    const SampleBounds b = MinSamples(factor_bw, total, gamma);
    for (const auto& w : b.warnings) Warn(w);
    r["total_bound"] = b.total_bound;
    r["total_min_N"] = b.total_min;
    r["per_factor_bound"] = b.per_factor_bound;
    r["per_factor_min_N"] = b.per_factor_min;
  }

  bool have_lambda_ = false;
  bool have_gamma0_ = false;
  bool have_gamma_min_ = false;

 private:
  Params& p_;
  Json& doc_;
  std::ostream& err_;
};

// Occurrences of `flag`; 0 when the subcommand does not define it.
std::size_t Given(const CLI::App* sub, const std::string& flag) {
  const CLI::Option* opt = sub->get_option_no_throw(flag);
  return opt ? opt->count() : 0;
}

template <class T>
void Merge(const CLI::App* sub, const std::string& flag, T& target, const std::optional<T>& value) {
  if (Given(sub, flag) == 0 && value) target = *value;
}

void MergeInt(const CLI::App* sub, const std::string& flag, int& target, const std::optional<long>& value) {
  if (Given(sub, flag) == 0 && value) target = static_cast<int>(*value);
}

void MergeConfig(const CLI::App* sub, const Json& cfg, Params& p) {
  Merge(sub, "--seed", p.seed, ConfigUnsigned(cfg, "", "seed"));
  Merge(sub, "--out", p.out, ConfigString(cfg, "", "out"));
  if (sub->get_option_no_throw("--points")) Merge(sub, "--points", p.points, ConfigString(cfg, "inputs", "points"));
  if (sub->get_option_no_throw("--coefficients")) {
    Merge(sub, "--coefficients", p.coefficients, ConfigString(cfg, "inputs", "coefficients"));
  }
  auto has = [sub](const char* flag) { return sub->get_option_no_throw(flag) != nullptr; };
  if (has("--lambda-size")) Merge(sub, "--lambda-size", p.lambda_size, ConfigIntList(cfg, "support", "lambda"));
  if (has("--gamma-size")) Merge(sub, "--gamma-size", p.gamma_size, ConfigIntList(cfg, "support", "gamma"));
  if (has("--kernel")) Merge(sub, "--kernel", p.kernel, ConfigString(cfg, "kernel", "type"));
  if (has("--periodized")) Merge(sub, "--periodized", p.periodized, ConfigBool(cfg, "kernel", "periodized"));
  if (has("--rank-tol")) Merge(sub, "--rank-tol", p.rank_tol, ConfigNumber(cfg, "rank", "tol"));
  if (has("--grid")) MergeInt(sub, "--grid", p.grid, ConfigInt(cfg, "grid", "resolution"));
  if (sub->get_name() == "rank") Merge(sub, "--sigma", p.sigma, ConfigNumber(cfg, "kernel", "sigma"));
  if (sub->get_name() == "denoise") {
    Merge(sub, "--lambda", p.irls.lambda, ConfigNumber(cfg, "irls", "lambda"));
    Merge(sub, "--sigma", p.irls.sigma, ConfigNumber(cfg, "irls", "sigma"));
    Merge(sub, "--gamma0", p.gamma0, ConfigNumber(cfg, "irls", "gamma0"));
    Merge(sub, "--gamma-decay", p.irls.gamma_decay, ConfigNumber(cfg, "irls", "gamma_decay"));
    Merge(sub, "--gamma-min", p.gamma_min, ConfigNumber(cfg, "irls", "gamma_min"));
    MergeInt(sub, "--max-iters", p.irls.max_iters, ConfigInt(cfg, "irls", "max_iters"));
    Merge(sub, "--conv-tol", p.irls.conv_tol, ConfigNumber(cfg, "irls", "conv_tol"));
    Merge(sub, "--clamp-weights", p.irls.clamp_weights, ConfigBool(cfg, "irls", "clamp_weights"));
  }
  if (sub->get_name() == "sample-curve") {
    Merge(sub, "--k", p.curve_k, ConfigIntList(cfg, "curve", "k"));
    MergeInt(sub, "--count", p.count, ConfigInt(cfg, "curve", "count"));
    MergeInt(sub, "--grid-res", p.curve_grid, ConfigInt(cfg, "curve", "grid_resolution"));
    Merge(sub, "--noise", p.noise, ConfigNumber(cfg, "curve", "noise"));
  }
  if (sub->get_name() == "phase-transition") {
    Merge(sub, "--ks", p.sweep.ks, ConfigIntList(cfg, "sweep", "ks"));
    MergeInt(sub, "--n-min", p.sweep.n_min, ConfigInt(cfg, "sweep", "n_min"));
    MergeInt(sub, "--n-max", p.sweep.n_max, ConfigInt(cfg, "sweep", "n_max"));
    MergeInt(sub, "--n-step", p.sweep.n_step, ConfigInt(cfg, "sweep", "n_step"));
    MergeInt(sub, "--trials", p.sweep.trials, ConfigInt(cfg, "sweep", "trials"));
    Merge(sub, "--threshold", p.sweep.success_threshold, ConfigNumber(cfg, "sweep", "threshold"));
    MergeInt(sub, "--grid-res", p.sweep.grid_resolution, ConfigInt(cfg, "sweep", "grid_resolution"));
  }
  if (sub->get_name() == "bounds") {
    MergeInt(sub, "--k1", p.k1, ConfigInt(cfg, "bounds", "k1"));
    MergeInt(sub, "--k2", p.k2, ConfigInt(cfg, "bounds", "k2"));
    MergeInt(sub, "--factors", p.factors, ConfigInt(cfg, "bounds", "factors"));
    MergeInt(sub, "--l1", p.l1, ConfigInt(cfg, "bounds", "l1"));
    MergeInt(sub, "--l2", p.l2, ConfigInt(cfg, "bounds", "l2"));
    if (Given(sub, "--factor-bandwidths") == 0) {
      if (auto pairs = ConfigPairList(cfg, "bounds", "factor_bandwidths")) {
        p.factor_bandwidths.clear();
        for (const auto& [a, b] : *pairs) p.factor_bandwidths.push_back(std::to_string(a) + "x" + std::to_string(b));
      }
    }
  }
}

void AddCommon(CLI::App* sub, Params& p) {
  sub->add_option("--seed", p.seed, "master seed");
  sub->add_option("--out", p.out, "output directory");
  sub->add_option("--config", p.config, "JSON run configuration");
}

void WriteResult(const Json& doc, const std::string& dir) {
  fs::create_directories(dir);
  std::ofstream os(fs::path(dir) / "result.json", std::ios::binary);
  if (!os) throw InputError("cannot write result.json in " + dir);
  os << doc.dump(2) << '\n';
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Params p;
  CLI::App app{"Level-set curve recovery and kernel denoising", "levelset"};
  app.require_subcommand(1, 1);

  CLI::App* recover = app.add_subcommand("recover", "points -> coefficients and |psi|^2 field");
  CLI::App* nullspace = app.add_subcommand("nullspace", "points and Gamma -> nullspace basis and SOS field");
  CLI::App* rank = app.add_subcommand("rank", "numerical rank of the kernel matrix against the bound");
  CLI::App* denoise = app.add_subcommand("denoise", "IRLS kernel low-rank denoising");
  CLI::App* sample = app.add_subcommand("sample-curve", "points on a random or given curve");
  CLI::App* sweep = app.add_subcommand("phase-transition", "recovery success over (K, N)");
  CLI::App* bounds = app.add_subcommand("bounds", "sufficient sample counts");
  for (CLI::App* sub : {recover, nullspace, rank, denoise, sample, sweep, bounds}) AddCommon(sub, p);

  for (CLI::App* sub : {recover, nullspace, rank, denoise}) sub->add_option("--points", p.points, "point-cloud CSV");
  for (CLI::App* sub : {recover, nullspace, rank}) {
    sub->add_option("--gamma-size", p.gamma_size, "sizes of the rectangular support Gamma")->delimiter(',');
    sub->add_option("--rank-tol", p.rank_tol, "relative eigenvalue / singular value tolerance");
  }
  for (CLI::App* sub : {nullspace, rank}) {
    sub->add_option("--lambda-size", p.lambda_size, "sizes of the curve support Lambda")->delimiter(',');
  }
  for (CLI::App* sub : {recover, nullspace}) sub->add_option("--grid", p.grid, "field grid resolution");
  rank->add_option("--kernel", p.kernel, "dirichlet or gaussian");
  rank->add_option("--sigma", p.sigma, "gaussian width");
  rank->add_flag("--periodized", p.periodized, "periodized gaussian");

  denoise->add_option("--lambda", p.irls.lambda, "regularisation weight");
  denoise->add_option("--sigma", p.irls.sigma, "gaussian kernel width");
  denoise->add_option("--gamma0", p.gamma0, "initial smoothing");
  denoise->add_option("--gamma-decay", p.irls.gamma_decay, "smoothing decay per iteration");
  denoise->add_option("--gamma-min", p.gamma_min, "smoothing floor");
  denoise->add_option("--max-iters", p.irls.max_iters, "iteration cap");
  denoise->add_option("--conv-tol", p.irls.conv_tol, "relative change tolerance");
  denoise->add_flag("--clamp-weights", p.irls.clamp_weights, "drop negative weights");

  sample->add_option("--coefficients", p.coefficients, "coefficient JSON (recover output works)");
  sample->add_option("--k", p.curve_k, "support sizes of a random curve")->delimiter(',');
  sample->add_option("--count", p.count, "number of samples");
  sample->add_option("--grid-res", p.curve_grid, "contour grid resolution");
  sample->add_option("--noise", p.noise, "gaussian noise level");

  sweep->add_option("--ks", p.sweep.ks, "bandwidths K")->delimiter(',');
  sweep->add_option("--n-min", p.sweep.n_min);
  sweep->add_option("--n-max", p.sweep.n_max);
  sweep->add_option("--n-step", p.sweep.n_step);
  sweep->add_option("--trials", p.sweep.trials);
  sweep->add_option("--threshold", p.sweep.success_threshold, "correlation counted as success");
  sweep->add_option("--grid-res", p.sweep.grid_resolution, "contour grid resolution");

  bounds->add_option("--k1", p.k1);
  bounds->add_option("--k2", p.k2);
  bounds->add_option("--factors", p.factors, "number of irreducible factors J");
  bounds->add_option("--factor-bandwidths", p.factor_bandwidths, "per-factor K1xK2");
  bounds->add_option("--l1", p.l1, "Gamma bandwidth (optional)");
  bounds->add_option("--l2", p.l2, "Gamma bandwidth (optional)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << app.help();
    err << ErrorLine("usage", e.what()).dump() << '\n';
    return kExitInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  Json doc = {{"command", sub->get_name()}, {"warnings", Json::array()}, {"files", Json::array()},
              {"parameters", Json::object()}, {"result", Json::object()}, {"error", nullptr},
              {"status", "ok"}};
  Json timestamps = {{"started", Timestamp()}};
  int code = kExitOk;
  Runner run(p, doc, err);
  try {
    if (!p.config.empty()) {
      const Json cfg = LoadConfig(p.config);
      MergeConfig(sub, cfg, p);
      run.have_lambda_ = Given(sub, "--lambda-size") > 0 || ConfigIntList(cfg, "support", "lambda").has_value();
      run.have_gamma0_ = ConfigNumber(cfg, "irls", "gamma0").has_value();
      run.have_gamma_min_ = ConfigNumber(cfg, "irls", "gamma_min").has_value();
    } else {
      run.have_lambda_ = Given(sub, "--lambda-size") > 0;
    }
    if (sub == denoise) {
      run.have_gamma0_ = run.have_gamma0_ || Given(sub, "--gamma0") > 0;
      run.have_gamma_min_ = run.have_gamma_min_ || Given(sub, "--gamma-min") > 0;
    }
    doc["seed"] = p.seed;
    fs::create_directories(p.out);
    const std::string name = sub->get_name();
    if (name == "recover") run.Recover();
    else if (name == "nullspace") run.Nullspace();
    else if (name == "rank") run.Rank();
    else if (name == "denoise") run.Denoise();
    else if (name == "sample-curve") run.SampleCurveCmd();
    else if (name == "phase-transition") run.PhaseTransition();
    else run.Bounds();
  } catch (const InputError& e) {
    code = kExitInput;
    doc["error"] = ErrorLine("input", e.what());
  } catch (const NumericalError& e) {
    code = kExitNumerical;
    doc["error"] = ErrorLine("numerical", e.what());
    if (e.iteration() >= 0) doc["error"]["iteration"] = e.iteration();
  } catch (const fs::filesystem_error& e) {
    code = kExitInput;
    doc["error"] = ErrorLine("input", e.what());
  } catch (const std::exception& e) {
    code = kExitNumerical;
    doc["error"] = ErrorLine("internal", e.what());
  }
  if (code != kExitOk) {
    doc["status"] = "error";
    err << doc["error"].dump() << '\n';
  }
  timestamps["finished"] = Timestamp();
  doc["timestamps"] = timestamps;
  try {
    WriteResult(doc, p.out);
  } catch (const std::exception& e) {
    err << ErrorLine("output", e.what()).dump() << '\n';
    if (code == kExitOk) code = kExitInput;
  }
  if (code == kExitOk) out << doc["result"].dump() << '\n';
  return code;
}

int RunCli(int argc, const char* const* argv) { return RunCli(argc, argv, std::cout, std::cerr); }

}  // namespace levelset
