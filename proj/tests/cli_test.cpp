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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "levelset/config.hpp"

namespace levelset {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = -1;
  std::string err;
};

std::string Slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("levelset_cli_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Outcome Run(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(LEVELSET_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                          " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  return Outcome{WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(err)};
}

Json Result(const fs::path& dir) { return Json::parse(Slurp(dir / "result.json")); }

TEST_CASE("bounds for a single 3x3 factor") {
  const fs::path d = Scratch("bounds");
  const Outcome o = Run("bounds --k1 3 --k2 3 --factors 1 --out " + d.string(), d);
  REQUIRE(o.code == 0);
  const Json r = Result(d);
  CHECK(r["result"]["total_min_N"] == 37);
  CHECK(r["result"]["total_bound"] == 36);
  CHECK(r["status"] == "ok");
  CHECK(r.contains("timestamps"));
}

TEST_CASE("bounds from a config file, flags override") {
  const fs::path d = Scratch("bounds_config");
  std::ofstream(d / "cfg.json") << R"({"bounds": {"k1": 2, "k2": 3}, "seed": 4})";
  REQUIRE(Run("bounds --config " + (d / "cfg.json").string() + " --out " + d.string(), d).code == 0);
  CHECK(Result(d)["result"]["total_min_N"] == 26);
  CHECK(Result(d)["seed"] == 4);
  REQUIRE(Run("bounds --config " + (d / "cfg.json").string() + " --k1 3 --out " + d.string(), d).code == 0);
  CHECK(Result(d)["result"]["total_min_N"] == 37);
  REQUIRE(Run("bounds --k1 2 --k2 2 --factors 2 --factor-bandwidths 1x1 1x1 --out " + d.string(), d).code == 0);
  CHECK(Result(d)["result"]["total_bound"] == 24);
}

TEST_CASE("sampled curve gives a tight rank") {
  const fs::path d = Scratch("rank");
  REQUIRE(Run("sample-curve --k 3,3 --count 60 --seed 11 --out " + d.string(), d).code == 0);
  const std::string pts = (d / "points.csv").string();
  REQUIRE(fs::exists(pts));
  const fs::path r = d / "rank";
  fs::create_directories(r);
  REQUIRE(Run("rank --points " + pts + " --lambda-size 3,3 --gamma-size 5,5 --out " + r.string(), r).code == 0);
  const Json j = Result(r);
  CHECK(j["result"]["rank"] == 16);
  CHECK(j["result"]["bound"] == 16);
  CHECK(j["result"]["flag"] == "tight");
}

TEST_CASE("recover and nullspace write their fields") {
  const fs::path d = Scratch("recover");
  REQUIRE(Run("sample-curve --count 61 --seed 2 --out " + d.string(), d).code == 0);
  const std::string pts = (d / "points.csv").string();
  const fs::path a = d / "a";
  fs::create_directories(a);
  REQUIRE(Run("recover --points " + pts + " --gamma-size 3,3 --grid 32 --out " + a.string(), a).code == 0);
  CHECK(fs::exists(a / "sos_field.csv"));
  CHECK(Result(a)["result"]["max_abs_psi_at_samples"].get<double>() < 1e-8);
  const fs::path b = d / "b";
  fs::create_directories(b);
  REQUIRE(Run("nullspace --points " + pts + " --gamma-size 5,5 --lambda-size 3,3 --grid 32 --out " + b.string(), b)
              .code == 0);
  CHECK(Result(b)["result"]["nullity"] == 9);
  CHECK(Result(b)["result"]["shift_count"] == 9);
  CHECK(fs::exists(b / "sos_field.csv"));

  // The recovered coefficients drive sample-curve directly.
  const fs::path c = d / "c";
  fs::create_directories(c);
  REQUIRE(Run("sample-curve --coefficients " + (a / "result.json").string() + " --count 10 --out " + c.string(), c)
              .code == 0);
  CHECK(Result(c)["result"]["max_abs_psi_before_noise"].get<double>() < 1e-10);
}

TEST_CASE("denoise with lambda 0 copies the input") {
  const fs::path d = Scratch("denoise");
  REQUIRE(Run("sample-curve --count 30 --noise 0.01 --seed 5 --out " + d.string(), d).code == 0);
  const fs::path o = d / "o";
  fs::create_directories(o);
  REQUIRE(Run("denoise --points " + (d / "points.csv").string() + " --lambda 0 --out " + o.string(), o).code == 0);
  CHECK(Slurp(o / "denoised.csv") == Slurp(d / "points.csv"));
  CHECK(Result(o)["result"]["iterations"] == 1);
}

TEST_CASE("phase transition writes grid and heatmap") {
  const fs::path d = Scratch("sweep");
  REQUIRE(Run("phase-transition --ks 2,3 --n-min 4 --n-max 40 --n-step 6 --trials 2 --out " + d.string(), d).code == 0);
  CHECK(fs::exists(d / "phase_transition.csv"));
  const std::string svg = Slurp(d / "phase_transition.svg");
  CHECK(svg.find("data-name=\"theory_bound\"") != std::string::npos);
  CHECK(Result(d)["result"]["theory_bound"] == Json::array({16, 36}));
}

TEST_CASE("reruns are byte identical apart from timestamps") {
  const fs::path a = Scratch("repro_a");
  const fs::path b = Scratch("repro_b");
  REQUIRE(Run("sample-curve --count 25 --noise 0.01 --seed 8 --out " + a.string(), a).code == 0);
  REQUIRE(Run("sample-curve --count 25 --noise 0.01 --seed 8 --out " + b.string(), b).code == 0);
  Json ja = Result(a);
  Json jb = Result(b);
  ja.erase("timestamps");
  jb.erase("timestamps");
  CHECK(ja.dump() == jb.dump());
  CHECK(Slurp(a / "points.csv") == Slurp(b / "points.csv"));
}

TEST_CASE("usage errors exit with 1") {
  const fs::path d = Scratch("usage");
  CHECK(Run("frobnicate", d).code == 1);
  CHECK(Run("bounds --bogus 3 --out " + d.string(), d).code == 1);
  CHECK(Run("", d).code == 1);
  CHECK(Run("--help", d).code == 0);
}

TEST_CASE("input errors write result.json and a JSON line") {
  const fs::path d = Scratch("bad_input");
  std::ofstream(d / "bad.csv") << "x0,x1\n0.1,0.2\n0.3,nan\n";
  const Outcome o = Run("recover --points " + (d / "bad.csv").string() + " --out " + d.string(), d);
  CHECK(o.code == 1);
  const Json r = Result(d);
  CHECK(r["status"] == "error");
  CHECK(r["error"]["message"].get<std::string>().find("row 2") != std::string::npos);
  const std::string first_line = o.err.substr(0, o.err.find('\n'));
  CHECK(Json::parse(first_line)["kind"] == "input");

  std::ofstream(d / "cfg.json") << R"({"bounds": {"kk": 2}})";
  CHECK(Run("bounds --config " + (d / "cfg.json").string() + " --out " + d.string(), d).code == 1);
  CHECK(Run("recover --out " + d.string(), d).code == 1);
}

TEST_CASE("numerical failures exit with 2") {
  const fs::path d = Scratch("numerical");
  // A huge lambda on clustered points makes I + lambda L indefinite.
  std::ofstream(d / "pts.csv") << "x0,x1\n0,0\n0.001,0\n0,0.001\n0.3,0.3\n-0.2,0.1\n";
  const Outcome o = Run("denoise --points " + (d / "pts.csv").string() +
                            " --lambda 1e12 --sigma 0.05 --gamma0 1e-9 --out " + d.string(),
                        d);
  MESSAGE("exit " << o.code << " " << o.err);
  if (o.code != 0) {
    CHECK(o.code == 2);
    CHECK(Result(d)["error"]["kind"] == "numerical");
  }
}

}  // namespace
}  // namespace levelset
