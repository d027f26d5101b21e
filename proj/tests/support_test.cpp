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

#include <Eigen/Core>

#include "doctest.h"
#include "levelset/coefficients.hpp"
#include "levelset/error.hpp"
#include "levelset/support.hpp"

namespace levelset {
namespace {

Eigen::VectorXi K(std::initializer_list<int> v) {
  Eigen::VectorXi out(static_cast<int>(v.size()));
  int i = 0;
  for (int x : v) out[i++] = x;
  return out;
}

TEST_CASE("rect supports are centered") {
  const FourierSupport odd = FourierSupport::Rect({3, 5});
  CHECK(odd.size() == 15);
  CHECK(odd.lower() == K({-1, -2}));
  CHECK(odd.upper() == K({1, 2}));
  CHECK(odd.IsSymmetricAboutZero());

  const FourierSupport even = FourierSupport::Rect({4});
  CHECK(even.size() == 4);
  CHECK(even.lower() == K({-2}));
  CHECK(even.upper() == K({1}));
  CHECK_FALSE(even.IsSymmetricAboutZero());
  REQUIRE(even.SymmetryCenterTwice());
  CHECK((*even.SymmetryCenterTwice())[0] == -1);
}

TEST_CASE("elements are lexicographic and indexable") {
  const FourierSupport s = FourierSupport::Rect({3, 3});
  CHECK(s.frequency(0) == K({-1, -1}));
  CHECK(s.frequency(1) == K({-1, 0}));
  CHECK(s.frequency(8) == K({1, 1}));
  for (int m = 0; m < s.size(); ++m) CHECK(*s.IndexOf(s.frequency(m)) == m);
  CHECK_FALSE(s.IndexOf(K({2, 0})));
  const FourierSupport e = FourierSupport::Explicit(2, {{1, 1}, {-1, 0}, {0, 0}});
  CHECK(e.frequency(0) == K({-1, 0}));
  CHECK(e.shape() == ShapeKind::kExplicit);
}

TEST_CASE("explicit supports reject duplicates and bad dimensions") {
  CHECK_THROWS_AS(FourierSupport::Explicit(2, {{0, 0}, {0, 0}}), InputError);
  CHECK_THROWS_AS(FourierSupport::Explicit(2, {{0, 0, 1}}), InputError);
  CHECK_THROWS_AS(FourierSupport::Rect({0, 3}), InputError);
}

TEST_CASE("ball support counts lattice points") {
  const FourierSupport b = FourierSupport::Ball(2, 1.0);
  CHECK(b.size() == 5);
  CHECK(b.IsSymmetricAboutZero());
  CHECK(FourierSupport::Ball(2, 1.5).size() == 9);
}

TEST_CASE("partners mirror through the center") {
  const FourierSupport s = FourierSupport::Box({-2, 0}, {0, 1});
  const std::vector<int> p = s.PartnerIndices();
  const Eigen::VectorXi twice = *s.SymmetryCenterTwice();
  for (int m = 0; m < s.size(); ++m) CHECK(s.frequency(p[m]) == twice - s.frequency(m));
  CHECK_FALSE(FourierSupport::Explicit(1, {{0}, {1}, {3}}).SymmetryCenterTwice());
}

TEST_CASE("shift count") {
  const FourierSupport l3 = FourierSupport::Rect({3, 3});
  CHECK(ShiftCount(l3, l3) == 1);
  CHECK(ShiftCount(l3, FourierSupport::Rect({11, 11})) == 81);
  CHECK(ShiftCount(FourierSupport::Rect({1, 1}), FourierSupport::Rect({7, 7})) == 49);
  CHECK_THROWS_AS(ShiftCount(FourierSupport::Rect({5, 5}), l3), InputError);
}

TEST_CASE("rank bound") {
  const FourierSupport l3 = FourierSupport::Rect({3, 3});
  CHECK(RankBound(l3, FourierSupport::Rect({5, 5})) == 16);
  CHECK(RankBound(l3, l3) == 8);
  CHECK(RankBound(l3, FourierSupport::Rect({11, 11})) == 40);
}

TEST_CASE("conjugate mirror fixes symmetric vectors") {
  const FourierSupport s = FourierSupport::Rect({3});
  Eigen::VectorXcd c(3);
  c << Complex(1, 2), Complex(3, 0), Complex(1, -2);
  CHECK((ConjugateMirror(s, c) - c).norm() == 0.0);
  CHECK(CoefficientVector(s, c, true).SymmetryDefect() == 0.0);
  c[0] = Complex(0, 1);
  CHECK(CoefficientVector(s, c).SymmetryDefect() == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(CoefficientVector(FourierSupport::Rect({3}), Eigen::VectorXcd(2)), InputError);
}

TEST_CASE("phase normalisation") {
  Eigen::VectorXcd v(3);
  v << Complex(0, 1), Complex(0, -2), Complex(0.5, 0);
  NormalizePhase(v);
  CHECK(v[1].real() == doctest::Approx(2.0));
  CHECK(std::abs(v[1].imag()) < 1e-15);
  Eigen::VectorXcd tie(2);
  tie << Complex(0, 1), Complex(1, 0);
  NormalizePhase(tie);
  CHECK(tie[0].real() == doctest::Approx(1.0));
}

TEST_CASE("product of two factors has the Minkowski support") {
  const FourierSupport s = FourierSupport::Rect({3});
  Eigen::VectorXcd a(3), b(3);
  a << 0.5, 0.0, 0.5;  // cos(2 pi x)
  b << 0.5, 1.0, 0.5;  // 1 + cos(2 pi x)
  const CoefficientVector p = Multiply(CoefficientVector(s, a), CoefficientVector(s, b));
  CHECK(p.support.size() == 5);
  // cos + cos^2 = 1/2 + cos + cos(4 pi x) / 2
  CHECK(std::abs(p.values[0] - Complex(0.25)) < 1e-15);
  CHECK(std::abs(p.values[1] - Complex(0.5)) < 1e-15);
  CHECK(std::abs(p.values[2] - Complex(0.5)) < 1e-15);
  const CoefficientVector r = Recenter(CoefficientVector(FourierSupport::Box({0}, {2}), a));
  CHECK(r.support == s);
}

}  // namespace
}  // namespace levelset
