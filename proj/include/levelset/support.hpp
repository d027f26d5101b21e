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

#ifndef LEVELSET_SUPPORT_HPP_
#define LEVELSET_SUPPORT_HPP_

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace levelset {

enum class ShapeKind { kRect, kBall, kExplicit };

/// A finite set of integer frequency vectors in Z^n.
///
/// Elements are distinct and kept in lexicographic order (first axis most
/// significant), so two supports built from the same set always index their
/// coefficients identically.
class FourierSupport {
 public:
  /// Centered box with `sizes[d]` frequencies along axis d: odd K spans
  /// [-(K-1)/2, (K-1)/2], even K spans [-K/2, K/2-1].
  static FourierSupport Rect(const std::vector<int>& sizes);

  /// Arbitrary box [lo[d], hi[d]] per axis.
  static FourierSupport Box(const std::vector<int>& lo, const std::vector<int>& hi);

  /// All k with |k| <= radius.
  static FourierSupport Ball(int dims, double radius);

  /// Explicit list; duplicates are rejected.
  static FourierSupport Explicit(int dims, const std::vector<std::vector<int>>& elements);

  int dims() const { return static_cast<int>(freqs_.rows()); }
  int size() const { return static_cast<int>(freqs_.cols()); }
  ShapeKind shape() const { return shape_; }

  /// Frequencies as columns, dims() x size().
  const Eigen::MatrixXi& frequencies() const { return freqs_; }
  Eigen::VectorXi frequency(int index) const { return freqs_.col(index); }

  std::optional<int> IndexOf(const Eigen::VectorXi& k) const;

  /// Per-axis sizes when shape() == kRect.
  const std::vector<int>& extents() const { return extents_; }
  double radius() const { return radius_; }

  /// Bounding box of the elements.
  Eigen::VectorXi lower() const;
  Eigen::VectorXi upper() const;

  /// Twice the center of symmetry, s, such that k in the set implies s - k in
  /// the set. Empty if the set has no center of symmetry.
  std::optional<Eigen::VectorXi> SymmetryCenterTwice() const;
  bool IsSymmetricAboutZero() const;

  /// Index of s - k for every element (requires a center of symmetry).
  std::vector<int> PartnerIndices() const;

  /// Rect sizes, or "ball(r)" / "explicit" tags.
  std::string Describe() const;

  bool operator==(const FourierSupport& other) const;

 private:
  FourierSupport(int dims, std::vector<std::vector<int>> elements, ShapeKind shape);

  Eigen::MatrixXi freqs_;
  std::map<std::vector<int>, int> index_;
  ShapeKind shape_ = ShapeKind::kExplicit;
  std::vector<int> extents_;
  double radius_ = 0.0;
};

/// Number of integer translates of the box `inner` contained in the box
/// `outer`: prod_d (L_d - K_d + 1).
long ShiftCount(const FourierSupport& inner, const FourierSupport& outer);

/// |outer| - ShiftCount(inner, outer).
long RankBound(const FourierSupport& inner, const FourierSupport& outer);

}  // namespace levelset

#endif  // LEVELSET_SUPPORT_HPP_
