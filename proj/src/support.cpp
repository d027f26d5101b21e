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

#include "levelset/support.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "levelset/error.hpp"

namespace levelset {

FourierSupport::FourierSupport(int dims, std::vector<std::vector<int>> elements,
                               ShapeKind shape)
    : shape_(shape) {
  if (dims < 1) throw InputError("support dimension must be at least 1");
  if (elements.empty()) throw InputError("support must not be empty");
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end()) {
    throw InputError("support elements must be distinct");
  }
  freqs_.resize(dims, static_cast<Eigen::Index>(elements.size()));
  for (size_t m = 0; m < elements.size(); ++m) {
    if (static_cast<int>(elements[m].size()) != dims) {
      throw InputError("support element has wrong dimension");
    }
    for (int d = 0; d < dims; ++d) freqs_(d, static_cast<Eigen::Index>(m)) = elements[m][d];
    index_.emplace(elements[m], static_cast<int>(m));
  }
}

FourierSupport FourierSupport::Rect(const std::vector<int>& sizes) {
  std::vector<int> lo(sizes.size()), hi(sizes.size());
  for (size_t d = 0; d < sizes.size(); ++d) {
    if (sizes[d] < 1) throw InputError("rect support sizes must be positive");
    lo[d] = sizes[d] % 2 == 1 ? -(sizes[d] - 1) / 2 : -sizes[d] / 2;
    hi[d] = lo[d] + sizes[d] - 1;
  }
  return Box(lo, hi);
}

FourierSupport FourierSupport::Box(const std::vector<int>& lo, const std::vector<int>& hi) {
  if (lo.empty() || lo.size() != hi.size()) throw InputError("box bounds must match in dimension");
  const int dims = static_cast<int>(lo.size());
  std::vector<int> sizes(dims);
  long total = 1;
  for (int d = 0; d < dims; ++d) {
    if (hi[d] < lo[d]) throw InputError("box upper bound below lower bound");
    sizes[d] = hi[d] - lo[d] + 1;
    total *= sizes[d];
  }
  std::vector<std::vector<int>> elements;
  elements.reserve(static_cast<size_t>(total));
  std::vector<int> k(lo);
  for (long m = 0; m < total; ++m) {
    elements.push_back(k);
    for (int d = dims - 1; d >= 0; --d) {
      if (++k[d] <= hi[d]) break;
      k[d] = lo[d];
    }
  }
  FourierSupport s(dims, std::move(elements), ShapeKind::kRect);
  s.extents_ = sizes;
  return s;
}

FourierSupport FourierSupport::Ball(int dims, double radius) {
  if (dims < 1) throw InputError("support dimension must be at least 1");
  if (!(radius >= 0.0)) throw InputError("ball radius must be non-negative");
  const int r = static_cast<int>(std::floor(radius));
  std::vector<std::vector<int>> elements;
  std::vector<int> k(dims, -r);
  while (true) {
    double norm2 = 0.0;
    for (int v : k) norm2 += static_cast<double>(v) * v;
    if (norm2 <= radius * radius) elements.push_back(k);
    int d = dims - 1;
    for (; d >= 0; --d) {
      if (++k[d] <= r) break;
      k[d] = -r;
    }
    if (d < 0) break;
  }
  FourierSupport s(dims, std::move(elements), ShapeKind::kBall);
  s.radius_ = radius;
  return s;
}

FourierSupport FourierSupport::Explicit(int dims, const std::vector<std::vector<int>>& elements) {
  return FourierSupport(dims, elements, ShapeKind::kExplicit);
}

std::optional<int> FourierSupport::IndexOf(const Eigen::VectorXi& k) const {
  if (k.size() != dims()) return std::nullopt;
  std::vector<int> key(k.data(), k.data() + k.size());
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Eigen::VectorXi FourierSupport::lower() const { return freqs_.rowwise().minCoeff(); }
Eigen::VectorXi FourierSupport::upper() const { return freqs_.rowwise().maxCoeff(); }

std::optional<Eigen::VectorXi> FourierSupport::SymmetryCenterTwice() const {
  Eigen::VectorXi s = lower() + upper();
  for (int m = 0; m < size(); ++m) {
    if (!IndexOf(s - freqs_.col(m))) return std::nullopt;
  }
  return s;
}

bool FourierSupport::IsSymmetricAboutZero() const {
  auto s = SymmetryCenterTwice();
  return s && s->isZero();
}

std::vector<int> FourierSupport::PartnerIndices() const {
  auto s = SymmetryCenterTwice();
  if (!s) throw InputError("support has no center of symmetry");
  std::vector<int> partner(static_cast<size_t>(size()));
  for (int m = 0; m < size(); ++m) partner[m] = *IndexOf(*s - freqs_.col(m));
  return partner;
}

std::string FourierSupport::Describe() const {
  std::ostringstream os;
  switch (shape_) {
    case ShapeKind::kRect:
      os << "rect(";
      for (size_t d = 0; d < extents_.size(); ++d) os << (d ? "x" : "") << extents_[d];
      os << ")";
      break;
    case ShapeKind::kBall:
      os << "ball(" << radius_ << ")";
      break;
    case ShapeKind::kExplicit:
      os << "explicit(" << size() << ")";
      break;
  }
  return os.str();
}

bool FourierSupport::operator==(const FourierSupport& other) const {
  return freqs_.rows() == other.freqs_.rows() && freqs_.cols() == other.freqs_.cols() &&
         freqs_ == other.freqs_;
}

long ShiftCount(const FourierSupport& inner, const FourierSupport& outer) {
  if (inner.shape() != ShapeKind::kRect || outer.shape() != ShapeKind::kRect) {
    throw InputError("shift count is defined for rect supports");
  }
  if (inner.dims() != outer.dims()) throw InputError("support dimensions differ");
  long count = 1;
  for (int d = 0; d < inner.dims(); ++d) {
    const int k = inner.extents()[d];
    const int l = outer.extents()[d];
    if (k > l) throw InputError("inner support does not fit inside outer support");
    count *= l - k + 1;
  }
  return count;
}

long RankBound(const FourierSupport& inner, const FourierSupport& outer) {
  return static_cast<long>(outer.size()) - ShiftCount(inner, outer);
}

}  // namespace levelset
