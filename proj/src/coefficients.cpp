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

#include "levelset/coefficients.hpp"

#include <cmath>
#include <vector>

#include "levelset/error.hpp"

namespace levelset {
namespace {

int LargestEntry(const Eigen::VectorXcd& v) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) best = std::max(best, std::abs(v[i]));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) >= best * (1.0 - 1e-12)) return static_cast<int>(i);
  }
  return 0;
}

}  // namespace

CoefficientVector::CoefficientVector(FourierSupport s, Eigen::VectorXcd v, bool symmetric)
    : support(std::move(s)), values(std::move(v)), conj_symmetric(symmetric) {
  if (values.size() != support.size()) {
    throw InputError("coefficient count does not match support size");
  }
  if (conj_symmetric && !support.SymmetryCenterTwice()) {
    throw InputError("conjugate symmetry requires a symmetric support");
  }
}

double CoefficientVector::SymmetryDefect() const {
  return (ConjugateMirror(support, values) - values).cwiseAbs().maxCoeff();
}

Eigen::VectorXcd ConjugateMirror(const FourierSupport& support, const Eigen::VectorXcd& c) {
  const std::vector<int> partner = support.PartnerIndices();
  Eigen::VectorXcd out(c.size());
  for (Eigen::Index m = 0; m < c.size(); ++m) out[m] = std::conj(c[partner[m]]);
  return out;
}

void NormalizePhase(Eigen::VectorXcd& v) {
  if (v.size() == 0) return;
  const Complex pivot = v[LargestEntry(v)];
  if (std::abs(pivot) == 0.0) return;
  v *= std::conj(pivot) / std::abs(pivot);
}

void NormalizeSign(Eigen::VectorXcd& v) {
  if (v.size() == 0) return;
  const Complex pivot = v[LargestEntry(v)];
  const double tiny = 1e-12 * std::abs(pivot);
  const bool flip = std::abs(pivot.real()) > tiny ? pivot.real() < 0.0 : pivot.imag() < 0.0;
  if (flip) v = -v;
}

double Correlation(const CoefficientVector& a, const CoefficientVector& b) {
  if (!(a.support == b.support)) throw InputError("correlation needs identical supports");
  const double na = a.values.norm();
  const double nb = b.values.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a.values.dot(b.values)) / (na * nb);
}

CoefficientVector Multiply(const CoefficientVector& a, const CoefficientVector& b) {
  if (a.support.dims() != b.support.dims()) throw InputError("support dimensions differ");
  const Eigen::VectorXi lo = a.support.lower() + b.support.lower();
  const Eigen::VectorXi hi = a.support.upper() + b.support.upper();
  FourierSupport box = FourierSupport::Box(std::vector<int>(lo.data(), lo.data() + lo.size()),
                                           std::vector<int>(hi.data(), hi.data() + hi.size()));
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(box.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < b.size(); ++j) {
      const Eigen::VectorXi k = a.support.frequency(i) + b.support.frequency(j);
      out[*box.IndexOf(k)] += a.values[i] * b.values[j];
    }
  }
  const bool symmetric = a.conj_symmetric && b.conj_symmetric;
  return CoefficientVector(std::move(box), std::move(out), symmetric);
}

CoefficientVector Recenter(const CoefficientVector& c) {
  if (c.support.shape() != ShapeKind::kRect) throw InputError("recenter needs a rect support");
  FourierSupport centered = FourierSupport::Rect(c.support.extents());
  const Eigen::VectorXi shift = centered.lower() - c.support.lower();
  Eigen::VectorXcd out(c.size());
  for (int m = 0; m < c.size(); ++m) {
    out[*centered.IndexOf(c.support.frequency(m) + shift)] = c.values[m];
  }
  return CoefficientVector(std::move(centered), std::move(out), c.conj_symmetric);
}

}  // namespace levelset
