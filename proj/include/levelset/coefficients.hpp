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

#ifndef LEVELSET_COEFFICIENTS_HPP_
#define LEVELSET_COEFFICIENTS_HPP_

#include <Eigen/Core>

#include <complex>

#include "levelset/support.hpp"

namespace levelset {

using Complex = std::complex<double>;

/// Fourier coefficients of a bandlimited potential psi, one per support
/// element.
///
/// With `conj_symmetric` set, c[s-k] == conj(c[k]) where s/2 is the support's
/// center, so exp(-j*pi*s.r) * psi(r) is real for every r.
struct CoefficientVector {
  FourierSupport support;
  Eigen::VectorXcd values;
  bool conj_symmetric = false;

  CoefficientVector(FourierSupport s, Eigen::VectorXcd v, bool symmetric = false);

  int size() const { return support.size(); }

  /// Largest |c[s-k] - conj(c[k])|; 0 for exactly symmetric vectors.
  double SymmetryDefect() const;
};

/// Mirror c -> conj(c[s-k]); the fixed points are the conjugate-symmetric
/// vectors.
Eigen::VectorXcd ConjugateMirror(const FourierSupport& support, const Eigen::VectorXcd& c);

/// Rotates `v` so its largest-modulus entry is real and positive. Modulus
/// ties go to the lowest index.
void NormalizePhase(Eigen::VectorXcd& v);

/// Sign convention for conjugate-symmetric vectors, whose global phase is
/// fixed up to +-1: the largest-modulus entry gets a positive real part (or a
/// positive imaginary part when it is purely imaginary).
void NormalizeSign(Eigen::VectorXcd& v);

/// |<a, b>| for unit vectors a, b on the same support.
double Correlation(const CoefficientVector& a, const CoefficientVector& b);

/// Coefficients of the product psi_a * psi_b (support is the Minkowski sum of
/// the two boxes).
CoefficientVector Multiply(const CoefficientVector& a, const CoefficientVector& b);

/// Translates a rect-supported coefficient vector to the centered rect of the
/// same extents. Multiplies psi by a unit-modulus exponential, so the zero set
/// is unchanged.
CoefficientVector Recenter(const CoefficientVector& c);

}  // namespace levelset

#endif  // LEVELSET_COEFFICIENTS_HPP_
