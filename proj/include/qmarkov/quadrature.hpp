// Copyright 2026 The qmarkov Authors
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


// Quadrature for averaging over the rotation parameter of the rotated Petz
// maps.

#ifndef QMARKOV_QUADRATURE_HPP
#define QMARKOV_QUADRATURE_HPP

#include <cstddef>
#include <vector>

namespace qmarkov {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Density (pi/2) / (cosh(pi t) + 1) of the rotation-averaging measure.
double beta0_density(double t);

/// n-point rule for that measure on the real line: the trapezoidal rule on
/// [-T, T] with T = sqrt(n - 1), which balances the truncated tail
/// (about 2 exp(-pi T)) against the discretization error of an integrand
/// analytic in the strip |Im t| < 1 (about exp(-2 pi / h)). Weights are
/// normalized to sum to 1, so averaged channels stay trace preserving.
///
/// In the variable u = tanh(pi t / 2) the measure is du/2 and these nodes
/// cluster exponentially at the endpoints, where rotated maps oscillate
/// like (1 - u)^{i w}; Gauss-Legendre in u converges only as n^-2 there.
///
/// Throws std::invalid_argument for n < 2.
QuadratureRule beta0_rule(std::size_t n);

}  // namespace qmarkov

#endif  // QMARKOV_QUADRATURE_HPP
