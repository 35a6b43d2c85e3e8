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

// Information measures. Every logarithm is base 2; all values are in bits.

#ifndef QMARKOV_ENTROPIES_HPP
#define QMARKOV_ENTROPIES_HPP

#include <limits>
#include <span>

#include "qmarkov/linalg.hpp"
#include "qmarkov/states.hpp"

namespace qmarkov {

/// A divergence in bits. Support violations produce finite == false and
/// value == +inf; arithmetic on such values never raises.
struct DivergenceValue {
  double value = 0.0;
  bool finite = true;

  static DivergenceValue of(double bits) { return {bits, true}; }
  static DivergenceValue infinite() { return {std::numeric_limits<double>::infinity(), false}; }
};

/// Weight of a outside the support of b, tr((1 - P_b) a), relative to tr a.
double support_leak(const ComplexMatrix& a, const ComplexMatrix& b);

/// supp(a) is contained in supp(b) up to a relative leak of 1e-10.
bool support_contained(const ComplexMatrix& a, const ComplexMatrix& b);

double binary_entropy(double x);

double von_neumann(const ComplexMatrix& rho);

/// I(A:C|B) = H(AB) + H(BC) - H(B) - H(ABC) for a three-subsystem state.
double cmi(const DensityOperator& state);

/// I(a:c|b) for disjoint label groups; an empty b gives the mutual
/// information I(a:c).
double conditional_mutual_information(const DensityOperator& state, const Labels& a,
                                      const Labels& c, const Labels& b);

DivergenceValue relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// F = || sqrt(tau) sqrt(omega) ||_1^2.
double fidelity(const ComplexMatrix& tau, const ComplexMatrix& omega);

double trace_distance(const ComplexMatrix& tau, const ComplexMatrix& omega);

/// -log2 F; +inf when the supports are orthogonal.
DivergenceValue d_min(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// log2 lambda_max(sigma^{-1/2} rho sigma^{-1/2}); +inf on support violation.
DivergenceValue d_max(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// Sandwiched Renyi divergence for alpha >= 1/2. Values of alpha within 1e-6
/// of 1 are delegated to relative_entropy.
DivergenceValue d_alpha(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha);

struct MeasuredBounds {
  DivergenceValue lower;
  DivergenceValue upper;
};

/// Bracket for the measured relative entropy: the lower end is the larger of
/// D_min and the classical divergence of two projective measurements (the
/// eigenbasis of sigma and of a generic combination of sigma and rho); the
/// upper end is the relative entropy. For commuting arguments both ends
/// agree.
MeasuredBounds d_measured_bounds(const ComplexMatrix& rho, const ComplexMatrix& sigma);

/// log2 tr(tau^2 omega^{-1}) with support-restricted inverse.
DivergenceValue petz_renyi_2(const ComplexMatrix& tau, const ComplexMatrix& omega);

/// Log-Euclidean Renyi divergence (1/(alpha-1)) log2 tr exp(alpha ln omega +
/// (1 - alpha) ln sigma) for alpha > 1. Logs are support-restricted.
DivergenceValue log_euclidean_alpha(const ComplexMatrix& omega, const ComplexMatrix& sigma,
                                    double alpha);

/// Probability-vector counterparts used by the classical constructions.
namespace classical {

double entropy(std::span<const double> p);
DivergenceValue relative_entropy(std::span<const double> p, std::span<const double> q);
DivergenceValue d_max(std::span<const double> p, std::span<const double> q);
DivergenceValue d_alpha(std::span<const double> p, std::span<const double> q, double alpha);

/// I(a:c|b) of a joint pmf via marginal entropies.
double conditional_mutual_information(const ClassicalJoint& joint, const Labels& a,
                                      const Labels& c, const Labels& b);

}  // namespace classical

}  // namespace qmarkov

#endif  // QMARKOV_ENTROPIES_HPP
