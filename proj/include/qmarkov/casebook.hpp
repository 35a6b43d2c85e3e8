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


// Explicit constructions: the noisy-copy and modular-sum distributions with
// their recovery maps, the small triangle counterexamples, and the
// antisymmetric state. Closed forms and exact enumerations are separate code
// paths; every reported number says which one produced it.

#ifndef QMARKOV_CASEBOOK_HPP
#define QMARKOV_CASEBOOK_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "qmarkov/channels.hpp"
#include "qmarkov/states.hpp"

namespace qmarkov {

enum class ValuePath { closed_form, enumeration };

const char* to_string(ValuePath path);

struct ClosedFormEntry {
  std::string key;
  double value = 0.0;
  /// The formula the value comes from, written out.
  std::string anchor;
  ValuePath path = ValuePath::closed_form;
};

/// Named scalars (bits unless stated otherwise) plus boolean checks.
struct ClosedFormReport {
  std::string experiment;
  std::vector<ClosedFormEntry> entries;
  std::map<std::string, bool> flags;

  void add(std::string key, double value, std::string anchor, ValuePath path);
  bool has(const std::string& key) const;
  /// Throws std::out_of_range for an unknown key.
  double value(const std::string& key) const;
  const ClosedFormEntry& entry(const std::string& key) const;
  bool flag(const std::string& key) const;
};

/// Largest alphabet exponent the enumerations accept (joint size 2^{3n}).
inline constexpr std::size_t kMaxEnumerationBits = 8;

// ---------------------------------------------------------------------------
// Noisy copy. X is uniform on 2^n symbols. Z = X with probability p + q and
// fresh noise otherwise; Y = X with probability p, Y = Z with probability q
// and fresh noise otherwise.

struct NoisyCopyParams {
  std::size_t n = 1;
  double p = 0.5;
  double q = 0.0;
};

/// Throws std::invalid_argument unless p, q >= 0, p + q <= 1 and n >= 1.
void validate(const NoisyCopyParams& params);

/// Exact pmf on (X, Y, Z), summed branch by branch over the flags and the
/// noise symbols. Throws std::invalid_argument for n > kMaxEnumerationBits.
ClassicalJoint noisy_copy_joint(const NoisyCopyParams& params);

/// Y -> (Y, Z): with weight w = p^2 + q + pq copy Y twice, otherwise replace
/// one of the two copies (each with weight (1 - w)/2) by fresh noise.
ClassicalChannel noisy_copy_recovery(const NoisyCopyParams& params);

/// Branch weights (copy, noise in Z, noise in Y) of the recovery map.
std::vector<double> noisy_copy_branch_weights(const NoisyCopyParams& params);

/// Large-n closed forms: conditional entropies, the CMI lower bound and both
/// five-term D_max expressions, with P(X = Y) = p + pq + q^2.
ClosedFormReport noisy_copy_closed_forms(const NoisyCopyParams& params);

/// Exact finite-n values: P(X = Y), the CMI, D_max in both directions
/// between P and R(P_XY) and the marginal-match defect of the recovery map.
ClosedFormReport noisy_copy_enumeration(const NoisyCopyParams& params);

/// Smallest n <= n_max at which kappa * D_max(P || R(P_XY)) lies below the
/// CMI lower bound, both from the closed forms; 0 if none.
std::size_t noisy_copy_threshold(double p, double q, double kappa, std::size_t n_max);

// ---------------------------------------------------------------------------
// Modular sum. With probability p, X = Y = Z uniform; otherwise X, Y are
// independent uniform and Z = X + Y mod 2^n.

struct ModularSumParams {
  std::size_t n = 1;
  double p = 0.5;
};

void validate(const ModularSumParams& params);

ClassicalJoint modular_sum_joint(const ModularSumParams& params);

/// The uniform pmf on (X, Y), which the Y-marginal of the recovery map
/// leaves invariant.
ClassicalJoint modular_sum_uniform_pair(std::size_t n);

/// Y -> (Y, Z): with probability p copy Y; otherwise output (U, Y - U mod
/// 2^n) for uniform U.
ClassicalChannel modular_sum_recovery(const ModularSumParams& params);

/// Closed-form bounds for given n, p and Renyi order: cmi_lower =
/// (1 - p) n - h(p), d_upper = log(1/p) and lambda_alpha_upper = D_alpha of
/// P_XY against the uniform pair. n may be large; evaluated in log space.
ClosedFormReport modular_sum_bounds(double n, double p, double alpha);

/// modular_sum_bounds at p = alpha^-2, n = alpha, together with the
/// intermediate values alpha - 2/alpha and alpha - 1/alpha - h(alpha^-2) and
/// a flag per step of the chain. Throws std::invalid_argument for alpha < 2.
ClosedFormReport modular_sum_closed_forms(double alpha);

/// Exact finite-n values: CMI, D(P || R(P_XY)), the marginal-match and
/// invariance defects and D_alpha(P_XY || uniform pair).
ClosedFormReport modular_sum_enumeration(const ModularSumParams& params, double alpha);

/// Smallest integer alpha in [2, alpha_max] from which on the chain holds up
/// to alpha_max; 0 if it fails at alpha_max.
std::size_t modular_sum_threshold(std::size_t alpha_max);

// ---------------------------------------------------------------------------
// Two-bit triangle example. P puts p on (0, 0) and (1 - p)/3 elsewhere, Q puts
// p on (1, 1) and (1 - p)/3 elsewhere, S is uniform.

struct DistributionTriple {
  ClassicalJoint p;
  ClassicalJoint q;
  ClassicalJoint s;
};

DistributionTriple renyi_triangle_distributions(double p);

struct TriangleValues {
  double d_pq = 0.0;
  /// The middle term: D(P||S) for the Renyi example, D_max(P||S) for the
  /// exchange example.
  double d_ps = 0.0;
  /// D_alpha(S||Q), or D(S||Q) for the exchange example.
  double d_sq = 0.0;
  /// d_pq - d_ps - d_sq; positive when the triangle-like bound fails.
  double gap = 0.0;
};

/// Closed forms for the two-bit example.
TriangleValues renyi_triangle_values(double p, double alpha);

/// The violating choice p = 1 - 2^-alpha.
double renyi_triangle_violating_p(double alpha);

// Binary exchange example: P = (1 - p, p), Q = (1 - eps, eps),
// S = (1 - p/2, p/2).

DistributionTriple exchange_distributions(double p, double eps);

/// Closed forms; D_max(P||S) only ranges over the support of P.
TriangleValues exchange_values(double p, double eps);

// ---------------------------------------------------------------------------

/// Per-step CMI I(S1 : Sk | S2 ... S(k-1)) of the determinant state on d
/// sites for k = 2..d, their sum against 2 log d and the smallest step
/// against (2/(d - 1)) log d. Throws std::invalid_argument unless
/// 2 <= d <= 6.
ClosedFormReport antisymmetric_report(std::size_t d);

}  // namespace qmarkov

#endif  // QMARKOV_CASEBOOK_HPP
