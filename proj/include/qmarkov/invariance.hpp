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


// Fixed points of channels and the distance of a state to them in
// max-relative entropy.

#ifndef QMARKOV_INVARIANCE_HPP
#define QMARKOV_INVARIANCE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmarkov/channels.hpp"
#include "qmarkov/states.hpp"

namespace qmarkov {

/// Singular values of E - id at or below this value span the fixed space.
inline constexpr double kFixedPointTolerance = 1e-8;

/// Singular values in (kFixedPointTolerance, kFixedPointWarning] mark a
/// nearly degenerate fixed space.
inline constexpr double kFixedPointWarning = 1e-5;

/// Largest certified gap (bits) lambda_max accepts.
inline constexpr double kLambdaGapLimit = 1e-6;

/// Raised when the optimization cannot certify its result.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Orthonormal (Hilbert-Schmidt) Hermitian basis of {X : E(X) = X}.
struct FixedPointSet {
  Dims dims;
  Labels labels;
  std::vector<ComplexMatrix> basis;
  double tolerance = kFixedPointTolerance;
  /// Smallest singular value of E - id above the tolerance (+inf if none).
  double spectral_gap = 0.0;
  bool ill_conditioned = false;
};

/// Null space of E - id for a channel whose input and output signatures
/// agree, computed in a Hermitian operator basis.
///
/// Throws std::invalid_argument for a non-square channel and
/// std::runtime_error if no fixed point is found.
FixedPointSet fixed_point_basis(const QuantumChannel& ch);

/// Basis of the fixed space of id_R (x) E: every Hermitian basis element on
/// R tensored with every element of fps. R comes first.
FixedPointSet lift_fixed_points(const FixedPointSet& fps, std::size_t rest_dim,
                                const std::string& rest_label = "A");

struct LambdaResult {
  /// Upper end of the certified bracket, log2 tr(sigma); +inf if no fixed
  /// state dominates the input.
  double value = 0.0;
  bool finite = true;
  /// Certified lower end (bits).
  double lower = 0.0;
  /// value - lower.
  double gap = 0.0;
  /// Normalized optimizer, in the input state's subsystem order.
  std::optional<DensityOperator> witness;
  int newton_steps = 0;
  bool ill_conditioned = false;
};

/// inf over fixed states tau of (id (x) E) of D_max(rho || tau), where E acts
/// on the subsystems of rho named by its input labels. Solved as
///   minimize tr(sigma)  s.t.  sigma >= rho,  sigma in the fixed space,
/// with a log-barrier Newton method and a dual certificate.
///
/// Throws SolverError when the certified gap exceeds kLambdaGapLimit.
LambdaResult lambda_max(const DensityOperator& rho, const QuantumChannel& ch);

struct ClassicalLambdaResult {
  double value = 0.0;
  bool finite = true;
  std::optional<ClassicalJoint> witness;
};

/// The same quantity for a classical joint and a stochastic map from the
/// variable `on` to itself, solved exactly: fixed distributions are mixtures
/// of the stationary laws of the closed classes, and the optimal weight of
/// each class is the largest ratio of the input to that law.
ClassicalLambdaResult lambda_max_classical(const ClassicalJoint& rho, const ClassicalChannel& ch,
                                           const std::string& on);

/// Closed communicating classes of a stochastic map and their stationary
/// laws (dense, one vector per class).
struct ClassDecomposition {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::vector<double>> stationary;
  std::vector<std::size_t> transient;
};
ClassDecomposition closed_classes(const ClassicalChannel& ch);

/// D_alpha(rho || witness) for a witness fixed by id (x) E, an upper bound on
/// the infimum over all fixed states.
///
/// Throws std::invalid_argument if the witness moves by more than 1e-7 in
/// trace norm.
double lambda_alpha_upper(const DensityOperator& rho, const QuantumChannel& ch, double alpha,
                          const DensityOperator& witness);
double lambda_alpha_upper(const ClassicalJoint& rho, const ClassicalChannel& ch,
                          const std::string& on, double alpha, const ClassicalJoint& witness);

struct MarkovCertificate {
  /// D_max(recovered || R(witness)).
  double value = 0.0;
  bool finite = true;
  /// I(A:C|B) of R(witness); a Markov chain up to round-off.
  double witness_cmi = 0.0;
  bool markov = true;
};

/// Evaluates D_max(recovered || R(witness)) for the witness of a lambda_max
/// result and a recovery map R: B -> B C, and checks that R(witness) is a
/// Markov chain (CMI <= 1e-6). The witness must be on (A, B).
///
/// Throws std::invalid_argument if the result has no witness.
MarkovCertificate markov_dmax_bound(const DensityOperator& recovered, const LambdaResult& result,
                                    const QuantumChannel& recovery);

}  // namespace qmarkov

#endif  // QMARKOV_INVARIANCE_HPP
