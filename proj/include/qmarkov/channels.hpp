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


// Completely positive trace-preserving maps and the recovery maps built on
// them.

#ifndef QMARKOV_CHANNELS_HPP
#define QMARKOV_CHANNELS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/SparseCore>

#include "qmarkov/linalg.hpp"
#include "qmarkov/states.hpp"

namespace qmarkov {

/// Tolerance on sum_k K^dagger K - 1 (trace preservation) and on the most
/// negative Choi eigenvalue.
inline constexpr double kChannelTolerance = 1e-8;

/// Choi eigenvalues at or below this value are dropped when extracting Kraus
/// operators.
inline constexpr double kKrausCutoff = 1e-12;

/// A CPTP map held as Kraus operators (each out_dim x in_dim). Input and
/// output subsystems carry labels that `apply` matches against a state.
class QuantumChannel {
 public:
  /// Throws std::invalid_argument for inconsistent shapes or a trace
  /// preservation defect above kChannelTolerance.
  QuantumChannel(std::vector<ComplexMatrix> kraus, Dims in_dims, Dims out_dims, Labels in_labels,
                 Labels out_labels);
  QuantumChannel(std::vector<ComplexMatrix> kraus, Dims in_dims, Dims out_dims);

  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const Dims& in_dims() const noexcept { return in_dims_; }
  const Dims& out_dims() const noexcept { return out_dims_; }
  const Labels& in_labels() const noexcept { return in_labels_; }
  const Labels& out_labels() const noexcept { return out_labels_; }
  std::size_t in_dim() const noexcept { return in_dim_; }
  std::size_t out_dim() const noexcept { return out_dim_; }

  /// sum_ij |i><j| (x) E(|i><j|), input factor first.
  ComplexMatrix choi() const;

  /// Matrix of X -> E(X) on row-major vectorizations.
  ComplexMatrix superoperator() const;

  /// E(X) for an operator on the full input space.
  ComplexMatrix apply_matrix(const ComplexMatrix& x) const;

  /// Largest entry of |sum_k K^dagger K - 1|.
  double trace_preservation_defect() const;

  /// Choi PSD and trace preserving, both within tol.
  bool is_cptp(double tol = kChannelTolerance) const;

  /// Same map with new labels.
  QuantumChannel relabeled(Labels in_labels, Labels out_labels) const;

 private:
  std::vector<ComplexMatrix> kraus_;
  Dims in_dims_;
  Dims out_dims_;
  Labels in_labels_;
  Labels out_labels_;
  std::size_t in_dim_ = 0;
  std::size_t out_dim_ = 0;
};

/// Kraus operators K[o, i] = sqrt(lambda) v[i * out_dim + o] from the
/// eigendecomposition of a Choi matrix, dropping eigenvalues <= kKrausCutoff.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t in_dim,
                                           std::size_t out_dim);

QuantumChannel channel_from_choi(const ComplexMatrix& choi, Dims in_dims, Dims out_dims,
                                 Labels in_labels, Labels out_labels);

/// Applies the channel to the subsystems named by its input labels, acting
/// as the identity elsewhere. The outputs take the position of the first
/// input subsystem, in the channel's output-label order.
///
/// Throws std::invalid_argument for unknown labels, dimension mismatches or
/// output labels that collide with untouched subsystems.
DensityOperator apply(const QuantumChannel& ch, const DensityOperator& state);

/// Operator form of apply: x lives on dims/labels and need not be a state.
ComplexMatrix apply_operator(const QuantumChannel& ch, const ComplexMatrix& x, const Dims& dims,
                             const Labels& labels, Dims* out_dims = nullptr,
                             Labels* out_labels = nullptr);

/// f after g. g's output signature must match f's input signature.
QuantumChannel compose(const QuantumChannel& f, const QuantumChannel& g);

/// Partial trace of the listed output subsystems after the channel.
QuantumChannel restrict_output(const QuantumChannel& ch, const Labels& traced);

/// Re-extracts a minimal Kraus set from the Choi matrix.
QuantumChannel compress(const QuantumChannel& ch);

QuantumChannel identity_channel(const Dims& dims, const Labels& labels);

/// X -> X (x) sigma with sigma's subsystems appended after the input.
QuantumChannel append_channel(const Dims& in_dims, const Labels& in_labels,
                              const DensityOperator& sigma);

/// X -> tr(X) sigma.
QuantumChannel replacement_channel(const Dims& in_dims, const Labels& in_labels,
                                   const DensityOperator& sigma);

/// X -> (1 - p) X + p tr(X) 1/d.
QuantumChannel depolarizing_channel(const Dims& dims, const Labels& labels, double p);

/// sum_i w_i E_i for channels with a common signature.
QuantumChannel mixture(const std::vector<QuantumChannel>& channels,
                       const std::vector<double>& weights);

/// Stinespring dilation of a random isometry: the QR factor of a seeded
/// complex Gaussian (out_dim * env_dim) x in_dim matrix. Requires
/// out_dim * env_dim >= in_dim.
QuantumChannel random_channel(const Dims& in_dims, const Dims& out_dims, std::size_t env_dim,
                              std::uint64_t seed, Labels in_labels = {}, Labels out_labels = {});

/// Petz map of a bipartite state on (B, C): B -> B C,
///   X -> rho_BC^{1/2} (rho_B^{-1/2} X rho_B^{-1/2} (x) 1) rho_BC^{1/2}
///        + tr((1 - P_B) X) rho_BC,
/// where P_B projects onto supp(rho_B). The second term completes the map to
/// a CPTP map on inputs outside the support.
QuantumChannel petz_map(const DensityOperator& rho_bc);

/// Rotated Petz map, with rho^{(1 +- it)/2} in place of the square roots and
/// the same completion off the support.
QuantumChannel rotated_petz_map(const DensityOperator& rho_bc, double t);

/// Average of the rotated Petz maps over beta0_rule(nodes), via Choi matrices.
/// Throws std::invalid_argument for nodes < 8.
QuantumChannel averaged_rotated_petz(const DensityOperator& rho_bc, std::size_t nodes);

/// Weight of x outside supp(rho_B): the share of the input on which the
/// Petz completion acts.
double petz_off_support_weight(const DensityOperator& rho_bc, const ComplexMatrix& x_b);

/// Stochastic map from one variable to one or more output variables.
/// matrix(o, i) = Pr(out = o | in = i) with o the row-major index over the
/// output alphabets.
class ClassicalChannel {
 public:
  /// Throws std::invalid_argument if entries are negative or a column does
  /// not sum to 1 within 1e-12.
  ClassicalChannel(Eigen::SparseMatrix<double> matrix, std::size_t in_alphabet,
                   Dims out_alphabets, Labels out_labels);

  const Eigen::SparseMatrix<double>& matrix() const noexcept { return matrix_; }
  std::size_t in_alphabet() const noexcept { return in_alphabet_; }
  const Dims& out_alphabets() const noexcept { return out_alphabets_; }
  const Labels& out_labels() const noexcept { return out_labels_; }

  /// Channel from (out_index, in_index, probability) triplets; duplicates add.
  static ClassicalChannel from_triplets(const std::vector<Eigen::Triplet<double>>& triplets,
                                        std::size_t in_alphabet, Dims out_alphabets,
                                        Labels out_labels);

 private:
  Eigen::SparseMatrix<double> matrix_;
  std::size_t in_alphabet_;
  Dims out_alphabets_;
  Labels out_labels_;
};

/// Push-forward of the variable `on` through the channel. The outputs
/// replace `on` at its position; other variables are untouched.
ClassicalJoint classical_channel_apply(const ClassicalChannel& ch, const ClassicalJoint& joint,
                                       const std::string& on);

/// The same channel acting on diagonal operators: Kraus operators
/// sqrt(M(o|i)) |o><i|, input label `in_label`.
QuantumChannel to_quantum(const ClassicalChannel& ch, const std::string& in_label);

/// Marginal out-variable map: sums the listed output variables away.
ClassicalChannel restrict_output(const ClassicalChannel& ch, const Labels& traced);

}  // namespace qmarkov

#endif  // QMARKOV_CHANNELS_HPP
