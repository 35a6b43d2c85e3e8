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

#ifndef QMARKOV_STATES_HPP
#define QMARKOV_STATES_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qmarkov/linalg.hpp"

namespace qmarkov {

using Labels = std::vector<std::string>;

/// "A", "B", "C", ... for n <= 26; "S0", "S1", ... beyond.
Labels default_labels(std::size_t n);

/// Tolerance for the density-operator invariants (Hermiticity, positivity,
/// unit trace).
inline constexpr double kStateTolerance = 1e-10;

/// A PSD, unit-trace operator on a labeled tensor product. Construction
/// validates the invariants and stores the Hermitian part of the input.
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, Dims dims, Labels labels);
  DensityOperator(ComplexMatrix matrix, Dims dims);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const Dims& dims() const noexcept { return dims_; }
  const Labels& labels() const noexcept { return labels_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  operator const ComplexMatrix&() const noexcept { return matrix_; }

  /// Throws std::invalid_argument for an unknown label.
  std::size_t index_of(std::string_view label) const;
  std::vector<std::size_t> indices_of(const Labels& labels) const;
  bool has_label(std::string_view label) const;

  double purity() const;

 private:
  ComplexMatrix matrix_;
  Dims dims_;
  Labels labels_;
};

/// Joint pmf over finite alphabets, stored row-major (first variable slowest).
class ClassicalJoint {
 public:
  ClassicalJoint(std::vector<double> pmf, Dims alphabets, Labels labels);
  ClassicalJoint(std::vector<double> pmf, Dims alphabets);

  const std::vector<double>& pmf() const noexcept { return pmf_; }
  const Dims& alphabets() const noexcept { return alphabets_; }
  const Labels& labels() const noexcept { return labels_; }
  std::size_t size() const noexcept { return pmf_.size(); }

  std::size_t index_of(std::string_view label) const;
  std::vector<std::size_t> indices_of(const Labels& labels) const;

  std::size_t linear_index(std::span<const std::size_t> outcome) const;
  double operator()(std::span<const std::size_t> outcome) const;

  /// Marginal on the listed variables, kept in their order within the joint.
  ClassicalJoint marginal(const Labels& keep) const;

 private:
  std::vector<double> pmf_;
  Dims alphabets_;
  Labels labels_;
};

/// Compensated summation; enumerations over 2^24 outcomes stay within the
/// 1e-12 normalization tolerance.
double stable_sum(std::span<const double> values);

/// Diagonal embedding of a classical joint in the computational product basis.
DensityOperator from_classical(const ClassicalJoint& joint);

/// Partial trace onto the labeled subsystems (kept in the state's order).
DensityOperator marginal(const DensityOperator& state, const Labels& keep);

/// One summand of a block decomposition of B: a weight, a state on
/// A (x) b^L and a state on b^R (x) C.
struct MarkovBlock {
  double weight;
  DensityOperator left;   // dims {dim A, dim b^L}
  DensityOperator right;  // dims {dim b^R, dim C}
};

struct MarkovChainSpec {
  std::vector<MarkovBlock> blocks;
};

/// Assembles the direct sum of P(j) rho_{A b_j^L} (x) rho_{b_j^R C}. The
/// embedding is fixed: block j occupies B-indices [offset_j, offset_j +
/// dL_j dR_j) with local index l * dR_j + r, offsets in block order.
/// Output labels are {A, B, C}.
///
/// Throws std::invalid_argument on inconsistent dims or weights that are not
/// a probability distribution.
DensityOperator assemble_markov(const MarkovChainSpec& spec);

/// Random decomposition of a B system of dimension b_dim into blocks with
/// random factorizations, Dirichlet weights and full-rank Wishart factors.
MarkovChainSpec random_markov_spec(std::size_t a_dim, std::size_t b_dim, std::size_t c_dim,
                                   std::uint64_t seed);

/// Determinant (totally antisymmetric) state on d sites of dimension d.
/// Throws std::invalid_argument unless 2 <= d <= 6.
ComplexVector slater_vector(std::size_t d);

/// Density operator of slater_vector(d). The dense matrix has side d^d, which
/// limits this form to 2 <= d <= 5; use slater_vector beyond that.
DensityOperator slater_state(std::size_t d);

/// Normalized G G^dagger for a seeded standard complex Gaussian
/// (dim x rank) matrix G.
DensityOperator random_density(const Dims& dims, std::size_t rank, std::uint64_t seed);
DensityOperator random_density(const Dims& dims, std::uint64_t seed);  // full rank

/// Seeded Dirichlet(1, ..., 1) joint pmf.
ClassicalJoint random_classical(const Dims& alphabets, std::uint64_t seed);

/// Derives a per-trial seed from a base seed and stream indices (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index = 0);

}  // namespace qmarkov

#endif  // QMARKOV_STATES_HPP
