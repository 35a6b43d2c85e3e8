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

#include "qmarkov/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

namespace qmarkov {

namespace {

void check_labels(const Labels& labels, std::size_t n, const char* what) {
  if (labels.size() != n) {
    throw std::invalid_argument(std::string(what) + ": label count does not match subsystem count");
  }
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) {
    throw std::invalid_argument(std::string(what) + ": duplicate labels");
  }
}

std::size_t find_label(const Labels& labels, std::string_view label, const char* what) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument(std::string(what) + ": unknown label '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

Labels default_labels(std::size_t n) {
  Labels out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(n <= 26 ? std::string(1, static_cast<char>('A' + k)) : "S" + std::to_string(k));
  }
  return out;
}

DensityOperator::DensityOperator(ComplexMatrix matrix, Dims dims, Labels labels)
    : matrix_(std::move(matrix)), dims_(std::move(dims)), labels_(std::move(labels)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("DensityOperator: matrix is not square");
  }
  if (dims_.empty() || total_dim(dims_) != dim()) {
    throw std::invalid_argument("DensityOperator: matrix side does not match product of dims");
  }
  check_labels(labels_, dims_.size(), "DensityOperator");
  if (!matrix_.allFinite()) throw std::invalid_argument("DensityOperator: non-finite entries");
  if (hermiticity_defect(matrix_) > kStateTolerance) {
    throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
  }
  matrix_ = hermitian_part(matrix_);
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kStateTolerance) {
    throw std::invalid_argument("DensityOperator: trace " + std::to_string(trace) + " is not 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().size() > 0 && solver.eigenvalues()(0) < -kStateTolerance) {
    throw std::invalid_argument("DensityOperator: negative eigenvalue " +
                                std::to_string(solver.eigenvalues()(0)));
  }
}

DensityOperator::DensityOperator(ComplexMatrix matrix, Dims dims)
    : DensityOperator(std::move(matrix), dims, default_labels(dims.size())) {}

std::size_t DensityOperator::index_of(std::string_view label) const {
  return find_label(labels_, label, "DensityOperator");
}

std::vector<std::size_t> DensityOperator::indices_of(const Labels& labels) const {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(index_of(l));
  return out;
}

bool DensityOperator::has_label(std::string_view label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

double stable_sum(std::span<const double> values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

ClassicalJoint::ClassicalJoint(std::vector<double> pmf, Dims alphabets, Labels labels)
    : pmf_(std::move(pmf)), alphabets_(std::move(alphabets)), labels_(std::move(labels)) {
  if (alphabets_.empty() || total_dim(alphabets_) != pmf_.size()) {
    throw std::invalid_argument("ClassicalJoint: pmf size does not match alphabets");
  }
  check_labels(labels_, alphabets_.size(), "ClassicalJoint");
  for (double p : pmf_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("ClassicalJoint: negative or non-finite probability");
    }
  }
  const double total = stable_sum(pmf_);
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("ClassicalJoint: probabilities sum to " + std::to_string(total));
  }
}

ClassicalJoint::ClassicalJoint(std::vector<double> pmf, Dims alphabets)
    : ClassicalJoint(std::move(pmf), alphabets, default_labels(alphabets.size())) {}

std::size_t ClassicalJoint::index_of(std::string_view label) const {
  return find_label(labels_, label, "ClassicalJoint");
}

std::vector<std::size_t> ClassicalJoint::indices_of(const Labels& labels) const {
  std::vector<std::size_t> out;
  for (const auto& l : labels) out.push_back(index_of(l));
  return out;
}

std::size_t ClassicalJoint::linear_index(std::span<const std::size_t> outcome) const {
  if (outcome.size() != alphabets_.size()) {
    throw std::invalid_argument("ClassicalJoint: outcome arity mismatch");
  }
  std::size_t idx = 0;
  for (std::size_t k = 0; k < outcome.size(); ++k) {
    if (outcome[k] >= alphabets_[k]) throw std::out_of_range("ClassicalJoint: symbol out of range");
    idx = idx * alphabets_[k] + outcome[k];
  }
  return idx;
}

double ClassicalJoint::operator()(std::span<const std::size_t> outcome) const {
  return pmf_[linear_index(outcome)];
}

ClassicalJoint ClassicalJoint::marginal(const Labels& keep) const {
  std::vector<std::size_t> kept = indices_of(keep);
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("ClassicalJoint::marginal: duplicate label");
  }
  Dims out_alpha;
  Labels out_labels;
  for (std::size_t k : kept) {
    out_alpha.push_back(alphabets_[k]);
    out_labels.push_back(labels_[k]);
  }
  std::vector<double> out(total_dim(out_alpha), 0.0);
  std::vector<std::size_t> digits(alphabets_.size(), 0);
  for (double p : pmf_) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) idx = idx * out_alpha[i] + digits[kept[i]];
    out[idx] += p;
    for (std::size_t i = alphabets_.size(); i-- > 0;) {
      if (++digits[i] < alphabets_[i]) break;
      digits[i] = 0;
    }
  }
  const double total = stable_sum(out);
  for (double& p : out) p /= total;
  return ClassicalJoint(std::move(out), std::move(out_alpha), std::move(out_labels));
}

DensityOperator from_classical(const ClassicalJoint& joint) {
  const auto n = static_cast<Eigen::Index>(joint.size());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = joint.pmf()[static_cast<std::size_t>(i)];
  return DensityOperator(std::move(m), joint.alphabets(), joint.labels());
}

DensityOperator marginal(const DensityOperator& state, const Labels& keep) {
  std::vector<std::size_t> kept = state.indices_of(keep);
  std::sort(kept.begin(), kept.end());
  Dims dims;
  Labels labels;
  for (std::size_t k : kept) {
    dims.push_back(state.dims()[k]);
    labels.push_back(state.labels()[k]);
  }
  if (kept.size() == state.dims().size()) return state;
  return DensityOperator(partial_trace(state.matrix(), state.dims(), kept), std::move(dims),
                         std::move(labels));
}

DensityOperator assemble_markov(const MarkovChainSpec& spec) {
  if (spec.blocks.empty()) throw std::invalid_argument("assemble_markov: no blocks");
  const std::size_t a_dim = spec.blocks.front().left.dims().at(0);
  const std::size_t c_dim = spec.blocks.front().right.dims().at(1);
  std::size_t b_dim = 0;
  double total_weight = 0.0;
  for (const auto& block : spec.blocks) {
    if (block.left.dims().size() != 2 || block.right.dims().size() != 2) {
      throw std::invalid_argument("assemble_markov: factors must be bipartite");
    }
    if (block.left.dims()[0] != a_dim || block.right.dims()[1] != c_dim) {
      throw std::invalid_argument("assemble_markov: inconsistent A or C dimension");
    }
    if (!(block.weight >= 0.0)) throw std::invalid_argument("assemble_markov: negative weight");
    total_weight += block.weight;
    b_dim += block.left.dims()[1] * block.right.dims()[0];
  }
  if (std::abs(total_weight - 1.0) > 1e-12) {
    throw std::invalid_argument("assemble_markov: weights do not sum to 1");
  }

  const auto full = static_cast<Eigen::Index>(a_dim * b_dim * c_dim);
  ComplexMatrix out = ComplexMatrix::Zero(full, full);
  std::size_t offset = 0;
  for (const auto& block : spec.blocks) {
    const std::size_t dl = block.left.dims()[1];
    const std::size_t dr = block.right.dims()[0];
    // Block local order is A, bL, bR, C.
    const ComplexMatrix local = tensor_product(block.left.matrix(), block.right.matrix());
    const std::size_t local_b = dl * dr;
    auto embed = [&](std::size_t local_index) {
      const std::size_t c = local_index % c_dim;
      const std::size_t b = (local_index / c_dim) % local_b;
      const std::size_t a = local_index / (c_dim * local_b);
      return static_cast<Eigen::Index>((a * b_dim + offset + b) * c_dim + c);
    };
    for (Eigen::Index i = 0; i < local.rows(); ++i) {
      const Eigen::Index gi = embed(static_cast<std::size_t>(i));
      for (Eigen::Index j = 0; j < local.cols(); ++j) {
        out(gi, embed(static_cast<std::size_t>(j))) += block.weight * local(i, j);
      }
    }
    offset += local_b;
  }
  return DensityOperator(std::move(out), {a_dim, b_dim, c_dim}, {"A", "B", "C"});
}

MarkovChainSpec random_markov_spec(std::size_t a_dim, std::size_t b_dim, std::size_t c_dim,
                                   std::uint64_t seed) {
  if (a_dim == 0 || b_dim == 0 || c_dim == 0) {
    throw std::invalid_argument("random_markov_spec: zero dimension");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> parts;
  std::size_t remaining = b_dim;
  while (remaining > 0) {
    std::uniform_int_distribution<std::size_t> pick(1, remaining);
    const std::size_t part = pick(rng);
    parts.push_back(part);
    remaining -= part;
  }
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> weights(parts.size());
  for (double& w : weights) w = expo(rng);
  const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);

  MarkovChainSpec spec;
  std::uint64_t stream = 0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    std::vector<std::size_t> divisors;
    for (std::size_t d = 1; d <= parts[j]; ++d) {
      if (parts[j] % d == 0) divisors.push_back(d);
    }
    std::uniform_int_distribution<std::size_t> pick(0, divisors.size() - 1);
    const std::size_t dl = divisors[pick(rng)];
    const std::size_t dr = parts[j] / dl;
    spec.blocks.push_back(MarkovBlock{
        weights[j] / wsum,
        random_density({a_dim, dl}, derive_seed(seed, 1, stream++)),
        random_density({dr, c_dim}, derive_seed(seed, 1, stream++)),
    });
  }
  // Renormalize so the weights sum to one to the last bit.
  double total = 0.0;
  for (const auto& b : spec.blocks) total += b.weight;
  spec.blocks.back().weight += 1.0 - total;
  return spec;
}

namespace {

bool permutation_is_odd(const std::vector<std::size_t>& perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) ++inversions;
    }
  }
  return (inversions % 2) == 1;
}

}  // namespace

ComplexVector slater_vector(std::size_t d) {
  if (d < 2 || d > 6) throw std::invalid_argument("slater_vector: d must lie in [2, 6]");
  std::size_t side = 1;
  for (std::size_t k = 0; k < d; ++k) side *= d;
  ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(side));
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  double count = 0;
  do {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < d; ++k) idx = idx * d + perm[k];
    psi(static_cast<Eigen::Index>(idx)) = permutation_is_odd(perm) ? -1.0 : 1.0;
    count += 1;
  } while (std::next_permutation(perm.begin(), perm.end()));
  psi /= std::sqrt(count);
  return psi;
}

DensityOperator slater_state(std::size_t d) {
  if (d < 2 || d > 5) {
    throw std::invalid_argument("slater_state: dense form requires 2 <= d <= 5");
  }
  const ComplexVector psi = slater_vector(d);
  return DensityOperator(psi * psi.adjoint(), Dims(d, d), default_labels(d));
}

DensityOperator random_density(const Dims& dims, std::size_t rank, std::uint64_t seed) {
  const std::size_t n = total_dim(dims);
  if (rank == 0 || rank > n) throw std::invalid_argument("random_density: rank out of range");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g =
      gaussian_matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rank), rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator(hermitian_part(rho), dims, default_labels(dims.size()));
}

DensityOperator random_density(const Dims& dims, std::uint64_t seed) {
  return random_density(dims, total_dim(dims), seed);
}

ClassicalJoint random_classical(const Dims& alphabets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> pmf(total_dim(alphabets));
  for (double& p : pmf) p = expo(rng);
  const double total = stable_sum(pmf);
  for (double& p : pmf) p /= total;
  return ClassicalJoint(std::move(pmf), alphabets, default_labels(alphabets.size()));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ stream) ^ index);
}

}  // namespace qmarkov
