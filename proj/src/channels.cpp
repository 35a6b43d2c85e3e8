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


#include "qmarkov/channels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "qmarkov/quadrature.hpp"

namespace qmarkov {

namespace {

void check_channel_labels(const Labels& labels, std::size_t n, const char* what) {
  if (labels.size() != n) {
    throw std::invalid_argument(std::string(what) + ": label count does not match dims");
  }
  std::set<std::string> unique(labels.begin(), labels.end());
  if (unique.size() != labels.size()) {
    throw std::invalid_argument(std::string(what) + ": duplicate labels");
  }
}

std::size_t position(const Labels& labels, const std::string& label, const char* what) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument(std::string(what) + ": unknown label '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

// Decodes a row-major linear index into its multi-index.
std::vector<std::size_t> decode(std::size_t index, const Dims& dims) {
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = index % dims[k];
    index /= dims[k];
  }
  return digits;
}

std::size_t encode(const std::vector<std::size_t>& digits, const Dims& dims,
                   const std::vector<std::size_t>& which) {
  std::size_t index = 0;
  for (std::size_t k : which) index = index * dims[k] + digits[k];
  return index;
}

// Kraus operators of the (rotated) Petz map with the off-support completion.
std::vector<ComplexMatrix> petz_kraus(const DensityOperator& rho_bc, double t) {
  if (rho_bc.dims().size() != 2) {
    throw std::invalid_argument("petz_map: expected a bipartite state");
  }
  const std::size_t db = rho_bc.dims()[0];
  const std::size_t dc = rho_bc.dims()[1];
  const std::size_t keep_b[] = {0};
  const ComplexMatrix rho_b = hermitian_part(partial_trace(rho_bc.matrix(), rho_bc.dims(), keep_b));

  const ComplexMatrix outer = matrix_power(rho_bc.matrix(), Complex(0.5, 0.5 * t));
  const ComplexMatrix inner = matrix_power(rho_b, Complex(-0.5, -0.5 * t));

  std::vector<ComplexMatrix> kraus;
  const auto n_b = static_cast<Eigen::Index>(db);
  const auto n_c = static_cast<Eigen::Index>(dc);
  for (Eigen::Index c = 0; c < n_c; ++c) {
    ComplexMatrix lift = ComplexMatrix::Zero(n_b * n_c, n_b);
    for (Eigen::Index b = 0; b < n_b; ++b) lift.row(b * n_c + c) = inner.row(b);
    kraus.push_back(outer * lift);
  }

  const HermitianEigen eb = hermitian_eig(rho_b);
  const double top = eb.eigenvalues.cwiseAbs().maxCoeff();
  std::vector<Eigen::Index> kernel;
  for (Eigen::Index k = 0; k < eb.eigenvalues.size(); ++k) {
    if (std::abs(eb.eigenvalues(k)) <= kSupportThreshold * top) kernel.push_back(k);
  }
  if (!kernel.empty()) {
    const HermitianEigen ebc = hermitian_eig(rho_bc.matrix());
    for (Eigen::Index m = 0; m < ebc.eigenvalues.size(); ++m) {
      const double mu = ebc.eigenvalues(m);
      if (mu <= 0) continue;
      for (Eigen::Index k : kernel) {
        kraus.push_back(std::sqrt(mu) * ebc.eigenvectors.col(m) * eb.eigenvectors.col(k).adjoint());
      }
    }
  }
  return kraus;
}

ComplexMatrix choi_of(const std::vector<ComplexMatrix>& kraus, std::size_t in_dim,
                      std::size_t out_dim) {
  const auto n = static_cast<Eigen::Index>(in_dim * out_dim);
  ComplexMatrix choi = ComplexMatrix::Zero(n, n);
  for (const auto& k : kraus) {
    // Column-major storage of K is exactly v[i * out_dim + o] = K(o, i).
    const Eigen::Map<const ComplexVector> v(k.data(), n);
    choi.noalias() += v * v.adjoint();
  }
  return choi;
}

}  // namespace

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, Dims in_dims, Dims out_dims,
                               Labels in_labels, Labels out_labels)
    : kraus_(std::move(kraus)),
      in_dims_(std::move(in_dims)),
      out_dims_(std::move(out_dims)),
      in_labels_(std::move(in_labels)),
      out_labels_(std::move(out_labels)) {
  if (in_dims_.empty() || out_dims_.empty()) {
    throw std::invalid_argument("QuantumChannel: empty signature");
  }
  in_dim_ = total_dim(in_dims_);
  out_dim_ = total_dim(out_dims_);
  check_channel_labels(in_labels_, in_dims_.size(), "QuantumChannel");
  check_channel_labels(out_labels_, out_dims_.size(), "QuantumChannel");
  if (kraus_.empty()) throw std::invalid_argument("QuantumChannel: no Kraus operators");
  for (const auto& k : kraus_) {
    if (static_cast<std::size_t>(k.rows()) != out_dim_ ||
        static_cast<std::size_t>(k.cols()) != in_dim_) {
      throw std::invalid_argument("QuantumChannel: Kraus operator has the wrong shape");
    }
    if (!k.allFinite()) throw std::invalid_argument("QuantumChannel: non-finite Kraus entry");
  }
  const double defect = trace_preservation_defect();
  if (defect > kChannelTolerance) {
    throw std::invalid_argument("QuantumChannel: not trace preserving (defect " +
                                std::to_string(defect) + ")");
  }
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus, Dims in_dims, Dims out_dims)
    : QuantumChannel(std::move(kraus), in_dims, out_dims, default_labels(in_dims.size()),
                     default_labels(out_dims.size())) {}

ComplexMatrix QuantumChannel::choi() const { return choi_of(kraus_, in_dim_, out_dim_); }

ComplexMatrix QuantumChannel::superoperator() const {
  const auto n = static_cast<Eigen::Index>(out_dim_ * out_dim_);
  const auto m = static_cast<Eigen::Index>(in_dim_ * in_dim_);
  ComplexMatrix s = ComplexMatrix::Zero(n, m);
  for (const auto& k : kraus_) s += tensor_product(k, ComplexMatrix(k.conjugate()));
  return s;
}

ComplexMatrix QuantumChannel::apply_matrix(const ComplexMatrix& x) const {
  if (static_cast<std::size_t>(x.rows()) != in_dim_ || x.rows() != x.cols()) {
    throw std::invalid_argument("QuantumChannel::apply_matrix: dimension mismatch");
  }
  const auto d = static_cast<Eigen::Index>(out_dim_);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

double QuantumChannel::trace_preservation_defect() const {
  const auto d = static_cast<Eigen::Index>(in_dim_);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  return (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

bool QuantumChannel::is_cptp(double tol) const {
  if (trace_preservation_defect() > tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(choi()),
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0) >= -tol;
}

QuantumChannel QuantumChannel::relabeled(Labels in_labels, Labels out_labels) const {
  return QuantumChannel(kraus_, in_dims_, out_dims_, std::move(in_labels), std::move(out_labels));
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix& choi, std::size_t in_dim,
                                           std::size_t out_dim) {
  const auto n = static_cast<Eigen::Index>(in_dim * out_dim);
  if (choi.rows() != n || choi.cols() != n) {
    throw std::invalid_argument("kraus_from_choi: Choi matrix has the wrong size");
  }
  const HermitianEigen eig = hermitian_eig(choi);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index k = eig.eigenvalues.size(); k-- > 0;) {
    const double lambda = eig.eigenvalues(k);
    if (lambda <= kKrausCutoff) break;
    const ComplexVector v = std::sqrt(lambda) * eig.eigenvectors.col(k);
    kraus.push_back(Eigen::Map<const ComplexMatrix>(v.data(), static_cast<Eigen::Index>(out_dim),
                                                    static_cast<Eigen::Index>(in_dim)));
  }
  return kraus;
}

QuantumChannel channel_from_choi(const ComplexMatrix& choi, Dims in_dims, Dims out_dims,
                                 Labels in_labels, Labels out_labels) {
  const std::size_t din = total_dim(in_dims);
  const std::size_t dout = total_dim(out_dims);
  return QuantumChannel(kraus_from_choi(choi, din, dout), std::move(in_dims), std::move(out_dims),
                        std::move(in_labels), std::move(out_labels));
}

ComplexMatrix apply_operator(const QuantumChannel& ch, const ComplexMatrix& x, const Dims& dims,
                             const Labels& labels, Dims* out_dims, Labels* out_labels) {
  if (labels.size() != dims.size()) throw std::invalid_argument("apply: label count mismatch");
  const std::size_t n = dims.size();
  std::vector<std::size_t> acting;
  for (std::size_t k = 0; k < ch.in_labels().size(); ++k) {
    const std::size_t pos = position(labels, ch.in_labels()[k], "apply");
    if (dims[pos] != ch.in_dims()[k]) {
      throw std::invalid_argument("apply: dimension of '" + labels[pos] + "' does not match");
    }
    acting.push_back(pos);
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < n; ++k) {
    if (std::find(acting.begin(), acting.end(), k) == acting.end()) rest.push_back(k);
  }
  for (const auto& l : ch.out_labels()) {
    for (std::size_t k : rest) {
      if (labels[k] == l) throw std::invalid_argument("apply: output label '" + l + "' collides");
    }
  }

  std::vector<std::size_t> perm = rest;
  perm.insert(perm.end(), acting.begin(), acting.end());
  const ComplexMatrix y = permute_subsystems(x, dims, perm);

  std::size_t r = 1;
  for (std::size_t k : rest) r *= dims[k];
  const auto s = static_cast<Eigen::Index>(ch.in_dim());
  const auto so = static_cast<Eigen::Index>(ch.out_dim());
  const auto rr = static_cast<Eigen::Index>(r);
  ComplexMatrix z = ComplexMatrix::Zero(rr * so, rr * so);
  for (const auto& k : ch.kraus()) {
    const ComplexMatrix kd = k.adjoint();
    for (Eigen::Index i = 0; i < rr; ++i) {
      for (Eigen::Index j = 0; j < rr; ++j) {
        z.block(i * so, j * so, so, so).noalias() += k * y.block(i * s, j * s, s, s) * kd;
      }
    }
  }

  // Intermediate order: rest, then outputs. Final order puts the outputs at
  // the first acting position.
  Dims mid_dims;
  Labels mid_labels;
  for (std::size_t k : rest) {
    mid_dims.push_back(dims[k]);
    mid_labels.push_back(labels[k]);
  }
  const std::size_t n_out = ch.out_dims().size();
  for (std::size_t k = 0; k < n_out; ++k) {
    mid_dims.push_back(ch.out_dims()[k]);
    mid_labels.push_back(ch.out_labels()[k]);
  }
  const std::size_t anchor = *std::min_element(acting.begin(), acting.end());
  std::vector<std::size_t> final_perm;
  std::size_t rest_pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == anchor) {
      for (std::size_t o = 0; o < n_out; ++o) final_perm.push_back(rest.size() + o);
    } else if (std::find(acting.begin(), acting.end(), k) == acting.end()) {
      final_perm.push_back(rest_pos++);
    }
  }
  Dims fdims;
  Labels flabels;
  for (std::size_t k : final_perm) {
    fdims.push_back(mid_dims[k]);
    flabels.push_back(mid_labels[k]);
  }
  if (out_dims) *out_dims = fdims;
  if (out_labels) *out_labels = flabels;
  return permute_subsystems(z, mid_dims, final_perm);
}

DensityOperator apply(const QuantumChannel& ch, const DensityOperator& state) {
  Dims dims;
  Labels labels;
  ComplexMatrix out = apply_operator(ch, state.matrix(), state.dims(), state.labels(), &dims, &labels);
  return DensityOperator(hermitian_part(out), std::move(dims), std::move(labels));
}

QuantumChannel compress(const QuantumChannel& ch) {
  return channel_from_choi(hermitian_part(ch.choi()), ch.in_dims(), ch.out_dims(), ch.in_labels(),
                           ch.out_labels());
}

QuantumChannel compose(const QuantumChannel& f, const QuantumChannel& g) {
  if (g.out_dims() != f.in_dims()) {
    throw std::invalid_argument("compose: output of the inner channel does not match");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(f.kraus().size() * g.kraus().size());
  for (const auto& a : f.kraus()) {
    for (const auto& b : g.kraus()) kraus.push_back(a * b);
  }
  QuantumChannel out(std::move(kraus), g.in_dims(), f.out_dims(), g.in_labels(), f.out_labels());
  if (out.kraus().size() > out.in_dim() * out.out_dim()) return compress(out);
  return out;
}

QuantumChannel restrict_output(const QuantumChannel& ch, const Labels& traced) {
  const Dims& dims = ch.out_dims();
  std::vector<std::size_t> drop;
  for (const auto& l : traced) drop.push_back(position(ch.out_labels(), l, "restrict_output"));
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (std::find(drop.begin(), drop.end(), k) == drop.end()) keep.push_back(k);
  }
  if (keep.empty()) throw std::invalid_argument("restrict_output: nothing left to keep");
  Dims keep_dims;
  Labels keep_labels;
  std::size_t keep_dim = 1;
  std::size_t drop_dim = 1;
  for (std::size_t k : keep) {
    keep_dims.push_back(dims[k]);
    keep_labels.push_back(ch.out_labels()[k]);
    keep_dim *= dims[k];
  }
  for (std::size_t k : drop) drop_dim *= dims[k];

  std::vector<ComplexMatrix> kraus;
  for (const auto& k : ch.kraus()) {
    std::vector<ComplexMatrix> parts(drop_dim,
                                     ComplexMatrix::Zero(static_cast<Eigen::Index>(keep_dim), k.cols()));
    for (std::size_t row = 0; row < ch.out_dim(); ++row) {
      const auto digits = decode(row, dims);
      parts[encode(digits, dims, drop)].row(static_cast<Eigen::Index>(encode(digits, dims, keep))) =
          k.row(static_cast<Eigen::Index>(row));
    }
    for (auto& p : parts) kraus.push_back(std::move(p));
  }
  QuantumChannel out(std::move(kraus), ch.in_dims(), keep_dims, ch.in_labels(), keep_labels);
  if (out.kraus().size() > out.in_dim() * out.out_dim()) return compress(out);
  return out;
}

QuantumChannel identity_channel(const Dims& dims, const Labels& labels) {
  return QuantumChannel({identity(total_dim(dims))}, dims, dims, labels, labels);
}

QuantumChannel append_channel(const Dims& in_dims, const Labels& in_labels,
                              const DensityOperator& sigma) {
  const HermitianEigen eig = hermitian_eig(sigma.matrix());
  const auto din = static_cast<Eigen::Index>(total_dim(in_dims));
  const ComplexMatrix id = ComplexMatrix::Identity(din, din);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index m = 0; m < eig.eigenvalues.size(); ++m) {
    if (eig.eigenvalues(m) <= 0) continue;
    kraus.push_back(std::sqrt(eig.eigenvalues(m)) * tensor_product(id, ComplexMatrix(eig.eigenvectors.col(m))));
  }
  Dims out_dims = in_dims;
  out_dims.insert(out_dims.end(), sigma.dims().begin(), sigma.dims().end());
  Labels out_labels = in_labels;
  out_labels.insert(out_labels.end(), sigma.labels().begin(), sigma.labels().end());
  return QuantumChannel(std::move(kraus), in_dims, std::move(out_dims), in_labels,
                        std::move(out_labels));
}

QuantumChannel replacement_channel(const Dims& in_dims, const Labels& in_labels,
                                   const DensityOperator& sigma) {
  const HermitianEigen eig = hermitian_eig(sigma.matrix());
  const auto din = static_cast<Eigen::Index>(total_dim(in_dims));
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index m = 0; m < eig.eigenvalues.size(); ++m) {
    if (eig.eigenvalues(m) <= 0) continue;
    for (Eigen::Index i = 0; i < din; ++i) {
      ComplexMatrix k = ComplexMatrix::Zero(eig.eigenvectors.rows(), din);
      k.col(i) = std::sqrt(eig.eigenvalues(m)) * eig.eigenvectors.col(m);
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(kraus), in_dims, sigma.dims(), in_labels, sigma.labels());
}

QuantumChannel depolarizing_channel(const Dims& dims, const Labels& labels, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing_channel: p outside [0, 1]");
  const std::size_t d = total_dim(dims);
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<ComplexMatrix> kraus;
  if (p < 1.0) kraus.push_back(std::sqrt(1.0 - p) * identity(d));
  if (p > 0.0) {
    const double w = std::sqrt(p / static_cast<double>(d));
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        ComplexMatrix k = ComplexMatrix::Zero(n, n);
        k(i, j) = w;
        kraus.push_back(std::move(k));
      }
    }
  }
  return QuantumChannel(std::move(kraus), dims, dims, labels, labels);
}

QuantumChannel mixture(const std::vector<QuantumChannel>& channels,
                       const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size()) {
    throw std::invalid_argument("mixture: need one weight per channel");
  }
  double total = 0.0;
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (weights[k] < 0) throw std::invalid_argument("mixture: negative weight");
    if (channels[k].in_dims() != channels[0].in_dims() ||
        channels[k].out_dims() != channels[0].out_dims()) {
      throw std::invalid_argument("mixture: channel signatures differ");
    }
    total += weights[k];
    if (weights[k] == 0) continue;
    for (const auto& a : channels[k].kraus()) kraus.push_back(std::sqrt(weights[k]) * a);
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture: weights must sum to 1");
  QuantumChannel out(std::move(kraus), channels[0].in_dims(), channels[0].out_dims(),
                     channels[0].in_labels(), channels[0].out_labels());
  if (out.kraus().size() > out.in_dim() * out.out_dim()) return compress(out);
  return out;
}

QuantumChannel random_channel(const Dims& in_dims, const Dims& out_dims, std::size_t env_dim,
                              std::uint64_t seed, Labels in_labels, Labels out_labels) {
  if (env_dim == 0) throw std::invalid_argument("random_channel: env_dim must be positive");
  const auto din = static_cast<Eigen::Index>(total_dim(in_dims));
  const auto dout = static_cast<Eigen::Index>(total_dim(out_dims));
  const auto env = static_cast<Eigen::Index>(env_dim);
  if (dout * env < din) {
    throw std::invalid_argument("random_channel: out_dim * env_dim must be at least in_dim");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dout * env, din);
  for (Eigen::Index j = 0; j < din; ++j) {
    for (Eigen::Index i = 0; i < dout * env; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix v = qr.householderQ() * ComplexMatrix::Identity(dout * env, din);
  const ComplexMatrix r = qr.matrixQR().topRows(din).triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < din; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0) v.col(j) *= r(j, j) / mag;
  }
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index e = 0; e < env; ++e) {
    ComplexMatrix k(dout, din);
    for (Eigen::Index o = 0; o < dout; ++o) k.row(o) = v.row(o * env + e);
    kraus.push_back(std::move(k));
  }
  if (in_labels.empty()) in_labels = default_labels(in_dims.size());
  if (out_labels.empty()) out_labels = default_labels(out_dims.size());
  return QuantumChannel(std::move(kraus), in_dims, out_dims, std::move(in_labels),
                        std::move(out_labels));
}

QuantumChannel petz_map(const DensityOperator& rho_bc) {
  return rotated_petz_map(rho_bc, 0.0);
}

QuantumChannel rotated_petz_map(const DensityOperator& rho_bc, double t) {
  const Dims& dims = rho_bc.dims();
  const Labels& labels = rho_bc.labels();
  QuantumChannel raw(petz_kraus(rho_bc, t), {dims[0]}, dims, {labels[0]}, labels);
  if (raw.kraus().size() > raw.in_dim() * raw.out_dim()) return compress(raw);
  return raw;
}

QuantumChannel averaged_rotated_petz(const DensityOperator& rho_bc, std::size_t nodes) {
  if (nodes < 8) throw std::invalid_argument("averaged_rotated_petz: need at least 8 nodes");
  const QuadratureRule rule = beta0_rule(nodes);
  const Dims& dims = rho_bc.dims();
  if (dims.size() != 2) throw std::invalid_argument("averaged_rotated_petz: expected a bipartite state");
  const std::size_t din = dims[0];
  const std::size_t dout = dims[0] * dims[1];
  const auto n = static_cast<Eigen::Index>(din * dout);
  ComplexMatrix choi = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < nodes; ++k) {
    choi += rule.weights[k] * choi_of(petz_kraus(rho_bc, rule.nodes[k]), din, dout);
  }
  return channel_from_choi(hermitian_part(choi), {dims[0]}, dims, {rho_bc.labels()[0]},
                           rho_bc.labels());
}

double petz_off_support_weight(const DensityOperator& rho_bc, const ComplexMatrix& x_b) {
  const std::size_t keep_b[] = {0};
  const ComplexMatrix rho_b = partial_trace(rho_bc.matrix(), rho_bc.dims(), keep_b);
  if (x_b.rows() != rho_b.rows()) throw std::invalid_argument("petz_off_support_weight: dimension mismatch");
  const ComplexMatrix outside = identity(static_cast<std::size_t>(rho_b.rows())) - support_projector(rho_b);
  const double total = x_b.trace().real();
  if (total <= 0) return 0.0;
  return std::max(0.0, (outside * x_b).trace().real() / total);
}

ClassicalChannel::ClassicalChannel(Eigen::SparseMatrix<double> matrix, std::size_t in_alphabet,
                                   Dims out_alphabets, Labels out_labels)
    : matrix_(std::move(matrix)),
      in_alphabet_(in_alphabet),
      out_alphabets_(std::move(out_alphabets)),
      out_labels_(std::move(out_labels)) {
  check_channel_labels(out_labels_, out_alphabets_.size(), "ClassicalChannel");
  if (static_cast<std::size_t>(matrix_.cols()) != in_alphabet_ ||
      static_cast<std::size_t>(matrix_.rows()) != total_dim(out_alphabets_)) {
    throw std::invalid_argument("ClassicalChannel: matrix shape does not match alphabets");
  }
  matrix_.makeCompressed();
  for (Eigen::Index col = 0; col < matrix_.outerSize(); ++col) {
    std::vector<double> column;
    for (Eigen::SparseMatrix<double>::InnerIterator it(matrix_, col); it; ++it) {
      if (!(it.value() >= 0.0)) throw std::invalid_argument("ClassicalChannel: negative entry");
      column.push_back(it.value());
    }
    if (std::abs(stable_sum(column) - 1.0) > 1e-12) {
      throw std::invalid_argument("ClassicalChannel: column " + std::to_string(col) +
                                  " does not sum to 1");
    }
  }
}

ClassicalChannel ClassicalChannel::from_triplets(const std::vector<Eigen::Triplet<double>>& triplets,
                                                 std::size_t in_alphabet, Dims out_alphabets,
                                                 Labels out_labels) {
  Eigen::SparseMatrix<double> m(static_cast<Eigen::Index>(total_dim(out_alphabets)),
                                static_cast<Eigen::Index>(in_alphabet));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return ClassicalChannel(std::move(m), in_alphabet, std::move(out_alphabets),
                          std::move(out_labels));
}

ClassicalJoint classical_channel_apply(const ClassicalChannel& ch, const ClassicalJoint& joint,
                                       const std::string& on) {
  const std::size_t k = joint.index_of(on);
  const Dims& alph = joint.alphabets();
  if (alph[k] != ch.in_alphabet()) {
    throw std::invalid_argument("classical_channel_apply: alphabet of '" + on + "' does not match");
  }
  for (const auto& l : ch.out_labels()) {
    for (std::size_t j = 0; j < alph.size(); ++j) {
      if (j != k && joint.labels()[j] == l) {
        throw std::invalid_argument("classical_channel_apply: output label '" + l + "' collides");
      }
    }
  }
  std::size_t pre = 1;
  std::size_t post = 1;
  for (std::size_t j = 0; j < k; ++j) pre *= alph[j];
  for (std::size_t j = k + 1; j < alph.size(); ++j) post *= alph[j];
  const std::size_t in = alph[k];
  const std::size_t out = total_dim(ch.out_alphabets());

  std::vector<double> pmf(pre * out * post, 0.0);
  const auto& m = ch.matrix();
  const auto& src = joint.pmf();
  for (std::size_t a = 0; a < pre; ++a) {
    for (std::size_t y = 0; y < in; ++y) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(m, static_cast<Eigen::Index>(y)); it; ++it) {
        const std::size_t o = static_cast<std::size_t>(it.row());
        const double w = it.value();
        const double* from = src.data() + (a * in + y) * post;
        double* to = pmf.data() + (a * out + o) * post;
        for (std::size_t c = 0; c < post; ++c) to[c] += w * from[c];
      }
    }
  }

  Dims alphabets;
  Labels labels;
  for (std::size_t j = 0; j < alph.size(); ++j) {
    if (j == k) {
      alphabets.insert(alphabets.end(), ch.out_alphabets().begin(), ch.out_alphabets().end());
      labels.insert(labels.end(), ch.out_labels().begin(), ch.out_labels().end());
    } else {
      alphabets.push_back(alph[j]);
      labels.push_back(joint.labels()[j]);
    }
  }
  return ClassicalJoint(std::move(pmf), std::move(alphabets), std::move(labels));
}

QuantumChannel to_quantum(const ClassicalChannel& ch, const std::string& in_label) {
  const auto din = static_cast<Eigen::Index>(ch.in_alphabet());
  const auto dout = static_cast<Eigen::Index>(total_dim(ch.out_alphabets()));
  std::vector<ComplexMatrix> kraus;
  const auto& m = ch.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      if (it.value() <= 0) continue;
      ComplexMatrix k = ComplexMatrix::Zero(dout, din);
      k(it.row(), col) = std::sqrt(it.value());
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(kraus), {ch.in_alphabet()}, ch.out_alphabets(), {in_label},
                        ch.out_labels());
}

ClassicalChannel restrict_output(const ClassicalChannel& ch, const Labels& traced) {
  const Dims& dims = ch.out_alphabets();
  std::vector<std::size_t> drop;
  for (const auto& l : traced) drop.push_back(position(ch.out_labels(), l, "restrict_output"));
  std::vector<std::size_t> keep;
  Dims keep_dims;
  Labels keep_labels;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (std::find(drop.begin(), drop.end(), k) != drop.end()) continue;
    keep.push_back(k);
    keep_dims.push_back(dims[k]);
    keep_labels.push_back(ch.out_labels()[k]);
  }
  if (keep.empty()) throw std::invalid_argument("restrict_output: nothing left to keep");
  std::vector<Eigen::Triplet<double>> triplets;
  const auto& m = ch.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      const auto digits = decode(static_cast<std::size_t>(it.row()), dims);
      triplets.emplace_back(static_cast<Eigen::Index>(encode(digits, dims, keep)), col, it.value());
    }
  }
  return ClassicalChannel::from_triplets(triplets, ch.in_alphabet(), std::move(keep_dims),
                                         std::move(keep_labels));
}

}  // namespace qmarkov
