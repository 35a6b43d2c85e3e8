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

#include "qmarkov/entropies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qmarkov {

namespace {

constexpr double kSupportLeakTolerance = 1e-10;
constexpr double kAlphaSnap = 1e-6;

RealVector eigenvalues_of(const ComplexMatrix& m) {
  if (!is_hermitian(m)) throw std::invalid_argument("expected a Hermitian operator");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": operand shapes differ");
  }
}

// log2 sum_i exp2(terms_i), skipping -inf terms.
double log2_sum_exp2(std::span<const double> terms) {
  double top = -std::numeric_limits<double>::infinity();
  for (double t : terms) top = std::max(top, t);
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double t : terms) {
    if (std::isfinite(t)) acc += std::exp2(t - top);
  }
  return top + std::log2(acc);
}

Labels merged(const Labels& x, const Labels& y) {
  Labels out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

Labels merged(const Labels& x, const Labels& y, const Labels& z) { return merged(merged(x, y), z); }

// Classical divergence of one projective measurement (columns of basis).
std::optional<double> measured_in_basis(const ComplexMatrix& rho, const ComplexMatrix& sigma,
                                        const ComplexMatrix& basis) {
  const Eigen::Index n = basis.cols();
  std::vector<double> p(static_cast<std::size_t>(n));
  std::vector<double> q(static_cast<std::size_t>(n));
  const double scale = std::max(rho.trace().real(), sigma.trace().real());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto v = basis.col(i);
    p[static_cast<std::size_t>(i)] = std::max(0.0, (v.adjoint() * rho * v)(0, 0).real());
    q[static_cast<std::size_t>(i)] = std::max(0.0, (v.adjoint() * sigma * v)(0, 0).real());
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] <= 1e-13 * scale) {
      if (p[i] > 1e-13 * scale) return std::nullopt;
      p[i] = 0.0;
      q[i] = 0.0;
    }
  }
  const DivergenceValue d = classical::relative_entropy(p, q);
  if (!d.finite) return std::nullopt;
  return d.value;
}

}  // namespace

double support_leak(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_same_shape(a, b, "support_leak");
  const ComplexMatrix outside = identity(static_cast<std::size_t>(b.rows())) - support_projector(b);
  const double total = a.trace().real();
  if (total <= 0) return 0.0;
  return std::max(0.0, (outside * a).trace().real()) / total;
}

bool support_contained(const ComplexMatrix& a, const ComplexMatrix& b) {
  return support_leak(a, b) <= kSupportLeakTolerance;
}

double binary_entropy(double x) {
  if (x < 0.0 || x > 1.0) throw std::domain_error("binary_entropy: argument outside [0, 1]");
  auto term = [](double t) { return t > 0.0 ? -t * std::log2(t) : 0.0; };
  return term(x) + term(1.0 - x);
}

double von_neumann(const ComplexMatrix& rho) {
  const RealVector ev = eigenvalues_of(rho);
  if (ev.size() == 0) return 0.0;
  const double cut = kSupportThreshold * ev.maxCoeff();
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cut) h -= ev(i) * std::log2(ev(i));
  }
  return h;
}

double conditional_mutual_information(const DensityOperator& state, const Labels& a,
                                      const Labels& c, const Labels& b) {
  auto h = [&](const Labels& keep) {
    if (keep.empty()) return 0.0;
    return von_neumann(marginal(state, keep).matrix());
  };
  return h(merged(a, b)) + h(merged(b, c)) - h(b) - h(merged(a, b, c));
}

double cmi(const DensityOperator& state) {
  if (state.dims().size() != 3) throw std::invalid_argument("cmi: expected three subsystems");
  const Labels& l = state.labels();
  return conditional_mutual_information(state, {l[0]}, {l[2]}, {l[1]});
}

DivergenceValue relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_same_shape(rho, sigma, "relative_entropy");
  if (!support_contained(rho, sigma)) return DivergenceValue::infinite();
  const double rho_log_rho = -von_neumann(rho);
  const double rho_log_sigma = (rho * matrix_log2(sigma)).trace().real();
  return DivergenceValue::of(rho_log_rho - rho_log_sigma);
}

double fidelity(const ComplexMatrix& tau, const ComplexMatrix& omega) {
  check_same_shape(tau, omega, "fidelity");
  const double root = trace_norm(matrix_sqrt(tau) * matrix_sqrt(omega));
  return root * root;
}

double trace_distance(const ComplexMatrix& tau, const ComplexMatrix& omega) {
  check_same_shape(tau, omega, "trace_distance");
  return 0.5 * trace_norm(hermitian_part(tau - omega));
}

DivergenceValue d_min(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_same_shape(rho, sigma, "d_min");
  const ComplexMatrix overlap = support_projector(rho) * support_projector(sigma);
  if (overlap.cwiseAbs().maxCoeff() <= kSupportLeakTolerance) return DivergenceValue::infinite();
  return DivergenceValue::of(-std::log2(fidelity(rho, sigma)));
}

DivergenceValue d_max(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_same_shape(rho, sigma, "d_max");
  if (!support_contained(rho, sigma)) return DivergenceValue::infinite();
  const ComplexMatrix s = matrix_power(sigma, -0.5);
  const RealVector ev = eigenvalues_of(hermitian_part(s * rho * s));
  return DivergenceValue::of(std::log2(ev.maxCoeff()));
}

DivergenceValue d_alpha(const ComplexMatrix& rho, const ComplexMatrix& sigma, double alpha) {
  check_same_shape(rho, sigma, "d_alpha");
  if (!(alpha >= 0.5)) throw std::domain_error("d_alpha: alpha must be at least 1/2");
  if (std::abs(alpha - 1.0) < kAlphaSnap) return relative_entropy(rho, sigma);
  if (alpha > 1.0 && !support_contained(rho, sigma)) return DivergenceValue::infinite();

  const double exponent = (1.0 - alpha) / (2.0 * alpha);
  const ComplexMatrix s = matrix_function(
      sigma, [exponent](double x) { return Complex(x > 0 ? std::pow(x, exponent) : 0.0); },
      /*support_only=*/true);
  const RealVector mu = eigenvalues_of(hermitian_part(s * rho * s));
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    terms.push_back(mu(i) > 0 ? alpha * std::log2(mu(i)) : -std::numeric_limits<double>::infinity());
  }
  const double log_q = log2_sum_exp2(terms);
  if (!std::isfinite(log_q)) return DivergenceValue::infinite();
  return DivergenceValue::of((log_q - std::log2(rho.trace().real())) / (alpha - 1.0));
}

MeasuredBounds d_measured_bounds(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  check_same_shape(rho, sigma, "d_measured_bounds");
  const DivergenceValue upper = relative_entropy(rho, sigma);
  DivergenceValue lower = d_min(rho, sigma);
  if (!upper.finite) return {lower, upper};
  if (!lower.finite) lower = upper;

  const ComplexMatrix bases[] = {
      hermitian_eig(sigma).eigenvectors,
      hermitian_eig(hermitian_part(sigma + 0.7548776662466927 * rho)).eigenvectors,
  };
  for (const auto& basis : bases) {
    if (auto v = measured_in_basis(rho, sigma, basis)) lower.value = std::max(lower.value, *v);
  }
  return {lower, upper};
}

DivergenceValue petz_renyi_2(const ComplexMatrix& tau, const ComplexMatrix& omega) {
  check_same_shape(tau, omega, "petz_renyi_2");
  if (!support_contained(tau, omega)) return DivergenceValue::infinite();
  const double q = (tau * tau * matrix_power(omega, -1.0)).trace().real();
  return DivergenceValue::of(std::log2(q));
}

DivergenceValue log_euclidean_alpha(const ComplexMatrix& omega, const ComplexMatrix& sigma,
                                    double alpha) {
  check_same_shape(omega, sigma, "log_euclidean_alpha");
  if (!(alpha > 1.0)) throw std::domain_error("log_euclidean_alpha: alpha must exceed 1");
  if (!support_contained(omega, sigma)) return DivergenceValue::infinite();
  auto ln = [](const ComplexMatrix& m) {
    return matrix_function(m, [](double x) { return Complex(std::log(x)); }, /*support_only=*/true);
  };
  const ComplexMatrix exponent = hermitian_part(alpha * ln(omega) + (1.0 - alpha) * ln(sigma));
  const RealVector ev = eigenvalues_of(exponent);
  // log2 tr e^X computed from the spectrum in log space.
  std::vector<double> terms;
  for (Eigen::Index i = 0; i < ev.size(); ++i) terms.push_back(ev(i) / std::log(2.0));
  return DivergenceValue::of(log2_sum_exp2(terms) / (alpha - 1.0));
}

namespace classical {

double entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0) h -= x * std::log2(x);
  }
  return h;
}

DivergenceValue relative_entropy(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("relative_entropy: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) return DivergenceValue::infinite();
    d += p[i] * std::log2(p[i] / q[i]);
  }
  return DivergenceValue::of(d);
}

DivergenceValue d_max(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("d_max: length mismatch");
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    if (q[i] <= 0) return DivergenceValue::infinite();
    best = std::max(best, std::log2(p[i] / q[i]));
  }
  return DivergenceValue::of(best);
}

DivergenceValue d_alpha(std::span<const double> p, std::span<const double> q, double alpha) {
  if (p.size() != q.size()) throw std::invalid_argument("d_alpha: length mismatch");
  if (!(alpha >= 0.5)) throw std::domain_error("d_alpha: alpha must be at least 1/2");
  if (std::abs(alpha - 1.0) < kAlphaSnap) return relative_entropy(p, q);
  std::vector<double> terms;
  double mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) continue;
    mass += p[i];
    if (q[i] <= 0) {
      if (alpha > 1.0) return DivergenceValue::infinite();
      continue;
    }
    terms.push_back(alpha * std::log2(p[i]) + (1.0 - alpha) * std::log2(q[i]));
  }
  const double log_q = log2_sum_exp2(terms);
  if (!std::isfinite(log_q)) return DivergenceValue::infinite();
  return DivergenceValue::of((log_q - std::log2(mass)) / (alpha - 1.0));
}

double conditional_mutual_information(const ClassicalJoint& joint, const Labels& a,
                                      const Labels& c, const Labels& b) {
  auto h = [&](const Labels& keep) {
    if (keep.empty()) return 0.0;
    return entropy(joint.marginal(keep).pmf());
  };
  return h(merged(a, b)) + h(merged(b, c)) - h(b) - h(merged(a, b, c));
}

}  // namespace classical

}  // namespace qmarkov
