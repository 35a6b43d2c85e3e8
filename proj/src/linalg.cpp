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

#include "qmarkov/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace qmarkov {

namespace {

std::vector<std::size_t> row_major_strides(std::span<const std::size_t> dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * dims[k];
  }
  return strides;
}

// For every row-major multi-index over the listed subsystems, the offset it
// contributes to the full linear index.
std::vector<std::size_t> subset_offsets(std::span<const std::size_t> dims,
                                        std::span<const std::size_t> strides,
                                        std::span<const std::size_t> subset) {
  std::size_t count = 1;
  for (std::size_t s : subset) count *= dims[s];
  std::vector<std::size_t> offsets(count, 0);
  std::vector<std::size_t> digits(subset.size(), 0);
  for (std::size_t lin = 0; lin < count; ++lin) {
    std::size_t off = 0;
    for (std::size_t i = 0; i < subset.size(); ++i) off += digits[i] * strides[subset[i]];
    offsets[lin] = off;
    for (std::size_t i = subset.size(); i-- > 0;) {
      if (++digits[i] < dims[subset[i]]) break;
      digits[i] = 0;
    }
  }
  return offsets;
}

void check_signature(std::size_t side, std::span<const std::size_t> dims, const char* what) {
  if (dims.empty()) throw std::invalid_argument(std::string(what) + ": empty dimension signature");
  if (total_dim(dims) != side) {
    throw std::invalid_argument(std::string(what) + ": product of dims (" +
                                std::to_string(total_dim(dims)) + ") does not match side " +
                                std::to_string(side));
  }
}

std::vector<std::size_t> sorted_subset(std::span<const std::size_t> keep, std::size_t n,
                                       const char* what) {
  std::vector<std::size_t> out(keep.begin(), keep.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw std::invalid_argument(std::string(what) + ": duplicate subsystem index");
  }
  if (!out.empty() && out.back() >= n) {
    throw std::invalid_argument(std::string(what) + ": subsystem index out of range");
  }
  return out;
}

std::vector<std::size_t> complement(std::span<const std::size_t> sorted, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (!std::binary_search(sorted.begin(), sorted.end(), k)) out.push_back(k);
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace

std::size_t total_dim(std::span<const std::size_t> dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix identity(std::size_t d) {
  return ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(m - m.adjoint());
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return hermiticity_defect(m) <= tol * std::max(1.0, max_abs(m));
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.adjoint() * b).trace();
}

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix is not square");
  if (!is_hermitian(m)) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(m)) + ")");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix matrix_function(const ComplexMatrix& m, const ScalarFunction& f, bool support_only,
                              double threshold) {
  const HermitianEigen eig = hermitian_eig(m);
  const Eigen::Index n = eig.eigenvalues.size();
  const double scale = n == 0 ? 0.0 : eig.eigenvalues.cwiseAbs().maxCoeff();
  ComplexVector mapped(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = eig.eigenvalues(i);
    if (support_only && std::abs(lambda) <= threshold * scale) {
      mapped(i) = 0.0;
      continue;
    }
    const Complex value = f(lambda);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw std::domain_error("matrix_function: function undefined at eigenvalue " +
                              std::to_string(lambda));
    }
    mapped(i) = value;
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix matrix_power(const ComplexMatrix& m, double p) {
  if (p > 0) {
    return matrix_function(m, [p](double x) { return Complex(std::pow(std::max(x, 0.0), p)); },
                           /*support_only=*/false);
  }
  return matrix_function(
      m, [p](double x) { return Complex(x > 0 ? std::pow(x, p) : 0.0); }, /*support_only=*/true);
}

ComplexMatrix matrix_power(const ComplexMatrix& m, Complex z) {
  return matrix_function(
      m,
      [z](double x) {
        if (x <= 0) return Complex(0.0);
        return std::exp(z * std::log(x));
      },
      /*support_only=*/true);
}

ComplexMatrix matrix_sqrt(const ComplexMatrix& m) { return matrix_power(m, 0.5); }

ComplexMatrix matrix_log2(const ComplexMatrix& m) {
  return matrix_function(m, [](double x) { return Complex(std::log2(x)); }, /*support_only=*/true);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (m.rows() != m.cols()) throw std::invalid_argument("partial_trace: matrix is not square");
  check_signature(static_cast<std::size_t>(m.rows()), dims, "partial_trace");
  const auto kept = sorted_subset(keep, dims.size(), "partial_trace");
  const auto traced = complement(kept, dims.size());
  const auto strides = row_major_strides(dims);
  const auto kept_off = subset_offsets(dims, strides, kept);
  const auto traced_off = subset_offsets(dims, strides, traced);

  const auto dk = static_cast<Eigen::Index>(kept_off.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index i = 0; i < dk; ++i) {
    for (Eigen::Index j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (std::size_t t : traced_off) {
        acc += m(static_cast<Eigen::Index>(kept_off[i] + t),
                 static_cast<Eigen::Index>(kept_off[j] + t));
      }
      out(i, j) = acc;
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> permutation_offsets(std::span<const std::size_t> dims,
                                             std::span<const std::size_t> perm,
                                             const char* what) {
  if (perm.size() != dims.size()) {
    throw std::invalid_argument(std::string(what) + ": permutation length mismatch");
  }
  std::vector<std::size_t> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < check.size(); ++k) {
    if (check[k] != k) throw std::invalid_argument(std::string(what) + ": not a permutation");
  }
  return subset_offsets(dims, row_major_strides(dims), perm);
}

}  // namespace

ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  check_signature(static_cast<std::size_t>(m.rows()), dims, "permute_subsystems");
  const auto old_index = permutation_offsets(dims, perm, "permute_subsystems");
  const auto n = static_cast<Eigen::Index>(old_index.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = m(static_cast<Eigen::Index>(old_index[i]), static_cast<Eigen::Index>(old_index[j]));
    }
  }
  return out;
}

ComplexVector permute_subsystems(const ComplexVector& v, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm) {
  check_signature(static_cast<std::size_t>(v.size()), dims, "permute_subsystems");
  const auto old_index = permutation_offsets(dims, perm, "permute_subsystems");
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(static_cast<Eigen::Index>(old_index[i]));
  return out;
}

ComplexMatrix reduced_from_pure(const ComplexVector& v, std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep) {
  check_signature(static_cast<std::size_t>(v.size()), dims, "reduced_from_pure");
  const auto kept = sorted_subset(keep, dims.size(), "reduced_from_pure");
  const auto traced = complement(kept, dims.size());
  const auto strides = row_major_strides(dims);
  const auto kept_off = subset_offsets(dims, strides, kept);
  const auto traced_off = subset_offsets(dims, strides, traced);
  ComplexMatrix amplitudes(static_cast<Eigen::Index>(kept_off.size()),
                           static_cast<Eigen::Index>(traced_off.size()));
  for (std::size_t i = 0; i < kept_off.size(); ++i) {
    for (std::size_t t = 0; t < traced_off.size(); ++t) {
      amplitudes(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) =
          v(static_cast<Eigen::Index>(kept_off[i] + traced_off[t]));
    }
  }
  return amplitudes * amplitudes.adjoint();
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("trace_norm: matrix is not square");
  if (m.size() == 0) return 0.0;
  if (hermiticity_defect(m) <= 1e-13 * std::max(1.0, max_abs(m))) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
  }
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix support_isometry(const ComplexMatrix& m, double threshold) {
  const HermitianEigen eig = hermitian_eig(m);
  const Eigen::Index n = eig.eigenvalues.size();
  const double top = n == 0 ? 0.0 : eig.eigenvalues(n - 1);
  std::vector<Eigen::Index> cols;
  if (top > 0) {
    for (Eigen::Index i = 0; i < n; ++i) {
      if (eig.eigenvalues(i) > threshold * top) cols.push_back(i);
    }
  }
  ComplexMatrix iso(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) {
    iso.col(static_cast<Eigen::Index>(k)) = eig.eigenvectors.col(cols[k]);
  }
  return iso;
}

ComplexMatrix support_projector(const ComplexMatrix& m, double threshold) {
  const ComplexMatrix iso = support_isometry(m, threshold);
  return iso * iso.adjoint();
}

std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<ComplexMatrix> basis;
  basis.reserve(d * d);
  for (Eigen::Index i = 0; i < n; ++i) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, i) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      ComplexMatrix sym = ComplexMatrix::Zero(n, n);
      sym(i, j) = r;
      sym(j, i) = r;
      basis.push_back(std::move(sym));
      ComplexMatrix asym = ComplexMatrix::Zero(n, n);
      asym(i, j) = Complex(0.0, -r);
      asym(j, i) = Complex(0.0, r);
      basis.push_back(std::move(asym));
    }
  }
  return basis;
}

}  // namespace qmarkov
