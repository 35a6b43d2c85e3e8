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

#ifndef QMARKOV_LINALG_HPP
#define QMARKOV_LINALG_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qmarkov {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem dimensions. The tensor-product index convention used
/// everywhere is row-major: the leftmost subsystem is the slowest index, so
/// |i_0 i_1 ... i_{n-1}> has linear index ((i_0 d_1 + i_1) d_2 + ...) .
using Dims = std::vector<std::size_t>;

/// Eigenvalues at or below this fraction of the largest eigenvalue are
/// treated as zero by support-restricted functions.
inline constexpr double kSupportThreshold = 1e-10;

/// Tolerance on |m - m^dagger| accepted by the Hermitian routines.
inline constexpr double kHermitianTolerance = 1e-10;

struct HermitianEigen {
  RealVector eigenvalues;      // ascending
  ComplexMatrix eigenvectors;  // columns, unitary
};

std::size_t total_dim(std::span<const std::size_t> dims);

ComplexMatrix identity(std::size_t d);
ComplexMatrix dagger(const ComplexMatrix& m);

/// Largest entrywise deviation from Hermiticity.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
/// diagonalization; inside a degenerate cluster the eigenvectors are an
/// arbitrary orthonormal basis and callers must not rely on their order.
///
/// Throws std::invalid_argument for non-square input or a Hermiticity defect
/// above kHermitianTolerance (scaled by max(1, max|m_ij|)).
HermitianEigen hermitian_eig(const ComplexMatrix& m);

using ScalarFunction = std::function<Complex(double)>;

/// Applies f to the spectrum of a Hermitian matrix. With support_only set,
/// eigenvalues with |lambda| <= threshold * max|lambda| are mapped to zero
/// instead of being passed to f, which realizes the support-restricted
/// inverse, logarithm and negative powers.
///
/// Throws std::domain_error if f is not finite at a retained eigenvalue.
ComplexMatrix matrix_function(const ComplexMatrix& m, const ScalarFunction& f, bool support_only,
                              double threshold = kSupportThreshold);

/// m^p for PSD m. Small negative eigenvalues from round-off are clipped to
/// zero; for p <= 0 the power is support-restricted.
ComplexMatrix matrix_power(const ComplexMatrix& m, double p);

/// Complex power m^z = exp(z ln m) on the support of a PSD matrix.
ComplexMatrix matrix_power(const ComplexMatrix& m, Complex z);

ComplexMatrix matrix_sqrt(const ComplexMatrix& m);

/// Support-restricted base-2 logarithm.
ComplexMatrix matrix_log2(const ComplexMatrix& m);

/// Kronecker product; the left factor is the slow index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

/// Traces out every subsystem not listed in keep. Kept subsystems appear in
/// ascending index order. An empty keep list yields the 1x1 matrix [tr m].
///
/// Throws std::invalid_argument when prod(dims) differs from the matrix
/// side or an index is out of range.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

/// Reorders tensor factors: subsystem perm[k] of the input becomes
/// subsystem k of the output.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);
ComplexVector permute_subsystems(const ComplexVector& v, std::span<const std::size_t> dims,
                                 std::span<const std::size_t> perm);

/// Reduced density matrix of the pure state v on the subsystems in keep
/// (ascending order), without forming |v><v|.
ComplexMatrix reduced_from_pure(const ComplexVector& v, std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Projector onto the eigenspaces with eigenvalue > threshold * lambda_max.
ComplexMatrix support_projector(const ComplexMatrix& m, double threshold = kSupportThreshold);

/// Isometry whose columns span the support (same cut as support_projector).
ComplexMatrix support_isometry(const ComplexMatrix& m, double threshold = kSupportThreshold);

/// Orthonormal Hermitian basis of the d x d Hermitian operators: the
/// diagonal units followed by the symmetric and antisymmetric pairs.
std::vector<ComplexMatrix> hermitian_operator_basis(std::size_t d);

}  // namespace qmarkov

#endif  // QMARKOV_LINALG_HPP
