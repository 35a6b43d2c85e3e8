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


#include "qmarkov/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "qmarkov/entropies.hpp"

namespace qmarkov {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Real coordinates of a Hermitian matrix, isometric for the HS product.
void hermitian_coordinates(const ComplexMatrix& a, Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n = a.rows();
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n; ++i) out(k++) = a(i, i).real();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      out(k++) = r2 * a(i, j).real();
      out(k++) = r2 * a(i, j).imag();
    }
  }
}

struct BarrierProblem {
  std::vector<ComplexMatrix> f;  // orthonormal constraint basis
  Eigen::VectorXd c;             // tr f_i
  ComplexMatrix rho;
  Eigen::Index n = 0;
};

ComplexMatrix slack(const BarrierProblem& p, const Eigen::VectorXd& x) {
  ComplexMatrix s = -p.rho;
  for (std::size_t i = 0; i < p.f.size(); ++i) s += x(static_cast<Eigen::Index>(i)) * p.f[i];
  return hermitian_part(s);
}

// log det of S, or nullopt when S is not positive definite.
std::optional<double> log_det(const ComplexMatrix& s, Eigen::LLT<ComplexMatrix>* out = nullptr) {
  Eigen::LLT<ComplexMatrix> llt(s);
  if (llt.info() != Eigen::Success) return std::nullopt;
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    const double d = l(i, i).real();
    if (!(d > 0) || !std::isfinite(d)) return std::nullopt;
    acc += 2.0 * std::log(d);
  }
  if (out) *out = std::move(llt);
  return acc;
}

struct Certificate {
  double primal = kInfinity;
  double lower = 0.0;
};

// Dual point Y = S^{-1}/t, moved onto the affine set tr(Y f_i) = c_i and
// shifted to be PSD; gives tr(sigma) >= tr(rho Y) for every feasible sigma.
Certificate certify(const BarrierProblem& p, const Eigen::VectorXd& x,
                    const Eigen::LLT<ComplexMatrix>& llt, double t) {
  const ComplexMatrix id = ComplexMatrix::Identity(p.n, p.n);
  ComplexMatrix y = hermitian_part(llt.solve(id)) / t;
  ComplexMatrix y2 = y;
  for (std::size_t i = 0; i < p.f.size(); ++i) {
    const double r = p.c(static_cast<Eigen::Index>(i)) - hs_inner(p.f[i], y).real();
    y2 += r * p.f[i];
  }
  y2 = hermitian_part(y2);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(y2, Eigen::EigenvaluesOnly);
  const double eps = std::max(0.0, -eig.eigenvalues()(0));
  Certificate cert;
  cert.primal = p.c.dot(x);
  const double tr_rho = p.rho.trace().real();
  cert.lower = ((p.rho * y2).trace().real() + eps * tr_rho) / (1.0 + eps);
  return cert;
}

struct BarrierOutcome {
  Eigen::VectorXd x;
  Certificate cert;
  int steps = 0;
};

BarrierOutcome solve_barrier(const BarrierProblem& p, Eigen::VectorXd x) {
  const auto m = static_cast<Eigen::Index>(p.f.size());
  const Eigen::Index coords = p.n * p.n;
  const double dim = static_cast<double>(p.n);
  // Central points are dim/t from optimal; past t ~ 1e9 the slack loses
  // relative accuracy and later dual points certify less, so every stage's
  // certificate is kept and the best lower bound wins.
  constexpr double kTargetRelativeGap = 1e-13;
  constexpr double kGrowth = 10.0;
  constexpr int kMaxCentering = 100;
  constexpr int kPatience = 30;
  constexpr double kCentered = 1e-10;
  constexpr double kLooselyCentered = 1e-4;
  constexpr int kMaxStages = 40;

  BarrierOutcome out;
  out.cert.lower = -kInfinity;
  double t = dim / std::max(p.c.dot(x), 1e-300);
  int steps = 0;

  for (int stage = 0; stage < kMaxStages; ++stage) {
    bool stalled = false;
    for (int it = 0; it < kMaxCentering; ++it) {
      Eigen::LLT<ComplexMatrix> llt;
      if (!log_det(slack(p, x), &llt)) {
        throw SolverError("lambda_max: iterate left the feasible region");
      }

      // Newton direction as the least-squares solution of
      // sum_i d_i A_i = 1 - t W, A_i = L^-1 f_i L^-H, W = L^H L.
      const auto& l = llt.matrixL();
      Eigen::MatrixXd b(coords, m);
      std::vector<ComplexMatrix> a(static_cast<std::size_t>(m));
      for (Eigen::Index i = 0; i < m; ++i) {
        const ComplexMatrix half = l.solve(p.f[static_cast<std::size_t>(i)]);
        a[static_cast<std::size_t>(i)] = hermitian_part(l.solve(ComplexMatrix(half.adjoint())));
        hermitian_coordinates(a[static_cast<std::size_t>(i)], b.col(i));
      }
      const ComplexMatrix lm = llt.matrixL();
      const ComplexMatrix w = lm.adjoint() * lm;
      Eigen::VectorXd rhs(coords);
      hermitian_coordinates(hermitian_part(ComplexMatrix::Identity(p.n, p.n) - t * w), rhs);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(b);
      const Eigen::VectorXd dx = qr.solve(rhs);
      const double decrement = (b * dx).squaredNorm();
      ++steps;
      if (!dx.allFinite()) {
        stalled = true;
        break;
      }
      if (decrement <= kCentered) {
        break;
      }

      // Along x + s dx the barrier objective changes by
      //   s t c.dx - sum_j log(1 + s mu_j),  mu = spec(sum_i dx_i A_i),
      // which is evaluated without cancellation.
      ComplexMatrix dir = ComplexMatrix::Zero(p.n, p.n);
      for (Eigen::Index i = 0; i < m; ++i) dir += dx(i) * a[static_cast<std::size_t>(i)];
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> dir_eig(hermitian_part(dir), Eigen::EigenvaluesOnly);
      const Eigen::VectorXd& mu = dir_eig.eigenvalues();
      const double lin = t * p.c.dot(dx);
      auto change = [&](double s) {
        double acc = s * lin;
        for (Eigen::Index j = 0; j < mu.size(); ++j) {
          const double arg = s * mu(j);
          if (!(arg > -1.0)) return kInfinity;
          acc -= std::log1p(arg);
        }
        return acc;
      };
      const double slope = -decrement;
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-14) {
        if (change(alpha) <= 0.25 * alpha * slope) {
          const Eigen::VectorXd trial = x + alpha * dx;
          if (log_det(slack(p, trial))) {
            x = trial;
            moved = true;
            break;
          }
        }
        alpha *= 0.5;
      }
      if (!moved && decrement <= kLooselyCentered) break;
      if (!moved) {
        stalled = true;
        break;
      }
      if (it + 1 >= kPatience && decrement <= kLooselyCentered) break;
    }

    Eigen::LLT<ComplexMatrix> llt;
    if (!log_det(slack(p, x), &llt)) throw SolverError("lambda_max: lost strict feasibility");
    const Certificate cert = certify(p, x, llt, t);
    out.x = x;
    out.cert.primal = cert.primal;
    out.cert.lower = std::max(out.cert.lower, cert.lower);
    out.steps = steps;
    if (stalled) break;
    if (dim / t <= kTargetRelativeGap * cert.primal) break;
    t *= kGrowth;
  }
  return out;
}

}  // namespace

FixedPointSet fixed_point_basis(const QuantumChannel& ch) {
  if (ch.in_dims() != ch.out_dims()) {
    throw std::invalid_argument("fixed_point_basis: channel is not square");
  }
  const std::size_t d = ch.in_dim();
  const auto herm = hermitian_operator_basis(d);
  const auto m = static_cast<Eigen::Index>(herm.size());
  Eigen::MatrixXd rep(m, m);
  for (Eigen::Index l = 0; l < m; ++l) {
    const ComplexMatrix image = ch.apply_matrix(herm[static_cast<std::size_t>(l)]);
    for (Eigen::Index k = 0; k < m; ++k) {
      rep(k, l) = hs_inner(herm[static_cast<std::size_t>(k)], image).real();
    }
  }
  rep -= Eigen::MatrixXd::Identity(m, m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(rep, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();

  FixedPointSet fps;
  fps.dims = ch.in_dims();
  fps.labels = ch.in_labels();
  fps.spectral_gap = kInfinity;
  for (Eigen::Index k = 0; k < m; ++k) {
    if (sv(k) <= kFixedPointTolerance) {
      ComplexMatrix g = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (Eigen::Index j = 0; j < m; ++j) g += svd.matrixV()(j, k) * herm[static_cast<std::size_t>(j)];
      fps.basis.push_back(hermitian_part(g));
    } else {
      fps.spectral_gap = std::min(fps.spectral_gap, sv(k));
      if (sv(k) <= kFixedPointWarning) fps.ill_conditioned = true;
    }
  }
  if (fps.basis.empty()) throw std::runtime_error("fixed_point_basis: no fixed point found");
  return fps;
}

FixedPointSet lift_fixed_points(const FixedPointSet& fps, std::size_t rest_dim,
                                const std::string& rest_label) {
  FixedPointSet out;
  out.dims = {rest_dim};
  out.dims.insert(out.dims.end(), fps.dims.begin(), fps.dims.end());
  out.labels = {rest_label};
  out.labels.insert(out.labels.end(), fps.labels.begin(), fps.labels.end());
  out.tolerance = fps.tolerance;
  out.spectral_gap = fps.spectral_gap;
  out.ill_conditioned = fps.ill_conditioned;
  for (const auto& h : hermitian_operator_basis(rest_dim)) {
    for (const auto& g : fps.basis) out.basis.push_back(tensor_product(h, g));
  }
  return out;
}

LambdaResult lambda_max(const DensityOperator& rho, const QuantumChannel& ch) {
  if (ch.in_dims() != ch.out_dims() || ch.in_labels() != ch.out_labels()) {
    throw std::invalid_argument("lambda_max: channel must map its subsystems to themselves");
  }
  const Dims& dims = rho.dims();
  std::vector<std::size_t> acting;
  for (const auto& l : ch.in_labels()) acting.push_back(rho.index_of(l));
  for (std::size_t k = 0; k < acting.size(); ++k) {
    if (dims[acting[k]] != ch.in_dims()[k]) {
      throw std::invalid_argument("lambda_max: dimension mismatch on '" + ch.in_labels()[k] + "'");
    }
  }
  std::vector<std::size_t> perm;
  std::size_t rest_dim = 1;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (std::find(acting.begin(), acting.end(), k) == acting.end()) {
      perm.push_back(k);
      rest_dim *= dims[k];
    }
  }
  perm.insert(perm.end(), acting.begin(), acting.end());
  const ComplexMatrix rho_p = permute_subsystems(rho.matrix(), dims, perm);

  const FixedPointSet fps = fixed_point_basis(ch);
  LambdaResult result;
  result.ill_conditioned = fps.ill_conditioned;

  // Every fixed operator lives on the support of sum_j G_j^2.
  const auto ds = static_cast<Eigen::Index>(ch.in_dim());
  ComplexMatrix squares = ComplexMatrix::Zero(ds, ds);
  for (const auto& g : fps.basis) squares += g * g;
  const ComplexMatrix v0 = support_isometry(hermitian_part(squares));
  const ComplexMatrix v = tensor_product(identity(rest_dim), v0);
  const ComplexMatrix rho_c = hermitian_part(v.adjoint() * rho_p * v);
  const double tr = rho_p.trace().real();
  if ((tr - rho_c.trace().real()) > 1e-10 * tr) {
    result.value = kInfinity;
    result.finite = false;
    result.lower = kInfinity;
    result.gap = 0.0;
    return result;
  }

  BarrierProblem prob;
  prob.rho = rho_c;
  prob.n = v.cols();
  const FixedPointSet lifted = lift_fixed_points(fps, rest_dim);
  for (const auto& f : lifted.basis) {
    prob.f.push_back(hermitian_part(v.adjoint() * f * v));
  }
  const auto m = static_cast<Eigen::Index>(prob.f.size());
  prob.c.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) prob.c(i) = prob.f[static_cast<std::size_t>(i)].trace().real();

  // Start from s (1 (x) tau0), tau0 the projection of sum_j |G_j| onto the
  // fixed space; it is a fixed state with full support on the compressed
  // space.
  ComplexMatrix tau0 = ComplexMatrix::Zero(ds, ds);
  for (const auto& g : fps.basis) {
    tau0 += matrix_function(g, [](double x) { return Complex(std::abs(x)); }, false);
  }
  Eigen::VectorXd y(static_cast<Eigen::Index>(fps.basis.size()));
  ComplexMatrix tau = ComplexMatrix::Zero(ds, ds);
  for (std::size_t j = 0; j < fps.basis.size(); ++j) {
    y(static_cast<Eigen::Index>(j)) = hs_inner(fps.basis[j], tau0).real();
    tau += y(static_cast<Eigen::Index>(j)) * fps.basis[j];
  }
  const ComplexMatrix tau_c = hermitian_part(v0.adjoint() * tau * v0);
  const ComplexMatrix start = tensor_product(identity(rest_dim), tau_c);
  const ComplexMatrix inv_half = matrix_power(start, -0.5);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ratio(hermitian_part(inv_half * rho_c * inv_half),
                                                     Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> start_eig(start, Eigen::EigenvaluesOnly);
  if (!(start_eig.eigenvalues()(0) > 1e-12 * start_eig.eigenvalues().maxCoeff())) {
    throw SolverError("lambda_max: could not build a strictly feasible starting point");
  }
  const double scale = 2.0 * std::max(ratio.eigenvalues().maxCoeff(), 1e-300) + 1e-12;

  const auto herm_rest = hermitian_operator_basis(rest_dim);
  const ComplexMatrix id_rest = identity(rest_dim);
  Eigen::VectorXd x(m);
  Eigen::Index idx = 0;
  for (const auto& h : herm_rest) {
    const double w = hs_inner(h, id_rest).real();
    for (std::size_t j = 0; j < fps.basis.size(); ++j) {
      x(idx++) = scale * w * y(static_cast<Eigen::Index>(j));
    }
  }

  const BarrierOutcome out = solve_barrier(prob, x);
  const double primal = out.cert.primal;
  const double lower = std::max(out.cert.lower, 0.0);
  result.value = std::log2(primal);
  result.lower = lower > 0 ? std::log2(lower) : -kInfinity;
  result.gap = result.value - result.lower;
  result.newton_steps = out.steps;
  if (!(result.gap <= kLambdaGapLimit)) {
    throw SolverError("lambda_max: certified gap " + std::to_string(result.gap) +
                      " bits exceeds the limit");
  }

  ComplexMatrix sigma = ComplexMatrix::Zero(rho_p.rows(), rho_p.cols());
  for (Eigen::Index i = 0; i < m; ++i) {
    sigma += out.x(i) * lifted.basis[static_cast<std::size_t>(i)];
  }
  sigma = hermitian_part(sigma) / primal;
  // Undo the subsystem permutation.
  std::vector<std::size_t> inverse(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inverse[perm[k]] = k;
  Dims pdims;
  for (std::size_t k : perm) pdims.push_back(dims[k]);
  ComplexMatrix witness = permute_subsystems(sigma, pdims, inverse);
  witness /= witness.trace().real();
  result.witness.emplace(hermitian_part(witness), dims, rho.labels());
  return result;
}

ClassDecomposition closed_classes(const ClassicalChannel& ch) {
  if (ch.out_alphabets().size() != 1 || ch.out_alphabets()[0] != ch.in_alphabet()) {
    throw std::invalid_argument("closed_classes: channel must map an alphabet to itself");
  }
  const std::size_t n = ch.in_alphabet();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  const auto& mat = ch.matrix();
  for (Eigen::Index col = 0; col < mat.outerSize(); ++col) {
    reach[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)] = true;
    for (Eigen::SparseMatrix<double>::InnerIterator it(mat, col); it; ++it) {
      if (it.value() > 0) reach[static_cast<std::size_t>(col)][static_cast<std::size_t>(it.row())] = true;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (reach[k][j]) reach[i][j] = true;
      }
    }
  }
  ClassDecomposition out;
  std::vector<bool> assigned(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (assigned[i]) continue;
    // i is recurrent iff everything it reaches reaches it back.
    bool closed = true;
    for (std::size_t j = 0; j < n && closed; ++j) {
      if (reach[i][j] && !reach[j][i]) closed = false;
    }
    if (!closed) {
      out.transient.push_back(i);
      continue;
    }
    std::vector<std::size_t> cls;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j]) {
        cls.push_back(j);
        assigned[j] = true;
      }
    }
    // Stationary law on the class: (M_cc - 1) pi = 0, sum pi = 1.
    const auto k = static_cast<Eigen::Index>(cls.size());
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k);
    for (Eigen::Index a = 0; a < k; ++a) {
      for (Eigen::Index b = 0; b < k; ++b) {
        sys(a, b) = mat.coeff(static_cast<Eigen::Index>(cls[static_cast<std::size_t>(a)]),
                              static_cast<Eigen::Index>(cls[static_cast<std::size_t>(b)]));
      }
      sys(a, a) -= 1.0;
      sys(k, a) = 1.0;
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
    rhs(k) = 1.0;
    const Eigen::VectorXd pi = sys.colPivHouseholderQr().solve(rhs);
    std::vector<double> law(n, 0.0);
    for (Eigen::Index a = 0; a < k; ++a) {
      law[cls[static_cast<std::size_t>(a)]] = std::max(0.0, pi(a));
    }
    const double total = stable_sum(law);
    for (double& p : law) p /= total;
    out.classes.push_back(std::move(cls));
    out.stationary.push_back(std::move(law));
  }
  return out;
}

ClassicalLambdaResult lambda_max_classical(const ClassicalJoint& rho, const ClassicalChannel& ch,
                                           const std::string& on) {
  const std::size_t k = rho.index_of(on);
  const Dims& alph = rho.alphabets();
  if (alph[k] != ch.in_alphabet()) {
    throw std::invalid_argument("lambda_max_classical: alphabet mismatch");
  }
  const ClassDecomposition dec = closed_classes(ch);
  std::size_t pre = 1;
  std::size_t post = 1;
  for (std::size_t j = 0; j < k; ++j) pre *= alph[j];
  for (std::size_t j = k + 1; j < alph.size(); ++j) post *= alph[j];
  const std::size_t n = alph[k];
  const auto& pmf = rho.pmf();
  auto at = [&](std::size_t a, std::size_t y, std::size_t c) { return pmf[(a * n + y) * post + c]; };

  ClassicalLambdaResult result;
  for (std::size_t y : dec.transient) {
    for (std::size_t a = 0; a < pre; ++a) {
      for (std::size_t c = 0; c < post; ++c) {
        if (at(a, y, c) > 0) {
          result.value = kInfinity;
          result.finite = false;
          return result;
        }
      }
    }
  }
  std::vector<double> sigma(pmf.size(), 0.0);
  std::vector<double> weights;
  for (std::size_t a = 0; a < pre; ++a) {
    for (std::size_t c = 0; c < post; ++c) {
      for (std::size_t cls = 0; cls < dec.classes.size(); ++cls) {
        const auto& law = dec.stationary[cls];
        double w = 0.0;
        for (std::size_t y : dec.classes[cls]) w = std::max(w, at(a, y, c) / law[y]);
        weights.push_back(w);
        for (std::size_t y : dec.classes[cls]) sigma[(a * n + y) * post + c] = w * law[y];
      }
    }
  }
  const double total = stable_sum(weights);
  result.value = std::log2(total);
  for (double& s : sigma) s /= total;
  result.witness.emplace(std::move(sigma), rho.alphabets(), rho.labels());
  return result;
}

double lambda_alpha_upper(const DensityOperator& rho, const QuantumChannel& ch, double alpha,
                          const DensityOperator& witness) {
  if (!(alpha >= 1.0)) throw std::domain_error("lambda_alpha_upper: alpha must be at least 1");
  const DensityOperator moved = apply(ch, witness);
  if (moved.labels() != witness.labels() ||
      trace_norm(hermitian_part(moved.matrix() - witness.matrix())) > 1e-7) {
    throw std::invalid_argument("lambda_alpha_upper: witness is not invariant");
  }
  return d_alpha(rho.matrix(), witness.matrix(), alpha).value;
}

double lambda_alpha_upper(const ClassicalJoint& rho, const ClassicalChannel& ch,
                          const std::string& on, double alpha, const ClassicalJoint& witness) {
  if (!(alpha >= 1.0)) throw std::domain_error("lambda_alpha_upper: alpha must be at least 1");
  const ClassicalJoint moved = classical_channel_apply(ch, witness, on);
  if (moved.labels() != witness.labels()) {
    throw std::invalid_argument("lambda_alpha_upper: channel must map the variable to itself");
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < moved.size(); ++i) dev += std::abs(moved.pmf()[i] - witness.pmf()[i]);
  if (dev > 1e-7) throw std::invalid_argument("lambda_alpha_upper: witness is not invariant");
  if (std::isinf(alpha)) return classical::d_max(rho.pmf(), witness.pmf()).value;
  return classical::d_alpha(rho.pmf(), witness.pmf(), alpha).value;
}

MarkovCertificate markov_dmax_bound(const DensityOperator& recovered, const LambdaResult& result,
                                    const QuantumChannel& recovery) {
  if (!result.witness) throw std::invalid_argument("markov_dmax_bound: result has no witness");
  const DensityOperator mu = apply(recovery, *result.witness);
  if (mu.labels() != recovered.labels()) {
    throw std::invalid_argument("markov_dmax_bound: recovered state and R(witness) differ in layout");
  }
  MarkovCertificate cert;
  cert.witness_cmi = mu.dims().size() == 3 ? cmi(mu) : 0.0;
  cert.markov = cert.witness_cmi <= 1e-6;
  const DivergenceValue d = d_max(recovered.matrix(), mu.matrix());
  cert.value = d.value;
  cert.finite = d.finite;
  return cert;
}

}  // namespace qmarkov
