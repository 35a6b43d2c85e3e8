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


#include "qmarkov/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qmarkov/casebook.hpp"
#include "qmarkov/channels.hpp"
#include "qmarkov/entropies.hpp"
#include "qmarkov/invariance.hpp"
#include "qmarkov/quadrature.hpp"

namespace qmarkov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;
using TrialBody = std::function<void(TrialOutcome&)>;

std::string alpha_tag(const std::string& name, double alpha) {
  std::ostringstream out;
  out << name << "(alpha=" << alpha << ")";
  return out.str();
}

std::string n_tag(const std::string& name, std::size_t n) {
  return name + "(n=" + std::to_string(n) + ")";
}

// Runs body for trials [0, count) on the worker pool. Exceptions become
// per-trial errors.
std::vector<TrialOutcome> run_trials(const TrialConfig& cfg, std::uint64_t stream,
                                     std::size_t count, const TrialBody& body) {
  std::vector<TrialOutcome> out(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      TrialOutcome& t = out[i];
      t.index = i;
      t.seed = derive_seed(cfg.seed, stream, i);
      try {
        body(t);
      } catch (const std::exception& e) {
        t.error = e.what();
      }
    }
  };
  const std::size_t workers = std::min(worker_count(cfg), count);
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

void merge(VerificationReport& report, std::vector<TrialOutcome> trials) {
  for (auto& t : trials) report.add_trial(std::move(t));
}

Json config_json(const TrialConfig& cfg) {
  Json j;
  j["dims"] = cfg.dims;
  j["trials"] = cfg.trials;
  j["vary_dims"] = cfg.vary_dims;
  j["quadrature_nodes"] = cfg.quadrature_nodes;
  return j;
}

void record_tolerances(VerificationReport& report, const Tolerances& tol) {
  report.set_tolerance("sdp", tol.sdp);
  report.set_tolerance("linalg", tol.linalg);
  report.set_tolerance("quadrature", tol.quadrature);
  report.set_tolerance("equality", tol.equality);
  report.set_tolerance("oracle", tol.oracle);
}

VerificationReport start_report(const std::string& id, const TrialConfig& cfg,
                                const std::string& description) {
  validate(cfg);
  VerificationReport report(id, cfg.seed, description);
  report.set_parameters(config_json(cfg));
  record_tolerances(report, cfg.tol);
  return report;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Dims trial_dims(const TrialConfig& cfg, std::uint64_t seed) {
  if (!cfg.vary_dims) return cfg.dims;
  std::mt19937_64 rng(derive_seed(seed, 99));
  Dims dims = cfg.dims;
  for (auto& d : dims) {
    if (d > 2) d = 2 + static_cast<std::size_t>(rng() % (d - 1));
  }
  return dims;
}

DensityOperator relabel(const DensityOperator& s, Labels labels) {
  return DensityOperator(s.matrix(), s.dims(), std::move(labels));
}

struct Recovery {
  QuantumChannel map;
  std::string family;
};

// Three families: a random Stinespring isometry, the Petz map of a random
// state on BC, and a random mixture of the two.
Recovery random_recovery(std::size_t b, std::size_t c, std::uint64_t seed, std::size_t kind) {
  auto stinespring = [&] {
    return random_channel({b}, {b, c}, 2, derive_seed(seed, 1), {"B"}, {"B", "C"});
  };
  auto petz = [&] {
    return petz_map(relabel(random_density({b, c}, derive_seed(seed, 2)), {"B", "C"}));
  };
  switch (kind % 3) {
    case 0:
      return {stinespring(), "stinespring"};
    case 1:
      return {petz(), "petz"};
    default: {
      std::mt19937_64 rng(derive_seed(seed, 3));
      const double w = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      return {mixture({stinespring(), petz()}, {w, 1.0 - w}), "mixture"};
    }
  }
}

DensityOperator product_of_marginals(const DensityOperator& rho) {
  ComplexMatrix m = marginal(rho, {rho.labels()[0]}).matrix();
  for (std::size_t k = 1; k < rho.labels().size(); ++k) {
    m = tensor_product(m, marginal(rho, {rho.labels()[k]}).matrix());
  }
  return DensityOperator(std::move(m), rho.dims(), rho.labels());
}

ComplexMatrix random_positive(std::size_t d, std::uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 5));
  const double scale = std::exp2(std::uniform_real_distribution<double>(-1.0, 1.0)(rng));
  return scale * random_density({d}, seed).matrix();
}

std::vector<double> dirichlet(std::size_t k, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(k);
  for (auto& x : w) x = expo(rng);
  const double total = stable_sum(w);
  for (auto& x : w) x /= total;
  return w;
}

double l1_half(std::span<const double> a, std::span<const double> b) {
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = std::abs(a[i] - b[i]);
  return 0.5 * stable_sum(diff);
}

}  // namespace

void validate(const TrialConfig& cfg) {
  if (cfg.trials == 0) throw std::invalid_argument("TrialConfig: trials must be at least 1");
  if (cfg.dims.empty()) throw std::invalid_argument("TrialConfig: dims must not be empty");
  for (auto d : cfg.dims) {
    if (d == 0) throw std::invalid_argument("TrialConfig: zero dimension");
  }
}

std::size_t worker_count(const TrialConfig& cfg) {
  if (cfg.threads > 0) return cfg.threads;
  if (const char* env = std::getenv("QMARKOV_THREADS")) {
    try {
      const auto n = std::stoul(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ------------------------------------------------------------------ theorem

VerificationReport verify_theorem_main(const TrialConfig& cfg) {
  if (cfg.dims.size() != 3) throw std::invalid_argument("verify_theorem_main: dims must be (a, b, c)");
  for (auto d : cfg.dims) {
    if (d > 4) throw std::invalid_argument("verify_theorem_main: dims are limited to 4");
  }
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "theorem", cfg,
      "D(rho || R(rho_AB)) + Lambda_max(rho_AB || R_B) >= I(A:C|B) for random states and "
      "recovery maps");

  auto body = [&](TrialOutcome& t) {
    const Dims dims = trial_dims(cfg, t.seed);
    const DensityOperator rho = random_density(dims, derive_seed(t.seed, 1));
    const Recovery rec = random_recovery(dims[1], dims[2], derive_seed(t.seed, 2), t.index);
    t.family = rec.family;
    auto dump = [&] { t.instance = Json{{"state", to_json(rho)}, {"recovery", to_json(rec.map)}}; };

    const DensityOperator rho_ab = marginal(rho, {"A", "B"});
    const DensityOperator recovered = apply(rec.map, rho_ab);
    const double d = relative_entropy(rho.matrix(), recovered.matrix()).value;
    const double i_abc = cmi(rho);
    t.quantity("relative_entropy", d, "D(rho || R(rho_AB))");
    t.quantity("cmi", i_abc, "I(A:C|B)");

    LambdaResult lam;
    try {
      lam = lambda_max(rho_ab, restrict_output(rec.map, {"C"}));
    } catch (const SolverError& e) {
      t.error = std::string("lambda_max: ") + e.what();
      dump();
      return;
    }
    t.quantity("lambda_max", lam.value, "min over fixed tau of D_max(rho_AB || tau)");
    t.quantity("lambda_gap", lam.gap, "certified bracket width");
    const double lower = lam.finite ? lam.lower : kInf;
    t.margin("theorem", d + lower - i_abc, cfg.tol.sdp);
    if (lam.ill_conditioned) t.notes.push_back("fixed space nearly degenerate");

    if (lam.finite && lam.witness) {
      const MarkovCertificate cert = markov_dmax_bound(recovered, lam, rec.map);
      t.quantity("witness_dmax", cert.value, "D_max(R(rho_AB) || R(witness))");
      t.quantity("witness_cmi", cert.witness_cmi, "I(A:C|B) of R(witness)");
      t.margin("mid_step", d + cert.value - i_abc, cfg.tol.sdp);
      t.margin("witness_below_lambda", lam.value - cert.value, cfg.tol.sdp);
      if (!cert.markov) t.notes.push_back("R(witness) has CMI above 1e-6");
    }
    if (!t.passes()) dump();
  };
  merge(report, run_trials(cfg, 11, cfg.trials, body));
  report.set_runtime(seconds_since(start));
  return report;
}

// ------------------------------------------------------------ Markov distance

VerificationReport verify_lemma_winter(const TrialConfig& cfg) {
  if (cfg.dims.size() != 3) throw std::invalid_argument("verify_lemma_winter: dims must be (a, b, c)");
  const auto start = Clock::now();
  VerificationReport report =
      start_report("winter", cfg, "D(rho || mu) >= I(A:C|B)_rho for Markov chains mu");

  auto body = [&](TrialOutcome& t) {
    const Dims dims = trial_dims(cfg, t.seed);
    const DensityOperator rho = random_density(dims, derive_seed(t.seed, 1));
    const DensityOperator mu =
        assemble_markov(random_markov_spec(dims[0], dims[1], dims[2], derive_seed(t.seed, 2)));
    const DensityOperator product = product_of_marginals(rho);
    const double i_abc = cmi(rho);
    const double d_mu = relative_entropy(rho.matrix(), mu.matrix()).value;
    const double d_prod = relative_entropy(rho.matrix(), product.matrix()).value;
    t.family = "a" + std::to_string(dims[0]) + "b" + std::to_string(dims[1]) + "c" +
               std::to_string(dims[2]);
    t.quantity("cmi", i_abc, "I(A:C|B)");
    t.quantity("d_markov", d_mu, "D(rho || mu)");
    t.quantity("d_product", d_prod, "D(rho || rho_A rho_B rho_C)");
    t.margin("lemma_markov", d_mu - i_abc, cfg.tol.linalg);
    t.margin("lemma_product", d_prod - i_abc, cfg.tol.linalg);
    t.margin("reference_is_markov", -std::abs(cmi(mu)), cfg.tol.linalg);
    if (!t.passes()) t.instance = Json{{"state", to_json(rho)}, {"markov", to_json(mu)}};
  };
  merge(report, run_trials(cfg, 12, cfg.trials, body));
  report.set_runtime(seconds_since(start));
  return report;
}

// ----------------------------------------------------------------- triangle

namespace {

TrialOutcome renyi_triangle_trial(std::size_t index, const std::vector<double>& alphas) {
  TrialOutcome t;
  t.index = index;
  t.family = "renyi_triangle";
  for (double alpha : alphas) {
    const double p = renyi_triangle_violating_p(alpha);
    const TriangleValues v = renyi_triangle_values(p, alpha);
    const auto dist = renyi_triangle_distributions(p);
    const double d_pq = classical::relative_entropy(dist.p.pmf(), dist.q.pmf()).value;
    const double d_ps = classical::relative_entropy(dist.p.pmf(), dist.s.pmf()).value;
    const double d_sq = classical::d_alpha(dist.s.pmf(), dist.q.pmf(), alpha).value;
    t.quantity(alpha_tag("gap", alpha), v.gap, "D(P||Q) - D(P||S) - D_alpha(S||Q)");
    t.margin(alpha_tag("renyi_triangle_gap", alpha), d_pq - d_ps - d_sq, 0.0, true);
    t.margin(alpha_tag("renyi_triangle_closed_form", alpha),
             -std::max({std::abs(d_pq - v.d_pq), std::abs(d_ps - v.d_ps), std::abs(d_sq - v.d_sq)}),
             1e-12);
  }
  return t;
}

TrialOutcome exchange_trial(std::size_t index, double p, double eps) {
  TrialOutcome t;
  t.index = index;
  t.family = "exchange";
  const TriangleValues v = exchange_values(p, eps);
  const auto dist = exchange_distributions(p, eps);
  const double d_pq = classical::relative_entropy(dist.p.pmf(), dist.q.pmf()).value;
  const double d_ps = classical::d_max(dist.p.pmf(), dist.s.pmf()).value;
  const double d_sq = classical::relative_entropy(dist.s.pmf(), dist.q.pmf()).value;
  t.quantity("d_pq", d_pq, "D(P||Q)");
  t.quantity("dmax_ps", d_ps, "D_max(P||S)");
  t.quantity("d_sq", d_sq, "D(S||Q)");
  t.margin("exchange_gap", d_pq - d_ps - d_sq, 0.0, true);
  if (p > 0.0 && p < 1.0) t.margin("exchange_dmax_is_one", -std::abs(d_ps - 1.0), 1e-12);
  t.margin("exchange_closed_form",
           -std::max({std::abs(d_pq - v.d_pq), std::abs(d_ps - v.d_ps), std::abs(d_sq - v.d_sq)}),
           1e-12);
  return t;
}

}  // namespace

VerificationReport verify_triangle(const TrialConfig& cfg) {
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "triangle", cfg,
      "D_alpha(rho||sigma) <= D_alpha(rho||omega) + D_max(omega||sigma), the log-Euclidean "
      "variant and the classical counterexamples");
  const std::vector<double> alphas{0.5, 0.75, 1.0, 2.0, 4.0};

  auto body = [&](TrialOutcome& t) {
    const std::size_t d = cfg.dims[t.index % cfg.dims.size()];
    t.family = "d" + std::to_string(d);
    const ComplexMatrix rho = random_density({d}, derive_seed(t.seed, 1)).matrix();
    const ComplexMatrix sigma = random_positive(d, derive_seed(t.seed, 2));
    const ComplexMatrix omega = random_positive(d, derive_seed(t.seed, 3));
    const double dmax_os = d_max(omega, sigma).value;
    for (double alpha : alphas) {
      const double lhs = d_alpha(rho, sigma, alpha).value;
      const double rhs = d_alpha(rho, omega, alpha).value + dmax_os;
      t.margin(alpha_tag("lemma_triangle", alpha), rhs - lhs, cfg.tol.linalg);
    }
    const ComplexMatrix sigma_n = sigma / sigma.trace().real();
    const ComplexMatrix omega_n = omega / omega.trace().real();
    const double d_rs = relative_entropy(rho, sigma_n).value;
    const double d_ro = relative_entropy(rho, omega_n).value;
    for (double alpha : {2.0, 4.0}) {
      const double rhs =
          alpha / (alpha - 1.0) * d_ro + log_euclidean_alpha(omega_n, sigma_n, alpha).value;
      t.margin(alpha_tag("log_euclidean_triangle", alpha), rhs - d_rs, cfg.tol.linalg);
    }
    if (!t.passes()) {
      t.instance = Json{{"rho", matrix_to_json(rho)},
                        {"sigma", matrix_to_json(sigma)},
                        {"omega", matrix_to_json(omega)}};
    }
  };
  merge(report, run_trials(cfg, 13, cfg.trials, body));
  report.add_trial(renyi_triangle_trial(cfg.trials, alphas));
  report.add_trial(exchange_trial(cfg.trials + 1, 7.0 / 8.0, 1.0 / 8.0));
  report.set_runtime(seconds_since(start));
  return report;
}

// ------------------------------------------------------- rotated Petz bounds

VerificationReport verify_fr_and_badub(const TrialConfig& cfg) {
  if (cfg.dims.size() != 3) throw std::invalid_argument("verify_fr_and_badub: dims must be (a, b, c)");
  if (cfg.quadrature_nodes < 8) throw std::invalid_argument("verify_fr_and_badub: need >= 8 nodes");
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "fr", cfg,
      "-log F(rho, P(rho_AB)) <= I(A:C|B) for the rotation-averaged Petz map, and the averaged "
      "Petz Renyi-2 divergence of the rotated maps >= I(A:C|B)");
  const QuadratureRule rule = beta0_rule(cfg.quadrature_nodes);
  const QuadratureRule coarse = beta0_rule(cfg.quadrature_nodes / 2);

  auto body = [&](TrialOutcome& t) {
    const Dims dims = trial_dims(cfg, t.seed);
    const DensityOperator rho = random_density(dims, derive_seed(t.seed, 1));
    const DensityOperator rho_ab = marginal(rho, {"A", "B"});
    const DensityOperator rho_bc = marginal(rho, {"B", "C"});
    const double i_abc = cmi(rho);

    const QuantumChannel universal = averaged_rotated_petz(rho_bc, cfg.quadrature_nodes);
    const DensityOperator recovered = apply(universal, rho_ab);
    const double neg_log_f = -std::log2(fidelity(rho.matrix(), recovered.matrix()));
    const MeasuredBounds measured = d_measured_bounds(rho.matrix(), recovered.matrix());

    auto averaged_petz2 = [&](const QuadratureRule& r) {
      std::vector<double> terms;
      for (std::size_t k = 0; k < r.nodes.size(); ++k) {
        const DensityOperator rec_t = apply(rotated_petz_map(rho_bc, r.nodes[k]), rho_ab);
        terms.push_back(r.weights[k] * petz_renyi_2(rho.matrix(), rec_t.matrix()).value);
      }
      return stable_sum(terms);
    };
    const double petz2 = averaged_petz2(rule);
    const double petz2_coarse = averaged_petz2(coarse);

    t.quantity("cmi", i_abc, "I(A:C|B)");
    t.quantity("neg_log_fidelity", neg_log_f, "-log F(rho, P(rho_AB))");
    t.quantity("measured_lower", measured.lower.value, "projective lower bound on D_M");
    t.quantity("petz2_average", petz2, "sum_k w_k log tr rho^2 P_t(rho_AB)^-1");
    t.margin("fidelity_recovery", i_abc - neg_log_f, cfg.tol.quadrature);
    t.margin("measured_recovery", i_abc - measured.lower.value, cfg.tol.quadrature);
    t.margin("petz2_average_above_cmi", petz2 - i_abc, cfg.tol.quadrature);
    t.margin("quadrature_convergence", -std::abs(petz2 - petz2_coarse), cfg.tol.quadrature);
    t.margin("weights_normalized", -std::abs(stable_sum(rule.weights) - 1.0), 1e-10);
    if (!t.passes()) t.instance = Json{{"state", to_json(rho)}};
  };
  merge(report, run_trials(cfg, 14, cfg.trials, body));
  report.set_runtime(seconds_since(start));
  return report;
}

// ---------------------------------------------------------- dimension bound

VerificationReport verify_dimension_bound(const TrialConfig& cfg) {
  if (cfg.dims.size() != 3) throw std::invalid_argument("verify_dimension_bound: dims must be (a, b, c)");
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "dimbound", cfg,
      "D >= (2/ln 2) Delta^2 >= CMI^4 / (8 ln 2 (log dim A + 1)^4) for random recoveries and the "
      "noisy-copy instance");
  const double ln2 = std::log(2.0);

  auto links = [&](TrialOutcome& t, double d, double delta, double i_abc, double dim_a) {
    const double pinsker = 2.0 / ln2 * delta * delta;
    const double base = std::log2(dim_a) + 1.0;
    const double dimension = std::pow(i_abc, 4) / (8.0 * ln2 * std::pow(base, 4));
    t.quantity("relative_entropy", d, "D(rho || R(rho_AB))");
    t.quantity("trace_distance", delta, "Delta(rho, R(rho_AB))");
    t.quantity("cmi", i_abc, "I(A:C|B)");
    t.quantity("implied_cmi_bound", 2.0 * std::sqrt(delta) * base, "2 sqrt(Delta) (log dim A + 1)");
    t.margin("pinsker", d - pinsker, cfg.tol.linalg);
    t.margin("alicki_fannes", pinsker - dimension, cfg.tol.linalg);
  };

  auto body = [&](TrialOutcome& t) {
    const Dims dims = trial_dims(cfg, t.seed);
    const DensityOperator rho = random_density(dims, derive_seed(t.seed, 1));
    const Recovery rec = random_recovery(dims[1], dims[2], derive_seed(t.seed, 2), t.index);
    t.family = rec.family;
    const DensityOperator recovered = apply(rec.map, marginal(rho, {"A", "B"}));
    links(t, relative_entropy(rho.matrix(), recovered.matrix()).value,
          trace_distance(rho.matrix(), recovered.matrix()), cmi(rho), static_cast<double>(dims[0]));
    if (!t.passes()) t.instance = Json{{"state", to_json(rho)}, {"recovery", to_json(rec.map)}};
  };
  merge(report, run_trials(cfg, 15, cfg.trials, body));

  std::size_t index = cfg.trials;
  for (std::size_t n : {2, 4, 6}) {
    TrialOutcome t;
    t.index = index++;
    t.family = n_tag("noisy_copy", n);
    const NoisyCopyParams params{n, 0.5, 0.0};
    const ClassicalJoint joint = noisy_copy_joint(params);
    const ClassicalJoint recovered =
        classical_channel_apply(noisy_copy_recovery(params), joint.marginal({"X", "Y"}), "Y");
    const double i_xyz = classical::conditional_mutual_information(joint, {"X"}, {"Z"}, {"Y"});
    const double delta = l1_half(joint.pmf(), recovered.pmf());
    links(t, classical::relative_entropy(joint.pmf(), recovered.pmf()).value, delta, i_xyz,
          std::exp2(static_cast<double>(n)));
    t.quantity("looseness", 2.0 * std::sqrt(delta) * (static_cast<double>(n) + 1.0) / i_xyz,
               "implied_cmi_bound / cmi");
    report.add_trial(std::move(t));
  }
  report.set_runtime(seconds_since(start));
  return report;
}

// ------------------------------------------------------------ classical Petz

VerificationReport verify_classical_petz(const TrialConfig& cfg) {
  if (cfg.dims.size() != 3) throw std::invalid_argument("verify_classical_petz: dims must be (a, b, c)");
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "petz", cfg,
      "classical Petz map T: D(P || T(P_XY)) = I(X:Z|Y) and Lambda_max(P_XY || T_Y) = 0");

  auto body = [&](TrialOutcome& t) {
    const Dims dims = trial_dims(cfg, t.seed);
    const ClassicalJoint joint = random_classical(dims, derive_seed(t.seed, 1));
    t.family = "a" + std::to_string(dims[0]) + "b" + std::to_string(dims[1]) + "c" +
               std::to_string(dims[2]);
    const std::size_t b = dims[1];
    const std::size_t c = dims[2];
    const ClassicalJoint p_bc = joint.marginal({"B", "C"});
    const ClassicalJoint p_b = joint.marginal({"B"});
    std::vector<Eigen::Triplet<double>> triplets;
    for (std::size_t y = 0; y < b; ++y) {
      for (std::size_t z = 0; z < c; ++z) {
        triplets.emplace_back(static_cast<Eigen::Index>(y * c + z), static_cast<Eigen::Index>(y),
                              p_bc.pmf()[y * c + z] / p_b.pmf()[y]);
      }
    }
    const ClassicalChannel petz =
        ClassicalChannel::from_triplets(triplets, b, Dims{b, c}, Labels{"B", "C"});
    const ClassicalJoint p_ab = joint.marginal({"A", "B"});
    const ClassicalJoint recovered = classical_channel_apply(petz, p_ab, "B");
    const double d = classical::relative_entropy(joint.pmf(), recovered.pmf()).value;
    const double i_abc = classical::conditional_mutual_information(joint, {"A"}, {"C"}, {"B"});
    const ClassicalLambdaResult lam = lambda_max_classical(p_ab, restrict_output(petz, {"C"}), "B");

    const DensityOperator rho = from_classical(joint);
    const DensityOperator q_rec =
        apply(petz_map(marginal(rho, {"B", "C"})), marginal(rho, {"A", "B"}));
    const double d_quantum = relative_entropy(rho.matrix(), q_rec.matrix()).value;

    t.quantity("relative_entropy", d, "D(P || T(P_XY))");
    t.quantity("cmi", i_abc, "I(X:Z|Y)");
    t.quantity("lambda_max", lam.value, "exact class decomposition");
    t.margin("petz_equality", -std::abs(d - i_abc), cfg.tol.equality);
    t.margin("petz_equality_quantum", -std::abs(d_quantum - i_abc), cfg.tol.equality);
    t.margin("lambda_vanishes", lam.finite ? -lam.value : -kInf, cfg.tol.equality);
    if (!t.passes()) t.instance = Json{{"joint", to_json(joint)}};
  };
  merge(report, run_trials(cfg, 16, cfg.trials, body));
  report.set_runtime(seconds_since(start));
  return report;
}

// ---------------------------------------------------------- lambda oracle

VerificationReport verify_lambda_oracle(const TrialConfig& cfg) {
  if (cfg.dims.size() < 2) throw std::invalid_argument("verify_lambda_oracle: dims must be (a, b, ...)");
  const auto start = Clock::now();
  VerificationReport report = start_report(
      "oracle", cfg, "lambda_max of diagonal pairs: exact class decomposition vs solver");

  auto body = [&](TrialOutcome& t) {
    const Dims dims = trial_dims(cfg, t.seed);
    const std::size_t a = dims[0];
    const std::size_t b = dims[1];
    const ClassicalJoint joint = random_classical({a, b}, derive_seed(t.seed, 1));
    std::mt19937_64 rng(derive_seed(t.seed, 2));
    std::vector<Eigen::Triplet<double>> triplets;
    auto column = [&](std::size_t y, std::size_t lo, std::size_t hi) {
      const auto w = dirichlet(hi - lo, rng);
      for (std::size_t o = lo; o < hi; ++o) {
        triplets.emplace_back(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(y), w[o - lo]);
      }
    };
    const std::size_t kind = b >= 2 ? t.index % 3 : 0;
    const std::size_t half = b / 2;
    for (std::size_t y = 0; y < b; ++y) {
      switch (kind) {
        case 0:
          column(y, 0, b);
          break;
        case 1:
          y < half ? column(y, 0, half) : column(y, half, b);
          break;
        default:
          y + 1 < b ? column(y, 0, b - 1) : column(y, 0, b);
      }
    }
    t.family = kind == 0 ? "irreducible" : kind == 1 ? "two_classes" : "transient";
    const ClassicalChannel ch = ClassicalChannel::from_triplets(triplets, b, Dims{b}, Labels{"B"});
    const ClassicalLambdaResult lp = lambda_max_classical(joint, ch, "B");
    const LambdaResult sdp = lambda_max(from_classical(joint), to_quantum(ch, "B"));
    t.quantity("lambda_exact", lp.value, "log sum over classes of max P/pi");
    t.quantity("lambda_solver", sdp.value, "semidefinite upper end");
    t.quantity("lambda_solver_gap", sdp.gap, "certified bracket width");
    double agreement = -kInf;
    if (lp.finite && sdp.finite) agreement = -std::abs(lp.value - sdp.value);
    if (!lp.finite && !sdp.finite) agreement = 0.0;
    t.margin("exact_vs_solver", agreement, cfg.tol.oracle);
    if (!t.passes()) t.instance = Json{{"joint", to_json(joint)}, {"channel", to_json(ch)}};
  };
  merge(report, run_trials(cfg, 17, cfg.trials, body));
  report.set_runtime(seconds_since(start));
  return report;
}

// ---------------------------------------------------------------- casebook

const std::vector<std::string>& casebook_experiments() {
  static const std::vector<std::string> ids{"noisy-copy", "modular-sum", "renyi-triangle",
                                            "exchange", "antisym"};
  return ids;
}

namespace {

void copy_entries(TrialOutcome& t, const ClosedFormReport& r, const std::string& prefix) {
  for (const auto& e : r.entries) t.quantity(prefix + e.key, e.value, e.anchor);
}

VerificationReport noisy_copy_experiment(const CasebookParams& params) {
  const double p = params.p.value_or(0.5);
  const double q = params.q.value_or(0.0);
  const double kappa = params.kappa.value_or(1.0);
  const double band = params.band.value_or(3.0);
  std::vector<std::size_t> ns = params.ns;
  if (ns.empty()) ns = params.n ? std::vector<std::size_t>{*params.n} : std::vector<std::size_t>{4, 6, 8};

  VerificationReport report("noisy-copy", 0,
                            "noisy-copy distribution: closed forms against exact enumeration");
  Json j;
  j["p"] = p;
  j["q"] = q;
  j["kappa"] = kappa;
  j["band"] = band;
  j["n"] = ns;
  report.set_parameters(j);
  report.set_tolerance("band", band);
  report.set_tolerance("equality", 1e-12);

  ClosedFormReport thresholds;
  thresholds.experiment = "noisy_copy_threshold";
  thresholds.add("smallest_n", static_cast<double>(noisy_copy_threshold(p, q, kappa, 4096)),
                 "smallest n with kappa D_max(P||R(P_XY)) < n(1-p-q)(p+q) - log 6", ValuePath::closed_form);
  report.add_closed_forms(thresholds);

  double previous = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const std::size_t n = ns[k];
    TrialOutcome t;
    t.index = k;
    t.family = n_tag("noisy_copy", n);
    const ClosedFormReport cf = noisy_copy_closed_forms({n, p, q});
    const ClosedFormReport en = noisy_copy_enumeration({n, p, q});
    copy_entries(t, cf, "closed_form.");
    copy_entries(t, en, "enumeration.");
    const double scale = std::exp2(-static_cast<double>(n));
    for (const std::string key : {"dmax_p_vs_recovered", "dmax_recovered_vs_p"}) {
      const double c = cf.value(key);
      if (std::isfinite(c)) {
        t.margin(key + "_band", band * scale - std::abs(en.value(key) - c), 0.0);
      } else {
        t.notes.push_back(key + ": closed form is infinite, finite-n value reported only");
      }
    }
    const double collision = p + q * (p + q) + (1.0 - p - q) * (1.0 + q) * scale;
    t.margin("collision_probability", -std::abs(en.value("p_x_equals_y") - collision), 1e-12);
    t.margin("marginal_match", -en.value("marginal_match_defect"), 1e-12);
    t.margin("cmi_above_lower_bound", en.value("cmi") - cf.value("cmi_lower"), 1e-9);
    const double separation = en.value("cmi") - kappa * en.value("dmax_p_vs_recovered");
    t.quantity("separation", separation, "I(X:Z|Y) - kappa D_max(P||R(P_XY))");
    if (k > 0) t.margin("separation_increases", separation - previous, 0.0, true);
    previous = separation;
    report.add_trial(std::move(t));
  }
  return report;
}

VerificationReport modular_sum_experiment(const CasebookParams& params) {
  const double alpha = params.alpha.value_or(64.0);
  const std::size_t n = params.n.value_or(4);
  const double p = params.p.value_or(0.1);

  VerificationReport report("modular-sum", 0,
                            "modular-sum distribution: large-alpha chain from closed forms and "
                            "finite-n enumeration of its ingredients");
  Json j;
  j["alpha"] = alpha;
  j["n"] = n;
  j["p"] = p;
  report.set_parameters(j);
  report.set_tolerance("equality", 1e-9);
  report.set_tolerance("exact", 1e-12);

  const ClosedFormReport chain = modular_sum_closed_forms(alpha);
  report.add_closed_forms(chain);
  ClosedFormReport thresholds;
  thresholds.experiment = "modular_sum_threshold";
  thresholds.add("smallest_alpha", static_cast<double>(modular_sum_threshold(256)),
                 "smallest integer alpha from which the chain holds up to 256", ValuePath::closed_form);
  report.add_closed_forms(thresholds);

  TrialOutcome closed;
  closed.index = 0;
  closed.family = "closed_form";
  copy_entries(closed, chain, "closed_form.");
  closed.margin("chain_gap", chain.value("chain_gap"), 0.0, true);
  report.add_trial(std::move(closed));

  TrialOutcome t;
  t.index = 1;
  t.family = n_tag("enumeration", n);
  const ClosedFormReport en = modular_sum_enumeration({n, p}, alpha);
  const ClosedFormReport bounds = modular_sum_bounds(static_cast<double>(n), p, alpha);
  copy_entries(t, bounds, "closed_form.");
  copy_entries(t, en, "enumeration.");
  t.margin("relative_entropy_below_log_inverse_p",
           bounds.value("d_upper") - en.value("d_p_vs_recovered"), 1e-9);
  t.margin("invariance", -en.value("invariance_defect"), 1e-12);
  t.margin("marginal_match", -en.value("marginal_match_defect"), 1e-12);
  t.margin("lambda_alpha_closed_form",
           -std::abs(en.value("lambda_alpha_upper") - bounds.value("lambda_alpha_upper")), 1e-9);
  t.margin("cmi_above_lower_bound", en.value("cmi") - bounds.value("cmi_lower"), 1e-9);
  report.add_trial(std::move(t));
  return report;
}

VerificationReport antisym_experiment(const CasebookParams& params) {
  const std::size_t d = params.d.value_or(3);
  VerificationReport report("antisym", 0, "determinant state: chain rule for the CMI steps");
  report.set_parameters(Json{{"d", d}});
  report.set_tolerance("bound", 1e-8);
  report.set_tolerance("purity", 1e-10);
  const ClosedFormReport r = antisymmetric_report(d);
  report.add_closed_forms(r);
  TrialOutcome t;
  t.index = 0;
  t.family = "d" + std::to_string(d);
  copy_entries(t, r, "");
  t.margin("chain_rule_bound", r.value("cmi_sum_bound") - r.value("cmi_sum"), 1e-8);
  t.margin("smallest_step_bound", r.value("cmi_min_bound") - r.value("cmi_min"), 1e-8);
  t.margin("purity", -std::abs(r.value("purity") - 1.0), 1e-10);
  report.add_trial(std::move(t));
  return report;
}

}  // namespace

VerificationReport run_casebook(const std::string& name, const CasebookParams& params) {
  const auto start = Clock::now();
  VerificationReport report = [&] {
    if (name == "noisy-copy") return noisy_copy_experiment(params);
    if (name == "modular-sum") return modular_sum_experiment(params);
    if (name == "antisym") return antisym_experiment(params);
    if (name == "renyi-triangle") {
      const double alpha = params.alpha.value_or(0.5);
      VerificationReport r("renyi-triangle", 0,
                           "two-bit example: D(P||Q) > D(P||S) + D_alpha(S||Q) at p = 1 - 2^-alpha");
      r.set_parameters(Json{{"alpha", alpha}});
      r.add_trial(renyi_triangle_trial(0, {alpha}));
      return r;
    }
    if (name == "exchange") {
      const double p = params.p.value_or(7.0 / 8.0);
      const double eps = params.eps.value_or(1.0 / 8.0);
      VerificationReport r("exchange", 0,
                           "binary example: D(P||Q) > D_max(P||S) + D(S||Q) with the roles exchanged");
      r.set_parameters(Json{{"p", p}, {"eps", eps}});
      r.add_trial(exchange_trial(0, p, eps));
      return r;
    }
    throw std::invalid_argument("run_casebook: unknown experiment '" + name + "'");
  }();
  report.set_runtime(seconds_since(start));
  return report;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"theorem", "winter", "triangle", "fr",
                                              "dimbound", "petz",  "oracle"};
  return names;
}

VerificationReport run_suite(const std::string& name, const TrialConfig& cfg) {
  if (name == "theorem") return verify_theorem_main(cfg);
  if (name == "winter") return verify_lemma_winter(cfg);
  if (name == "triangle") return verify_triangle(cfg);
  if (name == "fr") return verify_fr_and_badub(cfg);
  if (name == "dimbound") return verify_dimension_bound(cfg);
  if (name == "petz") return verify_classical_petz(cfg);
  if (name == "oracle") return verify_lambda_oracle(cfg);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

}  // namespace qmarkov
