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


// Randomized and deterministic verification suites. Trials run concurrently
// and are merged in index order, so a configuration always produces the same
// report.

#ifndef QMARKOV_HARNESS_HPP
#define QMARKOV_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/report.hpp"

namespace qmarkov {

struct Tolerances {
  /// Inequalities involving the lambda_max solver.
  double sdp = 1e-6;
  /// Inequalities between closed-form linear-algebra quantities.
  double linalg = 1e-8;
  /// Inequalities involving the rotation-averaged maps.
  double quadrature = 1e-3;
  /// Identities expected to hold up to round-off.
  double equality = 1e-9;
  /// Agreement of the exact classical lambda_max with the solver.
  double oracle = 1e-7;
};

struct TrialConfig {
  Dims dims{2, 2, 2};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  Tolerances tol;
  std::size_t quadrature_nodes = 64;
  /// Draw each trial's dimensions uniformly from [2, dims[k]].
  bool vary_dims = false;
  /// Worker threads; 0 reads QMARKOV_THREADS and falls back to the hardware.
  std::size_t threads = 0;
};

/// Throws std::invalid_argument for trials == 0 or zero dimensions.
void validate(const TrialConfig& cfg);

std::size_t worker_count(const TrialConfig& cfg);

/// D(rho || R(rho_AB)) + Lambda_max(rho_AB || R_B) >= I(A:C|B) for random
/// states and random recovery maps B -> BC (random Stinespring, Petz map of
/// a random state, and their mixtures), together with the sharper form in
/// which Lambda_max is replaced by D_max(R(rho_AB) || R(witness)).
VerificationReport verify_theorem_main(const TrialConfig& cfg);

/// D(rho || mu) >= I(A:C|B)_rho for random Markov chains mu and for the
/// product of the marginals.
VerificationReport verify_lemma_winter(const TrialConfig& cfg);

/// Triangle-like inequality D_alpha(rho||sigma) <= D_alpha(rho||omega) +
/// D_max(omega||sigma) at alpha in {1/2, 3/4, 1, 2, 4} on single systems
/// of the dimensions in cfg.dims (cycled), the log-Euclidean variant at
/// alpha in {2, 4}, and the two classical counterexamples.
VerificationReport verify_triangle(const TrialConfig& cfg);

/// -log F(rho, P(rho_AB)) <= I(A:C|B) for the rotation-averaged Petz map P,
/// the measured-divergence bracket below the CMI, and the averaged Petz
/// Renyi-2 divergence of the rotated maps above the CMI.
VerificationReport verify_fr_and_badub(const TrialConfig& cfg);

/// D >= (2/ln 2) Delta^2 >= CMI^4 / (8 ln 2 (log dim A + 1)^4) for random
/// recoveries, plus the noisy-copy instance at n = 2, 4, 6 where the implied
/// CMI bound grows with the dimension.
VerificationReport verify_dimension_bound(const TrialConfig& cfg);

/// Classical states with the classical Petz map Y -> YZ: D(P || T(P_XY))
/// equals the CMI and Lambda_max(P_XY || T_Y) vanishes.
VerificationReport verify_classical_petz(const TrialConfig& cfg);

/// Lambda_max of random classical pairs under random stochastic maps: the
/// exact class decomposition against the semidefinite solver.
VerificationReport verify_lambda_oracle(const TrialConfig& cfg);

/// Parameters of the casebook experiments; unset fields take the
/// experiment's defaults.
struct CasebookParams {
  std::optional<std::size_t> n;
  std::vector<std::size_t> ns;
  std::optional<double> p;
  std::optional<double> q;
  std::optional<double> alpha;
  std::optional<double> eps;
  std::optional<std::size_t> d;
  std::optional<double> kappa;
  /// Constant of the c 2^-n band for finite-n convergence.
  std::optional<double> band;
};

/// Experiment ids accepted by run_casebook.
const std::vector<std::string>& casebook_experiments();

/// Runs a casebook construction, cross-checks closed forms against exact
/// enumeration and returns the report. Throws std::invalid_argument for an
/// unknown id.
VerificationReport run_casebook(const std::string& name, const CasebookParams& params = {});

/// Suite ids accepted by run_suite: theorem, winter, triangle, fr, dimbound,
/// petz, oracle.
const std::vector<std::string>& suite_names();
VerificationReport run_suite(const std::string& name, const TrialConfig& cfg);

}  // namespace qmarkov

#endif  // QMARKOV_HARNESS_HPP
