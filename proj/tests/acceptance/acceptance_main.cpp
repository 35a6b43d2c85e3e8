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

// Acceptance checks. Prints one PASS/FAIL line per criterion; with a
// criterion number as the only argument, runs just that one. Exit status is
// 0 iff every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qmarkov/casebook.hpp"
#include "qmarkov/harness.hpp"
#include "qmarkov/quadrature.hpp"

namespace {

using namespace qmarkov;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Smallest margin of an inequality across a report, with a count of trials.
double min_margin(const VerificationReport& r, const std::string& inequality, std::size_t* count = nullptr) {
  for (const auto& s : r.summaries()) {
    if (s.inequality == inequality) {
      if (count) *count = s.count;
      return s.min;
    }
  }
  if (count) *count = 0;
  return -INFINITY;
}

double max_quantity(const VerificationReport& r, const std::string& name) {
  double m = -INFINITY;
  for (const auto& t : r.trials())
    for (const auto& q : t.quantities)
      if (q.name == name) m = std::max(m, q.value);
  return m;
}

std::size_t errors(const VerificationReport& r) {
  std::size_t n = 0;
  for (const auto& t : r.trials()) n += t.error.has_value();
  return n;
}

void classical_petz(Outcome& o) {
  TrialConfig cfg;
  cfg.dims = {4, 4, 4};
  cfg.vary_dims = true;
  cfg.trials = 100;
  cfg.seed = 101;
  const auto start = Clock::now();
  const VerificationReport r = verify_classical_petz(cfg);
  const double secs = elapsed(start);
  std::size_t n = 0;
  const double eq = min_margin(r, "petz_equality", &n);
  const double lam = min_margin(r, "lambda_vanishes");
  o.detail << n << " trials, max |D - I| = " << -eq << ", max lambda = " << -lam << ", " << secs << " s";
  o.require(n >= 100, "trial count");
  o.require(-eq <= 1e-9, "|D - I| <= 1e-9");
  o.require(-lam <= 1e-9, "lambda_max <= 1e-9");
  o.require(r.pass(), "report pass");
  o.require(secs <= 10.0, "runtime <= 10 s");
}

void main_theorem(Outcome& o) {
  const auto start = Clock::now();
  std::size_t total = 0;
  double worst = INFINITY, worst_gap = 0.0;
  std::size_t errs = 0;
  for (const auto& [dims, trials] : std::vector<std::pair<Dims, std::size_t>>{{{2, 2, 2}, 100}, {{2, 3, 2}, 30}}) {
    TrialConfig cfg;
    cfg.dims = dims;
    cfg.trials = trials;
    cfg.seed = 202;
    const VerificationReport r = verify_theorem_main(cfg);
    std::size_t n = 0;
    worst = std::min(worst, min_margin(r, "theorem", &n));
    worst_gap = std::max(worst_gap, max_quantity(r, "lambda_gap"));
    errs += errors(r);
    total += n;
    o.require(n >= trials, "trial count at b = " + std::to_string(dims[1]));
    o.require(r.pass(), "report pass at b = " + std::to_string(dims[1]));
  }
  const double secs = elapsed(start);
  o.detail << total << " trials, min margin " << worst << ", max solver gap " << worst_gap << ", "
           << errs << " solver errors, " << secs << " s";
  o.require(worst >= -1e-6, "margin >= -1e-6");
  o.require(worst_gap <= 1e-6, "gap <= 1e-6");
  o.require(errs == 0, "no solver errors");
  o.require(secs <= 300.0, "runtime <= 5 min");
}

void winter(Outcome& o) {
  TrialConfig cfg;
  cfg.dims = {3, 3, 3};
  cfg.vary_dims = true;
  cfg.trials = 200;
  cfg.seed = 303;
  const auto start = Clock::now();
  const VerificationReport r = verify_lemma_winter(cfg);
  const double secs = elapsed(start);
  std::size_t n = 0;
  const double m = min_margin(r, "lemma_markov", &n);
  o.detail << n << " pairs, min margin " << m << ", " << secs << " s";
  o.require(n >= 200, "trial count");
  o.require(m >= -1e-8, "margin >= -1e-8");
  o.require(r.pass(), "report pass");
  o.require(secs <= 30.0, "runtime <= 30 s");
}

void triangle(Outcome& o) {
  TrialConfig cfg;
  cfg.dims = {2, 3, 4};
  cfg.trials = 200;
  cfg.seed = 404;
  const VerificationReport r = verify_triangle(cfg);
  double worst = INFINITY;
  std::size_t least = SIZE_MAX;
  for (const char* a : {"0.5", "0.75", "1", "2", "4"}) {
    std::size_t n = 0;
    worst = std::min(worst, min_margin(r, std::string("lemma_triangle(alpha=") + a + ")", &n));
    least = std::min(least, n);
  }
  o.detail << least << " triples per alpha, min margin " << worst;
  o.require(least >= 200, "trial count");
  o.require(worst >= -1e-8, "margin >= -1e-8");
  o.require(r.pass(), "report pass");
}

void exchange(Outcome& o) {
  const TriangleValues v = exchange_values(7.0 / 8, 1.0 / 8);
  const VerificationReport r = run_casebook("exchange");
  o.detail.precision(15);
  o.detail << "D_max(P||S) = " << v.d_ps << ", gap = " << v.gap;
  o.require(std::abs(v.d_ps - 1.0) <= 1e-12, "D_max = 1 within 1e-12");
  o.require(v.gap > 0.0, "strict gap");
  o.require(r.pass(), "report pass");
}

void noisy_copy(Outcome& o) {
  const double forward = noisy_copy_closed_forms({8, 0.5, 0.0}).value("dmax_p_vs_recovered");
  const double backward = noisy_copy_closed_forms({8, 0.25, 0.25}).value("dmax_recovered_vs_p");
  o.require(forward == 1.0, "closed form D_max(P||R) = 1");
  o.require(std::abs(backward - std::log2(15.0 / 8)) <= 4e-16, "closed form D_max(R||P) = log 15/8");

  double worst_forward = 0.0, worst_backward = 0.0, worst_cmi = 0.0;
  const double c = 3.0;
  double previous = -INFINITY;
  bool growing = true;
  for (std::size_t n : {4u, 6u, 8u}) {
    const double scale = std::exp2(static_cast<double>(n));
    const ClosedFormReport a = noisy_copy_enumeration({n, 0.5, 0.0});
    const ClosedFormReport b = noisy_copy_enumeration({n, 0.25, 0.25});
    worst_forward = std::max(worst_forward, std::abs(a.value("dmax_p_vs_recovered") - 1.0) * scale);
    worst_backward = std::max(worst_backward, std::abs(b.value("dmax_recovered_vs_p") - backward) * scale);
    const double sep = a.value("cmi") - a.value("dmax_p_vs_recovered");
    growing = growing && sep > previous;
    previous = sep;
    for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.5, 0.0}, {0.25, 0.25}}) {
      const double formula = static_cast<double>(n) * (1 - p - q) * (p + q) - std::log2(6.0);
      const double got = noisy_copy_closed_forms({n, p, q}).value("cmi_lower");
      worst_cmi = std::max(worst_cmi, std::abs(got - formula));
    }
  }
  o.detail << "closed forms " << forward << " and " << backward << ", scaled discrepancies "
           << worst_forward << " and " << worst_backward << " (c = " << c << "), cmi bound error "
           << worst_cmi;
  o.require(worst_forward <= c && worst_backward <= c, "discrepancy <= c 2^-n");
  o.require(worst_cmi <= 1e-15, "cmi lower bound to machine precision");
  o.require(growing, "separation grows with n");
  o.require(run_casebook("noisy-copy").pass(), "report pass");
}

void modular_sum(Outcome& o) {
  const ClosedFormReport chain = modular_sum_closed_forms(64);
  const double gap = chain.value("chain_gap");
  const ClosedFormReport en = modular_sum_enumeration({4, 0.1}, 64);
  const double d = en.value("d_p_vs_recovered");
  const double bound = std::log2(1 / 0.1);
  o.detail << "alpha = 64 gap " << gap << "; n = 4, p = 0.1: D(P||R(P_XY)) = " << d << " vs log(1/p) = "
           << bound << ", invariance defect " << en.value("invariance_defect");
  o.require(gap > 0.0, "positive chain gap");
  o.require(d <= bound + 1e-9, "D(P||R(P_XY)) <= log(1/p) + 1e-9");
  o.require(en.value("invariance_defect") <= 1e-12, "invariance within 1e-12");
}

void universal_recovery(Outcome& o) {
  TrialConfig cfg;
  cfg.dims = {2, 2, 2};
  cfg.trials = 100;
  cfg.quadrature_nodes = 64;
  cfg.seed = 808;
  const VerificationReport r = verify_fr_and_badub(cfg);
  std::size_t n = 0;
  const double m = min_margin(r, "fidelity_recovery", &n);
  double wsum = 0.0;
  for (double w : beta0_rule(64).weights) wsum += w;
  o.detail << n << " states, min CMI + log F = " << m << ", weight sum - 1 = " << wsum - 1.0;
  o.require(n >= 100, "trial count");
  o.require(m >= -1e-3, "-log F <= CMI + 1e-3");
  o.require(std::abs(wsum - 1.0) <= 1e-10, "weights sum to 1");
  o.require(r.pass(), "report pass");
}

void dimension_bound(Outcome& o) {
  TrialConfig cfg;
  cfg.dims = {2, 2, 2};
  cfg.trials = 100;
  cfg.seed = 909;
  const VerificationReport r = verify_dimension_bound(cfg);
  std::size_t n = 0;
  const double a = min_margin(r, "pinsker", &n);
  const double b = min_margin(r, "alicki_fannes");
  o.detail << n << " trials, min margins " << a << " and " << b;
  o.require(n >= 100, "trial count");
  o.require(a >= -1e-8 && b >= -1e-8, "margins >= -1e-8");
  o.require(r.pass(), "report pass");
}

void antisymmetric(Outcome& o) {
  const ClosedFormReport r = antisymmetric_report(3);
  const double purity = slater_state(3).purity();
  o.detail << "sum " << r.value("cmi_sum") << " <= " << 2 * std::log2(3.0) << ", min " << r.value("cmi_min")
           << " <= " << std::log2(3.0) << ", purity " << purity;
  o.require(r.value("cmi_sum") <= 2 * std::log2(3.0) + 1e-8, "sum bound");
  o.require(r.value("cmi_min") <= std::log2(3.0) + 1e-8, "min bound");
  o.require(std::abs(purity - 1.0) <= 1e-10, "purity");
}

void oracle(Outcome& o) {
  TrialConfig cfg;
  cfg.dims = {3, 4};
  cfg.trials = 50;
  cfg.seed = 1111;
  const VerificationReport r = verify_lambda_oracle(cfg);
  std::size_t n = 0;
  const double m = min_margin(r, "exact_vs_solver", &n);
  std::size_t finite = 0;
  for (const auto& t : r.trials())
    for (const auto& q : t.quantities)
      if (q.name == "lambda_exact" && std::isfinite(q.value)) ++finite;
  o.detail << n << " instances (" << finite << " finite), max disagreement " << -m;
  o.require(n >= 50, "instance count");
  o.require(-m <= 1e-7, "agreement within 1e-7");
  o.require(r.pass(), "report pass");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "classical Petz equality", classical_petz},
      {2, "recoverability bound with Lambda_max", main_theorem},
      {3, "relative entropy to Markov chains above CMI", winter},
      {4, "triangle-like inequality", triangle},
      {5, "exchange counterexample", exchange},
      {6, "noisy-copy closed forms and convergence", noisy_copy},
      {7, "modular-sum chain and enumeration", modular_sum},
      {8, "universal recovery map fidelity bound", universal_recovery},
      {9, "dimension-dependent lower bound", dimension_bound},
      {10, "determinant state", antisymmetric},
      {11, "classical Lambda_max against solver", oracle},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool ok = true;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    ok = ok && o.pass;
    std::printf("criterion %2d %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
