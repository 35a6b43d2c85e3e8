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


// qmarkov: run verification suites and casebook experiments, write JSON or
// CSV reports. Exit status is 0 iff every check passes.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmarkov/harness.hpp"

namespace {

struct OutputOptions {
  std::string out;
  std::string csv;
  bool timing = false;
};

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--out", o.out, "Write the JSON report to this file (default: stdout)");
  app->add_option("--csv", o.csv, "Write the flat margin table to this file");
  app->add_flag("--timing", o.timing, "Include wall-clock runtime in the JSON report");
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) {
    std::cerr << "qmarkov: cannot write " << path << '\n';
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

int emit(const qmarkov::VerificationReport& report, const OutputOptions& o) {
  const std::string json = report.to_json(o.timing).dump(2) + "\n";
  bool ok = true;
  if (o.out.empty()) {
    std::cout << json;
  } else {
    ok = write_file(o.out, json);
  }
  if (!o.csv.empty()) ok = write_file(o.csv, report.to_csv()) && ok;
  if (!o.out.empty()) {
    std::cout << report.experiment() << ": " << (report.pass() ? "PASS" : "FAIL") << " ("
              << report.trials().size() << " trials, " << report.failed_trials() << " failed)\n";
  }
  if (!ok) return 2;
  return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recoverability bounds for tripartite states: verification suites and examples"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run a randomized verification suite");
  std::string suite;
  qmarkov::TrialConfig cfg;
  std::vector<std::size_t> dims;
  OutputOptions verify_out;
  verify->add_option("suite", suite, "Suite to run")
      ->required()
      ->check(CLI::IsMember(qmarkov::suite_names()));
  verify->add_option("--dims", dims, "Subsystem dimensions, e.g. 2,2,2")->delimiter(',');
  verify->add_option("--trials", cfg.trials, "Number of random trials")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Base seed");
  verify->add_option("--tol-sdp", cfg.tol.sdp, "Slack for solver-backed inequalities");
  verify->add_option("--tol-linalg", cfg.tol.linalg, "Slack for linear-algebra inequalities");
  verify->add_option("--tol-quadrature", cfg.tol.quadrature, "Slack for quadrature-backed inequalities");
  verify->add_option("--tol-equality", cfg.tol.equality, "Slack for identities");
  verify->add_option("--tol-oracle", cfg.tol.oracle, "Slack for exact-vs-solver agreement");
  verify->add_option("--nodes", cfg.quadrature_nodes, "Quadrature nodes for the averaged maps");
  verify->add_flag("--vary-dims", cfg.vary_dims, "Draw each trial's dimensions from [2, dims]");
  verify->add_option("--threads", cfg.threads, "Worker threads (default: QMARKOV_THREADS or all cores)");
  add_output_options(verify, verify_out);

  // casebook
  auto* casebook = app.add_subcommand("casebook", "Evaluate an explicit construction");
  std::string experiment;
  qmarkov::CasebookParams params;
  OutputOptions case_out;
  std::size_t n = 0;
  std::size_t d = 0;
  double p = 0, q = 0, alpha = 0, eps = 0, kappa = 0, band = 0;
  casebook->add_option("experiment", experiment, "Experiment id")
      ->required()
      ->check(CLI::IsMember(qmarkov::casebook_experiments()));
  auto* n_opt = casebook->add_option("--n", n, "Alphabet exponent (alphabet size 2^n)");
  casebook->add_option("--ns", params.ns, "Several alphabet exponents, e.g. 4,6,8")->delimiter(',');
  auto* p_opt = casebook->add_option("--p", p, "Mixing probability p");
  auto* q_opt = casebook->add_option("--q", q, "Second probability q");
  auto* alpha_opt = casebook->add_option("--alpha", alpha, "Renyi order");
  auto* eps_opt = casebook->add_option("--eps", eps, "Probability eps");
  auto* d_opt = casebook->add_option("--d", d, "Number of sites of the determinant state");
  auto* kappa_opt = casebook->add_option("--kappa", kappa, "Weight of D_max in the separation");
  auto* band_opt = casebook->add_option("--band", band, "Constant c of the c 2^-n band");
  add_output_options(casebook, case_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) {
      if (!dims.empty()) cfg.dims = dims;
      return emit(qmarkov::run_suite(suite, cfg), verify_out);
    }
    if (*n_opt) params.n = n;
    if (*p_opt) params.p = p;
    if (*q_opt) params.q = q;
    if (*alpha_opt) params.alpha = alpha;
    if (*eps_opt) params.eps = eps;
    if (*d_opt) params.d = d;
    if (*kappa_opt) params.kappa = kappa;
    if (*band_opt) params.band = band;
    return emit(qmarkov::run_casebook(experiment, params), case_out);
  } catch (const std::exception& e) {
    std::cerr << "qmarkov: " << e.what() << '\n';
    return 2;
  }
}
