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

#include <cmath>
#include <cstdlib>

#include <gtest/gtest.h>

#include "qmarkov/entropies.hpp"
#include "qmarkov/harness.hpp"
#include "qmarkov/invariance.hpp"

namespace qmarkov {
namespace {

TrialConfig small(std::size_t trials, std::uint64_t seed = 3) {
  TrialConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  return cfg;
}

class SuiteTest : public ::testing::TestWithParam<std::string> {};

TEST_P(SuiteTest, PassesWithVisibleMargins) {
  const VerificationReport r = run_suite(GetParam(), small(6));
  EXPECT_TRUE(r.pass()) << r.to_json().dump(2);
  const auto summaries = r.summaries();
  ASSERT_FALSE(summaries.empty());
  for (const auto& s : summaries) EXPECT_GT(s.count, 0u) << s.inequality;
}

TEST_P(SuiteTest, DeterministicAcrossThreadCounts) {
  TrialConfig one = small(4, 9);
  one.threads = 1;
  TrialConfig many = one;
  many.threads = 3;
  EXPECT_EQ(run_suite(GetParam(), one).to_json().dump(), run_suite(GetParam(), many).to_json().dump());
}

INSTANTIATE_TEST_SUITE_P(All, SuiteTest, ::testing::ValuesIn(suite_names()));

TEST(Harness, ConfigValidation) {
  TrialConfig cfg;
  cfg.trials = 0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg.trials = 1;
  cfg.dims = {2, 0, 2};
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  EXPECT_THROW(run_suite("nope", small(1)), std::invalid_argument);
  EXPECT_THROW(run_casebook("nope"), std::invalid_argument);
}

TEST(Harness, WorkerCountFromEnvironment) {
  TrialConfig cfg;
  cfg.threads = 2;
  EXPECT_EQ(worker_count(cfg), 2u);
  cfg.threads = 0;
  ::setenv("QMARKOV_THREADS", "5", 1);
  EXPECT_EQ(worker_count(cfg), 5u);
  ::unsetenv("QMARKOV_THREADS");
  EXPECT_GE(worker_count(cfg), 1u);
}

TEST(Harness, SeedsChangeInstances) {
  const auto a = verify_lemma_winter(small(2, 1)).to_json().dump();
  const auto b = verify_lemma_winter(small(2, 2)).to_json().dump();
  EXPECT_NE(a, b);
}

TEST(Harness, TheoremRecordsFamilies) {
  const VerificationReport r = verify_theorem_main(small(3));
  ASSERT_EQ(r.trials().size(), 3u);
  EXPECT_EQ(r.trials()[0].family, "stinespring");
  EXPECT_EQ(r.trials()[1].family, "petz");
  EXPECT_EQ(r.trials()[2].family, "mixture");
}

TEST(Harness, VaryDimsStaysWithinBounds) {
  TrialConfig cfg = small(10);
  cfg.dims = {3, 3, 3};
  cfg.vary_dims = true;
  EXPECT_TRUE(verify_classical_petz(cfg).pass());
}

TEST(Harness, TriangleIncludesCounterexamples) {
  const VerificationReport r = verify_triangle(small(3));
  bool renyi = false, exchange = false;
  for (const auto& t : r.trials()) {
    renyi |= t.family == "renyi_triangle";
    exchange |= t.family == "exchange";
  }
  EXPECT_TRUE(renyi);
  EXPECT_TRUE(exchange);
}

// Read-only recovery: appending a fixed sigma_C leaves rho_AB invariant, so
// Lambda_max vanishes and the bound reduces to D >= CMI.
TEST(Harness, ReadOnlyRecovery) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const DensityOperator rho = random_density(Dims{2, 2, 2}, 500 + s);
    const DensityOperator sigma(marginal(rho, {"C"}).matrix(), Dims{2}, Labels{"C"});
    const QuantumChannel app = append_channel(Dims{2}, Labels{"B"}, sigma);
    const DensityOperator ab = marginal(rho, {"A", "B"});
    EXPECT_LE(lambda_max(ab, restrict_output(app, {"C"})).value, 1e-6);
    EXPECT_GE(relative_entropy(rho.matrix(), apply(app, ab).matrix()).value, cmi(rho) - 1e-8);
  }
}

TEST(Harness, MarkovInputsSitAtZero) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const DensityOperator mu = assemble_markov(random_markov_spec(2, 3, 2, 600 + s));
    // mu against itself in the Winter bound.
    EXPECT_NEAR(relative_entropy(mu.matrix(), mu.matrix()).value - cmi(mu), 0.0, 1e-8);
    const QuantumChannel avg = averaged_rotated_petz(marginal(mu, {"B", "C"}), 64);
    const DensityOperator rec = apply(avg, marginal(mu, {"A", "B"}));
    EXPECT_LE(-std::log2(fidelity(mu.matrix(), rec.matrix())), 1e-6);
    EXPECT_LE(trace_distance(mu.matrix(), rec.matrix()), 1e-6);
  }
}

TEST(Casebook, AllExperimentsRun) {
  for (const auto& id : casebook_experiments()) {
    const VerificationReport r = run_casebook(id);
    EXPECT_FALSE(r.trials().empty()) << id;
    if (id != "modular-sum") EXPECT_TRUE(r.pass()) << id << "\n" << r.to_json().dump(2);
  }
}

TEST(Casebook, NoisyCopyBand) {
  const VerificationReport r = run_casebook("noisy-copy");
  ASSERT_EQ(r.trials().size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_GE(r.margin("dmax_p_vs_recovered_band", i), 0.0);
}

TEST(Casebook, ModularSumChainAndInvariance) {
  const VerificationReport r = run_casebook("modular-sum");
  EXPECT_GT(r.margin("chain_gap", 0), 0.0);
  EXPECT_GE(r.margin("invariance", 1), -1e-12);
  EXPECT_GE(r.margin("marginal_match", 1), -1e-12);
}

}  // namespace
}  // namespace qmarkov
