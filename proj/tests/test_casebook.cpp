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
#include <stdexcept>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmarkov/casebook.hpp"
#include "qmarkov/entropies.hpp"

namespace qmarkov {
namespace {

std::vector<double> pushed_yz(const ClassicalChannel& rec, const ClassicalJoint& joint) {
  return classical_channel_apply(rec, joint.marginal({"Y"}), "Y").pmf();
}

TEST(NoisyCopy, JointMatchesProductForm) {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.5, 0}, {0.25, 0.25}, {0.1, 0.6}, {0, 0}, {1, 0}}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      const ClassicalJoint j = noisy_copy_joint({n, p, q});
      EXPECT_EQ(j.labels(), (Labels{"X", "Y", "Z"}));
      EXPECT_LT(oracle::max_abs(j.pmf(), oracle::noisy_copy_pmf(n, p, q)), 1e-15) << p << " " << q << " " << n;
    }
  }
}

TEST(NoisyCopy, ParamExamples) {
  // p = 1: Y = Z = X.
  const ClassicalJoint ones = noisy_copy_joint({3, 1.0, 0.0});
  for (std::size_t x = 0; x < 8; ++x) EXPECT_NEAR(ones.pmf()[(x * 8 + x) * 8 + x], 1.0 / 8, 1e-15);
  // p = q = 0: no correlation, CMI 0.
  EXPECT_NEAR(classical::conditional_mutual_information(noisy_copy_joint({3, 0, 0}), {"X"}, {"Z"}, {"Y"}), 0.0,
              1e-12);
  const ClosedFormReport en = noisy_copy_enumeration({4, 0.5, 0.0});
  EXPECT_NEAR(en.value("p_x_equals_y"), 0.53125, 1e-15);
  EXPECT_THROW(validate(NoisyCopyParams{2, 0.7, 0.5}), std::invalid_argument);
  EXPECT_THROW(noisy_copy_joint({kMaxEnumerationBits + 1, 0.5, 0}), std::invalid_argument);
}

TEST(NoisyCopy, RecoveryExamples) {
  const auto w = noisy_copy_branch_weights({4, 1.0, 0.0});
  EXPECT_EQ(w[0], 1.0);
  const ClassicalChannel copy = noisy_copy_recovery({2, 1.0, 0.0});
  const Eigen::MatrixXd m = Eigen::MatrixXd(copy.matrix());
  for (Eigen::Index y = 0; y < 4; ++y) EXPECT_EQ(m(y * 4 + y, y), 1.0);
}

TEST(NoisyCopy, MarginalMatch) {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.5, 0}, {0.25, 0.25}, {0.3, 0.1}}) {
    for (std::size_t n : {2u, 4u}) {
      const ClassicalJoint j = noisy_copy_joint({n, p, q});
      EXPECT_LT(oracle::max_abs(pushed_yz(noisy_copy_recovery({n, p, q}), j), j.marginal({"Y", "Z"}).pmf()), 1e-12);
    }
  }
}

TEST(NoisyCopy, ClosedFormExamples) {
  const ClosedFormReport a = noisy_copy_closed_forms({8, 0.5, 0.0});
  EXPECT_NEAR(a.value("dmax_p_vs_recovered"), 1.0, 1e-15);
  EXPECT_EQ(a.entry("dmax_p_vs_recovered").path, ValuePath::closed_form);
  const ClosedFormReport b = noisy_copy_closed_forms({8, 0.25, 0.25});
  EXPECT_NEAR(b.value("dmax_recovered_vs_p"), std::log2(15.0 / 8), 1e-15);
  EXPECT_NEAR(b.value("dmax_recovered_vs_p"), 0.9069, 1e-4);
  const ClosedFormReport c = noisy_copy_closed_forms({40, 0.5, 0.0});
  EXPECT_NEAR(c.value("cmi_lower"), 10 - std::log2(6.0), 1e-13);
  EXPECT_NEAR(c.value("cmi_lower"), 7.415, 1e-3);
  EXPECT_EQ(c.value("p_x_equals_y"), 0.5);
}

TEST(NoisyCopy, ClosedFormsAgainstFormulas) {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.5, 0}, {0.25, 0.25}, {0.3, 0.1}}) {
    const double n = 12;
    const ClosedFormReport r = noisy_copy_closed_forms({12, p, q});
    EXPECT_NEAR(r.value("cmi_lower"), n * (1 - p - q) * (p + q) - std::log2(6.0), 1e-13);
    EXPECT_NEAR(r.value("p_x_equals_y"), p + p * q + q * q, 1e-15);
    EXPECT_NEAR(r.value("copy_weight"), p * p + q + p * q, 1e-15);
  }
}

TEST(NoisyCopy, EnumerationAgainstOracle) {
  for (const auto& [p, q] : std::vector<std::pair<double, double>>{{0.5, 0}, {0.25, 0.25}}) {
    for (std::size_t n : {2u, 3u}) {
      const std::size_t big = std::size_t{1} << n;
      const auto pmf = oracle::noisy_copy_pmf(n, p, q);
      const auto rec = oracle::recover(pmf, oracle::noisy_copy_recovery(n, p, q), big);
      const ClosedFormReport en = noisy_copy_enumeration({n, p, q});
      EXPECT_NEAR(en.value("cmi"), oracle::cmi_xzy(pmf, big, big, big), 1e-12);
      EXPECT_NEAR(en.value("dmax_p_vs_recovered"), oracle::dmax(pmf, rec), 1e-12);
      EXPECT_NEAR(en.value("dmax_recovered_vs_p"), oracle::dmax(rec, pmf), 1e-12);
      EXPECT_NEAR(en.value("d_p_vs_recovered"), oracle::kl(pmf, rec), 1e-12);
      double eq = 0;
      for (std::size_t x = 0; x < big; ++x)
        for (std::size_t z = 0; z < big; ++z) eq += pmf[(x * big + x) * big + z];
      EXPECT_NEAR(en.value("p_x_equals_y"), eq, 1e-14);
      EXPECT_EQ(en.entry("cmi").path, ValuePath::enumeration);
    }
  }
}

TEST(NoisyCopy, ConvergesInBand) {
  for (std::size_t n : {4u, 6u, 8u}) {
    const double tol = 3.0 * std::exp2(-static_cast<double>(n));
    const ClosedFormReport a = noisy_copy_enumeration({n, 0.5, 0.0});
    EXPECT_LE(std::abs(a.value("dmax_p_vs_recovered") - 1.0), tol) << n;
    const ClosedFormReport b = noisy_copy_enumeration({n, 0.25, 0.25});
    EXPECT_LE(std::abs(b.value("dmax_recovered_vs_p") - std::log2(15.0 / 8)), tol) << n;
  }
}

TEST(NoisyCopy, SeparationGrowsLinearly) {
  double prev = -1e300;
  for (std::size_t n : {4u, 6u, 8u}) {
    const ClosedFormReport en = noisy_copy_enumeration({n, 0.5, 0.0});
    const double sep = en.value("cmi") - en.value("dmax_p_vs_recovered");
    EXPECT_GT(sep, prev);
    prev = sep;
    EXPECT_GE(en.value("cmi"), noisy_copy_closed_forms({n, 0.5, 0.0}).value("cmi_lower"));
  }
  EXPECT_EQ(noisy_copy_threshold(0.5, 0.0, 1.0, 100), 15u);
}

TEST(ModularSum, JointAndRecoveryMatchOracle) {
  for (double p : {0.0, 0.1, 0.5, 1.0}) {
    for (std::size_t n : {1u, 2u, 3u}) {
      const std::size_t big = std::size_t{1} << n;
      const ClassicalJoint j = modular_sum_joint({n, p});
      EXPECT_LT(oracle::max_abs(j.pmf(), oracle::modular_sum_pmf(n, p)), 1e-15);
      const Eigen::MatrixXd r = Eigen::MatrixXd(modular_sum_recovery({n, p}).matrix());
      const auto table = oracle::modular_sum_recovery(n, p);
      for (std::size_t y = 0; y < big; ++y)
        for (std::size_t k = 0; k < big * big; ++k)
          EXPECT_NEAR(r(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(y)), table[y][k], 1e-15);
    }
  }
}

TEST(ModularSum, Examples) {
  // p = 0: X is a function of (Y, Z).
  const ClassicalJoint q = modular_sum_joint({3, 0.0});
  const double h_x_yz = classical::entropy(q.pmf()) - classical::entropy(q.marginal({"Y", "Z"}).pmf());
  EXPECT_NEAR(h_x_yz, 0.0, 1e-12);
  // n = 2, p = 1/2: CMI = H(X|Y) - H(X|YZ).
  const ClassicalJoint j = modular_sum_joint({2, 0.5});
  const double hxy = classical::entropy(j.marginal({"X", "Y"}).pmf()) - classical::entropy(j.marginal({"Y"}).pmf());
  const double hxyz = classical::entropy(j.pmf()) - classical::entropy(j.marginal({"Y", "Z"}).pmf());
  EXPECT_NEAR(classical::conditional_mutual_information(j, {"X"}, {"Z"}, {"Y"}), hxy - hxyz, 1e-12);
  EXPECT_NEAR(oracle::cmi_xzy(j.pmf(), 4, 4, 4), hxy - hxyz, 1e-12);
}

TEST(ModularSum, InvarianceAndMarginalMatch) {
  for (double p : {0.1, 0.5}) {
    const ModularSumParams params{4, p};
    const ClassicalJoint j = modular_sum_joint(params);
    const ClassicalChannel rec = modular_sum_recovery(params);
    EXPECT_LT(oracle::max_abs(pushed_yz(rec, j), j.marginal({"Y", "Z"}).pmf()), 1e-12);
    const ClassicalJoint u = modular_sum_uniform_pair(4);
    const ClassicalJoint moved = classical_channel_apply(restrict_output(rec, {"Z"}), u, "Y");
    EXPECT_LT(oracle::max_abs(moved.pmf(), u.pmf()), 1e-12);
  }
  // p = 0: Y' is uniform regardless of Y.
  const Eigen::MatrixXd r = Eigen::MatrixXd(restrict_output(modular_sum_recovery({2, 0.0}), {"Z"}).matrix());
  EXPECT_LT((r.array() - 0.25).abs().maxCoeff(), 1e-15);
}

TEST(ModularSum, BoundsAgainstFormulas) {
  const double n = 4, p = 0.1;
  for (double alpha : {2.0, 3.0, 8.0}) {
    const ClosedFormReport b = modular_sum_bounds(n, p, alpha);
    EXPECT_NEAR(b.value("cmi_lower"), (1 - p) * n - oracle::binary_entropy(p), 1e-13);
    EXPECT_NEAR(b.value("d_upper"), std::log2(1 / p), 1e-15);
    const double big = std::exp2(n);
    const double want = std::log2(std::pow(1 - p, alpha) * (big - 1) / big +
                                  std::pow(1 - p + p * big, alpha) / big) /
                        (alpha - 1);
    EXPECT_NEAR(b.value("lambda_alpha_upper"), want, 1e-12);
    const ClassicalJoint pxy = modular_sum_joint({4, p}).marginal({"X", "Y"});
    EXPECT_NEAR(b.value("lambda_alpha_upper"), oracle::renyi(pxy.pmf(), modular_sum_uniform_pair(4).pmf(), alpha),
                1e-12);
  }
}

TEST(ModularSum, LargeAlphaChain) {
  const ClosedFormReport r = modular_sum_closed_forms(64);
  EXPECT_TRUE(r.flag("chain_holds"));
  EXPECT_GT(r.value("chain_gap"), 0.0);
  EXPECT_TRUE(std::isfinite(r.value("lambda_alpha_upper")));
  const double p = 1.0 / 4096;
  EXPECT_NEAR(r.value("cmi_lower"), (1 - p) * 64 - oracle::binary_entropy(p), 1e-12);
  EXPECT_NEAR(r.value("chain_middle"), 64 - 2.0 / 64, 1e-13);
  const ClosedFormReport small = modular_sum_closed_forms(2);
  EXPECT_FALSE(small.flag("chain_holds"));
  EXPECT_THROW(modular_sum_closed_forms(1.5), std::invalid_argument);
}

TEST(ModularSum, LambdaAlphaMonotone) {
  double prev = -1;
  for (double alpha : {2.0, 3.0, 5.0, 9.0}) {
    const double v = modular_sum_bounds(6, 0.2, alpha).value("lambda_alpha_upper");
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
}

TEST(ModularSum, StepThresholds) {
  EXPECT_FALSE(modular_sum_closed_forms(6).flag("chain_holds"));
  EXPECT_TRUE(modular_sum_closed_forms(7).flag("chain_holds"));
  EXPECT_TRUE(modular_sum_closed_forms(7).flag("upper_sum_below_middle"));
  EXPECT_FALSE(modular_sum_closed_forms(7).flag("middle_below_lower"));
  EXPECT_TRUE(modular_sum_closed_forms(8).flag("middle_below_lower"));
  EXPECT_EQ(modular_sum_threshold(128), 7u);
}

TEST(ModularSum, EnumerationAgainstOracle) {
  const std::size_t n = 3;
  const double p = 0.2;
  const auto pmf = oracle::modular_sum_pmf(n, p);
  const auto rec = oracle::recover(pmf, oracle::modular_sum_recovery(n, p), 8);
  const ClosedFormReport en = modular_sum_enumeration({n, p}, 3.0);
  EXPECT_NEAR(en.value("cmi"), oracle::cmi_xzy(pmf, 8, 8, 8), 1e-12);
  EXPECT_NEAR(en.value("d_p_vs_recovered"), oracle::kl(pmf, rec), 1e-12);
  EXPECT_LE(en.value("invariance_defect"), 1e-12);
  EXPECT_LE(en.value("marginal_match_defect"), 1e-12);
}

TEST(RenyiTriangle, ClosedFormsMatchEnumeration) {
  for (double alpha : {0.5, 0.75, 1.0, 2.0, 4.0}) {
    const double p = renyi_triangle_violating_p(alpha);
    EXPECT_NEAR(p, 1 - std::exp2(-alpha), 1e-15);
    const DistributionTriple t = renyi_triangle_distributions(p);
    const TriangleValues v = renyi_triangle_values(p, alpha);
    EXPECT_NEAR(v.d_pq, oracle::kl(t.p.pmf(), t.q.pmf()), 1e-12);
    EXPECT_NEAR(v.d_ps, oracle::kl(t.p.pmf(), t.s.pmf()), 1e-12);
    const double dsq = alpha == 1.0 ? oracle::kl(t.s.pmf(), t.q.pmf()) : oracle::renyi(t.s.pmf(), t.q.pmf(), alpha);
    EXPECT_NEAR(v.d_sq, dsq, 1e-12);
    EXPECT_GT(v.gap, 0.0) << alpha;
    if (alpha != 1.0) {
      const double a = alpha;
      const double formula = std::log2(std::pow(3, a) / (std::pow(4, a) * std::pow(1 - p, a - 1)) +
                                       1 / (std::pow(4, a) * std::pow(p, a - 1))) /
                             (a - 1);
      EXPECT_NEAR(v.d_sq, formula, 1e-12);
    }
  }
  const TriangleValues quarter = renyi_triangle_values(0.25, 2.0);
  EXPECT_NEAR(quarter.d_ps, 0.0, 1e-15);
}

TEST(Exchange, Examples) {
  const TriangleValues v = exchange_values(7.0 / 8, 1.0 / 8);
  EXPECT_NEAR(v.d_ps, 1.0, 1e-12);
  EXPECT_GT(v.gap, 0.0);
  EXPECT_NEAR(exchange_values(0.0, 0.3).d_ps, 0.0, 1e-15);
  for (const auto& [p, e] : std::vector<std::pair<double, double>>{{0.3, 0.6}, {0.9, 0.05}, {7.0 / 8, 1.0 / 8}}) {
    const DistributionTriple t = exchange_distributions(p, e);
    const TriangleValues w = exchange_values(p, e);
    EXPECT_NEAR(w.d_pq, oracle::kl(t.p.pmf(), t.q.pmf()), 1e-12);
    EXPECT_NEAR(w.d_ps, oracle::dmax(t.p.pmf(), t.s.pmf()), 1e-12);
    EXPECT_NEAR(w.d_sq, oracle::kl(t.s.pmf(), t.q.pmf()), 1e-12);
    EXPECT_NEAR(w.d_ps, std::max(std::log2(2 * (1 - p) / (2 - p)), 1.0), 1e-12);
  }
}

TEST(Antisymmetric, Examples) {
  const ClosedFormReport two = antisymmetric_report(2);
  EXPECT_NEAR(two.value("cmi_sum"), 2.0, 1e-10);
  EXPECT_NEAR(two.value("cmi_sum_bound"), 2.0, 1e-15);
  const ClosedFormReport three = antisymmetric_report(3);
  EXPECT_LE(three.value("cmi_sum"), 2 * std::log2(3.0) + 1e-8);
  EXPECT_LE(three.value("cmi_min"), std::log2(3.0) + 1e-8);
  EXPECT_NEAR(three.value("cmi_min_bound"), std::log2(3.0), 1e-15);
  EXPECT_TRUE(three.has("cmi_step_2"));
  EXPECT_TRUE(three.has("cmi_step_3"));
  EXPECT_TRUE(three.flag("pure"));
  EXPECT_THROW(antisymmetric_report(7), std::invalid_argument);
}

TEST(Antisymmetric, StepsMatchDenseState) {
  const DensityOperator rho = slater_state(3);
  const ClosedFormReport r = antisymmetric_report(3);
  EXPECT_NEAR(r.value("cmi_step_2"), conditional_mutual_information(rho, {"A"}, {"B"}, {}), 1e-10);
  EXPECT_NEAR(r.value("cmi_step_3"), conditional_mutual_information(rho, {"A"}, {"C"}, {"B"}), 1e-10);
}

TEST(ClosedFormReport, Lookup) {
  ClosedFormReport r;
  r.add("a", 1.5, "anchor", ValuePath::closed_form);
  EXPECT_TRUE(r.has("a"));
  EXPECT_FALSE(r.has("b"));
  EXPECT_THROW(r.value("b"), std::out_of_range);
  EXPECT_STREQ(to_string(ValuePath::enumeration), "enumeration");
}

}  // namespace
}  // namespace qmarkov
