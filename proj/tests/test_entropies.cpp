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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmarkov/entropies.hpp"
#include "qmarkov/states.hpp"

namespace qmarkov {
namespace {

const ComplexMatrix kHalf = oracle::diag({0.5, 0.5});
const ComplexMatrix kSkew = oracle::diag({0.75, 0.25});

ComplexMatrix ghz() {
  ComplexVector v = ComplexVector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

ComplexMatrix rand_state(std::size_t d, std::uint64_t seed) {
  return random_density(Dims{d}, seed).matrix();
}

TEST(VonNeumann, Examples) {
  EXPECT_NEAR(von_neumann(random_density(Dims{3}, 1, 4).matrix()), 0.0, 1e-10);
  EXPECT_NEAR(von_neumann(identity(5) / 5.0), std::log2(5.0), 1e-13);
  EXPECT_NEAR(von_neumann(kSkew), 0.811278, 1e-6);
  EXPECT_NEAR(von_neumann(kSkew), oracle::binary_entropy(0.25), 1e-14);
}

TEST(BinaryEntropy, Examples) {
  EXPECT_EQ(binary_entropy(0.0), 0.0);
  EXPECT_EQ(binary_entropy(1.0), 0.0);
  EXPECT_NEAR(binary_entropy(0.5), 1.0, 1e-15);
  EXPECT_NEAR(binary_entropy(0.25), 0.811278, 1e-6);
}

TEST(Cmi, Examples) {
  const ComplexMatrix prod = tensor_product(tensor_product(rand_state(2, 1), rand_state(3, 2)), rand_state(2, 3));
  EXPECT_NEAR(cmi(DensityOperator(prod, Dims{2, 3, 2})), 0.0, 1e-10);
  EXPECT_NEAR(cmi(DensityOperator(ghz(), Dims{2, 2, 2})), 1.0, 1e-10);
  EXPECT_NEAR(cmi(assemble_markov(random_markov_spec(2, 3, 2, 8))), 0.0, 1e-8);
}

TEST(Cmi, ClassicalMatchesOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ClassicalJoint p = random_classical(Dims{2, 3, 4}, s);
    const double want = oracle::cmi_xzy(p.pmf(), 2, 3, 4);
    EXPECT_NEAR(classical::conditional_mutual_information(p, {"A"}, {"C"}, {"B"}), want, 1e-12);
    EXPECT_NEAR(cmi(from_classical(p)), want, 1e-10);
  }
}

TEST(Cmi, NonNegativeOnRandomStates) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    EXPECT_GE(cmi(random_density(Dims{2, 2, 3}, s)), -1e-8);
  }
}

TEST(RelativeEntropy, Examples) {
  const ComplexMatrix rho = rand_state(3, 5);
  EXPECT_NEAR(relative_entropy(rho, rho).value, 0.0, 1e-12);
  const DivergenceValue d = relative_entropy(kHalf, kSkew);
  EXPECT_TRUE(d.finite);
  EXPECT_NEAR(d.value, 0.5 * std::log2(2.0 / 3.0) + 0.5 * std::log2(2.0), 1e-14);
  EXPECT_NEAR(d.value, 0.2075, 1e-4);
  const DivergenceValue inf = relative_entropy(rho, random_density(Dims{3}, 2, 6).matrix());
  EXPECT_FALSE(inf.finite);
  EXPECT_TRUE(std::isinf(inf.value));
}

TEST(Fidelity, Examples) {
  const ComplexMatrix rho = rand_state(4, 7);
  EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
  EXPECT_NEAR(fidelity(oracle::diag({1, 0}), oracle::diag({0, 1})), 0.0, 1e-15);
  const double want = std::pow(std::sqrt(3.0 / 8) + std::sqrt(1.0 / 8), 2);
  EXPECT_NEAR(fidelity(kHalf, kSkew), want, 1e-13);
  EXPECT_NEAR(want, 0.9330, 1e-4);
}

TEST(TraceDistance, Examples) {
  const ComplexMatrix rho = rand_state(3, 8);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-14);
  EXPECT_NEAR(trace_distance(oracle::diag({1, 0}), oracle::diag({0, 1})), 1.0, 1e-14);
  EXPECT_NEAR(trace_distance(oracle::diag({1, 0}), kHalf), 0.5, 1e-14);
}

TEST(TraceDistance, TriangleAndSymmetry) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix a = rand_state(3, 3 * s), b = rand_state(3, 3 * s + 1), c = rand_state(3, 3 * s + 2);
    EXPECT_NEAR(trace_distance(a, b), trace_distance(b, a), 1e-14);
    EXPECT_LE(trace_distance(a, c), trace_distance(a, b) + trace_distance(b, c) + 1e-12);
  }
}

TEST(DMin, Examples) {
  const ComplexMatrix rho = rand_state(3, 9);
  EXPECT_NEAR(d_min(rho, rho).value, 0.0, 1e-10);
  EXPECT_FALSE(d_min(oracle::diag({1, 0}), oracle::diag({0, 1})).finite);
  EXPECT_NEAR(d_min(kHalf, kSkew).value, -std::log2(std::pow(std::sqrt(3.0 / 8) + std::sqrt(1.0 / 8), 2)),
              1e-13);
  EXPECT_NEAR(d_min(kHalf, kSkew).value, 0.1000, 1e-4);
}

TEST(DMax, Examples) {
  const ComplexMatrix rho = rand_state(3, 10);
  EXPECT_NEAR(d_max(rho, rho).value, 0.0, 1e-10);
  // Ratio maximization: max(0.5 / 0.75, 0.5 / 0.25) = 2.
  EXPECT_NEAR(d_max(kHalf, kSkew).value, 1.0, 1e-14);
  const double p = 7.0 / 8;
  const ComplexMatrix pp = oracle::diag({1 - p, p});
  const ComplexMatrix ss = oracle::diag({1 - p / 2, p / 2});
  EXPECT_NEAR(d_max(pp, ss).value, 1.0, 1e-12);
  EXPECT_FALSE(d_max(kHalf, oracle::diag({1, 0})).finite);
}

TEST(DMax, ClassicalMatchesOracle) {
  for (unsigned s = 0; s < 20; ++s) {
    const auto p = oracle::random_pmf(5, s), q = oracle::random_pmf(5, s + 50);
    EXPECT_NEAR(classical::d_max(p, q).value, oracle::dmax(p, q), 1e-13);
    EXPECT_NEAR(d_max(oracle::diag(p), oracle::diag(q)).value, oracle::dmax(p, q), 1e-12);
    EXPECT_NEAR(classical::relative_entropy(p, q).value, oracle::kl(p, q), 1e-13);
    EXPECT_NEAR(classical::entropy(p), oracle::entropy(p), 1e-13);
    for (double a : {0.5, 2.0, 3.5}) {
      EXPECT_NEAR(classical::d_alpha(p, q, a).value, oracle::renyi(p, q, a), 1e-12);
      EXPECT_NEAR(d_alpha(oracle::diag(p), oracle::diag(q), a).value, oracle::renyi(p, q, a), 1e-10);
    }
  }
}

TEST(DAlpha, HalfIsDMin) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix r = rand_state(3, 100 + s), g = rand_state(3, 200 + s);
    EXPECT_NEAR(d_alpha(r, g, 0.5).value, d_min(r, g).value, 1e-9);
  }
}

TEST(DAlpha, OneDelegatesToRelativeEntropy) {
  const ComplexMatrix r = rand_state(3, 11), g = rand_state(3, 12);
  EXPECT_EQ(d_alpha(r, g, 1.0).value, relative_entropy(r, g).value);
  EXPECT_EQ(d_alpha(r, g, 1.0 + 1e-7).value, relative_entropy(r, g).value);
}

TEST(DAlpha, LargeAlphaApproachesDMax) {
  const auto p = oracle::random_pmf(4, 3), q = oracle::random_pmf(4, 4);
  EXPECT_NEAR(d_alpha(oracle::diag(p), oracle::diag(q), 1e4).value, oracle::dmax(p, q), 1e-2);
}

TEST(DAlpha, SupportViolationAboveOne) {
  EXPECT_FALSE(d_alpha(kHalf, oracle::diag({1, 0}), 2.0).finite);
}

TEST(Divergences, LadderOnRandomPairs) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const std::size_t d = 2 + s % 3;
    const ComplexMatrix r = rand_state(d, 1000 + s), g = rand_state(d, 2000 + s);
    const double lo = d_min(r, g).value, mid = relative_entropy(r, g).value, hi = d_max(r, g).value;
    EXPECT_LE(lo, mid + 1e-8) << s;
    EXPECT_LE(mid, hi + 1e-8) << s;
  }
}

TEST(Divergences, MonotoneInAlpha) {
  const std::vector<double> grid{0.5, 0.6, 0.8, 1, 1.5, 2, 4, 16};
  for (std::uint64_t s = 0; s < 30; ++s) {
    const std::size_t d = 2 + s % 3;
    const ComplexMatrix r = rand_state(d, 3000 + s), g = rand_state(d, 4000 + s);
    double prev = -1e300;
    for (double a : grid) {
      const double v = d_alpha(r, g, a).value;
      EXPECT_GE(v, prev - 1e-8) << "seed " << s << " alpha " << a;
      prev = v;
    }
  }
}

TEST(Divergences, DMaxDataProcessingUnderPartialTrace) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const DensityOperator r = random_density(Dims{2, 3}, 5000 + s), g = random_density(Dims{2, 3}, 6000 + s);
    const double after = d_max(marginal(r, {"A"}).matrix(), marginal(g, {"A"}).matrix()).value;
    EXPECT_LE(after, d_max(r.matrix(), g.matrix()).value + 1e-8);
  }
}

TEST(Divergences, TriangleLikeInequality) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const std::size_t d = 2 + s % 3;
    const ComplexMatrix r = rand_state(d, 7000 + s), sg = rand_state(d, 8000 + s), om = rand_state(d, 9000 + s);
    const double dm = d_max(om, sg).value;
    for (double a : {0.5, 0.75, 1.0, 2.0, 4.0}) {
      EXPECT_LE(d_alpha(r, sg, a).value, d_alpha(r, om, a).value + dm + 1e-8) << s << " " << a;
    }
  }
}

TEST(Divergences, Pinsker) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const ComplexMatrix r = rand_state(3, 10000 + s), g = rand_state(3, 11000 + s);
    const double delta = trace_distance(r, g);
    EXPECT_GE(relative_entropy(r, g).value, 2.0 / std::log(2.0) * delta * delta - 1e-10);
  }
}

TEST(Fidelity, DefiniteAgainstTraceDistance) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix r = rand_state(3, 12000 + s);
    EXPECT_NEAR(fidelity(r, r), 1.0, 1e-8);
    EXPECT_NEAR(trace_distance(r, r), 0.0, 1e-8);
    const ComplexMatrix g = rand_state(3, 13000 + s);
    EXPECT_LT(fidelity(r, g), 1.0 - 1e-8);
    EXPECT_GT(trace_distance(r, g), 1e-8);
    // Fuchs-van de Graaf.
    EXPECT_LE(1 - std::sqrt(fidelity(r, g)), trace_distance(r, g) + 1e-12);
  }
}

TEST(MeasuredBounds, Examples) {
  const auto p = oracle::random_pmf(4, 21), q = oracle::random_pmf(4, 22);
  const MeasuredBounds c = d_measured_bounds(oracle::diag(p), oracle::diag(q));
  EXPECT_LE(c.upper.value - c.lower.value, 1e-9);
  EXPECT_NEAR(c.upper.value, oracle::kl(p, q), 1e-12);

  const ComplexMatrix r = rand_state(3, 23);
  const MeasuredBounds same = d_measured_bounds(r, r);
  EXPECT_NEAR(same.lower.value, 0.0, 1e-9);
  EXPECT_NEAR(same.upper.value, 0.0, 1e-9);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const ComplexMatrix a = rand_state(3, 14000 + s), b = rand_state(3, 15000 + s);
    const MeasuredBounds m = d_measured_bounds(a, b);
    EXPECT_TRUE(m.lower.finite && m.upper.finite);
    EXPECT_LE(m.lower.value, m.upper.value + 1e-10);
    EXPECT_GE(m.lower.value, d_min(a, b).value - 1e-12);
  }
}

TEST(PetzRenyi2, Examples) {
  const ComplexMatrix r = rand_state(3, 24);
  EXPECT_NEAR(petz_renyi_2(r, r).value, 0.0, 1e-10);
  const auto p = oracle::random_pmf(4, 25), q = oracle::random_pmf(4, 26);
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) s += p[i] * p[i] / q[i];
  EXPECT_NEAR(petz_renyi_2(oracle::diag(p), oracle::diag(q)).value, std::log2(s), 1e-12);
  for (std::uint64_t k = 0; k < 20; ++k) {
    const ComplexMatrix a = rand_state(3, 16000 + k), b = rand_state(3, 17000 + k);
    EXPECT_GE(petz_renyi_2(a, b).value, relative_entropy(a, b).value - 1e-10);
  }
  EXPECT_FALSE(petz_renyi_2(kHalf, oracle::diag({1, 0})).finite);
}

TEST(LogEuclidean, Examples) {
  const ComplexMatrix r = rand_state(3, 27);
  EXPECT_NEAR(log_euclidean_alpha(r, r, 2.0).value, 0.0, 1e-10);
  const auto p = oracle::random_pmf(4, 28), q = oracle::random_pmf(4, 29);
  for (double a : {1.5, 2.0, 4.0}) {
    EXPECT_NEAR(log_euclidean_alpha(oracle::diag(p), oracle::diag(q), a).value, oracle::renyi(p, q, a),
                1e-10);
  }
}

TEST(SupportLeak, DetectsContainment) {
  EXPECT_TRUE(support_contained(oracle::diag({1, 0}), kHalf));
  EXPECT_FALSE(support_contained(kHalf, oracle::diag({1, 0})));
  EXPECT_NEAR(support_leak(kHalf, oracle::diag({1, 0})), 0.5, 1e-14);
}

}  // namespace
}  // namespace qmarkov
