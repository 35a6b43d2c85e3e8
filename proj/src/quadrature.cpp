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


#include "qmarkov/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qmarkov/states.hpp"

namespace qmarkov {

double beta0_density(double t) {
  return 0.5 * std::numbers::pi / (std::cosh(std::numbers::pi * t) + 1.0);
}

QuadratureRule beta0_rule(std::size_t n) {
  if (n < 2) throw std::invalid_argument("beta0_rule: need at least two nodes");
  const double half_width = std::sqrt(static_cast<double>(n - 1));
  const double step = 2.0 * half_width / static_cast<double>(n - 1);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Mirror the grid exactly so the rule is symmetric.
    const double t = -half_width + step * static_cast<double>(k);
    rule.nodes[k] = t;
    rule.weights[k] = step * beta0_density(t);
  }
  for (std::size_t k = 0; k < n / 2; ++k) {
    rule.nodes[n - 1 - k] = -rule.nodes[k];
    rule.weights[n - 1 - k] = rule.weights[k];
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  const double total = stable_sum(rule.weights);
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace qmarkov
