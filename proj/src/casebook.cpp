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


#include "qmarkov/casebook.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qmarkov/entropies.hpp"
#include "qmarkov/invariance.hpp"

namespace qmarkov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Triplet = Eigen::Triplet<double>;

// log2(num / den) with log 0 = -inf and x / 0 = +inf for x > 0.
double log_ratio(double num, double den) {
  if (!(num > 0.0)) return -kInf;
  if (!(den > 0.0)) return kInf;
  return std::log2(num / den);
}

double log2_add(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log2(std::exp2(a - hi) + std::exp2(b - hi));
}

// a log2(a / b) with 0 log 0 = 0.
double kl_term(double a, double b) {
  if (!(a > 0.0)) return 0.0;
  if (!(b > 0.0)) return kInf;
  return a * std::log2(a / b);
}

std::size_t alphabet_of(std::size_t n) {
  if (n < 1 || n > kMaxEnumerationBits) {
    throw std::invalid_argument("casebook: enumeration needs 1 <= n <= " +
                                std::to_string(kMaxEnumerationBits));
  }
  return std::size_t{1} << n;
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

const Labels kXYZ = {"X", "Y", "Z"};

}  // namespace

const char* to_string(ValuePath path) {
  return path == ValuePath::closed_form ? "closed_form" : "enumeration";
}

void ClosedFormReport::add(std::string key, double value, std::string anchor, ValuePath path) {
  entries.push_back({std::move(key), value, std::move(anchor), path});
}

bool ClosedFormReport::has(const std::string& key) const {
  return std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.key == key; });
}

const ClosedFormEntry& ClosedFormReport::entry(const std::string& key) const {
  for (const auto& e : entries) {
    if (e.key == key) return e;
  }
  throw std::out_of_range("ClosedFormReport: no entry '" + key + "'");
}

double ClosedFormReport::value(const std::string& key) const { return entry(key).value; }

bool ClosedFormReport::flag(const std::string& key) const {
  const auto it = flags.find(key);
  if (it == flags.end()) throw std::out_of_range("ClosedFormReport: no flag '" + key + "'");
  return it->second;
}

// ----------------------------------------------------------------- noisy copy

void validate(const NoisyCopyParams& params) {
  if (params.n < 1) throw std::invalid_argument("NoisyCopyParams: n must be positive");
  if (!(params.p >= 0.0) || !(params.q >= 0.0) || params.p + params.q > 1.0 + 1e-15) {
    throw std::invalid_argument("NoisyCopyParams: need p, q >= 0 and p + q <= 1");
  }
}

ClassicalJoint noisy_copy_joint(const NoisyCopyParams& params) {
  validate(params);
  const std::size_t big = alphabet_of(params.n);
  const double inv = 1.0 / static_cast<double>(big);
  const double keep = params.p + params.q;
  const double noise = std::max(0.0, 1.0 - keep);

  std::vector<double> pmf(big * big * big, 0.0);
  struct Branch {
    std::size_t symbol;
    double weight;
  };
  std::vector<Branch> z_branches;
  std::vector<Branch> y_branches;
  for (std::size_t x = 0; x < big; ++x) {
    z_branches.clear();
    if (keep > 0) z_branches.push_back({x, keep});
    if (noise > 0) {
      for (std::size_t u = 0; u < big; ++u) z_branches.push_back({u, noise * inv});
    }
    for (const auto& zb : z_branches) {
      y_branches.clear();
      if (params.p > 0) y_branches.push_back({x, params.p});
      if (params.q > 0) y_branches.push_back({zb.symbol, params.q});
      if (noise > 0) {
        for (std::size_t u = 0; u < big; ++u) y_branches.push_back({u, noise * inv});
      }
      for (const auto& yb : y_branches) {
        pmf[(x * big + yb.symbol) * big + zb.symbol] += inv * zb.weight * yb.weight;
      }
    }
  }
  return ClassicalJoint(std::move(pmf), Dims{big, big, big}, kXYZ);
}

std::vector<double> noisy_copy_branch_weights(const NoisyCopyParams& params) {
  validate(params);
  const double p = params.p;
  const double q = params.q;
  const double w = p * p + q + p * q;
  return {w, 0.5 * (1.0 - w), 0.5 * (1.0 - w)};
}

ClassicalChannel noisy_copy_recovery(const NoisyCopyParams& params) {
  const std::size_t big = alphabet_of(params.n);
  const auto weights = noisy_copy_branch_weights(params);
  const double inv = 1.0 / static_cast<double>(big);
  std::vector<Triplet> triplets;
  triplets.reserve(big * (2 * big + 1));
  for (std::size_t y = 0; y < big; ++y) {
    const auto col = static_cast<Eigen::Index>(y);
    triplets.emplace_back(static_cast<Eigen::Index>(y * big + y), col, weights[0]);
    for (std::size_t u = 0; u < big; ++u) {
      // (Y, U) and (U', Y)
      triplets.emplace_back(static_cast<Eigen::Index>(y * big + u), col, weights[1] * inv);
      triplets.emplace_back(static_cast<Eigen::Index>(u * big + y), col, weights[2] * inv);
    }
  }
  return ClassicalChannel::from_triplets(triplets, big, Dims{big, big}, Labels{"Y", "Z"});
}

ClosedFormReport noisy_copy_closed_forms(const NoisyCopyParams& params) {
  validate(params);
  const double n = static_cast<double>(params.n);
  const double p = params.p;
  const double q = params.q;
  const double a = p + q;
  const double b = 1.0 - a;
  const double same = p + p * q + q * q;
  const double differ = 1.0 - same;
  const double w = p * p + q + p * q;
  const double half = 0.5 * (1.0 - w);

  ClosedFormReport r;
  r.experiment = "noisy_copy";
  const auto cf = ValuePath::closed_form;
  r.add("p_x_equals_y", same, "P(X=Y) = p + pq + q^2", cf);
  r.add("copy_weight", w, "w = p^2 + q + pq", cf);
  r.add("h_x_given_y_flags", n * b * (1.0 + q), "H(X|Y E_Y E_Z) = n(1-p-q)(1+q)", cf);
  r.add("h_x_given_yz_flags", n * b * (1.0 - p), "H(X|YZ E_Y E_Z) = n(1-p-q)(1-p)", cf);
  r.add("cmi_lower", n * b * a - std::log2(6.0), "I(X:Z|Y) >= n(1-p-q)(p+q) - log 6", cf);

  const double forward = std::max({log_ratio(a * a, same * w), log_ratio(b * q, differ * w),
                                   log_ratio(a * b, same * half), log_ratio(b * p, same * half),
                                   log_ratio(b * b, differ * (1.0 - w))});
  const double backward = std::max({log_ratio(same * w, a * a), log_ratio(differ * w, b * q),
                                    log_ratio(same * half, a * b), log_ratio(same * half, b * p),
                                    log_ratio(differ * (1.0 - w), b * b)});
  r.add("dmax_p_vs_recovered", forward,
        "D_max(P||R(P_XY)) = max of five atom-class ratios (P over Q)", cf);
  r.add("dmax_recovered_vs_p", backward,
        "D_max(R(P_XY)||P) = max of five atom-class ratios (Q over P)", cf);
  return r;
}

ClosedFormReport noisy_copy_enumeration(const NoisyCopyParams& params) {
  const ClassicalJoint joint = noisy_copy_joint(params);
  const std::size_t big = joint.alphabets()[0];
  const ClassicalChannel rec = noisy_copy_recovery(params);

  ClosedFormReport r;
  r.experiment = "noisy_copy";
  const auto en = ValuePath::enumeration;

  std::vector<double> diag;
  diag.reserve(big * big);
  for (std::size_t x = 0; x < big; ++x) {
    for (std::size_t z = 0; z < big; ++z) diag.push_back(joint.pmf()[(x * big + x) * big + z]);
  }
  r.add("p_x_equals_y", stable_sum(diag), "sum over x, z of P(x, x, z)", en);
  r.add("cmi", classical::conditional_mutual_information(joint, {"X"}, {"Z"}, {"Y"}),
        "H(XY) + H(YZ) - H(Y) - H(XYZ)", en);

  const ClassicalJoint recovered = classical_channel_apply(rec, joint.marginal({"X", "Y"}), "Y");
  const auto fwd = classical::d_max(joint.pmf(), recovered.pmf());
  const auto bwd = classical::d_max(recovered.pmf(), joint.pmf());
  r.add("dmax_p_vs_recovered", fwd.value, "max over atoms of log P/Q", en);
  r.add("dmax_recovered_vs_p", bwd.value, "max over atoms of log Q/P", en);
  r.add("d_p_vs_recovered", classical::relative_entropy(joint.pmf(), recovered.pmf()).value,
        "sum P log P/Q", en);

  const ClassicalJoint pushed = classical_channel_apply(rec, joint.marginal({"Y"}), "Y");
  r.add("marginal_match_defect", max_abs_difference(pushed.pmf(), joint.marginal({"Y", "Z"}).pmf()),
        "max |R(P_Y) - P_YZ|", en);
  return r;
}

std::size_t noisy_copy_threshold(double p, double q, double kappa, std::size_t n_max) {
  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto r = noisy_copy_closed_forms({n, p, q});
    if (kappa * r.value("dmax_p_vs_recovered") < r.value("cmi_lower")) return n;
  }
  return 0;
}

// ---------------------------------------------------------------- modular sum

void validate(const ModularSumParams& params) {
  if (params.n < 1) throw std::invalid_argument("ModularSumParams: n must be positive");
  if (!(params.p >= 0.0 && params.p <= 1.0)) {
    throw std::invalid_argument("ModularSumParams: p must lie in [0, 1]");
  }
}

ClassicalJoint modular_sum_joint(const ModularSumParams& params) {
  validate(params);
  const std::size_t big = alphabet_of(params.n);
  const double inv = 1.0 / static_cast<double>(big);
  std::vector<double> pmf(big * big * big, 0.0);
  for (std::size_t x = 0; x < big; ++x) {
    pmf[(x * big + x) * big + x] += params.p * inv;
    for (std::size_t y = 0; y < big; ++y) {
      pmf[(x * big + y) * big + (x + y) % big] += (1.0 - params.p) * inv * inv;
    }
  }
  return ClassicalJoint(std::move(pmf), Dims{big, big, big}, kXYZ);
}

ClassicalJoint modular_sum_uniform_pair(std::size_t n) {
  const std::size_t big = alphabet_of(n);
  const double inv = 1.0 / static_cast<double>(big * big);
  return ClassicalJoint(std::vector<double>(big * big, inv), Dims{big, big}, Labels{"X", "Y"});
}

ClassicalChannel modular_sum_recovery(const ModularSumParams& params) {
  validate(params);
  const std::size_t big = alphabet_of(params.n);
  const double inv = 1.0 / static_cast<double>(big);
  std::vector<Triplet> triplets;
  triplets.reserve(big * (big + 1));
  for (std::size_t y = 0; y < big; ++y) {
    const auto col = static_cast<Eigen::Index>(y);
    if (params.p > 0) triplets.emplace_back(static_cast<Eigen::Index>(y * big + y), col, params.p);
    if (params.p < 1) {
      for (std::size_t u = 0; u < big; ++u) {
        const std::size_t z = (y + big - u) % big;
        triplets.emplace_back(static_cast<Eigen::Index>(u * big + z), col, (1.0 - params.p) * inv);
      }
    }
  }
  return ClassicalChannel::from_triplets(triplets, big, Dims{big, big}, Labels{"Y", "Z"});
}

ClosedFormReport modular_sum_bounds(double n, double p, double alpha) {
  if (!(n >= 1.0)) throw std::invalid_argument("modular_sum_bounds: n must be at least 1");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("modular_sum_bounds: p must lie in (0, 1]");
  if (!(alpha > 1.0)) throw std::invalid_argument("modular_sum_bounds: alpha must exceed 1");

  ClosedFormReport r;
  r.experiment = "modular_sum";
  const auto cf = ValuePath::closed_form;
  const double cmi_lower = (1.0 - p) * n - binary_entropy(p);
  const double d_upper = -std::log2(p);

  // D_alpha(P_XY || uniform) = (1/(alpha-1)) log2 2^-n [(1-p+p 2^n)^alpha + (2^n - 1)(1-p)^alpha].
  const double low = std::exp2(-n);
  const double diag = alpha * (n + std::log2(p + (1.0 - p) * low)) - n;
  const double off = p < 1.0 ? std::log1p(-low) / std::log(2.0) + alpha * std::log2(1.0 - p) : -kInf;
  const double lambda = log2_add(diag, off) / (alpha - 1.0);

  r.add("cmi_lower", cmi_lower, "I(X:Z|Y) >= (1-p)n - h(p)", cf);
  r.add("d_upper", d_upper, "D(P||R(P_XY)) <= log 1/p", cf);
  r.add("lambda_alpha_upper", lambda,
        "(1/(alpha-1)) log [2^-n (1-p+p2^n)^alpha + 2^-n (2^n-1)(1-p)^alpha]", cf);
  r.add("upper_sum", d_upper + lambda, "log 1/p + lambda_alpha_upper", cf);
  r.add("chain_gap", cmi_lower - (d_upper + lambda), "cmi_lower - upper_sum", cf);
  r.flags["chain_holds"] = cmi_lower - (d_upper + lambda) > 0.0;
  return r;
}

ClosedFormReport modular_sum_closed_forms(double alpha) {
  if (!(alpha >= 2.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("modular_sum_closed_forms: alpha must be finite and at least 2");
  }
  const double p = 1.0 / (alpha * alpha);
  ClosedFormReport r = modular_sum_bounds(alpha, p, alpha);
  const auto cf = ValuePath::closed_form;
  r.add("alpha", alpha, "Renyi order, n = alpha", cf);
  r.add("p", p, "p = alpha^-2", cf);
  const double first = alpha - 2.0 / alpha;
  const double second = alpha - 1.0 / alpha - binary_entropy(p);
  r.add("chain_middle", first, "alpha - 2/alpha", cf);
  r.add("chain_lower", second, "alpha - 1/alpha - h(alpha^-2)", cf);
  r.flags["upper_sum_below_middle"] = r.value("upper_sum") < first;
  r.flags["middle_below_lower"] = first <= second;
  return r;
}

ClosedFormReport modular_sum_enumeration(const ModularSumParams& params, double alpha) {
  const ClassicalJoint joint = modular_sum_joint(params);
  const ClassicalChannel rec = modular_sum_recovery(params);
  const ClassicalJoint pair = modular_sum_uniform_pair(params.n);

  ClosedFormReport r;
  r.experiment = "modular_sum";
  const auto en = ValuePath::enumeration;
  r.add("cmi", classical::conditional_mutual_information(joint, {"X"}, {"Z"}, {"Y"}),
        "H(XY) + H(YZ) - H(Y) - H(XYZ)", en);
  const ClassicalJoint p_xy = joint.marginal({"X", "Y"});
  const ClassicalJoint recovered = classical_channel_apply(rec, p_xy, "Y");
  r.add("d_p_vs_recovered", classical::relative_entropy(joint.pmf(), recovered.pmf()).value,
        "sum P log P/Q", en);
  const ClassicalJoint pushed = classical_channel_apply(rec, joint.marginal({"Y"}), "Y");
  r.add("marginal_match_defect", max_abs_difference(pushed.pmf(), joint.marginal({"Y", "Z"}).pmf()),
        "max |R(P_Y) - P_YZ|", en);
  const ClassicalChannel on_y = restrict_output(rec, {"Z"});
  const ClassicalJoint moved = classical_channel_apply(on_y, pair, "Y");
  r.add("invariance_defect", max_abs_difference(moved.pmf(), pair.pmf()),
        "max |R_Y(uniform pair) - uniform pair|", en);
  r.add("lambda_alpha_upper", lambda_alpha_upper(p_xy, on_y, "Y", alpha, pair),
        "D_alpha(P_XY || uniform pair)", en);
  return r;
}

std::size_t modular_sum_threshold(std::size_t alpha_max) {
  std::size_t from = 0;
  for (std::size_t a = alpha_max; a >= 2; --a) {
    if (!modular_sum_closed_forms(static_cast<double>(a)).flag("chain_holds")) break;
    from = a;
  }
  return from;
}

// ------------------------------------------------------------ triangle cases

DistributionTriple renyi_triangle_distributions(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("renyi_triangle: p must lie in [0, 1]");
  const double rest = (1.0 - p) / 3.0;
  const Dims bits{2, 2};
  const Labels labels{"X", "Y"};
  return {ClassicalJoint({p, rest, rest, rest}, bits, labels),
          ClassicalJoint({rest, rest, rest, p}, bits, labels),
          ClassicalJoint({0.25, 0.25, 0.25, 0.25}, bits, labels)};
}

double renyi_triangle_violating_p(double alpha) { return 1.0 - std::exp2(-alpha); }

TriangleValues renyi_triangle_values(double p, double alpha) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("renyi_triangle: p must lie in (0, 1)");
  if (!(alpha >= 0.5)) throw std::invalid_argument("renyi_triangle: alpha must be at least 1/2");
  TriangleValues v;
  v.d_pq = (4.0 * p - 1.0) / 3.0 * std::log2(3.0 * p / (1.0 - p));
  v.d_ps = p * std::log2(4.0 * p) + (1.0 - p) * std::log2(4.0 * (1.0 - p) / 3.0);
  if (std::abs(alpha - 1.0) < 1e-6) {
    v.d_sq = 0.75 * std::log2(0.75 / (1.0 - p)) + 0.25 * std::log2(0.25 / p);
  } else {
    const double a = alpha * std::log2(3.0) - 2.0 * alpha - (alpha - 1.0) * std::log2(1.0 - p);
    const double b = -2.0 * alpha - (alpha - 1.0) * std::log2(p);
    v.d_sq = log2_add(a, b) / (alpha - 1.0);
  }
  v.gap = v.d_pq - v.d_ps - v.d_sq;
  return v;
}

DistributionTriple exchange_distributions(double p, double eps) {
  if (!(p >= 0.0 && p <= 1.0) || !(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("exchange: p and eps must lie in [0, 1]");
  }
  const Dims bit{2};
  const Labels label{"X"};
  return {ClassicalJoint({1.0 - p, p}, bit, label), ClassicalJoint({1.0 - eps, eps}, bit, label),
          ClassicalJoint({1.0 - 0.5 * p, 0.5 * p}, bit, label)};
}

TriangleValues exchange_values(double p, double eps) {
  if (!(p >= 0.0 && p <= 1.0) || !(eps >= 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("exchange: p and eps must lie in [0, 1]");
  }
  TriangleValues v;
  v.d_pq = kl_term(1.0 - p, 1.0 - eps) + kl_term(p, eps);
  v.d_sq = kl_term(1.0 - 0.5 * p, 1.0 - eps) + kl_term(0.5 * p, eps);
  double best = -kInf;
  if (p < 1.0) best = std::max(best, std::log2(2.0 * (1.0 - p) / (2.0 - p)));
  if (p > 0.0) best = std::max(best, 1.0);
  v.d_ps = best;
  v.gap = v.d_pq - v.d_ps - v.d_sq;
  return v;
}

// -------------------------------------------------------------- antisymmetric

ClosedFormReport antisymmetric_report(std::size_t d) {
  if (d < 2 || d > 6) throw std::invalid_argument("antisymmetric_report: d must lie in [2, 6]");
  const ComplexVector psi = slater_vector(d);
  const Dims dims(d, d);

  // Entropy of a set of sites; the smaller of the set and its complement is
  // reduced since the global state is pure.
  auto entropy_of = [&](std::size_t first, std::size_t last) {
    std::vector<std::size_t> inside;
    std::vector<std::size_t> outside;
    for (std::size_t k = 0; k < d; ++k) (k >= first && k <= last ? inside : outside).push_back(k);
    if (inside.empty() || outside.empty()) return 0.0;
    const auto& keep = inside.size() <= outside.size() ? inside : outside;
    return von_neumann(reduced_from_pure(psi, dims, keep));
  };

  ClosedFormReport r;
  r.experiment = "antisymmetric";
  const auto en = ValuePath::enumeration;
  const auto cf = ValuePath::closed_form;
  const double norm2 = psi.squaredNorm();
  r.add("purity", norm2 * norm2, "<psi|psi>^2, the purity of |psi><psi|", en);

  std::vector<double> steps;
  for (std::size_t k = 1; k < d; ++k) {
    // I(S1 : S(k+1) | S2 .. Sk), zero-based sites 0, [1, k-1], k.
    const double ab = entropy_of(0, k - 1);
    const double bc = entropy_of(1, k);
    const double b = k >= 2 ? entropy_of(1, k - 1) : 0.0;
    const double abc = entropy_of(0, k);
    steps.push_back(ab + bc - b - abc);
    r.add("cmi_step_" + std::to_string(k + 1), steps.back(),
          "I(S1 : S" + std::to_string(k + 1) + " | S2..S" + std::to_string(k) + ")", en);
  }
  const double sum = std::accumulate(steps.begin(), steps.end(), 0.0);
  const double least = *std::min_element(steps.begin(), steps.end());
  const double logd = std::log2(static_cast<double>(d));
  r.add("cmi_sum", sum, "sum over k of I(S1 : Sk | S2..S(k-1)) = I(S1 : S2..Sd)", en);
  r.add("cmi_sum_bound", 2.0 * logd, "2 log d", cf);
  r.add("cmi_min", least, "min over k of I(S1 : Sk | S2..S(k-1))", en);
  r.add("cmi_min_bound", 2.0 * logd / static_cast<double>(d - 1), "(2/(d-1)) log d", cf);
  r.flags["sum_within_bound"] = sum <= 2.0 * logd + 1e-8;
  r.flags["min_within_bound"] = least <= 2.0 * logd / static_cast<double>(d - 1) + 1e-8;
  r.flags["pure"] = std::abs(norm2 * norm2 - 1.0) <= 1e-10;
  return r;
}

}  // namespace qmarkov
