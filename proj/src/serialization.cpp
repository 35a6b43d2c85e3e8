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


#include "qmarkov/serialization.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmarkov {

Json number_to_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("number_from_json: not a number: " + j.dump());
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return out;
}

ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols) {
    throw std::invalid_argument("matrix_from_json: expected " + std::to_string(rows * cols) +
                                " entries");
  }
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, ++k) {
      const Json& e = j[k];
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("matrix_from_json: entries must be [re, im] pairs");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json to_json(const DensityOperator& state) {
  Json j;
  j["labels"] = state.labels();
  j["dims"] = state.dims();
  j["matrix"] = matrix_to_json(state.matrix());
  return j;
}

DensityOperator density_from_json(const Json& j) {
  auto dims = j.at("dims").get<Dims>();
  auto labels = j.contains("labels") ? j.at("labels").get<Labels>() : default_labels(dims.size());
  const std::size_t side = total_dim(dims);
  return DensityOperator(matrix_from_json(j.at("matrix"), side, side), std::move(dims),
                         std::move(labels));
}

Json to_json(const ClassicalJoint& joint) {
  Json j;
  j["labels"] = joint.labels();
  j["alphabets"] = joint.alphabets();
  j["pmf"] = joint.pmf();
  return j;
}

ClassicalJoint classical_from_json(const Json& j) {
  auto alphabets = j.at("alphabets").get<Dims>();
  auto labels =
      j.contains("labels") ? j.at("labels").get<Labels>() : default_labels(alphabets.size());
  return ClassicalJoint(j.at("pmf").get<std::vector<double>>(), std::move(alphabets),
                        std::move(labels));
}

Json to_json(const QuantumChannel& ch) {
  Json j;
  j["in_labels"] = ch.in_labels();
  j["out_labels"] = ch.out_labels();
  j["in_dims"] = ch.in_dims();
  j["out_dims"] = ch.out_dims();
  Json kraus = Json::array();
  for (const auto& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  j["kraus"] = std::move(kraus);
  return j;
}

QuantumChannel channel_from_json(const Json& j) {
  auto in_dims = j.at("in_dims").get<Dims>();
  auto out_dims = j.at("out_dims").get<Dims>();
  auto in_labels =
      j.contains("in_labels") ? j.at("in_labels").get<Labels>() : default_labels(in_dims.size());
  auto out_labels =
      j.contains("out_labels") ? j.at("out_labels").get<Labels>() : default_labels(out_dims.size());
  const std::size_t din = total_dim(in_dims);
  const std::size_t dout = total_dim(out_dims);
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k, dout, din));
  return QuantumChannel(std::move(kraus), std::move(in_dims), std::move(out_dims),
                        std::move(in_labels), std::move(out_labels));
}

Json to_json(const ClassicalChannel& ch) {
  Json j;
  j["in_alphabet"] = ch.in_alphabet();
  j["out_alphabets"] = ch.out_alphabets();
  j["out_labels"] = ch.out_labels();
  Json entries = Json::array();
  const auto& m = ch.matrix();
  for (Eigen::Index col = 0; col < m.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, col); it; ++it) {
      entries.push_back({it.row(), col, it.value()});
    }
  }
  j["entries"] = std::move(entries);
  return j;
}

ClassicalChannel classical_channel_from_json(const Json& j) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& e : j.at("entries")) {
    triplets.emplace_back(e.at(0).get<Eigen::Index>(), e.at(1).get<Eigen::Index>(),
                          e.at(2).get<double>());
  }
  return ClassicalChannel::from_triplets(triplets, j.at("in_alphabet").get<std::size_t>(),
                                         j.at("out_alphabets").get<Dims>(),
                                         j.at("out_labels").get<Labels>());
}

Json to_json(const ClosedFormReport& report) {
  Json j;
  j["experiment"] = report.experiment;
  Json q = Json::array();
  for (const auto& e : report.entries) {
    Json item;
    item["key"] = e.key;
    item["value"] = number_to_json(e.value);
    item["anchor"] = e.anchor;
    item["path"] = to_string(e.path);
    q.push_back(std::move(item));
  }
  j["quantities"] = std::move(q);
  Json flags = Json::object();
  for (const auto& [k, v] : report.flags) flags[k] = v;
  j["flags"] = std::move(flags);
  return j;
}

}  // namespace qmarkov
