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


// JSON forms of states, joints and channels. Doubles are written in the
// shortest representation that parses back to the same value, so every
// round trip is exact.

#ifndef QMARKOV_SERIALIZATION_HPP
#define QMARKOV_SERIALIZATION_HPP

#include <string>

#include <json.hpp>

#include "qmarkov/casebook.hpp"
#include "qmarkov/channels.hpp"
#include "qmarkov/states.hpp"

namespace qmarkov {

using Json = nlohmann::ordered_json;

/// {"labels": [...], "dims": [...], "matrix": [[re, im], ...]} with the
/// matrix entries in row-major order.
Json to_json(const DensityOperator& state);
DensityOperator density_from_json(const Json& j);

/// {"labels": [...], "alphabets": [...], "pmf": [...]}.
Json to_json(const ClassicalJoint& joint);
ClassicalJoint classical_from_json(const Json& j);

/// {"in_labels", "out_labels", "in_dims", "out_dims", "kraus": [matrix, ...]}
/// with each Kraus operator in the row-major [[re, im], ...] form.
Json to_json(const QuantumChannel& ch);
QuantumChannel channel_from_json(const Json& j);

/// {"in_alphabet", "out_alphabets", "out_labels", "entries": [[out, in, prob], ...]}.
Json to_json(const ClassicalChannel& ch);
ClassicalChannel classical_channel_from_json(const Json& j);

/// {"experiment", "quantities": [{"key", "value", "anchor", "path"}], "flags": {...}}.
/// Non-finite values are written as the strings "inf", "-inf" or "nan".
Json to_json(const ClosedFormReport& report);

/// A double, or "inf"/"-inf"/"nan" for non-finite values.
Json number_to_json(double x);
double number_from_json(const Json& j);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

}  // namespace qmarkov

#endif  // QMARKOV_SERIALIZATION_HPP
