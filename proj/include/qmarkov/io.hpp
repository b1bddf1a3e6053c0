// Copyright 2026 The qmarkov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"
#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"
#include "qmarkov/schur.hpp"
#include "qmarkov/semigroup.hpp"

namespace qmarkov {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Malformed input; the message names the offending field or line.
class InputError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

// Matrices are arrays of rows; entries are numbers or [re, im] pairs.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& field);

Json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const Json& j);

// {"dim": n, "kraus": [...]} or {"dim": n, "choi": [[...]]}.
Json channel_to_json(const Channel& t);
Channel channel_from_json(const Json& j, const Tolerances& tol);

// {"n": n, "b": [[...]]}
Json schur_to_json(const SchurMatrix& b);
SchurMatrix schur_from_json(const Json& j);

// {"n": n, "L": [[...]]}
Json generator_to_json(const SemigroupGenerator& g);
SemigroupGenerator generator_from_json(const Json& j, const Tolerances& tol);

Json witness_to_json(const FactorizationWitness& w);
FactorizationWitness witness_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// Parses a file, reporting syntax errors with line and column.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qmarkov
