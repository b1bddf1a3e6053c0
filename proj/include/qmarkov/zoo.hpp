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

#include <map>
#include <string>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"
#include "qmarkov/littlegro.hpp"
#include "qmarkov/semigroup.hpp"

namespace qmarkov {

enum class ZooKind { Channel, Generator, Frame };

struct ExpectedVerdict {
  Verdict verdict;
  std::string reason;
};

struct ZooEntry {
  std::string name;
  ZooKind kind;
  std::string summary;
  std::vector<std::string> parameters;  // accepted "?key=value" keys
  std::vector<ExpectedVerdict> expected;
};

struct ZooRequest {
  std::string name;
  std::map<std::string, double> params;
};

const std::vector<ZooEntry>& zoo_entries();

/// Accepts "name", "zoo:name" and "zoo:name?s=0.5&n=6".
ZooRequest parse_zoo_spec(const std::string& spec);
bool is_zoo_spec(const std::string& spec);

/// Throws InputError for unknown names, wrong kinds or unknown parameters.
const ZooEntry& zoo_lookup(const std::string& name);
Channel zoo_channel(const std::string& spec, const Tolerances& tol = {});
SemigroupGenerator zoo_generator(const std::string& spec);
OHMap zoo_frame(const std::string& spec);

// Named payloads.
std::vector<Matrix> antisymmetric_kraus();      // three real antisymmetric 3 x 3, scaled by 1/sqrt 2
std::vector<Matrix> shift_kraus();              // three shift-type 3 x 3
std::vector<Matrix> diagonal_pair_kraus(int n); // two diagonal n x n, n >= 4

}  // namespace qmarkov
