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
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"
#include "qmarkov/io.hpp"

namespace qmarkov {

struct AnalysisReport {
  MarkovReport markov;
  Eigen::Index dim = 0;
  int canonical_kraus_count = 0;
  double identity_distance = 0.0;
  bool is_identity = false;
  std::vector<Certificate> certificates;
  std::vector<std::string> notes;  // checks skipped and why

  bool has(Verdict v) const;
  const Certificate* find(Verdict v) const;
};

/// Largest ancilla n * 2^d for which the anticommuting-unitary witness is built.
inline constexpr Eigen::Index kWitnessDimensionCap = 4096;

/// Markov check, canonical Kraus form, the product-independence test and, for
/// commuting self-adjoint Kraus families, the anticommuting-unitary witness and
/// the conv(Aut) obstruction. Throws Error if a witness and a non-factorizability
/// verdict ever co-occur.
AnalysisReport analyze_channel(const Channel& t, const Tolerances& tol);

/// Re-checks a witness supplied with the input (e.g. an emitted report).
Certificate check_supplied_witness(const Channel& t, const FactorizationWitness& w,
                                   const Tolerances& tol);

Json report_to_json(const AnalysisReport& r, const Channel& t, const Tolerances& tol);

/// One line per finding, e.g. "NOT_FACTORIZABLE (product-independence): rank 9/9".
std::string summarize(const AnalysisReport& r);

}  // namespace qmarkov
