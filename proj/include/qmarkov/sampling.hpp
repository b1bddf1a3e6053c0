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

#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/schur.hpp"
#include "qmarkov/semigroup.hpp"

namespace qmarkov {

/// sum_i p_i u_i^* x u_i with Haar unitaries and Dirichlet-like weights.
Channel random_mixed_unitary(Eigen::Index n, int terms, Rng& rng);

/// Random completely positive trace-preserving and unital map with `terms` Kraus
/// operators, obtained by a Sinkhorn-type balancing of Ginibre factors.
Channel random_markov(Eigen::Index n, int terms, Rng& rng);

/// Commuting self-adjoint a_i = v diag(lambda_i) v^* with sum a_i^2 = 1.
std::vector<Matrix> random_commuting_family(Eigen::Index n, int d, Rng& rng);

/// Real correlation matrix of rank at most r.
SchurMatrix random_real_correlation(Eigen::Index n, Eigen::Index r, Rng& rng);

/// L_jk = |x_j - x_k|^2 + i (theta_j - theta_k), conditionally negative.
SemigroupGenerator random_cnd_generator(Eigen::Index n, Rng& rng);

}  // namespace qmarkov
