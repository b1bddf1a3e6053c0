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

#include <array>
#include <cstdint>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"

namespace qmarkov {

// Degree-four hypothesis data for T x = sum a_i x a_i with self-adjoint a_i.
struct RotaHypothesisReport {
  int d = 0;
  Eigen::Index n = 0;

  bool squares_central = false;  // a_i^2 a_j = a_j a_i^2
  bool products_independent = false;
  bool quartic_independent = false;
  bool enough_generators = false;  // d >= 5

  double central_residual = 0.0;
  double self_adjoint_residual = 0.0;
  double square_sum_residual = 0.0;

  RankResult product_rank;  // {a_i a_j}
  RankResult quartic_rank;  // union of the six word classes
  // Word classes: a_i a_j a_k a_l (adjacent indices distinct), a_i a_j a_k^2,
  // a_i^3 a_j, a_i a_j^3, a_i^2 a_j^2 (i < j), a_i^4.
  std::array<int, 6> class_sizes{};
  std::array<int, 6> class_ranks{};

  bool all_hold() const {
    return squares_central && products_independent && quartic_independent &&
           enough_generators;
  }
};

struct InvolutionFamily {
  Eigen::Index r = 0;
  std::vector<std::vector<int>> perms;  // images, perms[i][x] = g_i(x)
  std::vector<Matrix> u;                // permutation matrices
  int distinct_words = 0;
  RankResult word_rank;
};

struct SphereFamily {
  Eigen::Index m = 0;
  std::vector<Matrix> b;      // diagonal, real
  RealMatrix points;          // d x m, columns on the unit sphere
  RankResult square_products; // {b_i^2 b_j^2 : i < j}
  RankResult quartic_moments; // {b_i^2 b_j^2 : i <= j}
  double min_pair_ratio = 0.0;
};

struct Counterexample {
  Channel t;
  SphereFamily sphere;
  InvolutionFamily involutions;
  RotaHypothesisReport report;
  MarkovReport markov;
  Certificate square_certificate;  // verdict for T^2
};

struct SearchLimits {
  Eigen::Index max_points = 200;
  Eigen::Index max_degree = 64;
  int attempts_per_degree = 16;
};

/// Throws ArgumentError unless every a_i is self-adjoint and sum a_i^2 = 1.
RotaHypothesisReport check_lemma52(const std::vector<Matrix>& a, const Tolerances& tol);

/// NOT_FACTORIZABLE for T^2 with reason "square-products" when every flag holds.
Certificate square_certificate(const RotaHypothesisReport& report);

SphereFamily sphere_b_family(int d, std::uint64_t seed, const Tolerances& tol,
                             const SearchLimits& limits = {});

/// All words e, g_i g_j (i != j), g_i g_j g_k g_l (adjacent distinct):
/// 1 + d(d-1) + d(d-1)^3 of them.
std::vector<std::vector<int>> involution_words(int d);

InvolutionFamily involution_family(int d, std::uint64_t seed, const Tolerances& tol = {},
                                   const SearchLimits& limits = {});

Counterexample build_counterexample(int d, std::uint64_t seed, const Tolerances& tol,
                                    const SearchLimits& limits = {});

/// u = sum_ij a_i a_j (x) (2 e_ij - delta_ij 1_4), uniform trace on M_4.
/// Families with fewer than four members are padded with zeros.
FactorizationWitness d4_converse_witness(const std::vector<Matrix>& a, const Tolerances& tol);

/// Number of index tuples (i,j,k,l) in {0..3}^4 violating
/// tau_4((2e_ij - d_ij)(2e_kl - d_kl)) = d_il d_jk, evaluated in integers.
int d4_scalar_identity_failures();

}  // namespace qmarkov
