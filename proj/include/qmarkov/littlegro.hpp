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

#include <cstdint>
#include <vector>

#include "qmarkov/numerics.hpp"

namespace qmarkov {

/// Either M_n or the diagonal algebra l^inf(n) (elements stored as diagonal matrices),
/// with the normalized trace tr/n.
struct AlgebraSpec {
  Eigen::Index n = 1;
  bool abelian = false;
};

/// T x = (tau(a_1^* x), ..., tau(a_d^* x)) for a validated frame a_1..a_d.
struct OHMap {
  AlgebraSpec algebra;
  std::vector<Matrix> frame;

  double orthonormal_residual = 0.0;  // max |tau(a_i^* a_j) - delta_ij|
  double square_sum_residual = 0.0;   // sum a_i^* a_i = sum a_i a_i^* = d 1
  bool enough_elements = false;       // d >= 2
  RankResult product_rank;            // {a_i^* a_j}
  bool cb_strictly_below_one = false;

  int d() const { return static_cast<int>(frame.size()); }
  Eigen::Index n() const { return algebra.n; }
  Vector apply(const Matrix& x) const;
};

/// Throws ArgumentError when orthonormality or the square-sum identity fails.
OHMap frame_validate(const std::vector<Matrix>& a, const AlgebraSpec& algebra,
                     const Tolerances& tol);

OHMap paper_T1();
OHMap paper_T2();

double normalized_trace(const Matrix& x);

struct CTReport {
  int samples = 0;
  int violations = 0;
  double worst_excess = 0.0;  // max ||Tx||^2 - tau(x^* x), relative to tau(x^* x)
  std::vector<double> frame_values;  // ||T a_i||
  double frame_sum_residual = 0.0;   // |sum ||T a_i||^2 - d|
  double unit_value = 0.0;           // ||T 1||^2
  bool holds() const { return violations == 0; }
};

/// Bessel bound ||Tx||^2 <= tau(x^* x) on random and frame inputs, and ||T a_i|| = 1.
CTReport check_CT_one(const OHMap& t, int samples, std::uint64_t seed, const Tolerances& tol);

/// tau-orthonormal basis of the algebra whose first d members are the frame.
std::vector<Matrix> extend_to_basis(const OHMap& t);

/// u_i = (tau (x) id)((b_i^* (x) 1) U) for U in A (x) M_k.
std::vector<Matrix> algebra_coefficients(const std::vector<Matrix>& basis, const Matrix& u,
                                         Eigen::Index n, Eigen::Index k);
/// Frame coefficients; the abelian case reads only the diagonal blocks.
std::vector<Matrix> frame_coefficients(const OHMap& t, const Matrix& u, Eigen::Index k);
Matrix reconstruct(const std::vector<Matrix>& basis, const std::vector<Matrix>& coeffs);

/// ||sum_i u_i (x) conj(u_i)||, the squared norm of (T (x) id)(U).
double cb_objective(const OHMap& t, const Matrix& u, Eigen::Index k);

struct RestartTrace {
  std::uint64_t seed = 0;
  double best = 0.0;
  int iterations = 0;
  std::vector<double> history;  // accepted values, nondecreasing
};

struct CbBoundResult {
  Eigen::Index k = 0;
  double best_value = 0.0;   // lower bound on ||T||_cb^2
  double max_evaluated = 0.0;
  int iterations = 0;
  std::vector<RestartTrace> per_restart;
  std::vector<double> history;  // trace of the best restart
};

inline constexpr Eigen::Index kDefaultAncillaCap = 8;

/// Spectral-norm ascent over unitaries U in A (x) M_k with a polar retraction.
CbBoundResult cb_lower_bound(const OHMap& t, Eigen::Index k, int restarts, int max_iter,
                             std::uint64_t seed, Eigen::Index ancilla_cap = kDefaultAncillaCap);

}  // namespace qmarkov
