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

#include <optional>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"

namespace qmarkov {

/// Coefficient matrix B of the entrywise multiplier x -> (b_ij x_ij).
struct SchurMatrix {
  Eigen::Index n = 0;
  Matrix b;

  explicit SchurMatrix(Matrix m);
  SchurMatrix() = default;
};

Matrix schur_apply(const SchurMatrix& b, const Matrix& x);

/// Diagonal Kraus operators sqrt(lambda_i) diag(row i of C) from B = C^* D C,
/// one per nonzero eigenvalue. Throws CpViolation if B is not PSD.
std::vector<Matrix> schur_diagonal_kraus(const SchurMatrix& b, const Tolerances& tol);

/// Markov Schur channel. Throws CpViolation (not PSD) or MarkovViolation
/// (diagonal differs from 1).
Channel schur_channel(const SchurMatrix& b, const Tolerances& tol);

/// For a real correlation matrix: real, hence self-adjoint, commuting diagonal
/// Kraus operators with sum of squares equal to 1.
std::vector<Matrix> real_schur_family(const SchurMatrix& b, const Tolerances& tol);

struct GramCheck {
  bool holds = false;
  double unitarity_residual = 0.0;
  double gram_residual = 0.0;
  std::optional<FactorizationWitness> witness;  // u = sum_j e_jj (x) u_j
};

/// Checks b_ij = tau(u_i^* u_j) for unitaries u_1..u_n in the ancilla.
GramCheck verify_gram_unitaries(const SchurMatrix& b, const std::vector<Matrix>& unitaries,
                                const AncillaTrace& trace, const Tolerances& tol);
GramCheck verify_gram_unitaries(const SchurMatrix& b, const std::vector<Matrix>& unitaries,
                                const Tolerances& tol);

/// Rank-two correlation matrix x1^* x1 + x2^* x2 with
/// x1 = (1, sqrt s, ..., sqrt s), x2 = sqrt(1-s) (0, 1, rho, ..., rho^{n-2}),
/// rho = exp(2 pi i / (n-1)).
SchurMatrix family_Bs(double s, int n);

/// The two diagonal operators behind family_Bs, in the same normalisation.
std::vector<Matrix> family_Bs_kraus(double s, int n);

/// 6 x 6 real correlation matrix with off-diagonal entries +-1/sqrt(5), rank 3.
SchurMatrix example_B6();

/// Diagonal b_1, b_2, b_3 with B6 = sum b_i^* b_i.
std::vector<Matrix> example_B6_kraus();

/// Self-adjoint commuting family a_1 = b_1, a_2 = (b_2+b_3)/sqrt2,
/// a_3 = (b_2-b_3)/(i sqrt2) realising B6 as x -> sum a_i x a_i.
std::vector<Matrix> example_B6_family();

/// Fourier matrix (exp(2 pi i k l / 5)), 0 <= k, l <= 4.
Matrix fourier5();

}  // namespace qmarkov
