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

#include "qmarkov/sampling.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace qmarkov {

Channel random_mixed_unitary(Eigen::Index n, int terms, Rng& rng) {
  if (terms < 1) throw ArgumentError("random_mixed_unitary: need at least one term");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> p(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (auto& w : p) total += (w = expo(rng));
  std::vector<Matrix> kraus;
  for (const double w : p) kraus.push_back(std::sqrt(w / total) * haar_unitary(n, rng));
  return Channel(std::move(kraus));
}

Channel random_markov(Eigen::Index n, int terms, Rng& rng) {
  if (terms < 1) throw ArgumentError("random_markov: need at least one term");
  const Matrix id = Matrix::Identity(n, n);
  auto gram_sum = [](const std::vector<Matrix>& a, bool left) {
    Matrix s = Matrix::Zero(a.front().rows(), a.front().cols());
    for (const auto& x : a) s += left ? Matrix(x.adjoint() * x) : Matrix(x * x.adjoint());
    return s;
  };
  // Alternate left and right normalisation. Nearly reducible draws can balance
  // very slowly; those are discarded and redrawn.
  for (int draw = 0; draw < 100; ++draw) {
    std::vector<Matrix> a;
    for (int i = 0; i < terms; ++i) a.push_back(gaussian_matrix(n, n, rng));
    for (int sweep = 0; sweep < 500; ++sweep) {
      Eigen::SelfAdjointEigenSolver<Matrix> el(gram_sum(a, true));
      const Matrix rl = el.operatorInverseSqrt();
      for (auto& x : a) x = x * rl;
      const Matrix right = gram_sum(a, false);
      if (max_abs(right - id) < 1e-14) break;
      Eigen::SelfAdjointEigenSolver<Matrix> er(right);
      const Matrix rr = er.operatorInverseSqrt();
      for (auto& x : a) x = rr * x;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> el(gram_sum(a, true));
    const Matrix rl = el.operatorInverseSqrt();
    for (auto& x : a) x = x * rl;
    if (max_abs(gram_sum(a, false) - id) < 1e-12) return Channel(std::move(a));
  }
  throw SearchFailure("random_markov: balancing did not converge");
}

std::vector<Matrix> random_commuting_family(Eigen::Index n, int d, Rng& rng) {
  if (d < 1) throw ArgumentError("random_commuting_family: need at least one member");
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix lambda(d, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (int i = 0; i < d; ++i) lambda(i, p) = normal(rng);
    lambda.col(p).normalize();
  }
  const Matrix v = haar_unitary(n, rng);
  std::vector<Matrix> a;
  for (int i = 0; i < d; ++i) {
    const Vector diag = lambda.row(i).transpose().cast<Complex>();
    a.push_back(v * diag.asDiagonal() * v.adjoint());
  }
  return a;
}

SchurMatrix random_real_correlation(Eigen::Index n, Eigen::Index r, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix c(n, r);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) c(i, j) = normal(rng);
    c.row(i).normalize();
  }
  return SchurMatrix((c * c.transpose()).cast<Complex>());
}

SemigroupGenerator random_cnd_generator(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix x(n, 3);
  RealVector theta(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int c = 0; c < 3; ++c) x(j, c) = normal(rng);
    theta(j) = normal(rng);
  }
  Matrix l = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j != k) l(j, k) = Complex((x.row(j) - x.row(k)).squaredNorm(), theta(j) - theta(k));
    }
  }
  return SemigroupGenerator(std::move(l));
}

}  // namespace qmarkov
