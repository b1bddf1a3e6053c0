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

#include "qmarkov/schur.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qmarkov {
namespace {

Matrix outer_rows(const Vector& x) {
  // (x^* x)_jk = conj(x_j) x_k for a row vector x.
  return x.conjugate() * x.transpose();
}

void require_square(const SchurMatrix& b) {
  if (b.b.rows() != b.b.cols() || b.b.rows() != b.n || b.n < 1) {
    throw DimensionError("Schur matrix must be n x n with n >= 1");
  }
}

void require_psd(const SchurMatrix& b, const Tolerances& tol) {
  if (!is_psd(b.b, tol)) {
    const double margin = b.b.allFinite() ? psd_margin(b.b) : -1.0;
    throw CpViolation("Schur matrix is not positive semidefinite", margin);
  }
}

}  // namespace

SchurMatrix::SchurMatrix(Matrix m) : n(m.rows()), b(std::move(m)) {}

Matrix schur_apply(const SchurMatrix& b, const Matrix& x) {
  return b.b.cwiseProduct(x);
}

std::vector<Matrix> schur_diagonal_kraus(const SchurMatrix& b, const Tolerances& tol) {
  require_square(b);
  require_psd(b, tol);
  const HermitianEig eig = hermitian_eig(b.b, tol);
  const double top = eig.values.maxCoeff();
  std::vector<Matrix> out;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
    const double lambda = eig.values(i);
    if (top <= 0.0 || lambda <= tol.rank_rel * top) {
      continue;
    }
    const Vector diag = std::sqrt(lambda) * eig.vectors.col(i).conjugate();
    out.push_back(diag.asDiagonal());
  }
  return out;
}

Channel schur_channel(const SchurMatrix& b, const Tolerances& tol) {
  require_square(b);
  require_psd(b, tol);
  const double diag_dev = max_abs(b.b.diagonal() - Vector::Ones(b.n));
  if (diag_dev > tol.verify_abs) {
    throw MarkovViolation("Schur matrix diagonal is not all ones (deviation " +
                          std::to_string(diag_dev) + ")");
  }
  return Channel(schur_diagonal_kraus(b, tol));
}

std::vector<Matrix> real_schur_family(const SchurMatrix& b, const Tolerances& tol) {
  require_square(b);
  if (max_abs(b.b.imag()) > tol.verify_abs) {
    throw ArgumentError("real_schur_family: matrix has imaginary part");
  }
  require_psd(b, tol);
  const RealMatrix re = b.b.real();
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(0.5 * (re + re.transpose()));
  const double top = es.eigenvalues().maxCoeff();
  std::vector<Matrix> out;
  for (Eigen::Index i = b.n - 1; i >= 0; --i) {
    const double lambda = es.eigenvalues()(i);
    if (top <= 0.0 || lambda <= tol.rank_rel * top) {
      continue;
    }
    const RealVector diag = std::sqrt(lambda) * es.eigenvectors().col(i);
    out.push_back(diag.cast<Complex>().asDiagonal());
  }
  return out;
}

GramCheck verify_gram_unitaries(const SchurMatrix& b, const std::vector<Matrix>& unitaries,
                                const AncillaTrace& trace, const Tolerances& tol) {
  require_square(b);
  trace.validate();
  if (static_cast<Eigen::Index>(unitaries.size()) != b.n) {
    throw ArgumentError("verify_gram_unitaries: need one unitary per row of B");
  }
  const Eigen::Index k = trace.dim();
  for (const auto& u : unitaries) {
    if (u.rows() != k || u.cols() != k) {
      throw ArgumentError("verify_gram_unitaries: unitaries must match the ancilla dimension");
    }
  }
  GramCheck out;
  for (Eigen::Index i = 0; i < b.n; ++i) {
    out.unitarity_residual = std::max(out.unitarity_residual, unitarity_residual(unitaries[i]));
    for (Eigen::Index j = 0; j < b.n; ++j) {
      const Complex g = trace(unitaries[i].adjoint() * unitaries[j]);
      out.gram_residual = std::max(out.gram_residual, std::abs(g - b.b(i, j)));
    }
  }
  out.holds = out.unitarity_residual <= tol.verify_abs * static_cast<double>(k) &&
              out.gram_residual <= tol.verify_abs;
  if (out.holds) {
    Matrix u = Matrix::Zero(b.n * k, b.n * k);
    for (Eigen::Index j = 0; j < b.n; ++j) {
      u.block(j * k, j * k, k, k) = unitaries[j];
    }
    out.witness = FactorizationWitness{b.n, k, std::move(u), trace};
  }
  return out;
}

GramCheck verify_gram_unitaries(const SchurMatrix& b, const std::vector<Matrix>& unitaries,
                                const Tolerances& tol) {
  const Eigen::Index k = unitaries.empty() ? 1 : unitaries.front().rows();
  return verify_gram_unitaries(b, unitaries, AncillaTrace::uniform(k), tol);
}

std::vector<Matrix> family_Bs_kraus(double s, int n) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw ArgumentError("family_Bs: s must lie in [0, 1]");
  }
  if (n < 4) {
    throw ArgumentError("family_Bs: n must be at least 4");
  }
  const double phase = 2.0 * std::numbers::pi / static_cast<double>(n - 1);
  Vector x1 = Vector::Constant(n, std::sqrt(s));
  x1(0) = 1.0;
  Vector x2 = Vector::Zero(n);
  for (int j = 1; j < n; ++j) {
    x2(j) = std::sqrt(1.0 - s) * std::polar(1.0, phase * (j - 1));
  }
  return {x1.asDiagonal(), x2.asDiagonal()};
}

SchurMatrix family_Bs(double s, int n) {
  const auto k = family_Bs_kraus(s, n);
  return SchurMatrix(outer_rows(k[0].diagonal()) + outer_rows(k[1].diagonal()));
}

SchurMatrix example_B6() {
  const double beta = 1.0 / std::sqrt(5.0);
  RealMatrix signs(6, 6);
  // clang-format off
  signs << 0,  1,  1,  1,  1,  1,
           1,  0,  1, -1, -1,  1,
           1,  1,  0,  1, -1, -1,
           1, -1,  1,  0,  1, -1,
           1, -1, -1,  1,  0,  1,
           1,  1, -1, -1,  1,  0;
  // clang-format on
  RealMatrix b = beta * signs;
  b.diagonal().setOnes();
  return SchurMatrix(b.cast<Complex>());
}

std::vector<Matrix> example_B6_kraus() {
  const double root5 = std::sqrt(5.0);
  Vector b1 = Vector::Constant(6, 1.0 / root5);
  b1(0) = 1.0;
  Vector b2 = Vector::Zero(6);
  for (int j = 1; j < 6; ++j) {
    b2(j) = std::sqrt(2.0 / 5.0) * std::polar(1.0, 2.0 * std::numbers::pi * (j - 1) / 5.0);
  }
  const Matrix m1 = b1.asDiagonal();
  const Matrix m2 = b2.asDiagonal();
  return {m1, m2, m2.adjoint()};
}

std::vector<Matrix> example_B6_family() {
  const auto b = example_B6_kraus();
  const double r2 = std::sqrt(2.0);
  return {b[0], (b[1] + b[2]) / r2, (b[1] - b[2]) / (kI * r2)};
}

Matrix fourier5() {
  Matrix h(5, 5);
  for (int k = 0; k < 5; ++k) {
    for (int l = 0; l < 5; ++l) {
      h(k, l) = std::polar(1.0, 2.0 * std::numbers::pi * k * l / 5.0);
    }
  }
  return h;
}

}  // namespace qmarkov
