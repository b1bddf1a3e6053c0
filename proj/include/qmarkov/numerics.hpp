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

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace qmarkov {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Rng = std::mt19937_64;

inline constexpr Complex kI{0.0, 1.0};

// Every numeric decision in the library is taken against one of these.
struct Tolerances {
  double rank_rel = 1e-9;    // Gram eigenvalue cutoff, relative to the largest
  double psd_floor = 1e-10;  // admissible negative eigenvalue / spectral radius
  double verify_abs = 1e-10; // entrywise equality

  void validate() const;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

class SearchFailure : public Error {
 public:
  using Error::Error;
};

class CpViolation : public Error {
 public:
  CpViolation(const std::string& what, double eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class MarkovViolation : public Error {
 public:
  using Error::Error;
};

struct RankResult {
  int rank = 0;
  bool independent = false;
  int size = 0;
  // Smallest retained Gram eigenvalue divided by the largest (0 if rank 0).
  double min_retained_ratio = 0.0;
  RealVector gram_eigenvalues;  // ascending
};

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Largest entry modulus.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}

template <typename Derived>
double hermitian_residual(const Eigen::MatrixBase<Derived>& m) {
  return max_abs(m - m.adjoint());
}

/// Rank of a set from its Gram matrix G_ij = tr(m_i^* m_j).
RankResult gram_rank(const Matrix& gram, const Tolerances& tol);

/// Numerical rank of a family of equally shaped matrices in the trace inner
/// product. Throws ArgumentError on an empty family, DimensionError on shape
/// mismatch.
RankResult rank_of_set(std::span<const Matrix> mats, const Tolerances& tol);
RankResult rank_of_set(std::span<const SparseMatrix> mats,
                       const Tolerances& tol);

/// Eigendecomposition of a Hermitian matrix. Values ascend.
HermitianEig hermitian_eig(const Matrix& m, const Tolerances& tol = {});

bool is_psd(const Matrix& m, const Tolerances& tol);

/// Smallest eigenvalue over spectral radius (1 for the zero matrix); useful for
/// diagnostics next to is_psd.
double psd_margin(const Matrix& m);

/// Spectral norm, from the top eigenvalue of m^* m.
double op_norm(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);

Matrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

/// max(|u^*u - 1|, |uu^* - 1|) entrywise.
double unitarity_residual(const Matrix& u);

/// Unitary factor of the polar decomposition.
Matrix polar_unitary(const Matrix& m);

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
Matrix haar_unitary(Eigen::Index n, Rng& rng);

RealMatrix haar_orthogonal(Eigen::Index n, Rng& rng);

/// Row-major vectorisation.
Vector vec_rows(const Matrix& m);
Matrix unvec_rows(const Vector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace qmarkov
