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

#include "qmarkov/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace qmarkov {

void Tolerances::validate() const {
  if (!(rank_rel > 0.0) || !(psd_floor > 0.0) || !(verify_abs > 0.0)) {
    throw ArgumentError("tolerances must be strictly positive");
  }
}

RankResult gram_rank(const Matrix& gram, const Tolerances& tol) {
  RankResult out;
  out.size = static_cast<int>(gram.rows());
  const Matrix h = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  out.gram_eigenvalues = es.eigenvalues();
  const double largest = out.gram_eigenvalues.size() ? out.gram_eigenvalues.maxCoeff() : 0.0;
  if (largest <= 0.0) {
    return out;
  }
  const double cutoff = tol.rank_rel * largest;
  double smallest_kept = largest;
  for (double ev : out.gram_eigenvalues) {
    if (ev > cutoff) {
      ++out.rank;
      smallest_kept = std::min(smallest_kept, ev);
    }
  }
  out.min_retained_ratio = smallest_kept / largest;
  out.independent = out.rank == out.size;
  return out;
}

RankResult rank_of_set(std::span<const Matrix> mats, const Tolerances& tol) {
  if (mats.empty()) {
    throw ArgumentError("rank_of_set: empty family");
  }
  const Eigen::Index rows = mats.front().rows();
  const Eigen::Index cols = mats.front().cols();
  Matrix stacked(rows * cols, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    if (mats[k].rows() != rows || mats[k].cols() != cols) {
      throw DimensionError("rank_of_set: shape mismatch in family");
    }
    stacked.col(static_cast<Eigen::Index>(k)) =
        Eigen::Map<const Vector>(mats[k].data(), rows * cols);
  }
  return gram_rank(stacked.adjoint() * stacked, tol);
}

RankResult rank_of_set(std::span<const SparseMatrix> mats,
                       const Tolerances& tol) {
  if (mats.empty()) {
    throw ArgumentError("rank_of_set: empty family");
  }
  const Eigen::Index rows = mats.front().rows();
  const Eigen::Index cols = mats.front().cols();
  for (const auto& m : mats) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError("rank_of_set: shape mismatch in family");
    }
  }
  const auto k = static_cast<Eigen::Index>(mats.size());
  Matrix gram(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    const SparseMatrix lhs = mats[i].conjugate();
    for (Eigen::Index j = i; j < k; ++j) {
      const Complex g = lhs.cwiseProduct(mats[j]).sum();
      gram(i, j) = g;
      gram(j, i) = std::conj(g);
    }
  }
  return gram_rank(gram, tol);
}

HermitianEig hermitian_eig(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("hermitian_eig: matrix is not square");
  }
  if (!m.allFinite()) {
    throw ArgumentError("hermitian_eig: non-finite entry");
  }
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_residual(m) > tol.verify_abs * scale) {
    throw ArgumentError("hermitian_eig: matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  return {es.eigenvalues(), es.eigenvectors()};
}

bool is_psd(const Matrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw DimensionError("is_psd: matrix is not square");
  }
  const double scale = std::max(1.0, max_abs(m));
  if (!m.allFinite() || hermitian_residual(m) > tol.verify_abs * scale) {
    return false;
  }
  return psd_margin(m) >= -tol.psd_floor;
}

double psd_margin(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()),
                                           Eigen::EigenvaluesOnly);
  const RealVector& ev = es.eigenvalues();
  if (ev.size() == 0) {
    return 1.0;
  }
  const double radius = ev.cwiseAbs().maxCoeff();
  if (radius == 0.0) {
    return 1.0;
  }
  return ev.minCoeff() / radius;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) {
    return 0.0;
  }
  const Matrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()),
                                           Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(ia.row() * b.rows() + ib.row(),
                             ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

Matrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

double unitarity_residual(const Matrix& u) {
  if (u.rows() != u.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return std::max(max_abs(u.adjoint() * u - id), max_abs(u * u.adjoint() - id));
}

Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix z(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

Matrix haar_unitary(Eigen::Index n, Rng& rng) {
  const Matrix z = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mod = std::abs(r(k, k));
    if (mod > 0.0) {
      q.col(k) *= r(k, k) / mod;
    }
  }
  return q;
}

RealMatrix haar_orthogonal(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i, j) = normal(rng);
    }
  }
  Eigen::HouseholderQR<RealMatrix> qr(z);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (qr.matrixQR()(k, k) < 0.0) {
      q.col(k) *= -1.0;
    }
  }
  return q;
}

Vector vec_rows(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      v(i * m.cols() + j) = m(i, j);
    }
  }
  return v;
}

Matrix unvec_rows(const Vector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec_rows: length does not match shape");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = v(i * cols + j);
    }
  }
  return m;
}

}  // namespace qmarkov
