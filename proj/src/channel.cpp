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

#include "qmarkov/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qmarkov {
namespace {

// First entry (row-major) whose modulus clears 1e-12 of the largest.
Eigen::Index first_significant(const Matrix& a) {
  const double floor = 1e-12 * std::max(max_abs(a), 1e-300);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > floor) {
        return i * a.cols() + j;
      }
    }
  }
  return a.size();
}

void phase_normalise(Matrix& a) {
  const Eigen::Index pos = first_significant(a);
  if (pos >= a.size()) {
    return;
  }
  const Complex lead = a(pos / a.cols(), pos % a.cols());
  a *= std::conj(lead) / std::abs(lead);
}

struct Ranked {
  double weight;
  Matrix op;
};

// Descending weight; near-ties ordered by position and size of the leading entry.
std::vector<Matrix> ordered(std::vector<Ranked> items) {
  const double top = items.empty() ? 0.0 : std::max_element(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.weight < y.weight; })->weight;
  const double tie = 1e-12 * std::max(top, 1e-300);
  std::stable_sort(items.begin(), items.end(), [tie](const Ranked& x, const Ranked& y) {
    if (std::abs(x.weight - y.weight) > tie) {
      return x.weight > y.weight;
    }
    const Eigen::Index px = first_significant(x.op);
    const Eigen::Index py = first_significant(y.op);
    if (px != py) {
      return px < py;
    }
    if (px >= x.op.size()) {
      return false;
    }
    const Eigen::Index c = x.op.cols();
    return x.op(px / c, px % c).real() > y.op(py / c, py % c).real();
  });
  std::vector<Matrix> out;
  out.reserve(items.size());
  for (auto& it : items) {
    out.push_back(std::move(it.op));
  }
  return out;
}

// Columns conj(vec_rows(a_k)); Choi = W W^*.
Matrix choi_factor(const Channel& t) {
  const Eigen::Index n = t.dim();
  Matrix w(n * n, static_cast<Eigen::Index>(t.kraus_count()));
  for (std::size_t k = 0; k < t.kraus_count(); ++k) {
    w.col(static_cast<Eigen::Index>(k)) = vec_rows(t.kraus()[k]).conjugate();
  }
  return w;
}

}  // namespace

Channel::Channel(std::vector<Matrix> kraus) : dim_(0), kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw ArgumentError("channel needs at least one Kraus operator");
  }
  dim_ = kraus_.front().rows();
  if (dim_ < 1) {
    throw DimensionError("channel dimension must be positive");
  }
  for (const auto& a : kraus_) {
    if (a.rows() != dim_ || a.cols() != dim_) {
      throw DimensionError("Kraus operators must all be n x n");
    }
    if (!a.allFinite()) {
      throw ArgumentError("Kraus operator has a non-finite entry");
    }
  }
}

Channel Channel::identity(Eigen::Index n) {
  return Channel({Matrix::Identity(n, n)});
}

Matrix Channel::apply(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw DimensionError("channel input has the wrong shape");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const auto& a : kraus_) {
    out.noalias() += a.adjoint() * x * a;
  }
  return out;
}

ChoiMatrix choi_of(const Channel& t) {
  const Matrix w = choi_factor(t);
  return {t.dim(), w * w.adjoint()};
}

Channel kraus_canonical(const ChoiMatrix& c, const Tolerances& tol) {
  const Eigen::Index n = c.dim;
  if (c.mat.rows() != n * n || c.mat.cols() != n * n) {
    throw DimensionError("Choi matrix must be n^2 x n^2");
  }
  const HermitianEig eig = hermitian_eig(c.mat, tol);
  const double radius = eig.values.cwiseAbs().maxCoeff();
  if (radius == 0.0) {
    throw ArgumentError("zero Choi matrix has no Kraus family");
  }
  if (eig.values(0) < -tol.psd_floor * radius) {
    throw CpViolation("Choi matrix is not positive semidefinite", eig.values(0));
  }
  std::vector<Ranked> items;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double lambda = eig.values(k);
    if (lambda <= tol.rank_rel * radius) {
      continue;
    }
    const Vector w = std::sqrt(lambda) * eig.vectors.col(k);
    Matrix a = unvec_rows(w, n, n).conjugate();
    phase_normalise(a);
    items.push_back({lambda, std::move(a)});
  }
  return Channel(ordered(std::move(items)));
}

Channel canonicalize(const Channel& t, const Tolerances& tol) {
  const auto& ks = t.kraus();
  const auto d = static_cast<Eigen::Index>(ks.size());
  Matrix gram(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      const Complex g = ks[i].cwiseProduct(ks[j].conjugate()).sum();
      gram(i, j) = std::conj(g);
      gram(j, i) = g;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()));
  const double top = es.eigenvalues().maxCoeff();
  if (top <= 0.0) {
    throw ArgumentError("canonicalize: Kraus family is zero");
  }
  std::vector<Ranked> items;
  for (Eigen::Index l = 0; l < d; ++l) {
    const double lambda = es.eigenvalues()(l);
    if (lambda <= tol.rank_rel * top) {
      continue;
    }
    Matrix b = Matrix::Zero(t.dim(), t.dim());
    for (Eigen::Index k = 0; k < d; ++k) {
      b += es.eigenvectors()(k, l) * ks[k];
    }
    phase_normalise(b);
    items.push_back({lambda, std::move(b)});
  }
  return Channel(ordered(std::move(items)));
}

MarkovReport verify_markov(const Channel& t, const Tolerances& tol) {
  const Eigen::Index n = t.dim();
  Matrix left = Matrix::Zero(n, n);
  Matrix right = Matrix::Zero(n, n);
  for (const auto& a : t.kraus()) {
    left.noalias() += a.adjoint() * a;
    right.noalias() += a * a.adjoint();
  }
  const Matrix id = Matrix::Identity(n, n);
  MarkovReport r;
  r.unital_residual = max_abs(left - id);
  r.trace_residual = max_abs(right - id);
  const double bound = tol.verify_abs * static_cast<double>(n);
  r.is_unital = r.unital_residual <= bound;
  r.is_trace_preserving = r.trace_residual <= bound;
  r.self_adjoint_residual = choi_distance(t, adjoint(t));
  r.is_self_adjoint = r.self_adjoint_residual <= bound;
  r.kraus_rank = static_cast<int>(canonicalize(t, tol).kraus_count());
  return r;
}

Channel adjoint(const Channel& t) {
  std::vector<Matrix> ks;
  ks.reserve(t.kraus_count());
  for (const auto& a : t.kraus()) {
    ks.push_back(a.adjoint());
  }
  return Channel(std::move(ks));
}

Channel compose(const Channel& s, const Channel& t) {
  if (s.dim() != t.dim()) {
    throw DimensionError("compose: dimension mismatch");
  }
  std::vector<Matrix> ks;
  ks.reserve(s.kraus_count() * t.kraus_count());
  for (const auto& a : t.kraus()) {
    for (const auto& b : s.kraus()) {
      ks.push_back(a * b);
    }
  }
  return Channel(std::move(ks));
}

Channel tensor(const Channel& t, const Channel& s) {
  std::vector<Matrix> ks;
  ks.reserve(t.kraus_count() * s.kraus_count());
  for (const auto& a : t.kraus()) {
    for (const auto& b : s.kraus()) {
      ks.push_back(kron(a, b));
    }
  }
  return Channel(std::move(ks));
}

Channel tensor_power(const Channel& t, int k, Eigen::Index dimension_cap) {
  if (k < 1) {
    throw ArgumentError("tensor_power: exponent must be at least 1");
  }
  Eigen::Index total = 1;
  for (int i = 0; i < k; ++i) {
    total *= t.dim();
    if (total > dimension_cap) {
      throw ResourceError("tensor_power: dimension cap exceeded");
    }
  }
  Channel out = t;
  for (int i = 1; i < k; ++i) {
    out = tensor(out, t);
  }
  return out;
}

double choi_distance(const Channel& a, const Channel& b) {
  if (a.dim() != b.dim()) {
    throw DimensionError("choi_distance: dimension mismatch");
  }
  const Matrix wa = choi_factor(a);
  const Matrix wb = choi_factor(b);
  Matrix stacked(wa.rows(), wa.cols() + wb.cols());
  stacked << wa, wb;
  Eigen::HouseholderQR<Matrix> qr(stacked);
  const Eigen::Index rows = std::min(stacked.rows(), stacked.cols());
  const Matrix r = qr.matrixQR().topRows(rows).triangularView<Eigen::Upper>();
  // Choi difference = W S W^* with S = diag(1, -1); W = QR keeps the norm.
  Matrix rs = r;
  rs.rightCols(wb.cols()) *= -1.0;
  return (rs * r.adjoint()).norm();
}

Matrix partial_trace_second(const Matrix& z, Eigen::Index m, Eigen::Index l) {
  if (z.rows() != m * l || z.cols() != m * l) {
    throw DimensionError("partial_trace_second: shape mismatch");
  }
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      Complex acc = 0.0;
      for (Eigen::Index a = 0; a < l; ++a) {
        acc += z(i * l + a, j * l + a);
      }
      out(i, j) = acc / static_cast<double>(l);
    }
  }
  return out;
}

CompressionCheck compress_check(const Channel& t, const Channel& s,
                                const Tolerances& tol) {
  const Eigen::Index m = t.dim();
  const Eigen::Index l = s.dim();
  const Channel joint = tensor(t, s);
  const Matrix one_l = Matrix::Identity(l, l);
  CompressionCheck out;
  out.residual = matrix_unit_residual(t, [&](const Matrix& e) {
    return partial_trace_second(joint.apply(kron(e, one_l)), m, l);
  });
  out.holds = out.residual <= tol.verify_abs;
  return out;
}

}  // namespace qmarkov
