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

#include "qmarkov/littlegro.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

namespace qmarkov {
namespace {

constexpr double kBesselSlack = 1e-12;
constexpr double kTopSpaceRel = 1e-9;

Complex tau_inner(const Matrix& x, const Matrix& y) {  // tau(x^* y)
  return x.conjugate().cwiseProduct(y).sum() / static_cast<double>(x.rows());
}

Matrix retract(const Matrix& v, const OHMap& t, Eigen::Index k) {
  if (!t.algebra.abelian) {
    return polar_unitary(v);
  }
  const Eigen::Index n = t.n();
  Matrix out = Matrix::Zero(n * k, n * k);
  for (Eigen::Index p = 0; p < n; ++p) {
    out.block(p * k, p * k, k, k) = polar_unitary(v.block(p * k, p * k, k, k));
  }
  return out;
}

Matrix random_start(const OHMap& t, Eigen::Index k, Rng& rng) {
  const Eigen::Index n = t.n();
  if (!t.algebra.abelian) {
    return haar_unitary(n * k, rng);
  }
  Matrix u = Matrix::Zero(n * k, n * k);
  for (Eigen::Index p = 0; p < n; ++p) {
    u.block(p * k, p * k, k, k) = haar_unitary(k, rng);
  }
  return u;
}

struct Evaluation {
  double value = 0.0;
  Matrix grad;
};

Evaluation evaluate(const OHMap& t, const Matrix& u, Eigen::Index k) {
  const auto coeffs = frame_coefficients(t, u, k);
  Matrix m = Matrix::Zero(k * k, k * k);
  for (const auto& c : coeffs) {
    m += kron(c, c.conjugate());
  }
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  Evaluation ev;
  ev.value = s(0);

  int top = 0;
  while (top < s.size() && s(top) >= s(0) * (1.0 - kTopSpaceRel)) ++top;
  std::vector<Matrix> g(coeffs.size(), Matrix::Zero(k, k));
  for (int j = 0; j < top; ++j) {
    const Matrix x = unvec_rows(svd.matrixU().col(j), k, k);
    const Matrix y = unvec_rows(svd.matrixV().col(j), k, k);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      g[i] += (x * coeffs[i] * y.adjoint() + x.adjoint() * coeffs[i] * y) / top;
    }
  }

  const Eigen::Index n = t.n();
  const double inv_n = 1.0 / static_cast<double>(n);
  ev.grad = Matrix::Zero(n * k, n * k);
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      if (t.algebra.abelian && p != q) continue;
      auto block = ev.grad.block(p * k, q * k, k, k);
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        block += inv_n * t.frame[i](p, q) * g[i];
      }
    }
  }
  return ev;
}

}  // namespace

double normalized_trace(const Matrix& x) {
  return x.trace().real() / static_cast<double>(x.rows());
}

Vector OHMap::apply(const Matrix& x) const {
  if (x.rows() != n() || x.cols() != n()) {
    throw DimensionError("OHMap::apply: argument has the wrong size");
  }
  Vector out(d());
  for (int i = 0; i < d(); ++i) {
    out(i) = tau_inner(frame[static_cast<std::size_t>(i)], x);
  }
  return out;
}

OHMap frame_validate(const std::vector<Matrix>& a, const AlgebraSpec& algebra,
                     const Tolerances& tol) {
  tol.validate();
  if (a.empty()) {
    throw ArgumentError("frame_validate: frame must be nonempty");
  }
  const Eigen::Index n = algebra.n;
  for (const auto& x : a) {
    if (x.rows() != n || x.cols() != n) {
      throw DimensionError("frame_validate: frame element has the wrong size");
    }
    if (!x.allFinite()) {
      throw ArgumentError("frame_validate: non-finite frame entry");
    }
    if (algebra.abelian) {
      Matrix off = x;
      off.diagonal().setZero();
      if (max_abs(off) != 0.0) {
        throw ArgumentError("frame_validate: abelian frame element is not diagonal");
      }
    }
  }
  OHMap t;
  t.algebra = algebra;
  t.frame = a;
  const int d = t.d();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Complex g = tau_inner(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
      t.orthonormal_residual =
          std::max(t.orthonormal_residual, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  Matrix left = Matrix::Zero(n, n);
  Matrix right = Matrix::Zero(n, n);
  for (const auto& x : a) {
    left += x.adjoint() * x;
    right += x * x.adjoint();
  }
  const Matrix target = static_cast<double>(d) * Matrix::Identity(n, n);
  t.square_sum_residual = std::max(max_abs(left - target), max_abs(right - target));

  const double bound = tol.verify_abs * static_cast<double>(d);
  if (t.orthonormal_residual > bound || t.square_sum_residual > bound) {
    std::ostringstream os;
    os << "frame_validate: frame is not admissible (orthonormality residual "
       << t.orthonormal_residual << ", square-sum residual " << t.square_sum_residual << ")";
    throw ArgumentError(os.str());
  }

  std::vector<Matrix> products;
  for (const auto& x : a) {
    for (const auto& y : a) {
      products.push_back(x.adjoint() * y);
    }
  }
  t.product_rank = rank_of_set(std::span<const Matrix>(products), tol);
  t.enough_elements = d >= 2;
  t.cb_strictly_below_one = t.enough_elements && t.product_rank.independent;
  return t;
}

OHMap paper_T1() {
  const double c = std::sqrt(1.5);
  Matrix a1 = Matrix::Zero(3, 3);
  Matrix a2 = Matrix::Zero(3, 3);
  Matrix a3 = Matrix::Zero(3, 3);
  a1(1, 2) = -c;
  a1(2, 1) = c;
  a2(0, 2) = c;
  a2(2, 0) = -c;
  a3(0, 1) = -c;
  a3(1, 0) = c;
  return frame_validate({a1, a2, a3}, {3, false}, Tolerances{});
}

OHMap paper_T2() {
  const Complex w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  Vector a1(4), a2(4);
  a1 << r2, r2 / r3, r2 / r3, r2 / r3;
  a2 << 0.0, 2.0 / r3, (2.0 / r3) * w, (2.0 / r3) * std::conj(w);
  return frame_validate({Matrix(a1.asDiagonal()), Matrix(a2.asDiagonal())}, {4, true},
                        Tolerances{});
}

CTReport check_CT_one(const OHMap& t, int samples, std::uint64_t seed, const Tolerances& tol) {
  tol.validate();
  const double bound = tol.verify_abs * static_cast<double>(t.d());
  if (t.orthonormal_residual > bound || t.square_sum_residual > bound) {
    throw ArgumentError("check_CT_one: frame invariants do not hold");
  }
  if (samples < 0) {
    throw ArgumentError("check_CT_one: sample count must be nonnegative");
  }
  const Eigen::Index n = t.n();
  CTReport rep;
  auto probe = [&](const Matrix& x) {
    const double lhs = t.apply(x).squaredNorm();
    const double rhs = normalized_trace(x.adjoint() * x);
    const double excess = (lhs - rhs) / std::max(rhs, 1e-300);
    rep.worst_excess = rep.samples == 0 ? excess : std::max(rep.worst_excess, excess);
    rep.violations += excess > kBesselSlack ? 1 : 0;
    ++rep.samples;
    return lhs;
  };

  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Matrix x = gaussian_matrix(n, n, rng);
    if (t.algebra.abelian) {
      x = Matrix(x.diagonal().asDiagonal());
    }
    probe(x);
  }
  double sum = 0.0;
  for (const auto& a : t.frame) {
    const double v = probe(a);
    rep.frame_values.push_back(std::sqrt(v));
    sum += v;
  }
  rep.frame_sum_residual = std::abs(sum - static_cast<double>(t.d()));
  rep.unit_value = probe(Matrix::Identity(n, n));
  return rep;
}

std::vector<Matrix> extend_to_basis(const OHMap& t) {
  const Eigen::Index n = t.n();
  const auto dim = static_cast<std::size_t>(t.algebra.abelian ? n : n * n);
  std::vector<Matrix> basis;
  auto absorb = [&](Matrix x) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) x -= tau_inner(b, x) * b;
    }
    const double norm = std::sqrt(std::max(0.0, tau_inner(x, x).real()));
    if (norm > 1e-8) basis.push_back(x / norm);
  };
  for (const auto& a : t.frame) absorb(a);
  if (basis.size() != t.frame.size()) {
    throw ArgumentError("extend_to_basis: frame is not linearly independent");
  }
  const double scale = std::sqrt(static_cast<double>(n));
  for (Eigen::Index p = 0; p < n && basis.size() < dim; ++p) {
    for (Eigen::Index q = 0; q < n && basis.size() < dim; ++q) {
      if (t.algebra.abelian && p != q) continue;
      absorb(scale * matrix_unit(n, p, q));
    }
  }
  return basis;
}

std::vector<Matrix> algebra_coefficients(const std::vector<Matrix>& basis, const Matrix& u,
                                         Eigen::Index n, Eigen::Index k) {
  if (u.rows() != n * k || u.cols() != n * k) {
    throw DimensionError("algebra_coefficients: unitary has the wrong size");
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<Matrix> out;
  out.reserve(basis.size());
  for (const auto& b : basis) {
    Matrix c = Matrix::Zero(k, k);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = 0; q < n; ++q) {
        if (b(p, q) != Complex(0.0, 0.0)) {
          c += inv_n * std::conj(b(p, q)) * u.block(p * k, q * k, k, k);
        }
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Matrix> frame_coefficients(const OHMap& t, const Matrix& u, Eigen::Index k) {
  const Eigen::Index n = t.n();
  if (!t.algebra.abelian) {
    return algebra_coefficients(t.frame, u, n, k);
  }
  if (u.rows() != n * k || u.cols() != n * k) {
    throw DimensionError("frame_coefficients: unitary has the wrong size");
  }
  std::vector<Matrix> out;
  for (const auto& a : t.frame) {
    Matrix c = Matrix::Zero(k, k);
    for (Eigen::Index p = 0; p < n; ++p) {
      c += std::conj(a(p, p)) * u.block(p * k, p * k, k, k);
    }
    out.push_back(c / static_cast<double>(n));
  }
  return out;
}

Matrix reconstruct(const std::vector<Matrix>& basis, const std::vector<Matrix>& coeffs) {
  if (basis.empty() || basis.size() != coeffs.size()) {
    throw DimensionError("reconstruct: basis and coefficient counts differ");
  }
  const Eigen::Index n = basis.front().rows();
  const Eigen::Index k = coeffs.front().rows();
  Matrix out = Matrix::Zero(n * k, n * k);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    out += kron(basis[i], coeffs[i]);
  }
  return out;
}

double cb_objective(const OHMap& t, const Matrix& u, Eigen::Index k) {
  const auto coeffs = frame_coefficients(t, u, k);
  Matrix m = Matrix::Zero(k * k, k * k);
  for (const auto& c : coeffs) m += kron(c, c.conjugate());
  return op_norm(m);
}

CbBoundResult cb_lower_bound(const OHMap& t, Eigen::Index k, int restarts, int max_iter,
                             std::uint64_t seed, Eigen::Index ancilla_cap) {
  if (k < 1 || k > ancilla_cap) {
    throw ArgumentError("cb_lower_bound: ancilla dimension out of range");
  }
  if (restarts < 1 || max_iter < 0) {
    throw ArgumentError("cb_lower_bound: restarts must be positive");
  }
  constexpr int kMaxHalvings = 40;
  constexpr double kStall = 1e-14;

  CbBoundResult res;
  res.k = k;
  Rng master(seed);
  for (int r = 0; r < restarts; ++r) {
    RestartTrace trace;
    trace.seed = master();
    Rng rng(trace.seed);
    Matrix u = random_start(t, k, rng);
    Evaluation cur = evaluate(t, u, k);
    res.max_evaluated = std::max(res.max_evaluated, cur.value);
    trace.history.push_back(cur.value);
    double step = 1.0;
    for (int it = 0; it < max_iter; ++it) {
      bool accepted = false;
      for (int h = 0; h < kMaxHalvings; ++h) {
        Matrix trial = retract(u + step * cur.grad, t, k);
        Evaluation next = evaluate(t, trial, k);
        res.max_evaluated = std::max(res.max_evaluated, next.value);
        if (next.value >= cur.value) {
          const double gain = next.value - cur.value;
          u = std::move(trial);
          cur = std::move(next);
          trace.history.push_back(cur.value);
          accepted = gain > kStall;
          step = std::min(step * 2.0, 1e3);
          break;
        }
        step *= 0.5;
      }
      ++trace.iterations;
      if (!accepted) break;
    }
    trace.best = cur.value;
    res.iterations += trace.iterations;
    if (r == 0 || trace.best > res.best_value) {
      res.best_value = trace.best;
      res.history = trace.history;
    }
    res.per_restart.push_back(std::move(trace));
  }
  return res;
}

}  // namespace qmarkov
