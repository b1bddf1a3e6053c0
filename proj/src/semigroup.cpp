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

#include "qmarkov/semigroup.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace qmarkov {
namespace {

// exp(z) - 1 without cancellation near z = 0.
Complex expm1c(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

Matrix mean_zero_projector(Eigen::Index n) {
  return Matrix::Identity(n, n) -
         Matrix::Constant(n, n, Complex(1.0 / static_cast<double>(n), 0.0));
}

Complex omega() {
  return std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
}

}  // namespace

SemigroupGenerator::SemigroupGenerator(Matrix l, const Tolerances& tol)
    : n(l.rows()), L(std::move(l)) {
  if (L.rows() != L.cols() || n < 1) {
    throw DimensionError("generator must be square");
  }
  if (!L.allFinite()) {
    throw ArgumentError("generator has a non-finite entry");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (L(i, i) != Complex(0.0, 0.0)) {
      throw ArgumentError("generator diagonal must be exactly zero");
    }
  }
  if (hermitian_residual(L) > tol.verify_abs * std::max(1.0, max_abs(L))) {
    throw ArgumentError("generator must be Hermitian");
  }
}

double cnd_margin(const SemigroupGenerator& g) {
  const Matrix p = mean_zero_projector(g.n);
  const Matrix m = -(p * g.L * p);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool cnd_check(const SemigroupGenerator& g, const Tolerances& tol) {
  const double scale = op_norm(g.L);
  if (scale == 0.0) {
    return true;
  }
  return cnd_margin(g) >= -tol.psd_floor * scale;
}

SchurMatrix semigroup_matrix(const SemigroupGenerator& g, double t) {
  return SchurMatrix((-t * g.L.array()).exp().matrix());
}

Channel evolve(const SemigroupGenerator& g, double t, const Tolerances& tol) {
  if (!(t >= 0.0)) {
    throw ArgumentError("evolve: time must be nonnegative");
  }
  if (!cnd_check(g, tol)) {
    throw GeneratorError("generator is not conditionally negative definite");
  }
  return schur_channel(semigroup_matrix(g, t), tol);
}

double quadratic_profile(const SemigroupGenerator& g, const Vector& c, double t) {
  if (c.size() != g.n) {
    throw DimensionError("quadratic_profile: vector length must equal n");
  }
  const Complex total = c.sum();
  Complex acc = std::norm(total);
  for (Eigen::Index j = 0; j < g.n; ++j) {
    for (Eigen::Index k = 0; k < g.n; ++k) {
      acc += std::conj(c(j)) * c(k) * expm1c(-t * g.L(j, k));
    }
  }
  return acc.real();
}

std::array<Vector, 3> obstruction_probes() {
  const Complex w = omega();
  Vector cg(4), ch(4), ck(4);
  cg << 0.0, 1.0 / 3.0, std::conj(w) / 3.0, w / 3.0;
  ch << 0.0, 1.0 / 3.0, w / 3.0, std::conj(w) / 3.0;
  ck << -1.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0;
  return {cg, ch, ck};
}

std::vector<ObstructionSample> obstruction_scan(const SemigroupGenerator& g,
                                                std::span<const double> times) {
  if (g.n != 4) {
    throw ArgumentError("obstruction_scan: generator must be 4 x 4");
  }
  const auto probes = obstruction_probes();
  std::vector<ObstructionSample> out;
  out.reserve(times.size());
  for (double t : times) {
    if (!(t > 0.0)) {
      throw ArgumentError("obstruction_scan: times must be positive");
    }
    ObstructionSample s;
    s.t = t;
    s.g = quadratic_profile(g, probes[0], t);
    s.h = quadratic_profile(g, probes[1], t);
    s.k = quadratic_profile(g, probes[2], t);
    auto root = [](double v) { return std::sqrt(std::max(0.0, v)); };
    s.margin = root(s.g) - 2.0 * root(s.h) - root(s.k);
    out.push_back(s);
  }
  return out;
}

Certificate margin_certificate(const ObstructionSample& s) {
  Certificate cert;
  cert.reason = "semigroup-margin";
  cert.verdict = s.margin > 0.0 ? Verdict::NotFactorizable : Verdict::Inconclusive;
  cert.evidence = {{"t", s.t}, {"g", s.g}, {"h", s.h}, {"k", s.k}, {"margin", s.margin}};
  return cert;
}

SemigroupGenerator paper_generator() {
  const Complex w = omega();
  const Complex a = 1.0 - w;
  const Complex b = 1.0 - std::conj(w);
  Matrix l(4, 4);
  // clang-format off
  l << 0.0, 0.5, 0.5, 0.5,
       0.5, 0.0, a,   b,
       0.5, b,   0.0, a,
       0.5, a,   b,   0.0;
  // clang-format on
  return SemigroupGenerator(l);
}

}  // namespace qmarkov
