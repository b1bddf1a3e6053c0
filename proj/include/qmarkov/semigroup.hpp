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
#include <span>
#include <vector>

#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"
#include "qmarkov/schur.hpp"

namespace qmarkov {

class GeneratorError : public Error {
 public:
  using Error::Error;
};

/// Hermitian, zero-diagonal L; the semigroup is T(t) = T_{C(t)} with
/// C(t)_jk = exp(-t L_jk).
struct SemigroupGenerator {
  Eigen::Index n = 0;
  Matrix L;

  /// Throws ArgumentError unless the diagonal is exactly zero and L is
  /// Hermitian within tol.verify_abs.
  explicit SemigroupGenerator(Matrix l, const Tolerances& tol = {});
};

struct ObstructionSample {
  double t = 0.0;
  double g = 0.0;
  double h = 0.0;
  double k = 0.0;
  double margin = 0.0;  // sqrt g - 2 sqrt h - sqrt k
};

/// Conditional negativity: sum L_jk c_j conj(c_k) <= 0 whenever sum c_j = 0,
/// tested as -P L P >= -psd_floor ||L|| with P the mean-zero projector.
bool cnd_check(const SemigroupGenerator& g, const Tolerances& tol);

/// Smallest eigenvalue of -P L P (for diagnostics).
double cnd_margin(const SemigroupGenerator& g);

SchurMatrix semigroup_matrix(const SemigroupGenerator& g, double t);

/// Throws GeneratorError when cnd_check fails.
Channel evolve(const SemigroupGenerator& g, double t, const Tolerances& tol);

/// f(c, t) = sum_jk conj(c_j) c_k exp(-t L_jk), evaluated as
/// |sum c|^2 + sum conj(c_j) c_k expm1(-t L_jk).
double quadratic_profile(const SemigroupGenerator& g, const Vector& c, double t);

/// The three probe vectors (0, 1/3, conj(w)/3, w/3), (0, 1/3, w/3, conj(w)/3)
/// and (-1, 1/3, 1/3, 1/3), w = exp(2 pi i / 3).
std::array<Vector, 3> obstruction_probes();

/// Throws ArgumentError unless n = 4 and all times are positive.
std::vector<ObstructionSample> obstruction_scan(const SemigroupGenerator& g,
                                                std::span<const double> times);

/// NOT_FACTORIZABLE when the margin is positive, INCONCLUSIVE otherwise.
Certificate margin_certificate(const ObstructionSample& s);

SemigroupGenerator paper_generator();

}  // namespace qmarkov
