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

#include <vector>

#include "qmarkov/numerics.hpp"

namespace qmarkov {

/// A linear map on M_n given by a Kraus family, acting as x -> sum_i a_i^* x a_i.
class Channel {
 public:
  explicit Channel(std::vector<Matrix> kraus);

  static Channel identity(Eigen::Index n);

  Eigen::Index dim() const { return dim_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  std::size_t kraus_count() const { return kraus_.size(); }

  Matrix apply(const Matrix& x) const;

 private:
  Eigen::Index dim_;
  std::vector<Matrix> kraus_;
};

/// Block (i, j) of mat is T(e_ij).
struct ChoiMatrix {
  Eigen::Index dim = 0;
  Matrix mat;
};

struct MarkovReport {
  bool is_cp = true;
  bool is_unital = false;
  bool is_trace_preserving = false;
  bool is_self_adjoint = false;
  int kraus_rank = 0;
  double unital_residual = 0.0;
  double trace_residual = 0.0;
  double self_adjoint_residual = 0.0;

  bool is_markov() const { return is_cp && is_unital && is_trace_preserving; }
};

ChoiMatrix choi_of(const Channel& t);

/// Kraus family read off the Choi spectrum: columns scaled by sqrt(eigenvalue),
/// descending eigenvalue order, each operator phase-normalised so its first
/// significant entry is real positive. Throws CpViolation on a non-PSD input.
Channel kraus_canonical(const ChoiMatrix& c, const Tolerances& tol);

/// Same canonical family computed from the Kraus Gram matrix; never forms the
/// n^2 x n^2 Choi matrix, so it scales to large n.
Channel canonicalize(const Channel& t, const Tolerances& tol);

MarkovReport verify_markov(const Channel& t, const Tolerances& tol);

/// Trace-dual map: Kraus {a_i^*}.
Channel adjoint(const Channel& t);

/// s after t: Kraus {a_i b_j} with a_i from t and b_j from s.
Channel compose(const Channel& s, const Channel& t);

/// Kraus {a_i (x) b_j}.
Channel tensor(const Channel& t, const Channel& s);

inline constexpr Eigen::Index kDefaultDimensionCap = 4096;

Channel tensor_power(const Channel& t, int k,
                     Eigen::Index dimension_cap = kDefaultDimensionCap);

/// Frobenius norm of choi_of(a) - choi_of(b), computed through a thin QR of
/// the stacked Kraus vectors instead of the full Choi matrices.
double choi_distance(const Channel& a, const Channel& b);

/// Largest entrywise deviation of T(e_ij) from target(e_ij) over matrix units.
template <typename Map>
double matrix_unit_residual(const Channel& t, const Map& target) {
  const Eigen::Index n = t.dim();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Matrix e = matrix_unit(n, i, j);
      worst = std::max(worst, max_abs(t.apply(e) - target(e)));
    }
  }
  return worst;
}

/// (1 (x) tau_l) over the second tensor factor of M_m (x) M_l.
Matrix partial_trace_second(const Matrix& z, Eigen::Index m, Eigen::Index l);

struct CompressionCheck {
  bool holds = false;
  double residual = 0.0;
};

/// Checks iota^* (T (x) S) iota = T on matrix units, iota(x) = x (x) 1_l.
CompressionCheck compress_check(const Channel& t, const Channel& s,
                                const Tolerances& tol);

}  // namespace qmarkov
