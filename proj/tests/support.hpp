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

// Reference implementations used as oracles by the unit tests. They favour
// directness over speed and share no code paths with the library internals.

#pragma once

#include <span>
#include <vector>

#include <Eigen/SVD>

#include "qmarkov/channel.hpp"

namespace qmarkov::testing {

// Choi matrix assembled block by block from T(e_ij).
inline Matrix choi_blockwise(const Channel& t) {
  const Eigen::Index n = t.dim();
  Matrix c(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      c.block(i * n, j * n, n, n) = t.apply(matrix_unit(n, i, j));
    }
  }
  return c;
}

inline double dense_choi_distance(const Channel& a, const Channel& b) {
  return (choi_blockwise(a) - choi_blockwise(b)).norm();
}

// Rank by singular values of the stacked, flattened family.
inline int svd_rank(std::span<const Matrix> mats, double rel) {
  const Eigen::Index len = mats.front().size();
  Matrix stacked(len, static_cast<Eigen::Index>(mats.size()));
  for (std::size_t k = 0; k < mats.size(); ++k) {
    stacked.col(static_cast<Eigen::Index>(k)) = vec_rows(mats[k]);
  }
  Eigen::JacobiSVD<Matrix> svd(stacked);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) r += s(i) > rel * s(0) ? 1 : 0;
  return r;
}

inline std::vector<Matrix> products_adjoint(const std::vector<Matrix>& a) {
  std::vector<Matrix> out;
  for (const auto& x : a) {
    for (const auto& y : a) out.push_back(x.adjoint() * y);
  }
  return out;
}

}  // namespace qmarkov::testing
