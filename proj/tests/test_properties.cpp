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

// Randomised invariants, 100 instances each with fixed seeds.

#include <vector>

#include "doctest.h"
#include "qmarkov/factorize.hpp"
#include "qmarkov/sampling.hpp"
#include "qmarkov/schur.hpp"
#include "support.hpp"

using namespace qmarkov;

namespace {

constexpr int kInstances = 100;

Channel conjugate_by(const Channel& t, const Matrix& u, const Matrix& v) {
  std::vector<Matrix> k;
  for (const auto& a : t.kraus()) k.push_back(u * a * v);
  return Channel(std::move(k));
}

}  // namespace

TEST_CASE("random Markov maps are Markov and survive canonicalisation") {
  const Tolerances tol;
  Rng rng(101);
  for (int i = 0; i < kInstances; ++i) {
    const Eigen::Index n = 2 + i % 3;
    const Channel t = random_markov(n, 1 + i % 4, rng);
    REQUIRE(verify_markov(t, tol).is_markov());
    const Channel c = canonicalize(t, tol);
    CHECK(testing::dense_choi_distance(t, c) < 1e-9);
    CHECK(verify_markov(adjoint(t), tol).is_markov());
    CHECK(verify_markov(compose(t, adjoint(t)), tol).is_self_adjoint);
  }
}

TEST_CASE("the product-rank verdict is invariant under unitary conjugation") {
  const Tolerances tol;
  Rng rng(102);
  for (int i = 0; i < kInstances; ++i) {
    const Channel t = random_markov(3, 2 + i % 3, rng);
    const Matrix u = haar_unitary(3, rng);
    const Matrix v = haar_unitary(3, rng);
    const Channel s = conjugate_by(t, u, v);
    CHECK(verify_markov(s, tol).is_markov());
    const auto a = non_factorizable_certificate(t, tol);
    const auto b = non_factorizable_certificate(s, tol);
    CHECK(a.verdict == b.verdict);
    CHECK(a.evidence.at("product_rank") == b.evidence.at("product_rank"));
  }
}

TEST_CASE("mixed unitary channels are never flagged") {
  const Tolerances tol;
  Rng rng(103);
  for (int i = 0; i < kInstances; ++i) {
    const Channel t = random_mixed_unitary(2 + i % 3, 1 + i % 3, rng);
    CHECK(verify_markov(t, tol).is_markov());
    CHECK(non_factorizable_certificate(t, tol).verdict == Verdict::Inconclusive);
  }
}

TEST_CASE("commuting self-adjoint families always factorize") {
  const Tolerances tol;
  Rng rng(104);
  for (int i = 0; i < kInstances; ++i) {
    const auto a = random_commuting_family(2 + i % 4, 1 + i % 4, rng);
    const Channel t = symmetric_channel(a);
    CHECK(verify_witness(t, car_factorize(a, tol), tol).valid);
    CHECK(non_factorizable_certificate(t, tol).verdict != Verdict::NotFactorizable);
  }
}

TEST_CASE("Schur channels act entrywise") {
  const Tolerances tol;
  Rng rng(105);
  for (int i = 0; i < kInstances; ++i) {
    const SchurMatrix b = random_real_correlation(2 + i % 5, 1 + i % 3, rng);
    const Channel t = schur_channel(b, tol);
    const Matrix x = gaussian_matrix(b.n, b.n, rng);
    CHECK(max_abs(t.apply(x) - schur_apply(b, x)) < 1e-12);
    CHECK(verify_markov(t, tol).is_markov());
  }
}

TEST_CASE("tensor products of Markov maps are Markov") {
  const Tolerances tol;
  Rng rng(106);
  for (int i = 0; i < kInstances; ++i) {
    const Channel s = random_markov(2, 1 + i % 2, rng);
    const Channel t = random_markov(2, 1 + i % 3, rng);
    CHECK(verify_markov(tensor(s, t), tol).is_markov());
  }
}
