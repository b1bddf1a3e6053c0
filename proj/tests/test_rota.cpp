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

#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "qmarkov/factorize.hpp"
#include "qmarkov/rota.hpp"
#include "qmarkov/sampling.hpp"

using namespace qmarkov;

namespace {

const Counterexample& seed_one() {
  static const Counterexample ce = build_counterexample(5, 1, Tolerances{});
  return ce;
}

std::vector<Matrix> scaled_anticommuting(int d) {
  auto g = jordan_wigner(d);
  for (auto& x : g) x /= std::sqrt(static_cast<double>(d));
  return g;
}

}  // namespace

TEST_CASE("word counts for five involutions") {
  const auto words = involution_words(5);
  CHECK(words.size() == 341);
  std::set<std::vector<int>> unique(words.begin(), words.end());
  CHECK(unique.size() == words.size());
  for (const auto& w : words) {
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] != w[i - 1]);
  }
}

TEST_CASE("d = 5 counterexample with seed 1") {
  const auto& ce = seed_one();
  const auto& rep = ce.report;
  CHECK(ce.markov.is_markov());
  CHECK(ce.markov.is_self_adjoint);
  CHECK(rep.d == 5);
  CHECK(rep.squares_central);
  CHECK(rep.products_independent);
  CHECK(rep.quartic_independent);
  CHECK(rep.enough_generators);
  CHECK(rep.all_hold());
  CHECK(rep.product_rank.rank == 25);
  CHECK(rep.quartic_rank.rank == 435);
  const std::array<int, 6> sizes{320, 60, 20, 20, 10, 5};
  CHECK(rep.class_sizes == sizes);
  CHECK(rep.class_ranks == sizes);
  CHECK(ce.square_certificate.verdict == Verdict::NotFactorizable);
  CHECK(ce.square_certificate.reason == "square-products");
  CHECK(ce.t.dim() == ce.sphere.m * ce.involutions.r);
  CHECK(ce.t.dim() == rep.n);
}

TEST_CASE("sphere family meets its rank conditions") {
  const auto& s = seed_one().sphere;
  CHECK(s.b.size() == 5);
  CHECK(s.quartic_moments.independent);
  CHECK(s.quartic_moments.size == 15);
  CHECK(s.square_products.size == 10);
  CHECK(s.square_products.independent);
  CHECK(s.min_pair_ratio > 0.0);
  Matrix sum = Matrix::Zero(s.m, s.m);
  for (const auto& b : s.b) {
    CHECK(max_abs(b.imag().cast<Complex>()) == 0.0);
    sum += b * b;
  }
  CHECK(max_abs(sum - Matrix::Identity(s.m, s.m)) < 1e-12);
  for (Eigen::Index c = 0; c < s.points.cols(); ++c) {
    CHECK(s.points.col(c).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("involution family: distinct words and independent permutation matrices") {
  const auto& f = seed_one().involutions;
  CHECK(f.r >= 20);
  CHECK(f.perms.size() == 5);
  CHECK(f.distinct_words == 341);
  CHECK(f.word_rank.independent);
  for (const auto& p : f.perms) {
    REQUIRE(static_cast<Eigen::Index>(p.size()) == f.r);
    for (int x = 0; x < static_cast<int>(p.size()); ++x) {
      CHECK(p[p[x]] == x);
      CHECK(p[x] != x);
    }
  }
  for (const auto& u : f.u) {
    CHECK(unitarity_residual(u) < 1e-14);
    CHECK(hermitian_residual(u) == 0.0);
  }
}

TEST_CASE("counterexample is reproducible from the seed") {
  const Counterexample again = build_counterexample(5, 1, Tolerances{});
  CHECK(again.involutions.perms == seed_one().involutions.perms);
  CHECK(again.sphere.m == seed_one().sphere.m);
}

TEST_CASE("four generators are never enough") {
  const Tolerances tol;
  const auto rep = check_lemma52(scaled_anticommuting(4), tol);
  CHECK_FALSE(rep.enough_generators);
  CHECK(rep.squares_central);
  CHECK_FALSE(rep.all_hold());
  CHECK(square_certificate(rep).verdict == Verdict::Inconclusive);
}

TEST_CASE("scalar family has dependent products") {
  const Tolerances tol;
  const double c = 1.0 / std::sqrt(5.0);
  std::vector<Matrix> a(5, c * Matrix::Identity(3, 3));
  const auto rep = check_lemma52(a, tol);
  CHECK(rep.squares_central);
  CHECK_FALSE(rep.products_independent);
  CHECK(rep.product_rank.rank == 1);
  CHECK_FALSE(rep.all_hold());
}

TEST_CASE("check_lemma52 rejects non-Markov families") {
  const Tolerances tol;
  CHECK_THROWS_AS(check_lemma52({Matrix::Identity(2, 2), Matrix::Identity(2, 2)}, tol),
                  ArgumentError);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(check_lemma52({skew}, tol), ArgumentError);
}

TEST_CASE("sphere search argument checks") {
  CHECK_THROWS_AS(sphere_b_family(4, 1, Tolerances{}), ArgumentError);
  SearchLimits tiny;
  tiny.max_points = 10;
  CHECK_THROWS_AS(sphere_b_family(5, 1, Tolerances{}, tiny), SearchFailure);
}

TEST_CASE("d <= 4 converse: the square factorizes") {
  const Tolerances tol;
  CHECK(d4_scalar_identity_failures() == 0);
  for (int d = 2; d <= 4; ++d) {
    const auto a = scaled_anticommuting(d);
    const Channel t(a);
    const FactorizationWitness w = d4_converse_witness(a, tol);
    CHECK(w.k == 4);
    CHECK(verify_witness(compose(t, t), w, tol).valid);
  }
  Rng rng(40);
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = random_commuting_family(3, 4, rng);
    const Channel t(a);
    CHECK(verify_witness(compose(t, t), d4_converse_witness(a, tol), tol).valid);
  }
  CHECK_THROWS_AS(d4_converse_witness(scaled_anticommuting(5), tol), ArgumentError);
}
