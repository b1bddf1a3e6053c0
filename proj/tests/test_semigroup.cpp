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
#include <vector>

#include "doctest.h"
#include "qmarkov/factorize.hpp"
#include "qmarkov/sampling.hpp"
#include "qmarkov/semigroup.hpp"

using namespace qmarkov;

namespace {

struct Frozen {
  double t, g, h, k, margin;
};

// 50-digit mpmath oracle.
constexpr Frozen kFrozen[] = {
    {1e-4, 9.99900004999875e-5, 4.99950002499925e-9, 2.5000416536465885e-9,
     0.0098080853106189966},
    {1e-3, 0.000999000499875, 4.995002499250125e-7, 2.5004153653382913e-7,
     0.029693420999070167},
    {1e-2, 0.0099004987500124466, 4.9502492512499933e-5, 2.5040372110426799e-5,
     0.080425612864449747},
};

}  // namespace

TEST_CASE("CND check on trivial and failing generators") {
  const Tolerances tol;
  CHECK(cnd_check(SemigroupGenerator(Matrix::Zero(3, 3)), tol));
  Matrix l(2, 2);
  l << 0.0, -1.0, -1.0, 0.0;
  CHECK_FALSE(cnd_check(SemigroupGenerator(l), tol));
  CHECK(cnd_margin(SemigroupGenerator(l)) < 0.0);
  CHECK_THROWS_AS(evolve(SemigroupGenerator(l), 0.5, tol), GeneratorError);
}

TEST_CASE("generator constructor validation") {
  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  CHECK_THROWS_AS(SemigroupGenerator{diag}, ArgumentError);
  Matrix skew = Matrix::Zero(2, 2);
  skew(0, 1) = 1.0;
  skew(1, 0) = 2.0;
  CHECK_THROWS_AS(SemigroupGenerator{skew}, ArgumentError);
  CHECK_THROWS_AS(SemigroupGenerator{Matrix::Zero(2, 3)}, Error);
}

TEST_CASE("the 4 x 4 generator is conditionally negative definite") {
  const Tolerances tol;
  const SemigroupGenerator g = paper_generator();
  CHECK(cnd_check(g, tol));
  // eig(-PLP) = {0, 0, 0, 3}
  CHECK(cnd_margin(g) == doctest::Approx(0.0).epsilon(1e-12));
  const Matrix p = Matrix::Identity(4, 4) - Matrix::Constant(4, 4, 0.25);
  const auto e = hermitian_eig(-(p * g.L * p), tol).values;
  CHECK(e(3) == doctest::Approx(3.0));
  CHECK(std::abs(e(2)) < 1e-12);
}

TEST_CASE("probe values match the high-precision oracle") {
  const SemigroupGenerator g = paper_generator();
  std::vector<double> times;
  for (const auto& f : kFrozen) times.push_back(f.t);
  const auto scan = obstruction_scan(g, times);
  REQUIRE(scan.size() == 3);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const auto& f = kFrozen[i];
    CAPTURE(f.t);
    CHECK(scan[i].g == doctest::Approx(f.g).epsilon(1e-10));
    CHECK(scan[i].h == doctest::Approx(f.h).epsilon(1e-8));
    CHECK(scan[i].k == doctest::Approx(f.k).epsilon(1e-8));
    CHECK(scan[i].margin == doctest::Approx(f.margin).epsilon(1e-8));
    const Certificate c = margin_certificate(scan[i]);
    CHECK(c.verdict == Verdict::NotFactorizable);
    CHECK(c.reason == "semigroup-margin");
  }
}

TEST_CASE("quadratic profile agrees with the direct sum") {
  const SemigroupGenerator g = paper_generator();
  const auto probes = obstruction_probes();
  for (double t : {0.05, 0.3, 1.0}) {
    const Matrix c = semigroup_matrix(g, t).b;
    for (const auto& v : probes) {
      const double direct = (v.adjoint() * c * v)(0, 0).real();
      CHECK(quadratic_profile(g, v, t) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("margin turns negative for large times") {
  const SemigroupGenerator g = paper_generator();
  const std::vector<double> times{5.0};
  const auto s = obstruction_scan(g, times);
  CHECK(s[0].margin < 0.0);
  CHECK(margin_certificate(s[0]).verdict == Verdict::Inconclusive);
}

TEST_CASE("scan argument errors") {
  const std::vector<double> ok{0.1};
  CHECK_THROWS_AS(obstruction_scan(SemigroupGenerator(Matrix::Zero(3, 3)), ok), ArgumentError);
  const std::vector<double> bad{0.0};
  CHECK_THROWS_AS(obstruction_scan(paper_generator(), bad), ArgumentError);
}

TEST_CASE("semigroup law and Markov property") {
  const Tolerances tol;
  const SemigroupGenerator g = paper_generator();
  const Matrix a = semigroup_matrix(g, 0.2).b;
  const Matrix b = semigroup_matrix(g, 0.5).b;
  CHECK(max_abs(a.cwiseProduct(b) - semigroup_matrix(g, 0.7).b) < 1e-14);
  CHECK(max_abs(semigroup_matrix(g, 0.0).b - Matrix::Ones(4, 4)) == 0.0);
  const Channel t = evolve(g, 0.01, tol);
  CHECK(verify_markov(t, tol).is_markov());
  CHECK(non_factorizable_certificate(t, tol).verdict != Verdict::FactorizableWitness);
}

TEST_CASE("random CND generators evolve into Markov maps") {
  const Tolerances tol;
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const SemigroupGenerator g = random_cnd_generator(2 + trial % 5, rng);
    CHECK(cnd_check(g, tol));
    for (double t : {0.01, 0.5, 3.0}) {
      CHECK(is_psd(semigroup_matrix(g, t).b, tol));
      CHECK(verify_markov(evolve(g, t, tol), tol).is_markov());
    }
  }
}
