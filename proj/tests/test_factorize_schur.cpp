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
#include "qmarkov/schur.hpp"
#include "qmarkov/zoo.hpp"
#include "support.hpp"

using namespace qmarkov;

TEST_CASE("antisymmetric triple is certified non-factorizable") {
  const Tolerances tol;
  const Channel t(antisymmetric_kraus());
  CHECK(verify_markov(t, tol).is_markov());
  const Certificate c = non_factorizable_certificate(t, tol);
  CHECK(c.verdict == Verdict::NotFactorizable);
  CHECK(c.reason == "product-independence");
  CHECK(c.evidence.at("product_rank") == 9);
  // numpy oracle: squared singular-value ratio of the product family
  CHECK(c.evidence.at("min_retained_ratio") == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(testing::svd_rank(testing::products_adjoint(antisymmetric_kraus()), 1e-8) == 9);
}

TEST_CASE("shift triple is self-adjoint and non-factorizable") {
  const Tolerances tol;
  const Channel t(shift_kraus());
  const auto m = verify_markov(t, tol);
  CHECK(m.is_markov());
  CHECK(m.is_self_adjoint);
  CHECK(testing::dense_choi_distance(t, adjoint(t)) < 1e-14);
  const Certificate c = non_factorizable_certificate(t, tol);
  CHECK(c.verdict == Verdict::NotFactorizable);
  CHECK(c.evidence.at("product_rank") == 9);
}

TEST_CASE("non-factorizability test is silent on automorphisms and mixtures") {
  const Tolerances tol;
  CHECK(non_factorizable_certificate(Channel::identity(3), tol).verdict == Verdict::Inconclusive);
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const Channel t = random_mixed_unitary(3, 2, rng);
    CHECK(non_factorizable_certificate(t, tol).verdict == Verdict::Inconclusive);
  }
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;
  CHECK_THROWS_AS(non_factorizable_certificate(Channel({a}), tol), PreconditionError);
}

TEST_CASE("verdict names round-trip") {
  for (Verdict v : {Verdict::NotFactorizable, Verdict::FactorizableWitness, Verdict::NotInConvAut,
                    Verdict::Inconclusive}) {
    CHECK(verdict_from_string(to_string(v)) == v);
  }
  CHECK(to_string(Verdict::NotFactorizable) == "NOT_FACTORIZABLE");
  CHECK_THROWS_AS(verdict_from_string("MAYBE"), ArgumentError);
}

TEST_CASE("ancilla traces") {
  const AncillaTrace u = AncillaTrace::uniform(3);
  CHECK(u.dim() == 3);
  CHECK(std::abs(u(Matrix::Identity(3, 3)) - 1.0) < 1e-15);
  const AncillaTrace d = AncillaTrace::diagonal({0.25, 0.75});
  Matrix y = Matrix::Zero(2, 2);
  y(1, 1) = 2.0;
  y(0, 1) = 5.0;
  CHECK(std::abs(d(y) - 1.5) < 1e-15);
  CHECK_THROWS_AS(AncillaTrace::diagonal({0.5, 0.6}).validate(), ArgumentError);
  CHECK_THROWS_AS(AncillaTrace::diagonal({1.5, -0.5}).validate(), ArgumentError);
}

TEST_CASE("Jordan-Wigner generators anticommute") {
  for (int d = 1; d <= 6; ++d) {
    const auto g = jordan_wigner(d);
    REQUIRE(static_cast<int>(g.size()) == d);
    for (int i = 0; i < d; ++i) {
      CHECK(unitarity_residual(g[i]) < 1e-14);
      CHECK(hermitian_residual(g[i]) < 1e-14);
      for (int j = 0; j < d; ++j) {
        const Matrix ac = g[i] * g[j] + g[j] * g[i];
        const Matrix want = (i == j ? 2.0 : 0.0) * Matrix::Identity(g[i].rows(), g[i].cols());
        CHECK(max_abs(ac - want) < 1e-14);
      }
    }
  }
  CHECK_THROWS_AS(jordan_wigner(0), ArgumentError);
}

TEST_CASE("CAR witness for the commuting triple on M_6") {
  const Tolerances tol;
  const auto a = example_B6_family();
  const auto res = commuting_family_residuals(a);
  CHECK(res.self_adjoint < 1e-14);
  CHECK(res.commutator < 1e-14);
  CHECK(res.square_sum < 1e-14);

  const Channel t = symmetric_channel(a);
  const FactorizationWitness w = car_factorize(a, tol);
  const WitnessCheck chk = verify_witness(t, w, tol);
  CHECK(chk.valid);
  CHECK(chk.unitarity_residual < 1e-12);
  CHECK(chk.action_residual < 1e-12);

  // Independent check of the witness action on a random input.
  Rng rng(1);
  const Matrix x = gaussian_matrix(6, 6, rng);
  CHECK(max_abs(witness_action(w, x) - t.apply(x)) < 1e-12);

  const Certificate c = conv_aut_obstruction(a, tol);
  CHECK(c.verdict == Verdict::NotInConvAut);
  CHECK(c.evidence.at("product_rank") == 6);
}

TEST_CASE("CAR factorization on random commuting families") {
  const Tolerances tol;
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_commuting_family(4, 2 + trial % 3, rng);
    const Channel t = symmetric_channel(a);
    CHECK(verify_markov(t, tol).is_markov());
    CHECK(verify_witness(t, car_factorize(a, tol), tol).valid);
  }
}

TEST_CASE("commuting-family preconditions") {
  const Tolerances tol;
  CHECK_THROWS_AS(car_factorize({}, tol), ArgumentError);
  CHECK_THROWS_AS(car_factorize(antisymmetric_kraus(), tol), ArgumentError);
  Matrix half = 0.5 * Matrix::Identity(2, 2);
  CHECK_THROWS_AS(car_factorize({half}, tol), ArgumentError);
  const Matrix one = Matrix::Identity(2, 2);
  CHECK(conv_aut_obstruction({one}, tol).verdict == Verdict::Inconclusive);
}

TEST_CASE("a tampered witness is rejected") {
  const Tolerances tol;
  const auto a = example_B6_family();
  FactorizationWitness w = car_factorize(a, tol);
  w.u(0, 0) += 1e-3;
  CHECK_FALSE(verify_witness(symmetric_channel(a), w, tol).valid);
  FactorizationWitness bad = w;
  bad.n = 5;
  CHECK_THROWS_AS(verify_witness(symmetric_channel(a), bad, tol), DimensionError);
}

TEST_CASE("mixtures of unitaries verify as convex combinations") {
  const Tolerances tol;
  Rng rng(8);
  const Matrix u1 = haar_unitary(3, rng);
  const Matrix u2 = haar_unitary(3, rng);
  const Channel t({std::sqrt(0.3) * u1, std::sqrt(0.7) * u2});
  CHECK(verify_conv_aut_combination(t, {u1, u2}, {0.3, 0.7}, tol).holds);
  CHECK_FALSE(verify_conv_aut_combination(t, {u1, u2}, {0.5, 0.5}, tol).holds);
}

// ---- Schur multipliers -------------------------------------------------

TEST_CASE("B(1/3) on M_4 matches the numpy oracle") {
  const Tolerances tol;
  const SchurMatrix b = family_Bs(1.0 / 3.0, 4);
  const double r = 1.0 / std::sqrt(3.0);
  CHECK(std::abs(b.b(1, 0) - r) < 1e-14);
  CHECK(std::abs(b.b(1, 1) - 1.0) < 1e-14);
  CHECK(std::abs(b.b(1, 2) - Complex(0.0, r)) < 1e-14);
  CHECK(std::abs(b.b(1, 3) - Complex(0.0, -r)) < 1e-14);
  const auto e = hermitian_eig(b.b, tol).values;
  CHECK(std::abs(e(0)) < 1e-12);
  CHECK(std::abs(e(1)) < 1e-12);
  CHECK(e(2) == doctest::Approx(2.0));
  CHECK(e(3) == doctest::Approx(2.0));

  const Channel t = schur_channel(b, tol);
  CHECK(t.kraus_count() == 2);
  CHECK(verify_markov(t, tol).is_markov());
  CHECK(non_factorizable_certificate(t, tol).verdict == Verdict::NotFactorizable);
  Rng rng(6);
  const Matrix x = gaussian_matrix(4, 4, rng);
  CHECK(max_abs(t.apply(x) - schur_apply(b, x)) < 1e-12);
}

TEST_CASE("B(s) family over a parameter grid") {
  const Tolerances tol;
  for (int n = 4; n <= 7; ++n) {
    for (double s : {0.1, 0.2, 0.5, 0.9}) {
      const Channel t = schur_channel(family_Bs(s, n), tol);
      CHECK(verify_markov(t, tol).is_markov());
      CHECK(non_factorizable_certificate(t, tol).verdict == Verdict::NotFactorizable);
    }
  }
  CHECK_THROWS_AS(family_Bs(1.5, 4), ArgumentError);
  CHECK_THROWS_AS(family_Bs(0.5, 3), ArgumentError);
}

TEST_CASE("B_6 is the symmetric circulant from the numpy oracle") {
  const Tolerances tol;
  const SchurMatrix b = example_B6();
  const RealMatrix s = b.b.real() * std::sqrt(5.0);
  CHECK(max_abs(b.b.imag().cast<Complex>()) == 0.0);
  CHECK(s(1, 5) == doctest::Approx(1.0));
  CHECK(s(5, 1) == doctest::Approx(1.0));
  CHECK(hermitian_residual(b.b) == 0.0);
  // Entries 1..5 form a symmetric circulant block.
  for (int i = 1; i < 6; ++i) {
    for (int j = 1; j < 6; ++j) {
      const int ip = 1 + (i % 5), jp = 1 + (j % 5);
      CHECK(s(i, j) == doctest::Approx(s(ip, jp)));
    }
  }
  Matrix sum = Matrix::Zero(6, 6);
  for (const auto& x : example_B6_kraus()) {
    const Vector v = x.diagonal();
    sum += v.conjugate() * v.transpose();
  }
  CHECK(max_abs(sum - b.b) < 1e-14);
  const auto e = hermitian_eig(b.b, tol).values;
  for (int i = 0; i < 3; ++i) CHECK(std::abs(e(i)) < 1e-12);
  for (int i = 3; i < 6; ++i) CHECK(e(i) == doctest::Approx(2.0));
}

TEST_CASE("Gram unitaries realise B_6") {
  const Tolerances tol;
  const auto a = example_B6_family();
  const auto g = jordan_wigner(3);
  std::vector<Matrix> u;
  for (int j = 0; j < 6; ++j) {
    Matrix uj = Matrix::Zero(g[0].rows(), g[0].cols());
    for (int i = 0; i < 3; ++i) uj += a[i](j, j) * g[i];
    u.push_back(uj);
  }
  const GramCheck chk = verify_gram_unitaries(example_B6(), u, tol);
  CHECK(chk.holds);
  REQUIRE(chk.witness.has_value());
  CHECK(verify_witness(schur_channel(example_B6(), tol), *chk.witness, tol).valid);
  u[0] = -u[0];
  CHECK_FALSE(verify_gram_unitaries(example_B6(), u, tol).holds);
  u.pop_back();
  CHECK_THROWS_AS(verify_gram_unitaries(example_B6(), u, tol), ArgumentError);
}

TEST_CASE("real Schur family reproduces a real correlation matrix") {
  const Tolerances tol;
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const SchurMatrix b = random_real_correlation(5, 3, rng);
    const auto fam = real_schur_family(b, tol);
    Matrix sum = Matrix::Zero(5, 5);
    for (const auto& x : fam) {
      const Vector v = x.diagonal();
      sum += v * v.transpose();
    }
    CHECK(max_abs(sum - b.b) < 1e-12);
    CHECK(static_cast<int>(fam.size()) <= 3);
  }
  CHECK_THROWS_AS(real_schur_family(family_Bs(1.0 / 3.0, 4), tol), ArgumentError);
}

TEST_CASE("Schur input validation") {
  const Tolerances tol;
  Matrix notpsd = Matrix::Identity(2, 2);
  notpsd(0, 1) = notpsd(1, 0) = 2.0;
  CHECK_THROWS_AS(schur_channel(SchurMatrix(notpsd), tol), CpViolation);
  CHECK_THROWS_AS(schur_channel(SchurMatrix(2.0 * Matrix::Identity(2, 2)), tol),
                  MarkovViolation);
  CHECK_THROWS_AS(schur_channel(SchurMatrix(Matrix::Zero(2, 3)), tol), DimensionError);
}

TEST_CASE("Fourier matrix on Z_5") {
  const Matrix h = fourier5();
  CHECK(max_abs(h.adjoint() * h - 5.0 * Matrix::Identity(5, 5)) < 1e-12);
}
