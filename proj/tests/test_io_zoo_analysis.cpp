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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "qmarkov/analysis.hpp"
#include "qmarkov/io.hpp"
#include "qmarkov/sampling.hpp"
#include "qmarkov/zoo.hpp"
#include "support.hpp"

using namespace qmarkov;

namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qmarkov_test_" + name);
}

}  // namespace

TEST_CASE("matrix JSON round trip and plain numbers") {
  Rng rng(1);
  const Matrix m = gaussian_matrix(2, 3, rng);
  CHECK(max_abs(matrix_from_json(matrix_to_json(m), "m") - m) == 0.0);
  const Json plain = Json::parse("[[1, 2], [3.5, [0, -1]]]");
  const Matrix p = matrix_from_json(plain, "p");
  CHECK(p(1, 0) == Complex(3.5, 0.0));
  CHECK(p(1, 1) == Complex(0.0, -1.0));
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]"), "ragged"), InputError);
  CHECK_THROWS_AS(matrix_from_json(Json::parse("[[\"x\"]]"), "str"), InputError);
}

TEST_CASE("channel JSON: Kraus and Choi forms agree") {
  const Tolerances tol;
  const Channel t(antisymmetric_kraus());
  const Channel k = channel_from_json(channel_to_json(t), tol);
  CHECK(testing::dense_choi_distance(t, k) < 1e-14);
  const Json choi = {{"dim", 3}, {"choi", matrix_to_json(choi_of(t).mat)}};
  const Channel c = channel_from_json(choi, tol);
  CHECK(testing::dense_choi_distance(t, c) < 1e-10);
  CHECK_THROWS_AS(channel_from_json(Json{{"dim", 3}}, tol), InputError);
  CHECK_THROWS_AS(channel_from_json(Json{{"kraus", Json::array()}}, tol), InputError);
  Json wrong = channel_to_json(t);
  wrong["dim"] = 2;
  CHECK_THROWS_AS(channel_from_json(wrong, tol), InputError);
}

TEST_CASE("Schur, generator, witness and certificate round trips") {
  const Tolerances tol;
  const SchurMatrix b = example_B6();
  CHECK(max_abs(schur_from_json(schur_to_json(b)).b - b.b) == 0.0);
  const SemigroupGenerator g = paper_generator();
  CHECK(max_abs(generator_from_json(generator_to_json(g), tol).L - g.L) == 0.0);

  const auto a = example_B6_family();
  const FactorizationWitness w = car_factorize(a, tol);
  const FactorizationWitness w2 = witness_from_json(witness_to_json(w));
  CHECK(w2.n == w.n);
  CHECK(w2.k == w.k);
  CHECK(w2.trace.weights == w.trace.weights);
  CHECK(verify_witness(symmetric_channel(a), w2, tol).valid);

  Certificate c;
  c.verdict = Verdict::NotInConvAut;
  c.reason = "commuting-product-independence";
  c.evidence["product_rank"] = 6;
  c.witness = w;
  const Certificate c2 = certificate_from_json(certificate_to_json(c));
  CHECK(c2.verdict == c.verdict);
  CHECK(c2.reason == c.reason);
  CHECK(c2.evidence == c.evidence);
  CHECK(c2.witness.has_value());

  Tolerances custom;
  custom.rank_rel = 1e-7;
  CHECK(tolerances_from_json(tolerances_to_json(custom)).rank_rel == 1e-7);
}

TEST_CASE("JSON files: write, read and syntax errors") {
  const auto path = temp_path("roundtrip.json");
  write_json_file(path.string(), Json{{"x", 1}});
  CHECK(read_json_file(path.string())["x"] == 1);
  const auto broken = temp_path("broken.json");
  {
    std::ofstream out(broken);
    out << "{\n  \"x\": [1, 2\n}\n";
  }
  try {
    read_json_file(broken.string());
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find(broken.string() + ":") == 0);
  }
  CHECK_THROWS_AS(read_json_file(temp_path("missing.json").string()), InputError);
  std::filesystem::remove(path);
  std::filesystem::remove(broken);
}

TEST_CASE("zoo specs parse and resolve") {
  const ZooRequest r = parse_zoo_spec("zoo:example-3.2?s=0.25&n=6");
  CHECK(r.name == "example-3.2");
  CHECK(r.params.at("s") == 0.25);
  CHECK(r.params.at("n") == 6.0);
  CHECK(is_zoo_spec("zoo:T1"));
  CHECK_FALSE(is_zoo_spec("file.json"));
  CHECK_THROWS_AS(zoo_lookup("nonexistent"), InputError);
  CHECK_THROWS_AS(zoo_channel("zoo:example-3.1?q=2"), InputError);
  CHECK(zoo_channel("zoo:example-3.2?s=0.25&n=6").dim() == 6);
  CHECK(zoo_generator("zoo:semigroup-generator").n == 4);
  CHECK(zoo_frame("zoo:T2").d() == 2);
  CHECK_THROWS_AS(zoo_channel("zoo:T1"), InputError);
}

TEST_CASE("every zoo entry produces its expected verdicts") {
  const Tolerances tol;
  for (const auto& e : zoo_entries()) {
    CAPTURE(e.name);
    if (e.kind != ZooKind::Channel) continue;
    const Channel t = zoo_channel("zoo:" + e.name, tol);
    const AnalysisReport r = analyze_channel(t, tol);
    CHECK(r.markov.is_markov());
    for (const auto& want : e.expected) {
      const Certificate* c = r.find(want.verdict);
      REQUIRE(c != nullptr);
      CHECK(c->reason == want.reason);
    }
  }
}

TEST_CASE("analysis of the commuting triple carries a valid witness") {
  const Tolerances tol;
  const Channel t = zoo_channel("zoo:example-3.3", tol);
  const AnalysisReport r = analyze_channel(t, tol);
  CHECK_FALSE(r.has(Verdict::NotFactorizable));
  const Certificate* w = r.find(Verdict::FactorizableWitness);
  REQUIRE(w != nullptr);
  REQUIRE(w->witness.has_value());
  CHECK(check_supplied_witness(t, *w->witness, tol).verdict == Verdict::FactorizableWitness);
  CHECK(r.has(Verdict::NotInConvAut));

  const Json j = report_to_json(r, t, tol);
  CHECK(j["version"] == kVersion);
  CHECK(j["certificates"].size() == r.certificates.size());
  const Channel back = channel_from_json(j["channel"], tol);
  CHECK(testing::dense_choi_distance(t, back) < 1e-14);
  CHECK_FALSE(summarize(r).empty());
}

TEST_CASE("analysis on identity and non-Markov input") {
  const Tolerances tol;
  const AnalysisReport id = analyze_channel(Channel::identity(3), tol);
  CHECK(id.is_identity);
  CHECK_FALSE(id.has(Verdict::NotFactorizable));
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;
  const AnalysisReport bad = analyze_channel(Channel({a}), tol);
  CHECK(bad.certificates.empty());
  CHECK_FALSE(bad.notes.empty());
}

TEST_CASE("analysis never contradicts itself on random Markov maps") {
  const Tolerances tol;
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    const Channel t = trial % 2 == 0 ? random_markov(3, 1 + trial % 4, rng)
                                     : symmetric_channel(random_commuting_family(3, 3, rng));
    AnalysisReport r;
    CHECK_NOTHROW(r = analyze_channel(t, tol));
    CHECK_FALSE((r.has(Verdict::NotFactorizable) && r.has(Verdict::FactorizableWitness)));
  }
}
