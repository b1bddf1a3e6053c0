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

#include "qmarkov/acceptance.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "qmarkov/analysis.hpp"
#include "qmarkov/channel.hpp"
#include "qmarkov/factorize.hpp"
#include "qmarkov/littlegro.hpp"
#include "qmarkov/rota.hpp"
#include "qmarkov/sampling.hpp"
#include "qmarkov/schur.hpp"
#include "qmarkov/semigroup.hpp"
#include "qmarkov/zoo.hpp"

namespace qmarkov {
namespace {

// Collects failed expectations; an empty list means the criterion passed.
class Checklist {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  template <typename T>
  void expect_below(T value, T bound, const std::string& what) {
    if (!(value < bound)) {
      std::ostringstream os;
      os << what << " = " << value << " (limit " << bound << ")";
      failures_.push_back(os.str());
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string text() const {
    std::ostringstream os;
    const auto& src = failures_.empty() ? notes_ : failures_;
    for (std::size_t i = 0; i < src.size(); ++i) os << (i ? "; " : "") << src[i];
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

double evidence(const Certificate& c, const std::string& key) {
  auto it = c.evidence.find(key);
  return it == c.evidence.end() ? -1.0 : it->second;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

void criterion_example31(Checklist& c, const AcceptanceOptions& o) {
  const Channel t(antisymmetric_kraus());
  const Channel canon = canonicalize(t, o.tol);
  const Certificate cert = non_factorizable_certificate(t, o.tol);
  c.expect(canon.kraus_count() == 3, "canonical Kraus count is 3");
  c.expect(evidence(cert, "product_rank") == 9 && evidence(cert, "product_set_size") == 9,
           "product rank 9/9");
  c.expect(evidence(cert, "min_retained_ratio") > 1e-6, "retained Gram ratio above 1e-6");
  c.expect(cert.verdict == Verdict::NotFactorizable, "verdict NOT_FACTORIZABLE");
  c.note("rank 9/9, retained ratio " + fmt(evidence(cert, "min_retained_ratio")));
}

void criterion_example32(Checklist& c, const AcceptanceOptions& o) {
  std::vector<std::pair<double, int>> cases = {{0.1, 4}, {0.3, 4}, {1.0 / 3.0, 4}, {0.5, 4},
                                               {0.9, 4}, {0.5, 5}, {0.5, 6}};
  for (const auto& [s, n] : cases) {
    const Channel t(family_Bs_kraus(s, n));
    const std::string tag = "s=" + fmt(s) + ",n=" + std::to_string(n);
    c.expect(verify_markov(t, o.tol).is_markov(), tag + " Markov");
    const Certificate cert = non_factorizable_certificate(t, o.tol);
    c.expect(cert.verdict == Verdict::NotFactorizable && evidence(cert, "product_rank") == 4 &&
                 evidence(cert, "product_set_size") == 4,
             tag + " certificate rank 4/4");
  }
  const Channel one(family_Bs_kraus(1.0, 4));
  const double dist = choi_distance(one, Channel::identity(4));
  c.expect_below(dist, 1e-12, "s=1 Choi distance to identity");
  c.expect(non_factorizable_certificate(one, o.tol).verdict == Verdict::Inconclusive,
           "s=1 certificate INCONCLUSIVE");
  c.note("7 parameter points rank 4/4; s=1 identity at distance " + fmt(dist));
}

void criterion_example33(Checklist& c, const AcceptanceOptions& o) {
  const SchurMatrix b = example_B6();
  c.expect(is_psd(b.b, o.tol), "B_6 positive semidefinite");
  const auto a = example_B6_family();
  const Channel t(a);
  c.expect(choi_distance(t, schur_channel(b, o.tol)) < 1e-10, "family realizes T_B");
  const FactorizationWitness w = car_factorize(a, o.tol);
  c.expect(w.n == 6 && w.k == 8, "witness lives in M_6 (x) M_8");
  const WitnessCheck chk = verify_witness(t, w, o.tol);
  c.expect_below(chk.unitarity_residual, 1e-10, "witness unitarity residual");
  c.expect_below(chk.action_residual, 1e-10, "witness action residual");
  const Certificate obs = conv_aut_obstruction(a, o.tol);
  c.expect(obs.verdict == Verdict::NotInConvAut && evidence(obs, "product_rank") == 6 &&
               evidence(obs, "product_set_size") == 6,
           "conv(Aut) obstruction rank 6/6");
  c.note("unitarity " + fmt(chk.unitarity_residual) + ", action " + fmt(chk.action_residual) +
         ", obstruction 6/6");
}

void criterion_semigroup(Checklist& c, const AcceptanceOptions& o) {
  const SemigroupGenerator g = paper_generator();
  c.expect(cnd_check(g, o.tol), "generator conditionally negative");
  const std::array<std::pair<double, double>, 4> pairs = {
      {{0.1, 0.2}, {0.5, 0.25}, {1.0, 1.0}, {0.01, 2.0}}};
  double worst = 0.0;
  for (const auto& [s, t] : pairs) {
    const Channel lhs = compose(evolve(g, s, o.tol), evolve(g, t, o.tol));
    worst = std::max(worst, choi_distance(lhs, evolve(g, s + t, o.tol)));
  }
  c.expect_below(worst, 1e-12, "semigroup law Choi residual");
  const std::array<double, 3> times = {1e-4, 1e-3, 1e-2};
  const auto samples = obstruction_scan(g, times);
  const double slope = samples[0].g / 1e-4;
  c.expect(slope >= 0.99 && slope <= 1.01, "g(t)/t near 1 at t = 1e-4");
  double least = samples[0].margin;
  for (const auto& s : samples) {
    c.expect(s.margin > 0.0, "margin positive at t = " + fmt(s.t));
    least = std::min(least, s.margin);
  }
  c.note("law residual " + fmt(worst) + ", g/t " + fmt(slope) + ", least margin " + fmt(least));
}

void criterion_rota(Checklist& c, const AcceptanceOptions& o) {
  const Counterexample ce = build_counterexample(5, o.seed, o.tol);
  c.expect(ce.sphere.m >= 15, "sphere family size at least 15");
  c.expect(ce.involutions.word_rank.rank == 341 && ce.involutions.word_rank.size == 341,
           "involution words full rank 341");
  c.expect(ce.report.all_hold(), "all square-product hypotheses hold");
  c.expect(ce.markov.is_markov(), "assembled channel Markov");
  c.expect(ce.markov.is_self_adjoint, "assembled channel self-adjoint");
  c.expect_below(std::max({ce.markov.unital_residual, ce.markov.trace_residual,
                           ce.markov.self_adjoint_residual}),
                 1e-9, "Markov residuals");
  c.expect(ce.square_certificate.verdict == Verdict::NotFactorizable, "T^2 certified");
  c.note("m = " + std::to_string(ce.sphere.m) + ", r = " + std::to_string(ce.involutions.r) +
         ", n = " + std::to_string(ce.report.n) + ", quartic rank " +
         std::to_string(ce.report.quartic_rank.rank) + "/" +
         std::to_string(ce.report.quartic_rank.size));
}

void criterion_converse(Checklist& c, const AcceptanceOptions& o) {
  Rng rng(o.seed);
  double worst_u = 0.0;
  double worst_a = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 1 + trial % 8;
    const auto a = random_commuting_family(n, 4, rng);
    const FactorizationWitness w = d4_converse_witness(a, o.tol);
    const Channel t(a);
    const WitnessCheck chk = verify_witness(compose(t, t), w, o.tol);
    worst_u = std::max(worst_u, chk.unitarity_residual);
    worst_a = std::max(worst_a, chk.action_residual);
  }
  c.expect_below(worst_u, 1e-10, "witness unitarity residual");
  c.expect_below(worst_a, 1e-10, "square reproduction residual");
  const int fails = d4_scalar_identity_failures();
  c.expect(fails == 0, "trace identity on all 256 tuples");
  c.note("20 families, unitarity " + fmt(worst_u) + ", action " + fmt(worst_a) +
         ", identity failures " + std::to_string(fails));
}

void criterion_compression(Checklist& c, const AcceptanceOptions& o) {
  const std::array<Channel, 3> maps = {Channel(antisymmetric_kraus()),
                                       Channel(family_Bs_kraus(1.0 / 3.0, 4)),
                                       Channel::identity(2)};
  double worst = 0.0;
  int held = 0;
  for (const auto& t : maps) {
    for (const auto& s : maps) {
      const CompressionCheck chk = compress_check(t, s, o.tol);
      worst = std::max(worst, chk.residual);
      held += chk.holds ? 1 : 0;
    }
  }
  c.expect(held == 9, "compression identity on all 9 pairs");
  c.expect_below(worst, 1e-11, "compression residual");
  c.note("9/9 pairs, worst residual " + fmt(worst));
}

void criterion_grothendieck(Checklist& c, const AcceptanceOptions& o) {
  std::ostringstream summary;
  for (const auto& [name, t] : {std::pair{"T1", paper_T1()}, std::pair{"T2", paper_T2()}}) {
    const std::string tag = name;
    c.expect_below(t.orthonormal_residual, 1e-12, tag + " orthonormality residual");
    c.expect_below(t.square_sum_residual, 1e-12, tag + " square-sum residual");
    c.expect(t.enough_elements && t.product_rank.independent && t.cb_strictly_below_one,
             tag + " frame conditions");
    const CTReport ct = check_CT_one(t, 1000, o.seed, o.tol);
    c.expect(ct.violations == 0, tag + " Bessel bound");
    c.expect_below(ct.frame_sum_residual, 1e-12, tag + " frame norm sum");
    double best = 0.0;
    for (Eigen::Index k = 1; k <= 3; ++k) {
      const CbBoundResult r = cb_lower_bound(t, k, 16, 300, o.seed);
      c.expect(r.max_evaluated <= 1.0 + 1e-9, tag + " objective ceiling");
      best = std::max(best, r.best_value);
    }
    c.expect(best < 1.0, tag + " best value below 1");
    summary << (summary.tellp() > 0 ? ", " : "") << tag << " best " << fmt(best);
  }
  c.note(summary.str());
}

void criterion_properties(Checklist& c, const AcceptanceOptions& o) {
  Rng rng(o.seed);
  const int count = o.property_instances;
  int round_trip = 0, involution = 0, closure = 0, schoenberg = 0, exclusion = 0;
  for (int i = 0; i < count; ++i) {
    const Eigen::Index n = 1 + i % 8;
    const Channel t = random_markov(n, 1 + i % 4, rng);
    const double rt = choi_distance(kraus_canonical(choi_of(t), o.tol), t);
    round_trip += rt <= 1e-9 * static_cast<double>(n * n) ? 1 : 0;
    involution += choi_distance(adjoint(adjoint(t)), t) <= 1e-12 ? 1 : 0;

    const Channel s = random_mixed_unitary(1 + i % 3, 2, rng);
    closure += verify_markov(tensor(t, s), o.tol).is_markov() ? 1 : 0;

    const SemigroupGenerator g = random_cnd_generator(2 + i % 5, rng);
    const double time = std::uniform_real_distribution<double>(0.0, 3.0)(rng);
    schoenberg += cnd_check(g, o.tol) && is_psd(semigroup_matrix(g, time).b, o.tol) ? 1 : 0;

    // Factorizable inputs (commuting self-adjoint families, real correlation
    // multipliers) and generic channels: witness and non-factorizability never co-fire.
    bool exclusive = true;
    const std::array<Channel, 3> inputs = {
        Channel(random_commuting_family(2 + i % 4, 2 + i % 3, rng)),
        Channel(real_schur_family(random_real_correlation(3 + i % 3, 1 + i % 3, rng), o.tol)),
        t};
    for (const auto& x : inputs) {
      const AnalysisReport r = analyze_channel(x, o.tol);
      exclusive = exclusive && !(r.has(Verdict::NotFactorizable) &&
                                 r.has(Verdict::FactorizableWitness));
    }
    exclusive = exclusive && analyze_channel(inputs[0], o.tol).has(Verdict::FactorizableWitness);
    exclusion += exclusive ? 1 : 0;
  }
  const auto tally = [&](int v) { return std::to_string(v) + "/" + std::to_string(count); };
  c.expect(round_trip == count, "channel round trip " + tally(round_trip));
  c.expect(involution == count, "adjoint involution " + tally(involution));
  c.expect(closure == count, "tensor Markov closure " + tally(closure));
  c.expect(schoenberg == count, "Schoenberg closure " + tally(schoenberg));
  c.expect(exclusion == count, "certificate exclusion " + tally(exclusion));
  c.expect(count >= 100, "at least 100 instances");
  c.note("round trip " + tally(round_trip) + ", involution " + tally(involution) +
         ", tensor " + tally(closure) + ", Schoenberg " + tally(schoenberg) + ", exclusion " +
         tally(exclusion));
}

struct Spec {
  const char* title;
  double budget;
  void (*run)(Checklist&, const AcceptanceOptions&);
};

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts, const std::function<void(const CriterionResult&)>& on_result) {
  const std::array<Spec, 9> specs = {{
      {"antisymmetric triple certificate", 0.1, criterion_example31},
      {"B(s) Schur family", 1.0, criterion_example32},
      {"B_6 witness and obstruction", 1.0, criterion_example33},
      {"semigroup window", 0.5, criterion_semigroup},
      {"d = 5 square-product counterexample", 60.0, criterion_rota},
      {"d <= 4 converse witness", 2.0, criterion_converse},
      {"compression identity", 1.0, criterion_compression},
      {"OH frames and cb lower bound", 120.0, criterion_grothendieck},
      {"property suites", 0.0, criterion_properties},
  }};
  std::vector<CriterionResult> out;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CriterionResult r;
    r.id = static_cast<int>(i + 1);
    r.title = specs[i].title;
    r.budget_seconds = specs[i].budget;
    Checklist c;
    const auto start = std::chrono::steady_clock::now();
    try {
      specs[i].run(c, opts);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (opts.enforce_budgets && r.budget_seconds > 0.0) {
      c.expect_below(r.seconds, r.budget_seconds, "runtime seconds");
    }
    r.passed = c.ok();
    r.detail = c.text();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << "  criterion " << r.id << "  " << r.title << "  ("
     << std::fixed << std::setprecision(3) << r.seconds << " s)  " << r.detail;
  return os.str();
}

}  // namespace qmarkov
