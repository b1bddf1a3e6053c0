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

// qmarkov command-line front end.
//
// Exit codes: 0 success, 1 a requested finding is absent, 2 input error,
// 3 internal or search failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmarkov/acceptance.hpp"
#include "qmarkov/analysis.hpp"
#include "qmarkov/io.hpp"
#include "qmarkov/littlegro.hpp"
#include "qmarkov/rota.hpp"
#include "qmarkov/schur.hpp"
#include "qmarkov/semigroup.hpp"
#include "qmarkov/zoo.hpp"

namespace {

using namespace qmarkov;

constexpr int kOk = 0;
constexpr int kAbsent = 1;
constexpr int kInputError = 2;
constexpr int kInternal = 3;

struct Globals {
  double tol_rank = Tolerances{}.rank_rel;
  double tol_abs = Tolerances{}.verify_abs;
  double tol_psd = Tolerances{}.psd_floor;
  std::uint64_t seed = 1;
  std::string json_path;

  Tolerances tolerances() const {
    Tolerances t;
    t.rank_rel = tol_rank;
    t.verify_abs = tol_abs;
    t.psd_floor = tol_psd;
    t.validate();
    return t;
  }
};

Json envelope(const Globals& g, const std::string& command, Json body) {
  body["version"] = kVersion;
  body["command"] = command;
  body["seed"] = g.seed;
  body["tolerances"] = tolerances_to_json(g.tolerances());
  return body;
}

void emit(const Globals& g, const Json& j) {
  if (g.json_path.empty()) return;
  if (g.json_path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json_file(g.json_path, j);
  }
}

int expect_verdicts(const AnalysisReport& r, const std::vector<std::string>& wanted) {
  int code = kOk;
  for (const auto& w : wanted) {
    const Verdict v = verdict_from_string(w);
    if (!r.has(v)) {
      std::cout << "expected verdict " << w << " not found\n";
      code = kAbsent;
    }
  }
  return code;
}

struct LoadedChannel {
  Channel channel;
  std::vector<FactorizationWitness> witnesses;
};

LoadedChannel load_channel(const std::string& input, const Tolerances& tol) {
  if (is_zoo_spec(input)) return {zoo_channel(input, tol), {}};
  const Json j = read_json_file(input);
  if (j.contains("channel")) {
    LoadedChannel out{channel_from_json(j["channel"], tol), {}};
    if (j.contains("certificates") && j["certificates"].is_array()) {
      for (const auto& c : j["certificates"]) {
        if (c.contains("witness")) out.witnesses.push_back(witness_from_json(c["witness"]));
      }
    }
    return out;
  }
  if (j.contains("b")) {
    const SchurMatrix b = schur_from_json(j);
    return {schur_channel(b, tol), {}};
  }
  return {channel_from_json(j, tol), {}};
}

int run_analyze(const Globals& g, const std::string& input, const std::vector<std::string>& expect) {
  const Tolerances tol = g.tolerances();
  LoadedChannel in = load_channel(input, tol);
  AnalysisReport r = analyze_channel(in.channel, tol);
  for (const auto& w : in.witnesses) {
    r.certificates.push_back(check_supplied_witness(in.channel, w, tol));
  }
  if (r.has(Verdict::NotFactorizable) && r.has(Verdict::FactorizableWitness)) {
    throw Error("supplied witness contradicts the non-factorizability certificate");
  }
  std::cout << summarize(r);
  Json body = report_to_json(r, in.channel, tol);
  body["input"] = input;
  emit(g, envelope(g, "analyze", std::move(body)));
  return expect_verdicts(r, expect);
}

int run_schur(const Globals& g, const std::string& input, const std::vector<std::string>& expect) {
  const Tolerances tol = g.tolerances();
  SchurMatrix b;
  if (is_zoo_spec(input)) {
    const Channel t = zoo_channel(input, tol);
    // Zoo Schur entries are diagonal Kraus families: B_jk = sum_i conj(a_i(j)) a_i(k).
    Matrix m = Matrix::Zero(t.dim(), t.dim());
    for (const auto& a : t.kraus()) {
      const Vector d = a.diagonal();
      m += d.conjugate() * d.transpose();
    }
    if (max_abs(t.apply(Matrix::Ones(t.dim(), t.dim())) - m) > tol.verify_abs) {
      throw InputError(input + ": not a Schur multiplier");
    }
    b = SchurMatrix(m);
  } else {
    b = schur_from_json(read_json_file(input));
  }
  const bool psd = is_psd(b.b, tol);
  const bool real = max_abs(Matrix(b.b.imag().cast<Complex>())) <= tol.verify_abs;
  std::cout << "Schur matrix " << b.n << " x " << b.n << ": " << (psd ? "PSD" : "not PSD")
            << (real ? ", real" : "") << ", min eigenvalue " << psd_margin(b.b) << '\n';
  const Channel t(real ? real_schur_family(b, tol) : schur_diagonal_kraus(b, tol));
  if (max_abs(Matrix(b.b.diagonal().asDiagonal()) - Matrix::Identity(b.n, b.n)) >
      tol.verify_abs) {
    throw MarkovViolation("Schur matrix diagonal must be all ones");
  }
  AnalysisReport r = analyze_channel(t, tol);
  std::cout << summarize(r);
  Json body = report_to_json(r, t, tol);
  body["schur"] = schur_to_json(b);
  body["input"] = input;
  emit(g, envelope(g, "schur", std::move(body)));
  return expect_verdicts(r, expect);
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--scan: '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw InputError("--scan: no time points");
  return out;
}

int run_semigroup(const Globals& g, const std::string& input, const std::string& scan,
                  bool require_window) {
  const Tolerances tol = g.tolerances();
  const SemigroupGenerator gen =
      is_zoo_spec(input) ? zoo_generator(input) : generator_from_json(read_json_file(input), tol);
  const bool cnd = cnd_check(gen, tol);
  std::cout << "generator " << gen.n << " x " << gen.n << ": "
            << (cnd ? "conditionally negative" : "NOT conditionally negative")
            << " (min eigenvalue of -PLP " << cnd_margin(gen) << ")\n";
  const auto times = parse_times(scan);
  const auto samples = obstruction_scan(gen, times);
  Json rows = Json::array();
  bool window = false;
  std::cout << "t,g,h,k,margin,verdict\n";
  for (const auto& s : samples) {
    const Certificate c = margin_certificate(s);
    const bool fires = cnd && c.verdict == Verdict::NotFactorizable;
    window = window || fires;
    const std::string verdict = fires ? to_string(c.verdict) : to_string(Verdict::Inconclusive);
    std::cout << s.t << ',' << s.g << ',' << s.h << ',' << s.k << ',' << s.margin << ','
              << verdict << '\n';
    rows.push_back({{"t", s.t}, {"g", s.g}, {"h", s.h}, {"k", s.k}, {"margin", s.margin},
                    {"verdict", verdict}});
  }
  emit(g, envelope(g, "semigroup",
                   {{"generator", generator_to_json(gen)}, {"cnd", cnd}, {"samples", rows}}));
  return require_window && !window ? kAbsent : kOk;
}

Json rota_report_json(const RotaHypothesisReport& r) {
  return {{"d", r.d},
          {"n", r.n},
          {"squares_central", r.squares_central},
          {"products_independent", r.products_independent},
          {"quartic_independent", r.quartic_independent},
          {"enough_generators", r.enough_generators},
          {"central_residual", r.central_residual},
          {"product_rank", r.product_rank.rank},
          {"product_set_size", r.product_rank.size},
          {"quartic_rank", r.quartic_rank.rank},
          {"quartic_set_size", r.quartic_rank.size},
          {"class_sizes", r.class_sizes},
          {"class_ranks", r.class_ranks}};
}

int run_rota_build(const Globals& g, int d, const std::string& out) {
  const Tolerances tol = g.tolerances();
  const Counterexample ce = build_counterexample(d, g.seed, tol);
  std::cout << "d = " << d << ", m = " << ce.sphere.m << ", r = " << ce.involutions.r
            << ", n = " << ce.report.n << '\n'
            << "square products " << ce.report.product_rank.rank << "/"
            << ce.report.product_rank.size << ", quartic words " << ce.report.quartic_rank.rank
            << "/" << ce.report.quartic_rank.size << '\n'
            << "Markov " << (ce.markov.is_markov() ? "yes" : "no") << ", self-adjoint "
            << (ce.markov.is_self_adjoint ? "yes" : "no") << '\n'
            << "square of T: " << to_string(ce.square_certificate.verdict) << " ("
            << ce.square_certificate.reason << ")\n";
  if (!out.empty()) write_json_file(out, channel_to_json(ce.t));
  emit(g, envelope(g, "rota build",
                   {{"m", ce.sphere.m},
                    {"r", ce.involutions.r},
                    {"markov", ce.markov.is_markov()},
                    {"self_adjoint", ce.markov.is_self_adjoint},
                    {"hypotheses", rota_report_json(ce.report)},
                    {"certificate", certificate_to_json(ce.square_certificate)}}));
  return ce.report.all_hold() ? kOk : kAbsent;
}

int run_rota_check(const Globals& g, const std::string& input) {
  const Tolerances tol = g.tolerances();
  const Channel t = load_channel(input, tol).channel;
  const RotaHypothesisReport r = check_lemma52(t.kraus(), tol);
  const Certificate c = square_certificate(r);
  std::cout << "central squares " << (r.squares_central ? "yes" : "no") << ", products "
            << r.product_rank.rank << "/" << r.product_rank.size << ", quartic words "
            << r.quartic_rank.rank << "/" << r.quartic_rank.size << ", d >= 5 "
            << (r.enough_generators ? "yes" : "no") << '\n'
            << "square of T: " << to_string(c.verdict) << " (" << c.reason << ")\n";
  emit(g, envelope(g, "rota check",
                   {{"hypotheses", rota_report_json(r)}, {"certificate", certificate_to_json(c)}}));
  return r.all_hold() ? kOk : kAbsent;
}

OHMap load_frame(const std::string& spec, const Tolerances& tol) {
  if (spec == "T1" || spec == "T2") return zoo_frame(spec);
  if (is_zoo_spec(spec)) return zoo_frame(spec);
  const Json j = read_json_file(spec);
  const Json& alg = j.at("algebra");
  AlgebraSpec a;
  a.n = alg.at("n").get<Eigen::Index>();
  a.abelian = alg.value("abelian", false);
  std::vector<Matrix> frame;
  const Json& list = j.at("frame");
  for (std::size_t i = 0; i < list.size(); ++i) {
    frame.push_back(matrix_from_json(list[i], "frame[" + std::to_string(i) + "]"));
  }
  return frame_validate(frame, a, tol);
}

int run_grothendieck(const Globals& g, const std::string& map, Eigen::Index k, int restarts,
                     int max_iter) {
  const OHMap t = load_frame(map, g.tolerances());
  const CbBoundResult r = cb_lower_bound(t, k, restarts, max_iter, g.seed);
  std::cout << "map " << map << ", d = " << t.d() << ", k = " << k << ", restarts " << restarts
            << '\n'
            << "best value " << r.best_value << " (lower bound on the squared cb-norm)\n"
            << "largest objective seen " << r.max_evaluated << '\n'
            << "frame conditions imply cb-norm < 1: "
            << (t.cb_strictly_below_one ? "yes" : "no") << '\n';
  Json per = Json::array();
  for (const auto& p : r.per_restart) {
    per.push_back({{"seed", p.seed}, {"best", p.best}, {"iterations", p.iterations}});
  }
  emit(g, envelope(g, "grothendieck",
                   {{"map", map},
                    {"k", r.k},
                    {"best_value", r.best_value},
                    {"max_evaluated", r.max_evaluated},
                    {"iterations", r.iterations},
                    {"cb_strictly_below_one", t.cb_strictly_below_one},
                    {"per_restart", per}}));
  return kOk;
}

std::string kind_name(ZooKind k) {
  switch (k) {
    case ZooKind::Channel:
      return "channel";
    case ZooKind::Generator:
      return "generator";
    case ZooKind::Frame:
      return "frame";
  }
  return "?";
}

int run_zoo(const Globals& g, const std::string& show) {
  if (!show.empty()) {
    const ZooRequest req = parse_zoo_spec(show);
    const ZooEntry& e = zoo_lookup(req.name);
    Json payload;
    if (e.kind == ZooKind::Channel) payload = channel_to_json(zoo_channel(show));
    if (e.kind == ZooKind::Generator) payload = generator_to_json(zoo_generator(show));
    if (e.kind == ZooKind::Frame) {
      const OHMap t = zoo_frame(show);
      Json frame = Json::array();
      for (const auto& a : t.frame) frame.push_back(matrix_to_json(a));
      payload = {{"algebra", {{"n", t.n()}, {"abelian", t.algebra.abelian}}}, {"frame", frame}};
    }
    std::cout << payload.dump(2) << '\n';
    return kOk;
  }
  Json list = Json::array();
  for (const auto& e : zoo_entries()) {
    std::string expected;
    for (const auto& x : e.expected) {
      expected += (expected.empty() ? "" : ", ") + to_string(x.verdict) + " (" + x.reason + ")";
    }
    std::cout << "zoo:" << e.name << "  [" << kind_name(e.kind) << "]  " << e.summary
              << (expected.empty() ? "" : "  -> " + expected) << '\n';
    list.push_back({{"name", e.name}, {"kind", kind_name(e.kind)}, {"summary", e.summary},
                    {"parameters", e.parameters}});
  }
  emit(g, envelope(g, "zoo", {{"entries", list}}));
  return kOk;
}

int run_selftest(const Globals& g) {
  AcceptanceOptions opts;
  opts.tol = g.tolerances();
  opts.seed = g.seed;
  const auto results =
      run_acceptance(opts, [](const CriterionResult& r) { std::cout << format_result(r) << '\n'; });
  Json rows = Json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed},
                    {"seconds", r.seconds}, {"detail", r.detail}});
  }
  emit(g, envelope(g, "selftest", {{"criteria", rows}, {"passed", all}}));
  return all ? kOk : kAbsent;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and construction toolkit for quantum Markov maps"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--tol-rank", g.tol_rank, "relative Gram eigenvalue cutoff for rank decisions");
  app.add_option("--tol-abs", g.tol_abs, "absolute tolerance for equality checks");
  app.add_option("--tol-psd", g.tol_psd, "admissible negative eigenvalue relative to scale");
  app.add_option("--seed", g.seed, "seed for every randomized search");
  app.add_option("--json", g.json_path, "write the JSON report to this path ('-' for stdout)");

  std::string input;
  std::vector<std::string> expect;
  auto* analyze = app.add_subcommand("analyze", "certify a channel (JSON file or zoo:name)");
  analyze->add_option("input", input, "channel JSON, emitted report, or zoo:name")->required();
  analyze->add_option("--expect", expect, "exit 1 unless these verdicts are found");

  auto* schur = app.add_subcommand("schur", "analyze the Schur multiplier of a matrix B");
  schur->add_option("input", input, "JSON {n, b} or zoo:name")->required();
  schur->add_option("--expect", expect, "exit 1 unless these verdicts are found");

  std::string scan = "1e-4,1e-3,1e-2";
  bool require_window = false;
  auto* semi = app.add_subcommand("semigroup", "scan the Schur semigroup obstruction");
  semi->add_option("--generator", input, "JSON {n, L} or zoo:semigroup-generator")->required();
  semi->add_option("--scan", scan, "comma-separated time points");
  semi->add_flag("--require-window", require_window, "exit 1 when no time point is certified");

  auto* rota = app.add_subcommand("rota", "square-product counterexample machinery");
  rota->require_subcommand(1);
  rota->fallthrough();
  int d = 5;
  std::string out;
  auto* build = rota->add_subcommand("build", "search and assemble the counterexample");
  build->add_option("--d", d, "number of Kraus operators (>= 5)");
  build->add_option("--out", out, "write the channel JSON here");
  auto* rcheck = rota->add_subcommand("check", "check the hypotheses on a self-adjoint family");
  rcheck->add_option("input", input, "channel JSON or zoo:name")->required();

  std::string map = "T1";
  Eigen::Index k = 3;
  int restarts = 16;
  int max_iter = 300;
  auto* gro = app.add_subcommand("grothendieck", "lower-bound the cb-norm of an OH-valued map");
  gro->add_option("--map", map, "T1, T2 or a frame JSON file");
  gro->add_option("--k", k, "ancilla dimension (<= 8)");
  gro->add_option("--restarts", restarts, "number of seeded restarts");
  gro->add_option("--max-iter", max_iter, "iterations per restart");

  std::string show;
  auto* zoo = app.add_subcommand("zoo", "list built-in examples");
  zoo->add_option("--show", show, "print the payload of one entry");

  auto* self = app.add_subcommand("selftest", "run every acceptance check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (analyze->parsed()) return run_analyze(g, input, expect);
    if (schur->parsed()) return run_schur(g, input, expect);
    if (semi->parsed()) return run_semigroup(g, input, scan, require_window);
    if (build->parsed()) return run_rota_build(g, d, out);
    if (rcheck->parsed()) return run_rota_check(g, input);
    if (gro->parsed()) return run_grothendieck(g, map, k, restarts, max_iter);
    if (zoo->parsed()) return run_zoo(g, show);
    if (self->parsed()) return run_selftest(g);
  } catch (const SearchFailure& e) {
    std::cerr << "search failure: " << e.what() << '\n';
    return kInternal;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return kInternal;
  } catch (const CpViolation& e) {
    std::cerr << "input error: " << e.what() << " (eigenvalue " << e.eigenvalue() << ")\n";
    return kInputError;
  } catch (const ArgumentError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const DimensionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const MarkovViolation& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const GeneratorError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
