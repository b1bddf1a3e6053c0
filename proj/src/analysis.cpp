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

#include "qmarkov/analysis.hpp"

#include <algorithm>
#include <sstream>

namespace qmarkov {
namespace {

Certificate witness_certificate(const Channel& t, const FactorizationWitness& w,
                                const std::string& reason, const Tolerances& tol) {
  const WitnessCheck check = verify_witness(t, w, tol);
  Certificate c;
  c.reason = reason;
  c.verdict = check.valid ? Verdict::FactorizableWitness : Verdict::Inconclusive;
  c.evidence = {{"ancilla_dim", static_cast<double>(w.k)},
                {"unitarity_residual", check.unitarity_residual},
                {"action_residual", check.action_residual}};
  if (check.valid) c.witness = w;
  return c;
}

std::string evidence_text(const Certificate& c) {
  auto get = [&](const char* key) -> const double* {
    auto it = c.evidence.find(key);
    return it == c.evidence.end() ? nullptr : &it->second;
  };
  std::ostringstream os;
  if (const double* r = get("product_rank")) {
    os << "rank " << *r << "/" << *get("product_set_size");
  } else if (const double* u = get("unitarity_residual")) {
    os << "ancilla " << *get("ancilla_dim") << ", unitarity residual " << *u
       << ", action residual " << *get("action_residual");
  } else if (const double* q = get("quartic_rank")) {
    os << "quartic rank " << *q << "/" << *get("quartic_set_size");
  } else if (const double* m = get("margin")) {
    os << "margin " << *m << " at t = " << *get("t");
  } else if (const double* k = get("kraus_count")) {
    os << "Kraus rank " << *k;
  } else if (const double* f = get("family_size")) {
    os << "family of " << *f << ", too small to test";
  }
  return os.str();
}

}  // namespace

bool AnalysisReport::has(Verdict v) const { return find(v) != nullptr; }

const Certificate* AnalysisReport::find(Verdict v) const {
  auto it = std::find_if(certificates.begin(), certificates.end(),
                         [v](const Certificate& c) { return c.verdict == v; });
  return it == certificates.end() ? nullptr : &*it;
}

AnalysisReport analyze_channel(const Channel& t, const Tolerances& tol) {
  tol.validate();
  AnalysisReport r;
  r.dim = t.dim();
  r.markov = verify_markov(t, tol);
  r.canonical_kraus_count = r.markov.kraus_rank;
  r.identity_distance = choi_distance(t, Channel::identity(t.dim()));
  r.is_identity = r.identity_distance <= tol.verify_abs;
  if (!r.markov.is_markov()) {
    r.notes.push_back("not a Markov map; factorizability checks skipped");
    return r;
  }
  r.certificates.push_back(non_factorizable_certificate(t, tol));

  const auto& a = t.kraus();
  const auto res = commuting_family_residuals(a);
  const double bound = tol.verify_abs * static_cast<double>(t.dim());
  if (res.self_adjoint <= bound && res.commutator <= bound && res.square_sum <= bound) {
    const auto d = static_cast<int>(a.size());
    if (d < 31 && (t.dim() << d) <= kWitnessDimensionCap) {
      r.certificates.push_back(
          witness_certificate(t, car_factorize(a, tol), "anticommuting-unitaries", tol));
    } else {
      r.notes.push_back("witness ancilla exceeds the dimension cap; construction skipped");
    }
    r.certificates.push_back(conv_aut_obstruction(a, tol));
  } else {
    r.notes.push_back("Kraus family is not commuting self-adjoint; witness construction skipped");
  }

  if (r.has(Verdict::NotFactorizable) && r.has(Verdict::FactorizableWitness)) {
    throw Error("analysis produced a witness for a map certified non-factorizable");
  }
  return r;
}

Certificate check_supplied_witness(const Channel& t, const FactorizationWitness& w,
                                   const Tolerances& tol) {
  return witness_certificate(t, w, "supplied-witness", tol);
}

Json report_to_json(const AnalysisReport& r, const Channel& t, const Tolerances& tol) {
  Json certs = Json::array();
  for (const auto& c : r.certificates) certs.push_back(certificate_to_json(c));
  return {{"version", kVersion},
          {"tolerances", tolerances_to_json(tol)},
          {"channel", channel_to_json(t)},
          {"markov",
           {{"is_cp", r.markov.is_cp},
            {"is_unital", r.markov.is_unital},
            {"is_trace_preserving", r.markov.is_trace_preserving},
            {"is_self_adjoint", r.markov.is_self_adjoint},
            {"kraus_rank", r.markov.kraus_rank},
            {"unital_residual", r.markov.unital_residual},
            {"trace_residual", r.markov.trace_residual},
            {"self_adjoint_residual", r.markov.self_adjoint_residual}}},
          {"identity", {{"is_identity", r.is_identity}, {"choi_distance", r.identity_distance}}},
          {"certificates", std::move(certs)},
          {"notes", r.notes}};
}

std::string summarize(const AnalysisReport& r) {
  std::ostringstream os;
  os << "dimension " << r.dim << ", Kraus rank " << r.canonical_kraus_count << ", "
     << (r.markov.is_markov() ? "Markov" : "not Markov")
     << (r.markov.is_self_adjoint ? ", self-adjoint" : "") << '\n';
  if (r.is_identity) os << "identity channel (Choi distance " << r.identity_distance << ")\n";
  for (const auto& c : r.certificates) {
    os << to_string(c.verdict) << " (" << c.reason << "): " << evidence_text(c) << '\n';
  }
  for (const auto& n : r.notes) os << "note: " << n << '\n';
  return os.str();
}

}  // namespace qmarkov
