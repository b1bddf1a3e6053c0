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

#include "qmarkov/zoo.hpp"

#include <cmath>
#include <stdexcept>

#include "qmarkov/io.hpp"
#include "qmarkov/schur.hpp"

namespace qmarkov {
namespace {

constexpr const char* kPrefix = "zoo:";

double param(const ZooRequest& req, const std::string& key, double fallback) {
  auto it = req.params.find(key);
  return it == req.params.end() ? fallback : it->second;
}

int int_param(const ZooRequest& req, const std::string& key, int fallback) {
  const double v = param(req, key, fallback);
  if (v != std::floor(v) || v < 1 || v > 4096) {
    throw InputError("zoo:" + req.name + ": parameter " + key + " must be a positive integer");
  }
  return static_cast<int>(v);
}

const ZooEntry& checked(const ZooRequest& req, ZooKind kind) {
  const ZooEntry& e = zoo_lookup(req.name);
  if (e.kind != kind) {
    throw InputError("zoo:" + req.name + ": entry has a different payload kind");
  }
  for (const auto& [key, value] : req.params) {
    bool known = false;
    for (const auto& p : e.parameters) known = known || p == key;
    if (!known) throw InputError("zoo:" + req.name + ": unknown parameter " + key);
  }
  return e;
}

}  // namespace

std::vector<Matrix> antisymmetric_kraus() {
  const double c = 1.0 / std::sqrt(2.0);
  Matrix a1 = Matrix::Zero(3, 3), a2 = Matrix::Zero(3, 3), a3 = Matrix::Zero(3, 3);
  a1(1, 2) = -c;
  a1(2, 1) = c;
  a2(0, 2) = c;
  a2(2, 0) = -c;
  a3(0, 1) = -c;
  a3(1, 0) = c;
  return {a1, a2, a3};
}

std::vector<Matrix> shift_kraus() {
  const double c = 1.0 / std::sqrt(2.0);
  Matrix a1 = Matrix::Zero(3, 3), a2 = Matrix::Zero(3, 3), a3 = Matrix::Zero(3, 3);
  a1(1, 0) = a1(2, 1) = c;
  a2(0, 1) = a2(1, 2) = c;
  a3(0, 2) = a3(2, 0) = c;
  return {a1, a2, a3};
}

std::vector<Matrix> diagonal_pair_kraus(int n) {
  if (n < 4) throw ArgumentError("diagonal_pair_kraus: n must be at least 4");
  const double c = 1.0 / std::sqrt(2.0);
  Vector x = Vector::Zero(n), y = Vector::Ones(n);
  x(0) = 1.0;
  x(1) = x(2) = c;
  y(0) = 0.0;
  y(1) = c;
  y(2) = Complex(0.0, c);
  return {Matrix(x.asDiagonal()), Matrix(y.asDiagonal())};
}

const std::vector<ZooEntry>& zoo_entries() {
  const ExpectedVerdict nf{Verdict::NotFactorizable, "product-independence"};
  static const std::vector<ZooEntry> entries = {
      {"example-3.1", ZooKind::Channel, "antisymmetric Kraus triple on M_3", {}, {nf}},
      {"example-3.2", ZooKind::Channel, "Schur multiplier B(s) on M_n (default s = 1/3, n = 4)",
       {"s", "n"}, {nf}},
      {"example-3.2-general", ZooKind::Channel, "Schur multiplier B(1/2) on M_5", {"s", "n"}, {nf}},
      {"example-3.3", ZooKind::Channel, "commuting self-adjoint triple on M_6 (Schur B_6)", {},
       {{Verdict::FactorizableWitness, "anticommuting-unitaries"},
        {Verdict::NotInConvAut, "commuting-product-independence"}}},
      {"kummerer-3x3", ZooKind::Channel, "shift-type Kraus triple on M_3", {}, {nf}},
      {"kummerer-schur", ZooKind::Channel, "diagonal Kraus pair on M_n (default n = 4)", {"n"},
       {nf}},
      {"semigroup-generator", ZooKind::Generator,
       "4 x 4 conditionally negative generator with a non-factorizable window", {},
       {{Verdict::NotFactorizable, "semigroup-margin"}}},
      {"T1", ZooKind::Frame, "antisymmetric frame on M_3, d = 3", {}, {}},
      {"T2", ZooKind::Frame, "frame on l^inf(4), d = 2", {}, {}},
  };
  return entries;
}

bool is_zoo_spec(const std::string& spec) { return spec.rfind(kPrefix, 0) == 0; }

ZooRequest parse_zoo_spec(const std::string& spec) {
  std::string body = is_zoo_spec(spec) ? spec.substr(4) : spec;
  ZooRequest req;
  const auto q = body.find('?');
  req.name = body.substr(0, q);
  if (q == std::string::npos) return req;
  std::string rest = body.substr(q + 1);
  while (!rest.empty()) {
    const auto amp = rest.find('&');
    const std::string item = rest.substr(0, amp);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InputError(spec + ": malformed parameter '" + item + "'");
    }
    try {
      std::size_t used = 0;
      const std::string text = item.substr(eq + 1);
      req.params[item.substr(0, eq)] = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw InputError(spec + ": parameter '" + item + "' is not numeric");
    }
    rest = amp == std::string::npos ? std::string{} : rest.substr(amp + 1);
  }
  return req;
}

const ZooEntry& zoo_lookup(const std::string& name) {
  for (const auto& e : zoo_entries()) {
    if (e.name == name) return e;
  }
  throw InputError("unknown zoo entry '" + name + "'");
}

Channel zoo_channel(const std::string& spec, const Tolerances& tol) {
  const ZooRequest req = parse_zoo_spec(spec);
  checked(req, ZooKind::Channel);
  (void)tol;
  if (req.name == "example-3.1") return Channel(antisymmetric_kraus());
  if (req.name == "example-3.2") {
    return Channel(family_Bs_kraus(param(req, "s", 1.0 / 3.0), int_param(req, "n", 4)));
  }
  if (req.name == "example-3.2-general") {
    return Channel(family_Bs_kraus(param(req, "s", 0.5), int_param(req, "n", 5)));
  }
  if (req.name == "example-3.3") return Channel(example_B6_family());
  if (req.name == "kummerer-3x3") return Channel(shift_kraus());
  if (req.name == "kummerer-schur") return Channel(diagonal_pair_kraus(int_param(req, "n", 4)));
  throw InputError("zoo:" + req.name + ": no channel payload");
}

SemigroupGenerator zoo_generator(const std::string& spec) {
  const ZooRequest req = parse_zoo_spec(spec);
  checked(req, ZooKind::Generator);
  return paper_generator();
}

OHMap zoo_frame(const std::string& spec) {
  const ZooRequest req = parse_zoo_spec(spec);
  checked(req, ZooKind::Frame);
  return req.name == "T1" ? paper_T1() : paper_T2();
}

}  // namespace qmarkov
