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

#include "qmarkov/io.hpp"

#include <fstream>
#include <sstream>

namespace qmarkov {
namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InputError(field + ": " + what);
}

const Json& require(const Json& j, const char* key, const std::string& field) {
  if (!j.is_object()) bad(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(field, std::string("missing field \"") + key + "\"");
  return *it;
}

Eigen::Index index_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer() || j.get<long long>() < 1) bad(field, "expected a positive integer");
  return static_cast<Eigen::Index>(j.get<long long>());
}

Complex complex_from_json(const Json& j, const std::string& field) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  bad(field, "expected a number or [re, im]");
}

std::string at(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

void check_dim(const Matrix& m, Eigen::Index n, const std::string& field) {
  if (m.rows() != n || m.cols() != n) {
    bad(field, "expected a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
  }
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) bad(field, "expected a nonempty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) bad(at(field, 0), "expected a nonempty row");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) bad(at(field, r), "ragged row");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], at(at(field, r), c));
    }
  }
  return m;
}

Json tolerances_to_json(const Tolerances& tol) {
  return {{"rank_rel", tol.rank_rel}, {"psd_floor", tol.psd_floor}, {"verify_abs", tol.verify_abs}};
}

Tolerances tolerances_from_json(const Json& j) {
  Tolerances tol;
  if (!j.is_object()) bad("tolerances", "expected an object");
  tol.rank_rel = j.value("rank_rel", tol.rank_rel);
  tol.psd_floor = j.value("psd_floor", tol.psd_floor);
  tol.verify_abs = j.value("verify_abs", tol.verify_abs);
  tol.validate();
  return tol;
}

Json channel_to_json(const Channel& t) {
  Json kraus = Json::array();
  for (const auto& a : t.kraus()) kraus.push_back(matrix_to_json(a));
  return {{"dim", t.dim()}, {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index n = index_from_json(require(j, "dim", "channel"), "channel.dim");
  if (j.contains("kraus")) {
    const Json& list = j["kraus"];
    if (!list.is_array() || list.empty()) bad("channel.kraus", "expected a nonempty array");
    std::vector<Matrix> kraus;
    for (std::size_t i = 0; i < list.size(); ++i) {
      kraus.push_back(matrix_from_json(list[i], at("channel.kraus", i)));
      check_dim(kraus.back(), n, at("channel.kraus", i));
    }
    return Channel(std::move(kraus));
  }
  if (j.contains("choi")) {
    Matrix c = matrix_from_json(j["choi"], "channel.choi");
    check_dim(c, n * n, "channel.choi");
    return kraus_canonical(ChoiMatrix{n, std::move(c)}, tol);
  }
  bad("channel", "expected a \"kraus\" or \"choi\" field");
}

Json schur_to_json(const SchurMatrix& b) {
  return {{"n", b.n}, {"b", matrix_to_json(b.b)}};
}

SchurMatrix schur_from_json(const Json& j) {
  const Eigen::Index n = index_from_json(require(j, "n", "schur"), "schur.n");
  Matrix b = matrix_from_json(require(j, "b", "schur"), "schur.b");
  check_dim(b, n, "schur.b");
  return SchurMatrix(std::move(b));
}

Json generator_to_json(const SemigroupGenerator& g) {
  return {{"n", g.n}, {"L", matrix_to_json(g.L)}};
}

SemigroupGenerator generator_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index n = index_from_json(require(j, "n", "generator"), "generator.n");
  Matrix l = matrix_from_json(require(j, "L", "generator"), "generator.L");
  check_dim(l, n, "generator.L");
  return SemigroupGenerator(std::move(l), tol);
}

Json witness_to_json(const FactorizationWitness& w) {
  return {{"n", w.n},
          {"k", w.k},
          {"u", matrix_to_json(w.u)},
          {"trace", {{"block_sizes", w.trace.block_sizes}, {"weights", w.trace.weights}}}};
}

FactorizationWitness witness_from_json(const Json& j) {
  FactorizationWitness w;
  w.n = index_from_json(require(j, "n", "witness"), "witness.n");
  w.k = index_from_json(require(j, "k", "witness"), "witness.k");
  w.u = matrix_from_json(require(j, "u", "witness"), "witness.u");
  check_dim(w.u, w.n * w.k, "witness.u");
  const Json& tr = require(j, "trace", "witness");
  try {
    w.trace.block_sizes = require(tr, "block_sizes", "witness.trace").get<std::vector<Eigen::Index>>();
    w.trace.weights = require(tr, "weights", "witness.trace").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    bad("witness.trace", e.what());
  }
  try {
    w.trace.validate();
  } catch (const Error& e) {
    bad("witness.trace", e.what());
  }
  if (w.trace.dim() != w.k) bad("witness.trace", "block sizes do not sum to k");
  return w;
}

Json certificate_to_json(const Certificate& c) {
  Json j = {{"verdict", to_string(c.verdict)}, {"reason", c.reason}, {"evidence", c.evidence}};
  if (c.witness) j["witness"] = witness_to_json(*c.witness);
  return j;
}

Certificate certificate_from_json(const Json& j) {
  Certificate c;
  const Json& v = require(j, "verdict", "certificate");
  if (!v.is_string()) bad("certificate.verdict", "expected a string");
  try {
    c.verdict = verdict_from_string(v.get<std::string>());
  } catch (const Error& e) {
    bad("certificate.verdict", e.what());
  }
  c.reason = j.value("reason", std::string{});
  if (j.contains("evidence")) {
    try {
      c.evidence = j["evidence"].get<std::map<std::string, double>>();
    } catch (const nlohmann::json::exception& e) {
      bad("certificate.evidence", e.what());
    }
  }
  if (j.contains("witness")) c.witness = witness_from_json(j["witness"]);
  return c;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << path << ":" << line << ":" << col << ": JSON syntax error";
    throw InputError(os.str());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write file");
  out << j.dump(2) << '\n';
}

}  // namespace qmarkov
