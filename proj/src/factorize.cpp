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

#include "qmarkov/factorize.hpp"

#include <cmath>
#include <numeric>

namespace qmarkov {
namespace {

// Per-index weights of the ancilla trace along the diagonal of M_k.
RealVector diagonal_weights(const AncillaTrace& tr) {
  RealVector w(tr.dim());
  Eigen::Index offset = 0;
  for (std::size_t b = 0; b < tr.block_sizes.size(); ++b) {
    const Eigen::Index s = tr.block_sizes[b];
    w.segment(offset, s).setConstant(tr.weights[b] / static_cast<double>(s));
    offset += s;
  }
  return w;
}

void require_commuting_family(const std::vector<Matrix>& a, const Tolerances& tol) {
  if (a.empty()) {
    throw ArgumentError("family is empty");
  }
  const Eigen::Index n = a.front().rows();
  for (const auto& m : a) {
    if (m.rows() != n || m.cols() != n) {
      throw DimensionError("family members must be n x n");
    }
  }
  const auto r = commuting_family_residuals(a);
  const double bound = tol.verify_abs * static_cast<double>(n);
  if (r.self_adjoint > bound) {
    throw ArgumentError("family is not self-adjoint (residual " + std::to_string(r.self_adjoint) + ")");
  }
  if (r.commutator > bound) {
    throw ArgumentError("family does not commute (residual " + std::to_string(r.commutator) + ")");
  }
  if (r.square_sum > bound) {
    throw ArgumentError("sum of squares is not the identity (residual " + std::to_string(r.square_sum) + ")");
  }
}

}  // namespace

AncillaTrace AncillaTrace::uniform(Eigen::Index k) {
  return {{k}, {1.0}};
}

AncillaTrace AncillaTrace::diagonal(std::vector<double> weights) {
  AncillaTrace tr;
  tr.block_sizes.assign(weights.size(), 1);
  tr.weights = std::move(weights);
  return tr;
}

Eigen::Index AncillaTrace::dim() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), Eigen::Index{0});
}

void AncillaTrace::validate() const {
  if (block_sizes.empty() || block_sizes.size() != weights.size()) {
    throw ArgumentError("ancilla trace: blocks and weights must be nonempty and aligned");
  }
  double total = 0.0;
  for (std::size_t b = 0; b < weights.size(); ++b) {
    if (block_sizes[b] < 1 || !(weights[b] >= 0.0)) {
      throw ArgumentError("ancilla trace: invalid block or negative weight");
    }
    total += weights[b];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw ArgumentError("ancilla trace: weights must sum to 1");
  }
}

Complex AncillaTrace::operator()(const Matrix& y) const {
  return (diagonal_weights(*this).cast<Complex>().array() * y.diagonal().array()).sum();
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotFactorizable:
      return "NOT_FACTORIZABLE";
    case Verdict::FactorizableWitness:
      return "FACTORIZABLE_WITNESS";
    case Verdict::NotInConvAut:
      return "NOT_IN_CONV_AUT";
    case Verdict::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::NotFactorizable, Verdict::FactorizableWitness,
                    Verdict::NotInConvAut, Verdict::Inconclusive}) {
    if (to_string(v) == s) {
      return v;
    }
  }
  throw ArgumentError("unknown verdict '" + s + "'");
}

Matrix witness_action(const FactorizationWitness& w, const Matrix& x) {
  const Eigen::Index n = w.n;
  const Eigen::Index k = w.k;
  const RealVector omega = diagonal_weights(w.trace);
  const Matrix y = w.u.adjoint() * kron(x, Matrix::Identity(k, k)) * w.u;
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index a = 0; a < k; ++a) {
    out += omega(a) * y(Eigen::seqN(a, n, k), Eigen::seqN(a, n, k));
  }
  return out;
}

Certificate non_factorizable_certificate(const Channel& t, const Tolerances& tol) {
  const MarkovReport markov = verify_markov(t, tol);
  if (!markov.is_markov()) {
    throw PreconditionError("non_factorizable_certificate: channel is not Markov");
  }
  const Channel canon = canonicalize(t, tol);
  const auto& a = canon.kraus();
  const auto d = static_cast<int>(a.size());
  Certificate cert;
  cert.reason = "product-independence";
  cert.evidence["kraus_count"] = d;
  if (d < 2) {
    cert.verdict = Verdict::Inconclusive;
    cert.evidence["product_set_size"] = d * d;
    return cert;
  }
  std::vector<Matrix> products;
  products.reserve(static_cast<std::size_t>(d * d));
  for (const auto& ai : a) {
    for (const auto& aj : a) {
      products.push_back(ai.adjoint() * aj);
    }
  }
  const RankResult rank = rank_of_set(products, tol);
  cert.evidence["product_rank"] = rank.rank;
  cert.evidence["product_set_size"] = rank.size;
  cert.evidence["min_retained_ratio"] = rank.min_retained_ratio;
  cert.verdict = rank.independent ? Verdict::NotFactorizable : Verdict::Inconclusive;
  return cert;
}

WitnessCheck verify_witness(const Channel& t, const FactorizationWitness& w,
                            const Tolerances& tol) {
  w.trace.validate();
  const Eigen::Index n = w.n;
  const Eigen::Index k = w.k;
  if (t.dim() != n || w.trace.dim() != k || w.u.rows() != n * k || w.u.cols() != n * k) {
    throw DimensionError("verify_witness: inconsistent dimensions");
  }
  WitnessCheck out;
  out.unitarity_residual = unitarity_residual(w.u);
  const RealVector omega = diagonal_weights(w.trace);
  // u^*(e_ij (x) 1)u traced against omega only needs rows of block i and j.
  std::vector<std::vector<Matrix>> slices(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index a = 0; a < k; ++a) {
      slices[i].push_back(w.u(Eigen::seqN(i * k, k), Eigen::seqN(a, n, k)));
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix lhs = Matrix::Zero(n, n);
      for (Eigen::Index a = 0; a < k; ++a) {
        if (omega(a) != 0.0) {
          lhs.noalias() += omega(a) * slices[i][a].adjoint() * slices[j][a];
        }
      }
      out.action_residual = std::max(out.action_residual, max_abs(lhs - t.apply(matrix_unit(n, i, j))));
    }
  }
  out.valid = out.unitarity_residual <= tol.verify_abs * static_cast<double>(n * k) &&
              out.action_residual <= tol.verify_abs;
  return out;
}

std::vector<Matrix> jordan_wigner(int d) {
  if (d < 1) {
    throw ArgumentError("jordan_wigner: need at least one mode");
  }
  Matrix x(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  const Matrix id = Matrix::Identity(2, 2);
  std::vector<Matrix> out;
  for (int i = 0; i < d; ++i) {
    Matrix v = Matrix::Identity(1, 1);
    for (int q = 0; q < d; ++q) {
      v = kron(v, q < i ? z : (q == i ? x : id));
    }
    out.push_back(std::move(v));
  }
  return out;
}

Channel symmetric_channel(const std::vector<Matrix>& a) {
  return Channel(a);
}

CommutingFamilyResiduals commuting_family_residuals(const std::vector<Matrix>& a) {
  CommutingFamilyResiduals r;
  const Eigen::Index n = a.front().rows();
  Matrix squares = -Matrix::Identity(n, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.self_adjoint = std::max(r.self_adjoint, hermitian_residual(a[i]));
    squares.noalias() += a[i] * a[i];
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      r.commutator = std::max(r.commutator, max_abs(a[i] * a[j] - a[j] * a[i]));
    }
  }
  r.square_sum = max_abs(squares);
  return r;
}

FactorizationWitness car_factorize(const std::vector<Matrix>& a, const Tolerances& tol) {
  require_commuting_family(a, tol);
  const auto d = static_cast<int>(a.size());
  const std::vector<Matrix> v = jordan_wigner(d);
  const Eigen::Index n = a.front().rows();
  const Eigen::Index k = v.front().rows();
  Matrix u = Matrix::Zero(n * k, n * k);
  for (int i = 0; i < d; ++i) {
    u += kron(a[i], v[i]);
  }
  return {n, k, std::move(u), AncillaTrace::uniform(k)};
}

Certificate conv_aut_obstruction(const std::vector<Matrix>& a, const Tolerances& tol) {
  require_commuting_family(a, tol);
  const auto d = static_cast<int>(a.size());
  Certificate cert;
  cert.reason = "commuting-product-independence";
  cert.evidence["family_size"] = d;
  if (d < 3) {
    cert.verdict = Verdict::Inconclusive;
    return cert;
  }
  std::vector<Matrix> products;
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      products.push_back(a[i] * a[j]);
    }
  }
  const RankResult rank = rank_of_set(products, tol);
  cert.evidence["product_rank"] = rank.rank;
  cert.evidence["product_set_size"] = rank.size;
  cert.evidence["min_retained_ratio"] = rank.min_retained_ratio;
  cert.verdict = rank.independent ? Verdict::NotInConvAut : Verdict::Inconclusive;
  return cert;
}

CombinationCheck verify_conv_aut_combination(const Channel& t,
                                             const std::vector<Matrix>& unitaries,
                                             const std::vector<double>& weights,
                                             const Tolerances& tol) {
  CombinationCheck out;
  const Eigen::Index n = t.dim();
  if (unitaries.empty() || unitaries.size() != weights.size()) {
    return out;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    if (unitaries[i].rows() != n || unitaries[i].cols() != n) {
      throw DimensionError("verify_conv_aut_combination: unitary has wrong shape");
    }
    if (weights[i] < 0.0) {
      return out;
    }
    total += weights[i];
    out.unitarity_residual = std::max(out.unitarity_residual, unitarity_residual(unitaries[i]));
  }
  out.residual = matrix_unit_residual(t, [&](const Matrix& e) {
    Matrix acc = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < unitaries.size(); ++i) {
      acc += weights[i] * unitaries[i].adjoint() * e * unitaries[i];
    }
    return acc;
  });
  out.holds = std::abs(total - 1.0) <= tol.verify_abs &&
              out.unitarity_residual <= tol.verify_abs * static_cast<double>(n) &&
              out.residual <= tol.verify_abs;
  return out;
}

}  // namespace qmarkov
