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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/channel.hpp"

namespace qmarkov {

/// A faithful trace on a block-diagonal ancilla M_{k1} (+) ... (+) M_{kr}:
/// tau(y) = sum_b weight_b * tr(y_bb) / k_b.
struct AncillaTrace {
  std::vector<Eigen::Index> block_sizes;
  std::vector<double> weights;

  static AncillaTrace uniform(Eigen::Index k);
  /// ell^infinity({1..s}) with the given point masses.
  static AncillaTrace diagonal(std::vector<double> weights);

  Eigen::Index dim() const;
  void validate() const;
  /// tau(y) for y in M_k, ignoring off-diagonal blocks.
  Complex operator()(const Matrix& y) const;
};

/// T x = (id (x) tau)(u^* (x (x) 1) u) with u unitary in M_n (x) M_k.
struct FactorizationWitness {
  Eigen::Index n = 0;
  Eigen::Index k = 0;
  Matrix u;
  AncillaTrace trace;
};

enum class Verdict { NotFactorizable, FactorizableWitness, NotInConvAut, Inconclusive };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct Certificate {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  std::map<std::string, double> evidence;
  std::optional<FactorizationWitness> witness;
};

struct WitnessCheck {
  bool valid = false;
  double unitarity_residual = 0.0;
  double action_residual = 0.0;
};

/// (id (x) tau)(u^* (e_ij (x) 1) u) for every matrix unit, as an n x n block
/// per (i, j). Cost is O(n^4 k^2).
Matrix witness_action(const FactorizationWitness& w, const Matrix& x);

Certificate non_factorizable_certificate(const Channel& t, const Tolerances& tol);

WitnessCheck verify_witness(const Channel& t, const FactorizationWitness& w,
                            const Tolerances& tol);

/// Anticommuting self-adjoint unitaries Z..Z X 1..1 in M_{2^d}.
std::vector<Matrix> jordan_wigner(int d);

/// Channel x -> sum_i a_i x a_i of a self-adjoint family.
Channel symmetric_channel(const std::vector<Matrix>& a);

/// Witness u = sum_i a_i (x) v_i for a commuting self-adjoint family with
/// sum a_i^2 = 1. Throws ArgumentError naming the failed condition.
FactorizationWitness car_factorize(const std::vector<Matrix>& a, const Tolerances& tol);

Certificate conv_aut_obstruction(const std::vector<Matrix>& a, const Tolerances& tol);

struct CombinationCheck {
  bool holds = false;
  double residual = 0.0;
  double unitarity_residual = 0.0;
};

/// T x = sum_i c_i u_i^* x u_i on matrix units.
CombinationCheck verify_conv_aut_combination(const Channel& t,
                                             const std::vector<Matrix>& unitaries,
                                             const std::vector<double>& weights,
                                             const Tolerances& tol);

/// Residuals of the commuting self-adjoint family preconditions.
struct CommutingFamilyResiduals {
  double self_adjoint = 0.0;
  double commutator = 0.0;
  double square_sum = 0.0;
};

CommutingFamilyResiduals commuting_family_residuals(const std::vector<Matrix>& a);

}  // namespace qmarkov
