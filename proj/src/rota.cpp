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

#include "qmarkov/rota.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace qmarkov {
namespace {

using Perm = std::vector<int>;

double residual_bound(Eigen::Index n, const Tolerances& tol) {
  return tol.verify_abs * static_cast<double>(std::max<Eigen::Index>(n, 1));
}

double sparse_max_abs(const SparseMatrix& m) {
  double worst = 0.0;
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      worst = std::max(worst, std::abs(it.value()));
    }
  }
  return worst;
}

Matrix sparse_gram(const std::vector<SparseMatrix>& mats) {
  const auto k = static_cast<Eigen::Index>(mats.size());
  Matrix g(k, k);
  std::vector<SparseMatrix> conj;
  conj.reserve(mats.size());
  for (const auto& m : mats) {
    conj.push_back(m.conjugate());
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = i; j < k; ++j) {
      const Complex v = conj[static_cast<std::size_t>(i)]
                            .cwiseProduct(mats[static_cast<std::size_t>(j)])
                            .sum();
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
  }
  return g;
}

// Gram of real vectors stored as the columns of v.
RankResult column_rank(const RealMatrix& v, const Tolerances& tol) {
  const RealMatrix g = v.transpose() * v;
  return gram_rank(g.cast<Complex>(), tol);
}

std::vector<int> first_primes(int count) {
  std::vector<int> out;
  for (int c = 2; static_cast<int>(out.size()) < count; ++c) {
    bool prime = true;
    for (int p : out) {
      if (p * p > c) break;
      if (c % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) out.push_back(c);
  }
  return out;
}

double radical_inverse(std::uint64_t index, int base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % static_cast<std::uint64_t>(base));
    index /= static_cast<std::uint64_t>(base);
    f /= base;
  }
  return result;
}

Perm compose_perm(const Perm& f, const Perm& g) {  // f o g
  Perm out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    out[x] = f[static_cast<std::size_t>(g[x])];
  }
  return out;
}

Perm random_involution(int r, Rng& rng) {
  Perm order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Perm g(order.size());
  std::iota(g.begin(), g.end(), 0);
  for (std::size_t p = 0; p + 1 < order.size(); p += 2) {
    g[static_cast<std::size_t>(order[p])] = order[p + 1];
    g[static_cast<std::size_t>(order[p + 1])] = order[p];
  }
  return g;
}

Matrix permutation_matrix(const Perm& g) {
  const auto r = static_cast<Eigen::Index>(g.size());
  Matrix u = Matrix::Zero(r, r);
  for (Eigen::Index x = 0; x < r; ++x) {
    u(g[static_cast<std::size_t>(x)], x) = 1.0;
  }
  return u;
}

Perm evaluate_word(const std::vector<Perm>& gens, const std::vector<int>& word, int r) {
  Perm w(static_cast<std::size_t>(r));
  std::iota(w.begin(), w.end(), 0);
  for (int letter : word) {
    w = compose_perm(w, gens[static_cast<std::size_t>(letter)]);
  }
  return w;
}

void require_markov_family(const std::vector<Matrix>& a, const Tolerances& tol,
                           double& sa_residual, double& sum_residual) {
  if (a.empty()) {
    throw ArgumentError("family must be nonempty");
  }
  const Eigen::Index n = a.front().rows();
  Matrix sum = Matrix::Zero(n, n);
  sa_residual = 0.0;
  for (const auto& x : a) {
    if (x.rows() != n || x.cols() != n) {
      throw DimensionError("family members must be square of equal size");
    }
    sa_residual = std::max(sa_residual, hermitian_residual(x));
    sum += x * x;
  }
  sum_residual = max_abs(sum - Matrix::Identity(n, n));
  const double bound = residual_bound(n, tol);
  if (sa_residual > bound) {
    std::ostringstream os;
    os << "family is not self-adjoint (residual " << sa_residual << ")";
    throw ArgumentError(os.str());
  }
  if (sum_residual > bound) {
    std::ostringstream os;
    os << "sum of squares differs from the identity (residual " << sum_residual << ")";
    throw ArgumentError(os.str());
  }
}

}  // namespace

RotaHypothesisReport check_lemma52(const std::vector<Matrix>& a, const Tolerances& tol) {
  tol.validate();
  RotaHypothesisReport rep;
  require_markov_family(a, tol, rep.self_adjoint_residual, rep.square_sum_residual);
  const int d = static_cast<int>(a.size());
  const Eigen::Index n = a.front().rows();
  const auto ud = static_cast<std::size_t>(d);
  rep.d = d;
  rep.n = n;
  rep.enough_generators = d >= 5;

  std::vector<SparseMatrix> s;
  s.reserve(ud);
  for (const auto& x : a) {
    s.push_back(x.sparseView());
  }
  std::vector<std::vector<SparseMatrix>> p(ud, std::vector<SparseMatrix>(ud));
  for (std::size_t i = 0; i < ud; ++i) {
    for (std::size_t j = 0; j < ud; ++j) {
      p[i][j] = (s[i] * s[j]).pruned();
    }
  }

  for (std::size_t i = 0; i < ud; ++i) {
    for (std::size_t j = 0; j < ud; ++j) {
      const SparseMatrix c = p[i][i] * s[j] - s[j] * p[i][i];
      rep.central_residual = std::max(rep.central_residual, sparse_max_abs(c));
    }
  }
  rep.squares_central = rep.central_residual <= residual_bound(n, tol);

  std::vector<SparseMatrix> products;
  products.reserve(ud * ud);
  for (std::size_t i = 0; i < ud; ++i) {
    for (std::size_t j = 0; j < ud; ++j) {
      products.push_back(p[i][j]);
    }
  }
  rep.product_rank = rank_of_set(std::span<const SparseMatrix>(products), tol);
  rep.products_independent = rep.product_rank.independent;

  std::array<std::vector<SparseMatrix>, 6> classes;
  for (std::size_t i = 0; i < ud; ++i) {
    for (std::size_t j = 0; j < ud; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < ud; ++k) {
        if (k == j) continue;
        for (std::size_t l = 0; l < ud; ++l) {
          if (l == k) continue;
          classes[0].push_back((p[i][j] * p[k][l]).pruned());
        }
      }
    }
  }
  for (std::size_t i = 0; i < ud; ++i) {
    for (std::size_t j = 0; j < ud; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < ud; ++k) {
        if (k == i || k == j) continue;
        classes[1].push_back((p[i][j] * p[k][k]).pruned());
      }
      classes[2].push_back((p[i][i] * p[i][j]).pruned());
      classes[3].push_back((p[i][j] * p[j][j]).pruned());
    }
  }
  for (std::size_t i = 0; i < ud; ++i) {
    for (std::size_t j = i + 1; j < ud; ++j) {
      classes[4].push_back((p[i][i] * p[j][j]).pruned());
    }
    classes[5].push_back((p[i][i] * p[i][i]).pruned());
  }

  std::vector<SparseMatrix> all;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    rep.class_sizes[c] = static_cast<int>(classes[c].size());
    all.insert(all.end(), classes[c].begin(), classes[c].end());
  }
  if (all.empty()) {
    rep.quartic_rank = RankResult{};
    rep.quartic_independent = false;
    return rep;
  }
  const Matrix gram = sparse_gram(all);
  rep.quartic_rank = gram_rank(gram, tol);
  rep.quartic_independent = rep.quartic_rank.independent;
  Eigen::Index offset = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const Eigen::Index sz = rep.class_sizes[c];
    rep.class_ranks[c] = sz == 0 ? 0 : gram_rank(gram.block(offset, offset, sz, sz), tol).rank;
    offset += sz;
  }
  return rep;
}

Certificate square_certificate(const RotaHypothesisReport& report) {
  Certificate cert;
  cert.reason = "square-products";
  cert.verdict = report.all_hold() ? Verdict::NotFactorizable : Verdict::Inconclusive;
  cert.evidence = {
      {"d", report.d},
      {"n", static_cast<double>(report.n)},
      {"product_rank", report.product_rank.rank},
      {"product_set_size", report.product_rank.size},
      {"quartic_rank", report.quartic_rank.rank},
      {"quartic_set_size", report.quartic_rank.size},
      {"central_residual", report.central_residual},
  };
  return cert;
}

SphereFamily sphere_b_family(int d, std::uint64_t seed, const Tolerances& tol,
                             const SearchLimits& limits) {
  if (d < 5) {
    throw ArgumentError("sphere_b_family: d must be at least 5");
  }
  tol.validate();
  constexpr double kCoordinateFloor = 0.05;
  constexpr double kRadiusFloor = 0.1;
  const auto primes = first_primes(d);
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector shift(d);
  for (int c = 0; c < d; ++c) shift(c) = unit(rng);

  const Eigen::Index needed = static_cast<Eigen::Index>(d) * (d + 1) / 2;
  std::vector<RealVector> pts;
  std::uint64_t index = 1;
  const std::uint64_t index_cap = 10'000'000;
  SphereFamily last;

  auto evaluate = [&](SphereFamily& fam) {
    const auto m = static_cast<Eigen::Index>(pts.size());
    fam.m = m;
    fam.points.resize(d, m);
    for (Eigen::Index q = 0; q < m; ++q) fam.points.col(q) = pts[static_cast<std::size_t>(q)];
    const RealMatrix sq = fam.points.array().square().matrix();  // d x m

    RealMatrix e(m, d * (d - 1) / 2);
    RealMatrix e4(m, needed);
    Eigen::Index c = 0;
    Eigen::Index c4 = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j) {
        const RealVector v = sq.row(i).cwiseProduct(sq.row(j)).transpose();
        e4.col(c4++) = v;
        if (j > i) e.col(c++) = v;
      }
    }
    fam.square_products = column_rank(e, tol);
    fam.quartic_moments = column_rank(e4, tol);

    bool pairs_ok = true;
    fam.min_pair_ratio = 1.0;
    for (int i = 0; i < d && pairs_ok; ++i) {
      for (int j = 0; j < d && pairs_ok; ++j) {
        if (i == j) continue;
        RealMatrix v(m, d);
        const RealVector base =
            fam.points.row(i).cwiseProduct(fam.points.row(j)).transpose();
        for (int k = 0; k < d; ++k) {
          v.col(k) = base.cwiseProduct(sq.row(k).transpose());
        }
        const RankResult rr = column_rank(v, tol);
        fam.min_pair_ratio = std::min(fam.min_pair_ratio, rr.min_retained_ratio);
        pairs_ok = rr.independent;
      }
    }
    return pairs_ok && fam.square_products.independent && fam.quartic_moments.independent;
  };

  while (static_cast<Eigen::Index>(pts.size()) < limits.max_points && index < index_cap) {
    RealVector x(d);
    for (int c = 0; c < d; ++c) {
      const double h = radical_inverse(index, primes[static_cast<std::size_t>(c)]) + shift(c);
      x(c) = 2.0 * (h - std::floor(h)) - 1.0;
    }
    ++index;
    const double radius = x.norm();
    if (radius > 1.0 || radius < kRadiusFloor) continue;
    x /= radius;
    if (x.cwiseAbs().minCoeff() < kCoordinateFloor) continue;
    pts.push_back(x);
    if (static_cast<Eigen::Index>(pts.size()) < needed) continue;

    SphereFamily fam;
    if (evaluate(fam)) {
      fam.b.reserve(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) {
        fam.b.push_back(fam.points.row(i).transpose().cast<Complex>().asDiagonal());
      }
      return fam;
    }
    last = std::move(fam);
  }
  std::ostringstream os;
  os << "sphere_b_family: conditions not met with " << pts.size()
     << " points (square-product rank " << last.square_products.rank << "/"
     << last.square_products.size << ", quartic rank " << last.quartic_moments.rank << "/"
     << last.quartic_moments.size << ")";
  throw SearchFailure(os.str());
}

std::vector<std::vector<int>> involution_words(int d) {
  std::vector<std::vector<int>> words;
  words.push_back({});
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (i != j) words.push_back({i, j});
    }
  }
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (j == i) continue;
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        for (int l = 0; l < d; ++l) {
          if (l != k) words.push_back({i, j, k, l});
        }
      }
    }
  }
  return words;
}

InvolutionFamily involution_family(int d, std::uint64_t seed, const Tolerances& tol,
                                   const SearchLimits& limits) {
  if (d < 5) {
    throw ArgumentError("involution_family: d must be at least 5");
  }
  const auto words = involution_words(d);
  const auto count = static_cast<Eigen::Index>(words.size());
  // The permutation matrices of S_r span a space of dimension (r-1)^2 + 1.
  Eigen::Index r0 = 2;
  while ((r0 - 1) * (r0 - 1) + 1 < count) ++r0;

  Rng rng(seed);
  int best_distinct = 0;
  for (Eigen::Index r = r0; r <= limits.max_degree; ++r) {
    for (int attempt = 0; attempt < limits.attempts_per_degree; ++attempt) {
      std::vector<Perm> gens;
      for (int i = 0; i < d; ++i) gens.push_back(random_involution(static_cast<int>(r), rng));

      std::vector<Perm> images;
      images.reserve(words.size());
      for (const auto& w : words) images.push_back(evaluate_word(gens, w, static_cast<int>(r)));
      const std::set<Perm> unique(images.begin(), images.end());
      const int distinct = static_cast<int>(unique.size());
      best_distinct = std::max(best_distinct, distinct);
      if (distinct != count) continue;

      // Exact Gram: <P_f, P_g> counts the points where f and g agree.
      Matrix gram(count, count);
      for (Eigen::Index x = 0; x < count; ++x) {
        for (Eigen::Index y = x; y < count; ++y) {
          int agree = 0;
          const auto& f = images[static_cast<std::size_t>(x)];
          const auto& g = images[static_cast<std::size_t>(y)];
          for (std::size_t q = 0; q < f.size(); ++q) agree += f[q] == g[q] ? 1 : 0;
          gram(x, y) = gram(y, x) = static_cast<double>(agree);
        }
      }
      RankResult rank = gram_rank(gram, tol);
      if (!rank.independent) continue;

      InvolutionFamily fam;
      fam.r = r;
      fam.perms = gens;
      for (const auto& g : gens) fam.u.push_back(permutation_matrix(g));
      fam.distinct_words = distinct;
      fam.word_rank = std::move(rank);
      return fam;
    }
  }
  std::ostringstream os;
  os << "involution_family: no family up to degree " << limits.max_degree
     << " (best distinct word count " << best_distinct << "/" << count << ")";
  throw SearchFailure(os.str());
}

Counterexample build_counterexample(int d, std::uint64_t seed, const Tolerances& tol,
                                    const SearchLimits& limits) {
  SphereFamily sphere = sphere_b_family(d, seed, tol, limits);
  InvolutionFamily inv = involution_family(d, seed, tol, limits);
  std::vector<Matrix> a;
  a.reserve(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
    a.push_back(kron(sphere.b[i], inv.u[i]));
  }
  RotaHypothesisReport report = check_lemma52(a, tol);
  Channel t(std::move(a));
  MarkovReport markov = verify_markov(t, tol);
  Certificate cert = square_certificate(report);
  return {std::move(t), std::move(sphere), std::move(inv), std::move(report), markov,
          std::move(cert)};
}

FactorizationWitness d4_converse_witness(const std::vector<Matrix>& a, const Tolerances& tol) {
  if (a.size() > 4) {
    throw ArgumentError("d4_converse_witness: at most four operators");
  }
  double sa = 0.0;
  double sum = 0.0;
  require_markov_family(a, tol, sa, sum);
  const Eigen::Index n = a.front().rows();
  std::vector<Matrix> padded(a);
  padded.resize(4, Matrix::Zero(n, n));
  Matrix u = Matrix::Zero(4 * n, 4 * n);
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) {
      Matrix sign = 2.0 * matrix_unit(4, i, j);
      if (i == j) sign -= Matrix::Identity(4, 4);
      u += kron(padded[static_cast<std::size_t>(i)] * padded[static_cast<std::size_t>(j)], sign);
    }
  }
  return {n, 4, std::move(u), AncillaTrace::uniform(4)};
}

int d4_scalar_identity_failures() {
  auto entry = [](int i, int j, int r, int c) {
    return 2 * (r == i && c == j ? 1 : 0) - (i == j && r == c ? 1 : 0);
  };
  int failures = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          int trace = 0;
          for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) trace += entry(i, j, r, c) * entry(k, l, c, r);
          const int expected = 4 * (i == l && j == k ? 1 : 0);
          failures += trace == expected ? 0 : 1;
        }
  return failures;
}

}  // namespace qmarkov
