// Copyright 2026 The Persuasion Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "persuasion/geometry.h"

#include <algorithm>

#include "persuasion/lp.h"

namespace persuasion {

std::string_view to_string(ProfileMode mode) {
  return mode == ProfileMode::kTheoretical ? "theoretical" : "practical";
}

ProfileMode parse_profile_mode(std::string_view text) {
  if (text == "theoretical") return ProfileMode::kTheoretical;
  if (text == "practical") return ProfileMode::kPractical;
  throw std::invalid_argument("unknown profile: " + std::string(text));
}

Polytope::Polytope(Eigen::Index dim, std::vector<Hyperplane> equalities,
                   std::vector<Halfspace> inequalities)
    : dim_(dim),
      equalities_(std::move(equalities)),
      inequalities_(std::move(inequalities)),
      cache_(std::make_shared<VertexCache>()) {
  for (const Hyperplane& h : equalities_) {
    if (h.dim() != dim_) throw std::invalid_argument("equality dimension");
  }
  for (const Halfspace& h : inequalities_) {
    if (h.dim() != dim_) throw std::invalid_argument("inequality dimension");
  }
}

Polytope Polytope::simplex(Eigen::Index dim) {
  std::vector<Halfspace> ineqs;
  for (Eigen::Index i = 0; i < dim; ++i) {
    ineqs.emplace_back(RVector::Unit(dim, i), Rational(0));
  }
  return Polytope(dim, {normalization_hyperplane(dim)}, std::move(ineqs));
}

Polytope Polytope::unit_box(Eigen::Index dim) {
  std::vector<Halfspace> ineqs;
  for (Eigen::Index i = 0; i < dim; ++i) {
    ineqs.emplace_back(RVector::Unit(dim, i), Rational(0));
    ineqs.emplace_back(RVector(-RVector::Unit(dim, i)), Rational(-1));
  }
  return Polytope(dim, {}, std::move(ineqs));
}

Polytope Polytope::empty(Eigen::Index dim) {
  Polytope p(dim);
  p.known_empty_ = true;
  return p;
}

Polytope Polytope::with(const Halfspace& h) const {
  if (known_empty_) return *this;
  std::vector<Halfspace> ineqs = inequalities_;
  ineqs.push_back(h);
  return Polytope(dim_, equalities_, std::move(ineqs));
}

Polytope Polytope::with(const Hyperplane& h) const {
  if (known_empty_) return *this;
  std::vector<Hyperplane> eqs = equalities_;
  eqs.push_back(h);
  return Polytope(dim_, std::move(eqs), inequalities_);
}

bool Polytope::contains(const RVector& x) const {
  if (known_empty_) return false;
  for (const Hyperplane& h : equalities_) {
    if (!h.contains(x)) return false;
  }
  for (const Halfspace& h : inequalities_) {
    if (!h.contains(x)) return false;
  }
  return true;
}

bool Polytope::strictly_contains(const RVector& x) const {
  if (known_empty_) return false;
  for (const Hyperplane& h : equalities_) {
    if (!h.contains(x)) return false;
  }
  for (const Halfspace& h : inequalities_) {
    if (!h.strictly_contains(x)) return false;
  }
  return true;
}

namespace {

std::vector<RVector> compute_vertices(const Polytope& p) {
  std::vector<RVector> out;
  if (p.known_empty()) return out;
  const Eigen::Index d = p.dim();
  const auto& eqs = p.equalities();
  const auto& ineqs = p.inequalities();

  Eigen::Index eq_rank = 0;
  if (!eqs.empty()) {
    RMatrix e(static_cast<Eigen::Index>(eqs.size()), d);
    for (std::size_t i = 0; i < eqs.size(); ++i) {
      e.row(static_cast<Eigen::Index>(i)) = eqs[i].coeffs().transpose();
    }
    eq_rank = rank(e);
  }
  const Eigen::Index pick = d - eq_rank;
  const Eigen::Index m = static_cast<Eigen::Index>(ineqs.size());
  if (pick > m) return out;

  const Eigen::Index rows = static_cast<Eigen::Index>(eqs.size()) + pick;
  RMatrix a(rows, d);
  RVector b(rows);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    a.row(static_cast<Eigen::Index>(i)) = eqs[i].coeffs().transpose();
    b(static_cast<Eigen::Index>(i)) = eqs[i].offset();
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(pick));
  for (Eigen::Index i = 0; i < pick; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    for (Eigen::Index k = 0; k < pick; ++k) {
      const Halfspace& h = ineqs[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
      const Eigen::Index r = static_cast<Eigen::Index>(eqs.size()) + k;
      a.row(r) = h.coeffs().transpose();
      b(r) = h.offset();
    }
    if (auto x = solve_unique(a, b)) {
      bool feasible = true;
      for (const Halfspace& h : ineqs) {
        if (!h.contains(*x)) {
          feasible = false;
          break;
        }
      }
      if (feasible) out.push_back(std::move(*x));
    }
    // Next combination.
    Eigen::Index k = pick - 1;
    while (k >= 0 && idx[static_cast<std::size_t>(k)] == m - pick + k) --k;
    if (k < 0) break;
    ++idx[static_cast<std::size_t>(k)];
    for (Eigen::Index j = k + 1; j < pick; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  std::sort(out.begin(), out.end(), LexLess{});
  out.erase(std::unique(out.begin(), out.end(),
                        [](const RVector& x, const RVector& y) {
                          return equal_vectors(x, y);
                        }),
            out.end());
  return out;
}

}  // namespace

const std::vector<RVector>& Polytope::vertices() const& {
  std::call_once(cache_->once,
                 [this] { cache_->vertices = compute_vertices(*this); });
  return cache_->vertices;
}

std::vector<RVector> Polytope::vertices() && {
  return static_cast<const Polytope&>(*this).vertices();
}

Hyperplane normalization_hyperplane(Eigen::Index dim) {
  return Hyperplane(RVector::Constant(dim, Rational(1)), Rational(1));
}

std::vector<RVector> enumerate_vertices(const Polytope& p) {
  return p.vertices();
}

Polytope minimal_h_representation(const Polytope& p) {
  if (p.known_empty() ||
      !feasible_point(p.inequalities(), p.equalities(), p.dim())) {
    throw EmptyPolytope("minimal_h_representation of an empty polytope");
  }
  std::vector<Halfspace> kept = p.inequalities();
  std::size_t i = 0;
  while (i < kept.size()) {
    if (is_redundant(i, kept, p.equalities())) {
      kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  std::vector<Hyperplane> eqs;
  for (const Hyperplane& h : p.equalities()) {
    if (std::find(eqs.begin(), eqs.end(), h) == eqs.end()) eqs.push_back(h);
  }
  return Polytope(p.dim(), std::move(eqs), std::move(kept));
}

bool is_full_dimensional(const Polytope& p) {
  if (p.known_empty()) return false;
  const Hyperplane norm = normalization_hyperplane(p.dim());
  for (const Hyperplane& h : p.equalities()) {
    if (!(h == norm)) return false;
  }
  if (p.inequalities().empty()) return true;
  return interior_point(p.inequalities(), p.equalities()).has_value();
}

namespace {

// Smallest M with M * delta >= sqrt(d).
mpz_class grid_size(Eigen::Index d, const Rational& delta) {
  // M * p >= sqrt(d q^2) for delta = p / q.
  mpz_class dq2 = mpz_class(static_cast<long>(d)) * delta.den() * delta.den();
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), dq2.get_mpz_t());
  if (r * r < dq2) r += 1;
  mpz_class m;
  mpz_cdiv_q(m.get_mpz_t(), r.get_mpz_t(), delta.num_ref().get_mpz_t());
  return m;
}

}  // namespace

SampleFrame sample_frame(const Polytope& p, const Rational& delta,
                         const ConstantProfile& profile,
                         std::size_t problem_bits) {
  if (delta.sign() <= 0) throw std::invalid_argument("delta must be positive");
  const Eigen::Index d = p.dim();
  std::vector<RVector> chosen;
  RMatrix basis(0, d);
  for (const RVector& v : p.vertices()) {
    RMatrix trial(basis.rows() + 1, d);
    trial.topRows(basis.rows()) = basis;
    trial.row(basis.rows()) = v.transpose();
    if (rank(trial) == trial.rows()) {
      basis = trial;
      chosen.push_back(v);
      if (static_cast<Eigen::Index>(chosen.size()) == d) break;
    }
  }
  if (static_cast<Eigen::Index>(chosen.size()) < d) {
    throw DegenerateVertexSet("fewer than d linearly independent vertices");
  }
  SampleFrame frame;
  frame.center = RVector::Zero(d);
  for (const RVector& v : chosen) frame.center += v;
  frame.center /= Rational(static_cast<long>(d));
  frame.grid = grid_size(d, delta);

  if (profile.mode == ProfileMode::kTheoretical) {
    const long dl = static_cast<long>(d);
    const long bits = static_cast<long>(problem_bits);
    Rational scale = Rational(dl * dl * dl) *
                     pow2(9 * dl * dl * dl * bits + 4 * dl * bits);
    frame.step = Rational(1) / scale;
    return frame;
  }
  // Largest power of two keeping every constraint at least half slack when
  // the free coordinates move by up to step.
  std::optional<Rational> limit;
  for (const Halfspace& h : p.inequalities()) {
    Rational spread(0);
    for (Eigen::Index k = 0; k + 1 < d; ++k) {
      spread += abs(h.coeffs()(k) - h.coeffs()(d - 1));
    }
    if (spread.is_zero()) continue;
    Rational slack = h.slack(frame.center);
    if (slack.sign() <= 0) {
      throw DegenerateVertexSet("vertex centroid on the boundary");
    }
    Rational bound = slack / (Rational(2) * spread);
    if (!limit || bound < *limit) limit = bound;
  }
  frame.step = limit ? floor_pow2(*limit) : Rational(1);
  return frame;
}

RVector grid_point(const SampleFrame& frame, const std::vector<mpz_class>& k) {
  const Eigen::Index d = frame.center.size();
  if (static_cast<Eigen::Index>(k.size()) != d - 1) {
    throw std::invalid_argument("grid_point needs d - 1 offsets");
  }
  RVector x(d);
  Rational rest(1);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    x(i) = frame.center(i) +
           frame.step * Rational(k[static_cast<std::size_t>(i)], frame.grid);
    rest -= x(i);
  }
  x(d - 1) = rest;
  return x;
}

mpz_class uniform_integer(const mpz_class& n, std::mt19937_64& rng) {
  if (n < 0) throw std::invalid_argument("uniform_integer: negative bound");
  if (n == 0) return 0;
  const std::size_t bits = bitlen(n);
  const std::size_t words = (bits + 63) / 64;
  while (true) {
    mpz_class v = 0;
    for (std::size_t w = 0; w < words; ++w) {
      mpz_class word;
      std::uint64_t r = rng();
      mpz_import(word.get_mpz_t(), 1, 1, sizeof(r), 0, 0, &r);
      v = (v << 64) + word;
    }
    // Keep the low `bits` bits.
    mpz_fdiv_r_2exp(v.get_mpz_t(), v.get_mpz_t(), bits);
    if (v <= n) return v;
  }
}

RVector sample_int(const Polytope& p, const Rational& delta,
                   const ConstantProfile& profile, std::size_t problem_bits,
                   std::mt19937_64& rng) {
  SampleFrame frame = sample_frame(p, delta, profile, problem_bits);
  std::vector<mpz_class> k;
  const Eigen::Index d = p.dim();
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    k.push_back(uniform_integer(mpz_class(2 * frame.grid), rng) - frame.grid);
  }
  RVector x = grid_point(frame, k);
  if (!p.strictly_contains(x)) {
    throw std::logic_error("sampled point is not strictly interior");
  }
  return x;
}

Hyperplane fit_homogeneous_hyperplane(const std::vector<RVector>& points) {
  if (points.empty()) throw RankDeficient("no points to fit");
  const Eigen::Index d = points.front().size();
  if (static_cast<Eigen::Index>(points.size()) != d - 1) {
    throw RankDeficient("need exactly d - 1 points");
  }
  RMatrix a(d - 1, d);
  for (Eigen::Index i = 0; i + 1 < d; ++i) {
    a.row(i) = points[static_cast<std::size_t>(i)].transpose();
  }
  RMatrix ns = null_space(a);
  if (ns.cols() != 1) throw RankDeficient("points are linearly dependent");
  return Hyperplane(RVector(ns.col(0)), Rational(0));
}

std::vector<Cell> enumerate_cells(const std::vector<Hyperplane>& hyperplanes,
                                  const Polytope& within) {
  std::vector<Cell> cells;
  if (within.known_empty()) return cells;
  std::optional<RVector> start;
  if (within.inequalities().empty()) {
    start = feasible_point({}, within.equalities(), within.dim());
  } else {
    start = interior_point(within.inequalities(), within.equalities());
  }
  if (!start) return cells;
  cells.push_back(Cell{{}, *start, within});
  for (const Hyperplane& h : hyperplanes) {
    std::vector<Cell> next;
    for (const Cell& cell : cells) {
      for (int sign : {1, -1}) {
        Halfspace side = sign > 0
                             ? Halfspace(h.coeffs(), h.offset())
                             : Halfspace(RVector(-h.coeffs()), -h.offset());
        Polytope region = cell.region.with(side);
        std::optional<RVector> pt =
            interior_point(region.inequalities(), region.equalities());
        if (!pt) continue;
        std::vector<int> signs = cell.signs;
        signs.push_back(sign);
        next.push_back(Cell{std::move(signs), std::move(*pt), std::move(region)});
      }
    }
    cells = std::move(next);
  }
  return cells;
}

std::size_t vertex_bits_bound(Eigen::Index dim, std::size_t problem_bits) {
  const std::size_t d = static_cast<std::size_t>(dim);
  return 9 * d * d * problem_bits;
}

}  // namespace persuasion
