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

#include "persuasion/learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "persuasion/lp.h"

namespace persuasion {
namespace {

std::size_t denominator_bits(const RVector& v) {
  return bitlen(common_denominator(v));
}

// Ceiling of the square root of a nonnegative integer.
mpz_class ceil_sqrt(const mpz_class& n) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r < n) r += 1;
  return r;
}

RVector along(const RVector& x1, const RVector& x2, const Rational& lambda) {
  RVector x(x1.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x(i) = x1(i) + lambda * (x2(i) - x1(i));
  }
  return x;
}

// Bit allowance for the denominators of separating hyperplane normals:
// lcm of 2d product denominators, each below 2^(b - 1).
std::size_t normal_bits(const ProbeContext& ctx) {
  const std::size_t d = static_cast<std::size_t>(ctx.space.dim());
  const std::size_t b = ctx.profile.effective_bits();
  return d * (2 * b - 2);
}

RVector boundary_search(ProbeContext& ctx, Action a_j, const RVector& x1,
                        const RVector& x2, Action* outside) {
  ++ctx.stats.binary_searches;
  const std::size_t d = static_cast<std::size_t>(x1.size());
  std::uint64_t iterations;
  Rational widen;
  std::uint64_t depth;
  if (ctx.profile.mode == ProfileMode::kTheoretical) {
    const std::size_t bx =
        std::max(vector_bit_complexity(x1), vector_bit_complexity(x2));
    const std::uint64_t k = 6 * d * (5 * bx + 8 * ctx.profile.b_bound);
    // The width halves each step; the loop runs while it is >= 2^-k.
    iterations = k + 1;
    widen = pow2(-static_cast<long>(k));
    depth = 3 * d * (5 * bx + 8 * ctx.profile.b_bound);
  } else {
    // The crossing has denominator below 2^lq; two such rationals are more
    // than 2^(-2 lq) apart.
    const std::size_t lq =
        1 + denominator_bits(x1) + denominator_bits(x2) + normal_bits(ctx);
    iterations = 2 * lq + 2;
    widen = pow2(-static_cast<long>(iterations));
    depth = lq + 1 >= 64 ? std::numeric_limits<std::uint64_t>::max()
                         : (std::uint64_t{1} << (lq + 1));
  }
  Rational lo(0), hi(1);
  for (std::uint64_t i = 0; i < iterations; ++i) {
    Rational mid = (lo + hi) / Rational(2);
    Action a = action_oracle(ctx, along(x1, x2, mid));
    if (a == a_j) {
      lo = mid;
    } else {
      hi = mid;
      if (outside) *outside = a;
    }
  }
  // The bracket never left an end: the crossing is that endpoint, the only
  // admissible rational that close to it.
  if (hi == Rational(1)) return x2;
  if (lo.is_zero()) return x1;
  Rational left = lo - widen, right = hi + widen;
  if (left.sign() < 0) left = Rational(0);
  if (Rational(1) < right) right = Rational(1);
  Rational lambda;
  try {
    lambda = stern_brocot_search(left, right, depth);
  } catch (const NoRationalWithinDepth& e) {
    throw TrialAborted(AbortReason::kNoRationalWithinDepth,
                       std::string("binary search: ") + e.what());
  }
  return along(x1, x2, lambda);
}

// Mixing weight pulling vertex v toward x_int.
Rational pull_in_weight(const ProbeContext& ctx, const RVector& x_int,
                        const RVector& v) {
  const long d = static_cast<long>(ctx.space.dim());
  const long bx = static_cast<long>(vector_bit_complexity(x_int));
  if (ctx.profile.mode == ProfileMode::kTheoretical) {
    const long l = static_cast<long>(ctx.problem_bits);
    return Rational(d) * pow2(-d * (bx + 4 * l) - 1);
  }
  const long safety = static_cast<long>(ctx.profile.safety_factor);
  const long bb = static_cast<long>(ctx.profile.b_bound);
  Rational a = pow2(-safety * (bx + bb));
  Rational b = pow2(-static_cast<long>(denominator_bits(v) + normal_bits(ctx) + 2));
  return a < b ? a : b;
}

// Step for the offsets around a boundary point x0.
Rational offset_step(const ProbeContext& ctx, const RVector& x0) {
  const long d = static_cast<long>(ctx.space.dim());
  const long bx = static_cast<long>(vector_bit_complexity(x0));
  if (ctx.profile.mode == ProfileMode::kTheoretical) {
    const long l = static_cast<long>(ctx.problem_bits);
    return pow2(-4 * d * (bx + l)) / Rational(d);
  }
  Rational step =
      pow2(-static_cast<long>(denominator_bits(x0) + normal_bits(ctx) + 2));
  for (const Halfspace& h : ctx.space.polytope.inequalities()) {
    Rational top(0);
    for (Eigen::Index i = 0; i < h.coeffs().size(); ++i) {
      Rational c = abs(h.coeffs()(i));
      if (top < c) top = c;
    }
    Rational slack = h.slack(x0);
    if (slack.sign() <= 0) {
      throw std::logic_error("boundary point outside the search space");
    }
    Rational bound = floor_pow2(slack / (Rational(4) * top));
    if (bound < step) step = bound;
  }
  return step;
}

// A point of the simplex facet {x_i = 0}.
RVector sample_on_facet(ProbeContext& ctx, Eigen::Index i) {
  const Eigen::Index d = ctx.space.dim();
  RVector y = sample_int(Polytope::simplex(d - 1), ctx.delta, ctx.profile,
                         ctx.problem_bits, ctx.rng);
  RVector x(d);
  for (Eigen::Index k = 0, j = 0; k < d; ++k) {
    x(k) = k == i ? Rational(0) : y(j++);
  }
  return x;
}

bool has_halfspace(const Polytope& p, const Halfspace& h) {
  const auto& ineqs = p.inequalities();
  return std::find(ineqs.begin(), ineqs.end(), h) != ineqs.end();
}

Action cached_vertex_answer(ProbeContext& ctx, const RVector& x) {
  auto it = ctx.vertex_answers.find(x);
  if (it != ctx.vertex_answers.end()) return it->second;
  Action a = action_oracle(ctx, x);
  ctx.vertex_answers.emplace(x, a);
  return a;
}

}  // namespace

std::string_view to_string(AbortReason reason) {
  switch (reason) {
    case AbortReason::kNone:
      return "none";
    case AbortReason::kEmptyThetaTilde:
      return "empty_theta_tilde";
    case AbortReason::kBudgetExhausted:
      return "budget_exhausted";
    case AbortReason::kRankDeficient:
      return "rank_deficient";
    case AbortReason::kNoRationalWithinDepth:
      return "no_rational_within_depth";
    case AbortReason::kInconsistentOracle:
      return "inconsistent_oracle";
    case AbortReason::kOracleCallCap:
      return "oracle_call_cap";
  }
  return "unknown";
}

std::size_t SearchSpace::extra_bits() const {
  return bit_complexity(epsilon) + vector_bit_complexity(mu_hat);
}

SearchSpace make_search_space(const RVector& mu_hat, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  const Eigen::Index d = mu_hat.size();
  const Rational threshold = Rational(2) * epsilon;
  std::vector<State> kept;
  RVector coeffs = RVector::Zero(d);
  for (Eigen::Index s = 0; s < d; ++s) {
    if (threshold < mu_hat(s)) {
      kept.push_back(static_cast<State>(s));
      coeffs(s) = mu_hat(s);
    }
  }
  if (kept.empty()) {
    throw EmptyThetaTilde("no state has estimated probability above 2 eps");
  }
  Halfspace cut(coeffs, threshold);
  Polytope poly = Polytope::simplex(d).with(cut);
  return SearchSpace{epsilon, std::move(kept), mu_hat, std::move(cut),
                     std::move(poly)};
}

SearchSpace build_search_space(Environment& env, std::uint64_t t1,
                               const Rational& epsilon) {
  const auto d = static_cast<long>(env.num_states());
  if (epsilon.sign() <= 0 || !(epsilon < Rational(1, 6 * d))) {
    throw std::invalid_argument("epsilon must lie in (0, 1/(6d))");
  }
  PreparedScheme phi = env.prepare(uninformative_scheme(env.num_states()));
  for (std::uint64_t r = 0; r < t1; ++r) env.commit_and_play(phi);
  return make_search_space(env.prior_estimate().mu_hat, epsilon);
}

std::vector<Action> RegionCollection::closed_actions() const {
  std::vector<Action> out;
  for (std::size_t a = 0; a < closed.size(); ++a) {
    if (closed[a]) out.push_back(a);
  }
  return out;
}

ProbeContext::ProbeContext(Environment& env_in, const SearchSpace& space_in,
                           const ConstantProfile& profile_in,
                           std::mt19937_64& rng_in, const Rational& zeta_in,
                           std::uint64_t cap)
    : env(env_in),
      space(space_in),
      profile(profile_in),
      rng(rng_in),
      zeta(zeta_in),
      oracle_call_cap(cap) {
  const long d = static_cast<long>(env.num_states());
  const long n = static_cast<long>(env.num_actions());
  delta = zeta / Rational(2 * n * n * (2 * (d + n) + n));
  round_budget = oracle_round_budget(space.epsilon, zeta, oracle_call_cap,
                                     profile.safety_factor);
  problem_bits = profile.b_bound + space.extra_bits();
}

void ProbeContext::check_vertices(const Polytope& p) {
  if (!vertex_bits_b) return;
  const std::size_t limit =
      vertex_bits_bound(space.dim(), *vertex_bits_b + space.extra_bits());
  for (const RVector& v : p.vertices()) {
    const std::size_t bits = common_denominator_bits(v);
    ++stats.vertices_checked;
    stats.max_vertex_bits = std::max(stats.max_vertex_bits, bits);
    if (bits > limit) ++stats.vertex_bits_violations;
  }
}

std::size_t common_denominator_bits(const RVector& v) {
  const mpz_class den = common_denominator(v);
  std::size_t top = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    mpz_class scaled = v(i).num() * (den / v(i).den());
    top = std::max(top, bitlen(scaled));
  }
  return top + bitlen(den);
}

Action action_oracle(ProbeContext& ctx, const RVector& x) {
  if (++ctx.stats.oracle_calls > ctx.oracle_call_cap) {
    throw TrialAborted(AbortReason::kOracleCallCap, "oracle call cap reached");
  }
  if (ctx.env.mode() == OracleMode::kDirect) {
    return ctx.env.direct_action_query(x);
  }
  PreparedScheme phi = ctx.env.prepare(two_signal_scheme(x));
  for (std::uint64_t r = 0; r < ctx.round_budget; ++r) {
    RoundOutcome out = ctx.env.commit_and_play(phi);
    ++ctx.stats.rounds;
    if (out.signal == 0) return out.action;
  }
  throw BudgetExhausted("signal s1 never sent within the round budget");
}

RVector binary_search(ProbeContext& ctx, Action a_j, const RVector& x1,
                      const RVector& x2) {
  return boundary_search(ctx, a_j, x1, x2, nullptr);
}

LearnedHyperplane find_hyperplane(ProbeContext& ctx, Action a_j,
                                  const Polytope& upper, const RVector& x_int,
                                  const RVector& v) {
  const Eigen::Index d = ctx.space.dim();
  for (int attempt = 0; attempt < 3; ++attempt) {
    ++ctx.stats.hyperplane_attempts;
    try {
      RVector x = sample_int(upper, ctx.delta, ctx.profile, ctx.problem_bits,
                             ctx.rng);
      const bool inside = action_oracle(ctx, x) == a_j;
      const RVector& x1 = inside ? x : x_int;
      const RVector& x2 = inside ? v : x;
      Action outside = a_j;
      RVector x0 = boundary_search(ctx, a_j, x1, x2, &outside);

      std::vector<RVector> points;
      if (d == 2) {
        points.push_back(x0);
      } else {
        const Rational alpha = offset_step(ctx, x0);
        std::vector<RVector> side_j, side_k;
        std::vector<Eigen::Index> from_j, from_k;
        for (Eigen::Index i = 0; i < d; ++i) {
          RVector dir = sample_on_facet(ctx, i) - x0;
          RVector plus = x0 + alpha * dir;
          RVector minus = x0 - alpha * dir;
          Action a = action_oracle(ctx, plus);
          if (a == a_j) {
            side_j.push_back(plus);
            side_k.push_back(minus);
          } else {
            side_k.push_back(plus);
            side_j.push_back(minus);
            outside = a;
          }
          from_j.push_back(i);
          from_k.push_back(i);
        }
        RMatrix found(0, d);
        for (std::size_t p = 0;
             p < side_j.size() && static_cast<Eigen::Index>(points.size()) < d - 1;
             ++p) {
          for (std::size_t q = 0;
               q < side_k.size() && static_cast<Eigen::Index>(points.size()) < d - 1;
               ++q) {
            if (from_j[p] == from_k[q]) continue;  // mirror pair: returns x0
            RVector y = boundary_search(ctx, a_j, side_j[p], side_k[q], nullptr);
            RMatrix trial(found.rows() + 1, d);
            trial.topRows(found.rows()) = found;
            trial.row(found.rows()) = y.transpose();
            if (rank(trial) == trial.rows()) {
              found = trial;
              points.push_back(y);
            }
          }
        }
        if (static_cast<Eigen::Index>(points.size()) < d - 1) {
          throw RankDeficient("offset pairs span too few boundary points");
        }
      }
      Hyperplane plane = fit_homogeneous_hyperplane(points);
      if (!plane.contains(x0)) {
        throw RankDeficient("boundary point off the fitted hyperplane");
      }
      if (plane.residual(x1).is_zero()) {
        throw RankDeficient("inner endpoint on the fitted hyperplane");
      }
      return LearnedHyperplane{std::move(plane), a_j, outside};
    } catch (const RankDeficient&) {
      continue;
    }
  }
  throw TrialAborted(AbortReason::kRankDeficient,
                     "no separating hyperplane after 3 attempts");
}

FullRegions find_fully_dimensional_regions(ProbeContext& ctx) {
  const Polytope& space = ctx.space.polytope;
  FullRegions out;
  std::vector<Hyperplane> learned;
  ctx.check_vertices(space);
  while (true) {
    std::vector<Cell> cells = enumerate_cells(learned, space);
    const Cell* open = nullptr;
    for (const Cell& cell : cells) {
      bool covered = false;
      for (const auto& [a, region] : out.regions) {
        if (region.contains(cell.point)) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        open = &cell;
        break;
      }
    }
    if (!open) break;
    ctx.check_vertices(open->region);

    RVector x_int;
    Action a_j = 0;
    for (int tries = 0;; ++tries) {
      x_int = sample_int(open->region, ctx.delta, ctx.profile,
                         ctx.problem_bits, ctx.rng);
      a_j = action_oracle(ctx, x_int);
      if (!out.regions.count(a_j)) break;
      if (tries == 3) {
        throw TrialAborted(AbortReason::kInconsistentOracle,
                           "uncovered cell answers with a closed action");
      }
    }

    Polytope upper = space;
    std::set<RVector, LexLess> confirmed;
    bool changed = true;
    while (changed) {
      changed = false;
      ctx.check_vertices(upper);
      const std::vector<RVector> vertices = upper.vertices();
      for (const RVector& v : vertices) {
        if (confirmed.count(v)) continue;
        const Rational lambda = pull_in_weight(ctx, x_int, v);
        RVector x = along(v, x_int, lambda);
        if (action_oracle(ctx, x) == a_j) {
          confirmed.insert(v);
          continue;
        }
        LearnedHyperplane h = find_hyperplane(ctx, a_j, upper, x_int, v);
        const Rational r = h.plane.residual(x_int);
        if (r.is_zero()) {
          throw TrialAborted(AbortReason::kInconsistentOracle,
                             "interior point on a learned hyperplane");
        }
        Halfspace side = r.sign() > 0
                             ? Halfspace(h.plane.coeffs(), Rational(0))
                             : Halfspace(RVector(-h.plane.coeffs()), Rational(0));
        if (has_halfspace(upper, side)) {
          throw TrialAborted(AbortReason::kInconsistentOracle,
                             "learned hyperplane already bounds the region");
        }
        upper = upper.with(side);
        if (std::find(learned.begin(), learned.end(), h.plane) == learned.end()) {
          learned.push_back(h.plane);
        }
        out.hyperplanes.push_back(std::move(h));
        changed = true;
        break;
      }
    }
    out.closed.push_back(a_j);
    out.regions.emplace(a_j, std::move(upper));
  }
  return out;
}

Polytope find_face(ProbeContext& ctx, const FullRegions& full, Action a_j) {
  const Eigen::Index d = ctx.space.dim();
  std::set<RVector, LexLess> all;
  for (const auto& [a, region] : full.regions) {
    for (const RVector& v : region.vertices()) all.insert(v);
  }
  std::vector<RVector> seen;
  for (const RVector& x : all) {
    if (cached_vertex_answer(ctx, x) == a_j) seen.push_back(x);
  }
  if (seen.empty()) return Polytope::empty(d);
  // full.regions is keyed by action, so this scans in index order.
  for (const auto& [a_i, region] : full.regions) {
    bool holds_all = true;
    for (const RVector& x : seen) holds_all = holds_all && region.contains(x);
    if (!holds_all) continue;
    Polytope minimal = minimal_h_representation(region);
    std::vector<Hyperplane> eqs = minimal.equalities();
    for (const Halfspace& h : minimal.inequalities()) {
      Hyperplane b = h.boundary();
      bool through_all = true;
      for (const RVector& x : seen) through_all = through_all && b.contains(x);
      if (through_all) eqs.push_back(b);
    }
    Polytope face(d, std::move(eqs), minimal.inequalities());
    if (!face.vertices().empty()) {
      ctx.check_vertices(face);
      return face;
    }
  }
  return Polytope::empty(d);
}

RegionCollection find_polytopes(ProbeContext& ctx) {
  const std::size_t n = ctx.env.num_actions();
  FullRegions full = find_fully_dimensional_regions(ctx);
  RegionCollection out;
  out.closed.assign(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    auto it = full.regions.find(a);
    if (it != full.regions.end()) {
      out.regions.push_back(it->second);
      out.closed[a] = true;
    } else {
      out.regions.push_back(find_face(ctx, full, a));
    }
  }
  out.hyperplanes = std::move(full.hyperplanes);
  return out;
}

Polytope lift_to_box(const Polytope& region) {
  const Eigen::Index d = region.dim();
  if (region.known_empty() || region.vertices().empty()) {
    std::vector<Hyperplane> zero;
    for (Eigen::Index s = 0; s < d; ++s) {
      RVector e = RVector::Zero(d);
      e(s) = Rational(1);
      zero.emplace_back(std::move(e), Rational(0));
    }
    return Polytope(d, std::move(zero));
  }
  auto homogeneous = [d](const RVector& c, const Rational& b) {
    RVector h(d);
    for (Eigen::Index s = 0; s < d; ++s) h(s) = c(s) - b;
    return h;
  };
  auto nonzero = [](const RVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (!v(i).is_zero()) return true;
    }
    return false;
  };
  std::vector<Hyperplane> eqs;
  for (const Hyperplane& h : region.equalities()) {
    RVector c = homogeneous(h.coeffs(), h.offset());
    if (!nonzero(c)) continue;  // the normalization itself
    Hyperplane lifted(std::move(c), Rational(0));
    if (std::find(eqs.begin(), eqs.end(), lifted) == eqs.end()) {
      eqs.push_back(std::move(lifted));
    }
  }
  std::vector<Halfspace> ineqs;
  auto add = [&ineqs](Halfspace h) {
    if (std::find(ineqs.begin(), ineqs.end(), h) == ineqs.end()) {
      ineqs.push_back(std::move(h));
    }
  };
  for (const Halfspace& h : region.inequalities()) {
    RVector c = homogeneous(h.coeffs(), h.offset());
    if (!nonzero(c)) continue;
    add(Halfspace(std::move(c), Rational(0)));
  }
  for (Eigen::Index s = 0; s < d; ++s) {
    RVector e = RVector::Zero(d);
    e(s) = Rational(1);
    add(Halfspace(e, Rational(0)));
    add(Halfspace(RVector(-e), Rational(-1)));
  }
  return Polytope(d, std::move(eqs), std::move(ineqs));
}

SignalingResult compute_signaling(const std::vector<Polytope>& lifted,
                                  const RVector& mu_hat,
                                  const RMatrix& sender_utility) {
  const Eigen::Index d = mu_hat.size();
  const Eigen::Index n = static_cast<Eigen::Index>(lifted.size());
  LinearProgram lp(n * d);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index s = 0; s < d; ++s) {
      lp.objective(a * d + s) = mu_hat(s) * sender_utility(s, a);
    }
    const Polytope& p = lifted[static_cast<std::size_t>(a)];
    for (const Hyperplane& h : p.equalities()) {
      RVector row = RVector::Zero(n * d);
      row.segment(a * d, d) = h.coeffs();
      lp.add_row(std::move(row), Relation::kEqual, h.offset());
    }
    for (const Halfspace& h : p.inequalities()) {
      RVector row = RVector::Zero(n * d);
      row.segment(a * d, d) = h.coeffs();
      lp.add_row(std::move(row), Relation::kGreaterEqual, h.offset());
    }
  }
  for (Eigen::Index s = 0; s < d; ++s) {
    RVector row = RVector::Zero(n * d);
    for (Eigen::Index a = 0; a < n; ++a) row(a * d + s) = Rational(1);
    lp.add_row(std::move(row), Relation::kLessEqual, Rational(1));
  }
  LpSolution sol = solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw std::logic_error("signaling program not optimal");
  }
  SignalingResult out;
  out.value = sol.value;
  out.scheme.table = RMatrix(d, n + 1);
  out.scheme.labels.push_back("s*");
  for (Eigen::Index s = 0; s < d; ++s) out.scheme.table(s, 0) = Rational(1);
  for (Eigen::Index a = 0; a < n; ++a) {
    RVector x = sol.point.segment(a * d, d);
    for (Eigen::Index s = 0; s < d; ++s) {
      out.scheme.table(s, a + 1) = x(s);
      out.scheme.table(s, 0) -= x(s);
    }
    out.scheme.labels.push_back("a" + std::to_string(a + 1));
    out.slices.push_back(std::move(x));
  }
  return out;
}

SignalingResult compute_signaling(const RegionCollection& regions,
                                  const RVector& mu_hat,
                                  const RMatrix& sender_utility) {
  std::vector<Polytope> lifted;
  for (const Polytope& p : regions.regions) lifted.push_back(lift_to_box(p));
  return compute_signaling(lifted, mu_hat, sender_utility);
}

Rational default_epsilon(std::size_t d, std::size_t n, std::size_t b_bound,
                         std::uint64_t horizon) {
  // ceil(sqrt(b n) d^4) = ceil(sqrt(b n d^8)).
  mpz_class d8 = 1;
  for (int i = 0; i < 8; ++i) d8 *= static_cast<unsigned long>(d);
  mpz_class top = ceil_sqrt(mpz_class(static_cast<unsigned long>(b_bound)) *
                            static_cast<unsigned long>(n) * d8);
  mpz_class bottom = ceil_sqrt(mpz_class(static_cast<unsigned long>(horizon)));
  Rational schedule(top, bottom);
  Rational cap(1, 6 * static_cast<long>(d) + 1);
  return schedule < cap ? schedule : cap;
}

std::uint64_t regret_phase1_rounds(std::size_t d, const Rational& epsilon,
                                   const Rational& delta) {
  const double rounds = std::ceil(
      12.0 / epsilon.to_double() *
      std::log(2.0 * static_cast<double>(d) / delta.to_double()));
  return static_cast<std::uint64_t>(rounds);
}

std::uint64_t oracle_round_budget(const Rational& epsilon, const Rational& zeta,
                                  std::uint64_t oracle_call_cap,
                                  std::size_t safety_factor) {
  const double per = std::ceil(
      std::log(2.0 * static_cast<double>(oracle_call_cap) / zeta.to_double()) /
      epsilon.to_double());
  return static_cast<std::uint64_t>(per) * safety_factor;
}

std::mt19937_64 learner_rng(std::uint64_t seed) {
  return std::mt19937_64(seed ^ 0x9e3779b97f4a7c15ULL);
}

RegretRun run_regret(Environment& env, const LearnerConfig& config) {
  if (env.horizon() == Environment::kNoHorizon) {
    throw std::invalid_argument("run_regret needs an environment horizon");
  }
  if (env.t() != 1) throw std::invalid_argument("environment already used");
  if (config.stride < 1) throw std::invalid_argument("stride must be >= 1");
  const std::uint64_t horizon = env.horizon();
  const std::size_t d = env.num_states(), n = env.num_actions();
  const Rational delta(mpz_class(1), mpz_class(static_cast<unsigned long>(horizon)));
  const Rational zeta = delta;

  RegretRun run;
  run.horizon = horizon;
  run.epsilon = config.epsilon
                    ? *config.epsilon
                    : default_epsilon(d, n, config.profile.b_bound, horizon);
  run.t1 = regret_phase1_rounds(d, run.epsilon, delta);

  std::mt19937_64 rng = learner_rng(config.seed);
  std::optional<ProbeContext> ctx;
  int phase = 1;
  try {
    run.space = build_search_space(env, run.t1, run.epsilon);
    run.phase1_end = env.t() - 1;
    phase = 2;
    ctx.emplace(env, *run.space, config.profile, rng, zeta,
                config.oracle_call_cap);
    ctx->vertex_bits_b = config.vertex_bits_b;
    run.regions = find_polytopes(*ctx);
    run.phase2_end = env.t() - 1;
    phase = 3;

    std::vector<Polytope> lifted;
    for (const Polytope& p : run.regions->regions) {
      lifted.push_back(lift_to_box(p));
    }
    std::optional<PreparedScheme> current;
    for (std::uint64_t k = 0; env.t() <= horizon; ++k) {
      if (k % config.stride == 0) {
        SignalingResult sig = compute_signaling(
            lifted, env.prior_estimate().mu_hat, env.sender_utility());
        current = env.prepare(sig.scheme);
      }
      env.commit_and_play(*current);
    }
  } catch (const HorizonReached&) {
  } catch (const TrialAborted& e) {
    run.abort = e.reason();
    run.abort_detail = e.what();
  }
  const std::uint64_t played = env.t() - 1;
  if (phase == 1) run.phase1_end = played;
  if (phase <= 2) run.phase2_end = played;
  run.rounds_played = played;
  if (ctx) run.stats = ctx->stats;
  run.realized.reserve(played);
  for (std::uint64_t t = 1; t <= played; ++t) {
    run.realized.push_back(env.round(t).u_s);
  }
  return run;
}

Rational RegretTrace::cumulative_regret(std::size_t t) const {
  Rational total = Rational(static_cast<long>(t)) * opt;
  for (std::size_t i = 0; i < t && i < records.size(); ++i) {
    total -= records[i].expected;
  }
  return total;
}

}  // namespace persuasion
