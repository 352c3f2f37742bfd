#pragma once

// Shared fixtures and independent oracles for the test suites and the
// acceptance binary.

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "torusone/torusone.hpp"

namespace testsupport {

using namespace torusone;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// The E6-singular cubic surface.
inline PData e6_p() { return PData({{1, 3}, {3}, {2}}, IntMatrix{{-1, -2, 1, 1}}, IntMatrix(1, 0)); }

// The full flag variety SL3/B: l = (1,1),(1,1),(1,1), s = 2.
inline PData flag_p() {
  return PData({{1, 1}, {1, 1}, {1, 1}}, IntMatrix{{-1, 0, 0, 0, 1, 0}, {-1, 0, 1, 0, 0, 0}}, IntMatrix(2, 0));
}

// The smooth quadric in P^4 viewed with a 2-torus: s = 3.
inline PData quadric_p() {
  return PData({{1, 1}, {1, 1}, {1, 1}},
               IntMatrix{{-1, 0, 0, 0, 0, 1}, {-1, 0, 0, 0, 1, 0}, {-1, 0, 0, 1, 0, 0}}, IntMatrix(3, 0));
}

// Small vertical example with three vertical roots for k0 = 1.
inline PData vertical_toy_p() {
  return PData({{1, 1}, {1, 1}, {1}}, IntMatrix{{-1, 0, -1, 0, -1}}, IntMatrix{{1}});
}

// Vertical roots forming a copy of A1 in the semisimple part.
inline PData vertical_a1_p() {
  return PData({{1, 1}, {2}, {3}}, IntMatrix{{0, 0, 0, 0}, {-2, -1, -1, -2}}, IntMatrix{{-1, 1}, {1, 0}});
}

struct RandomPOptions {
  std::size_t r_min = 2, r_max = 3;
  std::size_t n_i_max = 2;
  long l_max = 3;
  std::size_t m_max = 2;
  std::size_t nm_max = 8;
  std::size_t s_max = 3;
  long entry_max = 5;
};

// Uniformly drawn parameters, retried until the data validates.
inline PData random_valid_p(std::mt19937& rng, const RandomPOptions& o = {}) {
  auto uni = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  while (true) {
    std::size_t r = uni(o.r_min, o.r_max);
    std::vector<std::vector<long>> l(r + 1);
    std::size_t n = 0;
    for (auto& b : l) {
      std::size_t ni = uni(1, o.n_i_max);
      for (std::size_t j = 0; j < ni; ++j) b.push_back(uni(1, o.l_max));
      n += ni;
    }
    std::size_t m = uni(0, o.m_max);
    if (n + m > o.nm_max) continue;
    if (n + m < r + 2) continue;
    std::size_t smax = std::min(o.s_max, n + m - r - 1);
    std::size_t s = uni(1, smax);
    IntMatrix d(s, n), dp(s, m);
    for (std::size_t a = 0; a < s; ++a) {
      for (std::size_t c = 0; c < n; ++c) d(a, c) = uni(-o.entry_max, o.entry_max);
      for (std::size_t c = 0; c < m; ++c) dp(a, c) = uni(-o.entry_max, o.entry_max);
    }
    PData P(l, d, dp);
    if (validate(P).ok()) return P;
  }
}

// The unique U in GL2(Z) with U * ours[v] = theirs[v] for all v, if any.
inline std::optional<std::array<Rational, 4>> match_gl2(const std::vector<IntVector>& ours,
                                                 const std::vector<IntVector>& theirs) {
  for (std::size_t a = 0; a < ours.size(); ++a)
    for (std::size_t b = a + 1; b < ours.size(); ++b) {
      Rational det = Rational(ours[a][0] * ours[b][1] - ours[a][1] * ours[b][0]);
      if (det == 0) continue;
      // inverse of [ours_a ours_b]
      Rational i00 = Rational(ours[b][1]) / det, i01 = Rational(-ours[b][0]) / det;
      Rational i10 = Rational(-ours[a][1]) / det, i11 = Rational(ours[a][0]) / det;
      std::array<Rational, 4> U{Rational(theirs[a][0]) * i00 + Rational(theirs[b][0]) * i10,
                                Rational(theirs[a][0]) * i01 + Rational(theirs[b][0]) * i11,
                                Rational(theirs[a][1]) * i00 + Rational(theirs[b][1]) * i10,
                                Rational(theirs[a][1]) * i01 + Rational(theirs[b][1]) * i11};
      for (const auto& x : U)
        if (!is_integral(x)) return std::nullopt;
      Rational du = U[0] * U[3] - U[1] * U[2];
      if (du != 1 && du != -1) return std::nullopt;
      for (std::size_t v = 0; v < ours.size(); ++v) {
        if (U[0] * Rational(ours[v][0]) + U[1] * Rational(ours[v][1]) != Rational(theirs[v][0])) return std::nullopt;
        if (U[2] * Rational(ours[v][0]) + U[3] * Rational(ours[v][1]) != Rational(theirs[v][1])) return std::nullopt;
      }
      return U;
    }
  return std::nullopt;
}

inline IntVector apply_u(const std::array<Rational, 4>& U, const IntVector& w) {
  return {Integer(numerator(U[0] * Rational(w[0]) + U[1] * Rational(w[1]))),
          Integer(numerator(U[2] * Rational(w[0]) + U[3] * Rational(w[1])))};
}


// ---------------------------------------------------------------------------
// brute-force root oracle
//
// The polytopes are written out again from the definition with plain long
// arithmetic, their vertices are found by solving every square subsystem
// of tight constraints, and all integer points of the vertex bounding box
// are tested.

struct RawConstraint {
  std::vector<long> a;
  long b;
  bool equality;
};

inline std::vector<long> column_of(const PData& P, std::size_t v) {
  std::vector<long> c;
  for (std::size_t row = 0; row < P.r() + P.s(); ++row) c.push_back(P.matrix()(row, v).convert_to<long>());
  return c;
}

inline std::vector<RawConstraint> vertical_constraints(const PData& P, std::size_t k0) {
  std::vector<RawConstraint> out;
  for (std::size_t v = 0; v < P.variable_count(); ++v) {
    bool target = v == P.n() + k0 - 1;
    out.push_back({column_of(P, v), target ? -1 : 0, target});
  }
  return out;
}

inline std::vector<RawConstraint> horizontal_constraints(const PData& P, std::size_t i0, std::size_t i1,
                                                         const std::vector<std::size_t>& C) {
  std::vector<RawConstraint> out;
  std::size_t v = 0;
  for (std::size_t i = 0; i <= P.r(); ++i)
    for (std::size_t j = 1; j <= P.n_i(i); ++j, ++v) {
      const bool chosen = j == C[i];
      if (i == i0)
        out.push_back({column_of(P, v), 0, false});
      else if (i == i1)
        out.push_back({column_of(P, v), chosen ? -1 : 0, chosen});
      else
        out.push_back({column_of(P, v), chosen ? 0 : P.l(i, j), chosen});
    }
  for (; v < P.variable_count(); ++v) out.push_back({column_of(P, v), 0, false});
  return out;
}

inline bool raw_satisfied(const std::vector<RawConstraint>& cs, const std::vector<long>& x) {
  for (const auto& c : cs) {
    long s = 0;
    for (std::size_t k = 0; k < x.size(); ++k) s += c.a[k] * x[k];
    if (c.equality ? s != c.b : s < c.b) return false;
  }
  return true;
}

// Solves the square rational system M x = b; nullopt if singular.
inline std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> M,
                                                         std::vector<Rational> b) {
  const std::size_t d = b.size();
  for (std::size_t c = 0; c < d; ++c) {
    std::size_t p = c;
    while (p < d && M[p][c] == 0) ++p;
    if (p == d) return std::nullopt;
    std::swap(M[p], M[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < d; ++r) {
      if (r == c || M[r][c] == 0) continue;
      Rational f = M[r][c] / M[c][c];
      for (std::size_t k = c; k < d; ++k) M[r][k] -= f * M[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = b[i] / M[i][i];
  return x;
}

// Per-coordinate [lo, hi] over all feasible vertices; nullopt if none.
inline std::optional<std::vector<std::pair<long, long>>> vertex_box(const std::vector<RawConstraint>& cs,
                                                                    std::size_t d) {
  std::vector<std::size_t> eq, in;
  for (std::size_t k = 0; k < cs.size(); ++k) (cs[k].equality ? eq : in).push_back(k);
  std::optional<std::vector<std::pair<Rational, Rational>>> box;
  if (eq.size() > d) return std::nullopt;
  std::size_t need = d - eq.size();
  if (need > in.size()) return std::nullopt;
  std::vector<bool> pick(in.size(), false);
  std::fill(pick.begin(), pick.begin() + need, true);
  do {
    std::vector<std::vector<Rational>> M;
    std::vector<Rational> b;
    auto push = [&](const RawConstraint& c) {
      std::vector<Rational> row;
      for (long a : c.a) row.emplace_back(a);
      M.push_back(row);
      b.emplace_back(c.b);
    };
    for (auto k : eq) push(cs[k]);
    for (std::size_t t = 0; t < in.size(); ++t)
      if (pick[t]) push(cs[in[t]]);
    auto x = solve_square(M, b);
    if (!x) continue;
    bool feasible = true;
    for (const auto& c : cs) {
      Rational s = 0;
      for (std::size_t k = 0; k < d; ++k) s += Rational(c.a[k]) * (*x)[k];
      if (c.equality ? s != c.b : s < c.b) feasible = false;
    }
    if (!feasible) continue;
    if (!box) {
      box.emplace();
      for (const auto& xi : *x) box->push_back({xi, xi});
    } else {
      for (std::size_t k = 0; k < d; ++k) {
        (*box)[k].first = std::min((*box)[k].first, (*x)[k]);
        (*box)[k].second = std::max((*box)[k].second, (*x)[k]);
      }
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (!box) return std::nullopt;
  std::vector<std::pair<long, long>> out;
  for (const auto& [lo, hi] : *box) out.push_back({ceil_of(lo).convert_to<long>(), floor_of(hi).convert_to<long>()});
  return out;
}

// Integer points of a polytope given by raw constraints; nullopt if the
// box exceeds `budget` points.
inline std::optional<std::vector<IntVector>> raw_points(const std::vector<RawConstraint>& cs, std::size_t d,
                                                        long budget = 2'000'000) {
  auto box = vertex_box(cs, d);
  std::vector<IntVector> out;
  if (!box) return out;
  long total = 1;
  for (const auto& [lo, hi] : *box) {
    if (hi < lo) return out;
    total *= (hi - lo + 1);
    if (total > budget) return std::nullopt;
  }
  std::vector<long> x(d);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == d) {
      if (raw_satisfied(cs, x)) {
        IntVector u;
        for (long t : x) u.emplace_back(t);
        out.push_back(u);
      }
      return;
    }
    for (long t = (*box)[k].first; t <= (*box)[k].second; ++t) {
      x[k] = t;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

// All roots by brute force, as (description-free) sorted DemazureRoot list;
// nullopt if some box was too large.
inline std::optional<std::vector<DemazureRoot>> oracle_roots(const PData& P) {
  const std::size_t d = P.r() + P.s();
  std::vector<DemazureRoot> out;
  for (std::size_t k0 = 1; k0 <= P.m(); ++k0) {
    auto pts = raw_points(vertical_constraints(P, k0), d);
    if (!pts) return std::nullopt;
    for (auto& u : *pts) out.push_back(make_vertical(P, u, k0));
  }
  for (std::size_t i0 = 0; i0 <= P.r(); ++i0)
    for (std::size_t i1 = 0; i1 <= P.r(); ++i1) {
      if (i0 == i1) continue;
      std::vector<std::size_t> C(P.r() + 1, 1);
      std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i > P.r()) {
          auto pts = raw_points(horizontal_constraints(P, i0, i1, C), d);
          if (!pts) return false;
          for (auto& u : *pts) out.push_back(make_horizontal(P, u, i0, i1, C));
          return true;
        }
        for (std::size_t j = 1; j <= P.n_i(i); ++j) {
          if (i != i0 && i != i1 && P.l(i, j) != 1) continue;
          C[i] = j;
          if (!rec(i + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) return std::nullopt;
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport
