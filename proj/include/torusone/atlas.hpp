#pragma once

// The K*-surfaces X(l0,l1,l2) with one elliptic fixed point: their P
// matrices, predicates and Gorenstein index, the closed-form horizontal
// roots and the tables by Gorenstein index. Then the threefold normal
// forms for s = 2 and the list of almost homogeneous Fano threefolds with
// reductive automorphism group.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "torusone/demazure.hpp"
#include "torusone/errors.hpp"
#include "torusone/exact.hpp"
#include "torusone/grading.hpp"
#include "torusone/presentation.hpp"
#include "torusone/rootsystem.hpp"

namespace torusone {

// ---------------------------------------------------------------------------
// surfaces

struct SurfaceTriple {
  long l0 = 0, l1 = 0, l2 = 0;
  long d1 = 0, d2 = 0;  // d1*l2 + d2*l1 = -1, 0 <= d2 < l2

  static SurfaceTriple make(long l0, long l1, long l2) {
    if (l0 < 1) throw InvalidInput("surface triple: l0 must be positive");
    if (l2 < 2 || l1 < l2) throw InvalidInput("surface triple: need l1 >= l2 >= 2");
    if (l0 >= l1 * l2) throw InvalidInput("surface triple: need l0 < l1*l2");
    if (std::gcd(l1, l2) != 1) throw InvalidInput("surface triple: l1 and l2 are not coprime");
    // x*l1 = 1 mod l2 by extended Euclid
    long a = l1 % l2, b = l2, x0 = 1, x1 = 0;
    while (b != 0) {
      long q = a / b;
      std::tie(a, b) = std::pair{b, a - q * b};
      std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
    }
    SurfaceTriple t{l0, l1, l2, 0, 0};
    t.d2 = ((-x0) % l2 + l2) % l2;
    t.d1 = (-1 - t.d2 * l1) / l2;
    return t;
  }

  auto key() const { return std::tie(l0, l1, l2); }
  bool operator<(const SurfaceTriple& o) const { return key() < o.key(); }
  bool operator==(const SurfaceTriple& o) const { return key() == o.key(); }

  std::string to_string() const {
    return "(" + std::to_string(l0) + "," + std::to_string(l1) + "," + std::to_string(l2) + ")";
  }
};

inline std::pair<AData, PData> surface_p_matrix(const SurfaceTriple& t) {
  PData P({{1, t.l0}, {t.l1}, {t.l2}}, IntMatrix{{0, 1, t.d1, t.d2}}, IntMatrix(1, 0));
  require_valid(P);
  return {AData::standard(2), P};
}

inline PData surface_p(const SurfaceTriple& t) { return surface_p_matrix(t).second; }

// free part of the anticanonical class; K has rank one here
inline Integer surface_anticanonical_degree(const SurfaceTriple& t) {
  PData P = surface_p(t);
  GradingData g = compute_gradings(P);
  IntVector w = anticanonical_class(g, P);
  // orient so that deg T02 = 1
  Integer unit = g.K.free_part(g.degK[P.var_T(0, 2)]).at(0);
  return g.K.free_part(w).at(0) * unit;
}

inline bool is_del_pezzo(const SurfaceTriple& t) {
  Integer formula = t.l1 + t.l2 + 1 - t.l0;
  Integer computed = surface_anticanonical_degree(t);
  if (computed != formula)
    throw CrossCheckError("anticanonical degree of X" + t.to_string() + " is " + computed.str() +
                          ", expected l1+l2+1-l0 = " + formula.str());
  return t.l0 < t.l1 + t.l2 + 1;
}

inline bool is_almost_homogeneous_surface(const SurfaceTriple& t) {
  bool formula = t.l0 <= t.l1;
  if (is_almost_homogeneous(surface_p(t)) != formula)
    throw CrossCheckError("X" + t.to_string() + ": l0 <= l1 disagrees with the existence of horizontal roots");
  return formula;
}

// 1/l0 + 1/l1 + 1/l2 > 1
inline bool is_log_terminal(const SurfaceTriple& t) {
  return t.l1 * t.l2 + t.l0 * t.l2 + t.l0 * t.l1 > t.l0 * t.l1 * t.l2;
}

inline long gorenstein_index(const SurfaceTriple& t) {
  long k = t.l1 * t.l2 - t.l0;
  long c = t.l1 + t.l2 + 1 - t.l0;
  return k / std::gcd(k, c);
}

// ---------------------------------------------------------------------------
// closed-form surface roots

struct SurfaceShape {
  PData P;               // blocks (1,l02), (l11), (l21) with l11 >= l21 >= 2
  Renumbering ren;       // from the input
  bool flipped = false;  // last row negated to get det(P01) > 0
};

// Brings a 3x4 P with block sizes 2,1,1 into the shape of the closed form.
// Block permutations and column swaps leave the roots unchanged; negating
// the last row negates them.
inline SurfaceShape normalize_surface(const PData& P) {
  require_valid(P);
  if (P.r() != 2 || P.s() != 1 || P.m() != 0 || P.n() != 4)
    throw InvalidInput("surface shape: need r = 2, s = 1, m = 0 and four T-variables");
  Renumbering ren;
  std::vector<std::size_t> single;
  std::size_t two = 3;
  for (std::size_t i = 0; i < 3; ++i) {
    if (P.n_i(i) == 2)
      two = i;
    else
      single.push_back(i);
  }
  if (two == 3 || single.size() != 2) throw InvalidInput("surface shape: need block sizes 2, 1, 1");
  if (P.l(single[0], 1) < P.l(single[1], 1)) std::swap(single[0], single[1]);
  if (P.l(single[1], 1) < 2) throw InvalidInput("surface shape: the one-column blocks need exponents >= 2");
  ren.blocks = {two, single[0], single[1]};
  if (P.l(two, 1) == 1)
    ren.columns[0] = {1, 2};
  else if (P.l(two, 2) == 1)
    ren.columns[0] = {2, 1};
  else
    throw InvalidInput("surface shape: the two-column block needs an exponent 1");
  ren.columns[1] = {1};
  ren.columns[2] = {1};

  auto col = [&](std::size_t i, std::size_t j) { return P.var_T(ren.blocks[i], ren.columns[i][j - 1]); };
  std::vector<std::size_t> order{col(0, 1), col(0, 2), col(1, 1), col(2, 1)};
  IntMatrix d(1, 4);
  for (std::size_t c = 0; c < 4; ++c) d(0, c) = P.d()(0, order[c]);
  SurfaceShape out{PData({{1, P.l(ren.blocks[0], ren.columns[0][1])}, {P.l(ren.blocks[1], 1)}, {P.l(ren.blocks[2], 1)}},
                         d, IntMatrix(1, 0)),
                   ren, false};
  IntMatrix p01(3, 3);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t c = 0; c < 3; ++c) p01(a, c) = out.P.matrix()(a, c + 1);
  Integer det = determinant(p01);
  if (det == 0) throw InvalidInput("surface shape: det(P01) = 0");
  if (det < 0) {
    d.negate_row(0);
    out.P = PData(out.P.exponents(), d, IntMatrix(1, 0));
    out.flipped = true;
  }
  return out;
}

struct SurfaceRootCase {
  int index = 0;  // 1..4
  std::size_t i0 = 0, i1 = 0;
  std::vector<std::size_t> C;
  std::vector<Integer> alphas;  // in the normalized coordinates
  bool applicable = true;       // cases 2 and 4 need l02 = 1
};

struct SurfaceClosedForm {
  SurfaceShape shape;
  std::array<SurfaceRootCase, 4> cases;
  std::vector<Integer> alphas;  // sorted union, in the input coordinates
};

namespace detail {

// integers a with c.first * a >= c.second for all c and l | d*a + 1
inline std::vector<Integer> solve_interval(const std::vector<std::pair<Integer, Integer>>& cons, const Integer& l,
                                           const Integer& d) {
  std::optional<Integer> lo, hi;
  for (const auto& [a, b] : cons) {
    if (a > 0) {
      Integer v = ceil_div(b, a);
      if (!lo || v > *lo) lo = v;
    } else if (a < 0) {
      Integer v = floor_div(b, a);
      if (!hi || v < *hi) hi = v;
    } else if (b > 0) {
      return {};
    }
  }
  if (!lo || !hi) throw CrossCheckError("closed-form root interval is unbounded");
  std::vector<Integer> out;
  for (Integer x = *lo; x <= *hi; ++x)
    if ((d * x + 1) % l == 0) out.push_back(x);
  return out;
}

}  // namespace detail

inline SurfaceClosedForm surface_roots_closed_form(const PData& input) {
  SurfaceClosedForm out;
  out.shape = normalize_surface(input);
  const PData& P = out.shape.P;
  const Integer l02 = P.l(0, 2), l11 = P.l(1, 1), l21 = P.l(2, 1);
  const Integer d01 = P.d()(0, 0), d02 = P.d()(0, 1), d11 = P.d()(0, 2), d21 = P.d()(0, 3);
  const Integer D1 = l21 * d11 + l11 * d21 + d01 * l11 * l21;
  const Integer D2 = l21 * d11 + l11 * d21 + d02 * l11 * l21;

  out.cases[0] = {1, 1, 2, {1, 1, 1}, detail::solve_interval({{d02 - l02 * d01, l02}, {D1, -l11}}, l21, d21)};
  out.cases[2] = {3, 2, 1, {1, 1, 1}, detail::solve_interval({{d02 - l02 * d01, l02}, {D1, -l21}}, l11, d11)};
  out.cases[1] = {2, 1, 2, {2, 1, 1}, {}, l02 == 1};
  out.cases[3] = {4, 2, 1, {2, 1, 1}, {}, l02 == 1};
  if (l02 == 1) {
    out.cases[1].alphas = detail::solve_interval({{d01 - d02, Integer(1)}, {D2, -l11}}, l21, d21);
    out.cases[3].alphas = detail::solve_interval({{d01 - d02, Integer(1)}, {D2, -l21}}, l11, d11);
  }
  for (const auto& c : out.cases)
    for (const auto& a : c.alphas) out.alphas.push_back(out.shape.flipped ? Integer(-a) : a);
  std::sort(out.alphas.begin(), out.alphas.end());
  out.alphas.erase(std::unique(out.alphas.begin(), out.alphas.end()), out.alphas.end());
  return out;
}

// Z^1-parts of all P-roots by polytope enumeration.
inline std::vector<Integer> surface_roots_enumerated(const PData& P) {
  std::vector<Integer> out;
  for (const auto& a : p_roots(P).alphas) out.push_back(a.at(0));
  return out;
}

// Both methods; they have to agree.
inline std::vector<Integer> surface_roots(const SurfaceTriple& t) {
  PData P = surface_p(t);
  auto closed = surface_roots_closed_form(P).alphas;
  auto enumerated = surface_roots_enumerated(P);
  if (closed != enumerated) {
    auto fmt = [](const std::vector<Integer>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
      return s + "}";
    };
    throw CrossCheckError("roots of X" + t.to_string() + ": closed form " + fmt(closed) + ", enumeration " +
                          fmt(enumerated));
  }
  return closed;
}

// ---------------------------------------------------------------------------
// tables by Gorenstein index

struct GorensteinRow {
  SurfaceTriple triple;
  long iota = 0;
  std::vector<Integer> roots;
};

// Candidates for index a: (1,l1,l2) with l2 <= l1 <= ceil(2a^2 + 4a/3),
// (2,l1,2) with l1 <= 3a + 2, and four sporadic triples.
inline std::vector<SurfaceTriple> gorenstein_candidates(long a) {
  std::vector<SurfaceTriple> out;
  auto add = [&](long l0, long l1, long l2) {
    if (l2 < 2 || l1 < l2 || l0 >= l1 * l2 || std::gcd(l1, l2) != 1) return;
    out.push_back(SurfaceTriple::make(l0, l1, l2));
  };
  const long bound1 = (6 * a * a + 4 * a + 2) / 3;
  for (long l1 = 2; l1 <= bound1; ++l1)
    for (long l2 = 2; l2 <= l1; ++l2) add(1, l1, l2);
  for (long l1 = 2; l1 <= 3 * a + 2; ++l1) add(2, l1, 2);
  add(3, 3, 2);
  add(2, 4, 3);
  add(2, 5, 3);
  add(3, 5, 2);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Rows with 1 <= iota <= a_max, ordered by iota and then by triple.
inline std::vector<GorensteinRow> gorenstein_table(long a_max) {
  if (a_max < 1) throw InvalidInput("gorenstein_table: need a_max >= 1");
  std::vector<GorensteinRow> rows;
  for (long a = 1; a <= a_max; ++a)
    for (const auto& t : gorenstein_candidates(a)) {
      if (gorenstein_index(t) != a || !is_log_terminal(t) || !is_almost_homogeneous_surface(t)) continue;
      rows.push_back({t, a, surface_roots(t)});
    }
  return rows;
}

// ---------------------------------------------------------------------------
// threefolds, s = 2

namespace detail {

inline std::vector<std::vector<std::size_t>> all_column_orders(std::size_t n) {
  std::vector<std::size_t> c(n);
  std::iota(c.begin(), c.end(), 1);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(c);
  while (std::next_permutation(c.begin(), c.end()));
  return out;
}

inline std::vector<Renumbering> arrangements(const PData& P) {
  std::vector<Renumbering> out;
  std::array<std::size_t, 3> perm{0, 1, 2};
  do
    for (const auto& c0 : all_column_orders(P.n_i(perm[0])))
      for (const auto& c1 : all_column_orders(P.n_i(perm[1])))
        for (const auto& c2 : all_column_orders(P.n_i(perm[2]))) out.push_back({perm, {c0, c1, c2}});
  while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline PData renumbered(const PData& P, const Renumbering& ren) {
  std::vector<std::vector<long>> l(3);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j : ren.columns[i]) {
      l[i].push_back(P.l(ren.blocks[i], j));
      order.push_back(P.var_T(ren.blocks[i], j));
    }
  IntMatrix d(P.s(), P.n());
  for (std::size_t a = 0; a < P.s(); ++a)
    for (std::size_t c = 0; c < P.n(); ++c) d(a, c) = P.d()(a, order[c]);
  return PData(l, d, P.dprime());
}

// Lower rows [F; t] of a P with the same L-part and the same row lattice,
// where F is prescribed, t vanishes on the mask and t has the prescribed
// entries in fixed. Rows of -[F; t] are reached by the sign sigma.
struct LowerRows {
  IntVector F, t;
  std::vector<IntVector> ambiguity;  // nonzero-image-free changes of t
};

inline std::optional<LowerRows> solve_lower_rows(const PData& P, const IntVector& F,
                                                 const std::vector<std::size_t>& mask,
                                                 const std::vector<std::pair<std::size_t, Integer>>& fixed,
                                                 const Integer& sigma) {
  const IntMatrix& M = P.matrix();  // rows r1, r2, D1, D2
  const IntMatrix Mt = M.transpose();
  auto cF = solve_integer_linear(Mt, F);
  if (!cF) return std::nullopt;
  const Integer &c3 = cF->particular[2], &c4 = cF->particular[3];
  // unknown coefficients c of t = M^T c: mask entries, c3*c[3] - c4*c[2] = sigma, fixed entries
  const std::size_t eqs = mask.size() + 1 + fixed.size();
  IntMatrix E(eqs, 4);
  IntVector rhs(eqs, Integer(0));
  std::size_t e = 0;
  for (std::size_t pos : mask) {
    for (std::size_t k = 0; k < 4; ++k) E(e, k) = M(k, pos);
    ++e;
  }
  E(e, 2) = -c4;
  E(e, 3) = c3;
  rhs[e++] = sigma;
  for (const auto& [pos, v] : fixed) {
    for (std::size_t k = 0; k < 4; ++k) E(e, k) = M(k, pos);
    rhs[e++] = v;
  }
  auto sol = solve_integer_linear(E, rhs);
  if (!sol) return std::nullopt;
  LowerRows out{F, Mt * sol->particular, {}};
  for (const auto& k : sol->kernel) out.ambiguity.push_back(Mt * k);
  return out;
}

inline PData with_lower_rows(const PData& P, const IntVector& F, const IntVector& t) {
  IntMatrix d(2, P.n()), dp(2, P.m());
  for (std::size_t c = 0; c < P.n(); ++c) {
    d(0, c) = F[c];
    d(1, c) = t[c];
  }
  for (std::size_t k = 0; k < P.m(); ++k) {
    dp(0, k) = F[P.n() + k];
    dp(1, k) = t[P.n() + k];
  }
  return PData(P.exponents(), d, dp);
}

inline bool is_ones(const std::vector<long>& b) { return b == std::vector<long>{1, 1}; }

}  // namespace detail

enum class ThreefoldShape { I, II };

inline std::string to_string(ThreefoldShape s) { return s == ThreefoldShape::I ? "i" : "ii"; }

struct ThreefoldShapeMatch {
  ThreefoldShape shape = ThreefoldShape::I;
  Renumbering renumbering;
  PData normalized;
  // d'-part of the last row is empty, +-1 or (+-1,-+1)
  bool dprime_as_listed = false;
};

namespace detail {

// F and the positions where t vanishes, for an arrangement whose L-part
// has the first two blocks of the shape.
inline std::optional<std::pair<ThreefoldShape, std::vector<std::size_t>>> shape_pattern(const PData& Q) {
  if (is_ones(Q.block(0)) && is_ones(Q.block(1)))
    return std::pair{ThreefoldShape::I, std::vector<std::size_t>{Q.var_T(0, 1), Q.var_T(0, 2), Q.var_T(1, 1)}};
  if (Q.block(0) == std::vector<long>{2} && is_ones(Q.block(1)))
    return std::pair{ThreefoldShape::II, std::vector<std::size_t>{Q.var_T(1, 1), Q.var_T(1, 2)}};
  return std::nullopt;
}

inline IntVector shape_first_row(const PData& Q) {
  IntVector F(Q.variable_count(), Integer(0));
  F[Q.var_T(0, 1)] = -1;
  F[Q.var_T(1, 2)] = 1;
  return F;
}

inline void require_threefold(const PData& P) {
  require_valid(P);
  if (P.s() != 2) throw InvalidInput("threefold shapes need s = 2, got s = " + std::to_string(P.s()));
}

}  // namespace detail

// First arrangement (block permutations, then column orders, in
// lexicographic order) admitting the normal form.
inline std::optional<ThreefoldShapeMatch> threefold_shape(const PData& P) {
  detail::require_threefold(P);
  if (P.r() != 2) return std::nullopt;
  for (const auto& ren : detail::arrangements(P)) {
    PData Q = detail::renumbered(P, ren);
    auto pat = detail::shape_pattern(Q);
    if (!pat) continue;
    IntVector F = detail::shape_first_row(Q);
    auto rows = detail::solve_lower_rows(Q, F, pat->second, {}, Integer(1));
    if (!rows) continue;
    ThreefoldShapeMatch out{pat->first, ren, detail::with_lower_rows(Q, rows->F, rows->t), false};
    const IntMatrix& dp = out.normalized.dprime();
    if (P.m() == 0) out.dprime_as_listed = true;
    if (P.m() == 1) out.dprime_as_listed = abs_value(dp(1, 0)) == 1;
    if (P.m() == 2) out.dprime_as_listed = abs_value(dp(1, 0)) == 1 && dp(1, 1) == -dp(1, 0);
    return out;
  }
  return std::nullopt;
}

struct FanoThreefoldMatch {
  int family = 0;  // 1..5
  Renumbering renumbering;
  PData normalized;  // the listed matrix
  std::string parameters;
};

namespace detail {

struct FanoFamily {
  int number;
  std::size_t m;
  // accepts the L-part of an arrangement
  bool (*exponents)(const PData&);
  // entries of the last row fixed by the family, as (position, value)
  std::vector<std::pair<std::size_t, Integer>> (*fixed)(const PData&);
  // parameter inequalities on the normalized matrix; empty string if violated
  std::string (*check)(const PData&);
};

inline std::string param(const char* name, const Integer& v) { return std::string(name) + "=" + v.str(); }

inline std::vector<FanoFamily> fano_families() {
  using Fixed = std::vector<std::pair<std::size_t, Integer>>;
  auto none = [](const PData&) { return Fixed{}; };
  return {
      {1, 0,
       [](const PData& Q) { return is_ones(Q.block(0)) && is_ones(Q.block(1)) && Q.n_i(2) == 1; }, none,
       [](const PData& Q) -> std::string {
         Integer l21 = Q.l(2, 1), d12 = Q.d()(1, Q.var_T(1, 2)), d21 = Q.d()(1, Q.var_T(2, 1));
         // -d21/(d12-1) < l21 < -d21 with d12 - 1 > 0
         bool ok = l21 > 1 && d12 > 2 && -d21 < l21 * (d12 - 1) && l21 < -d21;
         return ok ? param("l21", l21) + " " + param("d12", d12) + " " + param("d21", d21) : "";
       }},
      {2, 0,
       [](const PData& Q) {
         return Q.block(0) == std::vector<long>{2} && is_ones(Q.block(1)) && Q.n_i(2) == 2 && Q.l(2, 1) > 1 &&
                Q.l(2, 2) > 1;
       },
       none,
       [](const PData& Q) -> std::string {
         Integer l21 = Q.l(2, 1), l22 = Q.l(2, 2);
         Integer d01 = Q.d()(1, 0), d21 = Q.d()(1, Q.var_T(2, 1)), d22 = Q.d()(1, Q.var_T(2, 2));
         bool ok = 2 * d22 > -d01 * l22 && -2 * d21 > d01 * l21;
         return ok ? param("l21", l21) + " " + param("l22", l22) + " " + param("d01", d01) + " " +
                         param("d21", d21) + " " + param("d22", d22)
                   : "";
       }},
      {3, 0,
       [](const PData& Q) {
         return Q.block(0) == std::vector<long>{2} && is_ones(Q.block(1)) && Q.n_i(2) == 2 && Q.l(2, 1) == 1 &&
                Q.l(2, 2) > 1;
       },
       none,
       [](const PData& Q) -> std::string {
         Integer l22 = Q.l(2, 2);
         Integer d01 = Q.d()(1, 0), d21 = Q.d()(1, Q.var_T(2, 1)), d22 = Q.d()(1, Q.var_T(2, 2));
         bool first = d22 > d21 * l22 + l22 && 2 * d22 > -d01 * l22 && -2 * d21 > d01;
         bool second = 2 * d22 > -d01 * l22 && 1 - 2 * d21 > d01;
         return first || second ? param("l22", l22) + " " + param("d01", d01) + " " + param("d21", d21) + " " +
                                      param("d22", d22)
                                : "";
       }},
      {4, 0,
       [](const PData& Q) {
         return Q.block(0) == std::vector<long>{2} && is_ones(Q.block(1)) && is_ones(Q.block(2));
       },
       [](const PData& Q) {
         return Fixed{{Q.var_T(0, 1), Integer(-1)}, {Q.var_T(2, 1), Integer(1)}, {Q.var_T(2, 2), Integer(0)}};
       },
       [](const PData&) -> std::string { return "-"; }},
      {5, 1,
       [](const PData& Q) {
         return Q.block(0) == std::vector<long>{2} && is_ones(Q.block(1)) && Q.n_i(2) == 1;
       },
       [](const PData& Q) { return Fixed{{Q.var_T(0, 1), Integer(1)}, {Q.var_S(1), Integer(1)}}; },
       [](const PData& Q) -> std::string {
         Integer l21 = Q.l(2, 1), d21 = Q.d()(1, Q.var_T(2, 1));
         bool ok = 1 < l21 && l21 < -2 * d21 && -2 * d21 < 2 * l21;
         return ok ? param("l21", l21) + " " + param("d21", d21) : "";
       }},
  };
}

}  // namespace detail

// Matches P against the five listed families, without the cross-check.
inline std::optional<FanoThreefoldMatch> match_fano_family(const PData& P) {
  detail::require_threefold(P);
  if (P.r() != 2) return std::nullopt;
  for (const auto& fam : detail::fano_families()) {
    if (P.m() != fam.m) continue;
    for (const auto& ren : detail::arrangements(P)) {
      PData Q = detail::renumbered(P, ren);
      if (!fam.exponents(Q)) continue;
      auto pat = detail::shape_pattern(Q);
      if (!pat) continue;
      IntVector F = detail::shape_first_row(Q);
      for (int sigma : {1, -1}) {
        auto rows = detail::solve_lower_rows(Q, F, pat->second, fam.fixed(Q), Integer(sigma));
        if (!rows) continue;
        PData N = detail::with_lower_rows(Q, rows->F, rows->t);
        std::string params = fam.check(N);
        if (params.empty()) continue;
        return FanoThreefoldMatch{fam.number, ren, N, params};
      }
    }
  }
  return std::nullopt;
}

// All P-roots semisimple and at least one horizontal semisimple pair.
inline bool reductive_and_almost_homogeneous(const PData& P) {
  PRoots pr = p_roots(P);
  GradingData g = compute_gradings(P);
  auto ss = semisimple_roots(P, pr, g);
  bool horizontal = std::any_of(ss.begin(), ss.end(), [](const SemisimpleRoot& x) { return !x.vertical; });
  return horizontal && ss.size() == pr.alphas.size();
}

// A listed matrix has to be reductive and almost homogeneous by root
// enumeration; CrossCheckError otherwise.
inline std::optional<FanoThreefoldMatch> fano_threefold_case(const PData& P) {
  auto match = match_fano_family(P);
  if (match && !reductive_and_almost_homogeneous(P))
    throw CrossCheckError("P matches family " + std::to_string(match->family) +
                          " but its roots are not all semisimple or no horizontal pair exists");
  return match;
}

// Both directions side by side. For rk Cl(X) = 1, reductive and almost
// homogeneous P outside the list exist (third block (1,1), last row
// not that of family 4); they are reported, not rejected.
struct FanoThreefoldReport {
  std::optional<FanoThreefoldMatch> match;
  bool reductive_almost_homogeneous = false;
  std::size_t class_group_rank = 0;

  bool unlisted() const { return !match && reductive_almost_homogeneous && class_group_rank == 1; }
};

inline FanoThreefoldReport fano_threefold_report(const PData& P) {
  FanoThreefoldReport rep;
  rep.match = fano_threefold_case(P);
  rep.reductive_almost_homogeneous = rep.match ? true : reductive_and_almost_homogeneous(P);
  rep.class_group_rank = compute_gradings(P).K.free_rank();
  return rep;
}

}  // namespace torusone
