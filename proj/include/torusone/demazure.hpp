#pragma once

// Vertical and horizontal Demazure P-roots as lattice points of the
// polytopes B(k0) and B(i0,i1,C), their Z^s-parts, the derivations
// delta_kappa, and the almost-homogeneity test.

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "torusone/errors.hpp"
#include "torusone/exact.hpp"
#include "torusone/grading.hpp"
#include "torusone/polyhedra.hpp"
#include "torusone/presentation.hpp"

namespace torusone {

struct DemazureRoot {
  enum class Kind { Vertical, Horizontal };

  IntVector u;
  Kind kind = Kind::Vertical;
  std::size_t k0 = 0;           // 1-based, vertical roots
  std::size_t i0 = 0, i1 = 0;   // blocks 0..r, horizontal roots
  std::vector<std::size_t> C;   // 1-based column choices, horizontal roots
  IntVector alpha;              // last s coordinates of u

  bool is_vertical() const { return kind == Kind::Vertical; }
  bool is_horizontal() const { return kind == Kind::Horizontal; }

  auto key() const { return std::tie(kind, k0, i0, i1, C, u); }
  bool operator<(const DemazureRoot& o) const { return key() < o.key(); }
  bool operator==(const DemazureRoot& o) const { return key() == o.key(); }

  std::string describe() const {
    std::string out = "u=" + to_string(u);
    if (is_vertical()) return out + " vertical k0=" + std::to_string(k0);
    out += " horizontal i0=" + std::to_string(i0) + " i1=" + std::to_string(i1) + " C=(";
    for (std::size_t i = 0; i < C.size(); ++i) out += (i ? "," : "") + std::to_string(C[i]);
    return out + ")";
  }
};

inline IntVector z_part(const PData& P, const IntVector& u) {
  return IntVector(u.end() - static_cast<long>(P.s()), u.end());
}

inline DemazureRoot make_vertical(const PData& P, IntVector u, std::size_t k0) {
  DemazureRoot k;
  k.kind = DemazureRoot::Kind::Vertical;
  k.k0 = k0;
  k.alpha = z_part(P, u);
  k.u = std::move(u);
  return k;
}

inline DemazureRoot make_horizontal(const PData& P, IntVector u, std::size_t i0, std::size_t i1,
                                    std::vector<std::size_t> C) {
  DemazureRoot k;
  k.kind = DemazureRoot::Kind::Horizontal;
  k.i0 = i0;
  k.i1 = i1;
  k.C = std::move(C);
  k.alpha = z_part(P, u);
  k.u = std::move(u);
  return k;
}

// <u, v> for every column v of P, in variable order.
inline IntVector pairings(const PData& P, const IntVector& u) {
  if (u.size() != P.r() + P.s()) throw InvalidInput("linear form has wrong length");
  return P.matrix().transpose() * u;
}

// Direct check of the defining equalities and inequalities.
inline bool satisfies_definition(const PData& P, const DemazureRoot& k) {
  if (k.u.size() != P.r() + P.s()) return false;
  IntVector pu = pairings(P, k.u);
  const std::size_t n = P.n();
  if (k.is_vertical()) {
    if (k.k0 < 1 || k.k0 > P.m()) return false;
    for (std::size_t v = 0; v < P.variable_count(); ++v) {
      if (v == P.var_S(k.k0)) {
        if (pu[v] != -1) return false;
      } else if (pu[v] < 0) {
        return false;
      }
    }
    return true;
  }
  const std::size_t R = P.r();
  if (k.i0 > R || k.i1 > R || k.i0 == k.i1 || k.C.size() != R + 1) return false;
  for (std::size_t i = 0; i <= R; ++i) {
    if (k.C[i] < 1 || k.C[i] > P.n_i(i)) return false;
    const bool outer = i != k.i0 && i != k.i1;
    if (outer && P.l(i, k.C[i]) != 1) return false;
    for (std::size_t j = 1; j <= P.n_i(i); ++j) {
      const Integer& x = pu[P.var_T(i, j)];
      if (j == k.C[i]) {
        if (outer && x != 0) return false;
        if (i == k.i1 && x != -1) return false;
        if (i == k.i0 && x < 0) return false;
      } else {
        if (x < (outer ? P.l(i, j) : 0)) return false;
      }
    }
  }
  for (std::size_t v = n; v < P.variable_count(); ++v)
    if (pu[v] < 0) return false;
  return true;
}

// zeta for B(k0)
inline IntVector vertical_zeta(const PData& P, std::size_t k0) {
  IntVector z(P.variable_count(), Integer(0));
  z.at(P.var_S(k0)) = -1;
  return z;
}

inline Polyhedron vertical_polytope(const PData& P, std::size_t k0) {
  if (k0 < 1 || k0 > P.m()) throw InvalidInput("k0 out of range");
  Polyhedron b(P.r() + P.s());
  IntVector z = vertical_zeta(P, k0);
  for (std::size_t v = 0; v < P.variable_count(); ++v) b.add_inequality(P.column(v), z[v]);
  b.add_equality(P.column(P.var_S(k0)), -1);
  return b;
}

// zeta for B(i0,i1,C)
inline IntVector horizontal_zeta(const PData& P, std::size_t i0, std::size_t i1,
                                 const std::vector<std::size_t>& C) {
  check_selection(P, C);
  IntVector z(P.variable_count(), Integer(0));
  for (std::size_t i = 0; i <= P.r(); ++i)
    for (std::size_t j = 1; j <= P.n_i(i); ++j) {
      if (i != i0 && i != i1 && j != C[i]) z[P.var_T(i, j)] = P.l(i, j);
      if (i == i1 && j == C[i]) z[P.var_T(i, j)] = -1;
    }
  return z;
}

inline Polyhedron horizontal_polytope(const PData& P, std::size_t i0, std::size_t i1,
                                      const std::vector<std::size_t>& C) {
  if (i0 > P.r() || i1 > P.r() || i0 == i1) throw InvalidInput("need 0 <= i0 != i1 <= r");
  check_selection(P, C);
  for (std::size_t i = 0; i <= P.r(); ++i)
    if (i != i0 && i != i1 && P.l(i, C[i]) != 1)
      throw InvalidInput("C: l_{i c_i} must be 1 outside i0, i1");
  Polyhedron b(P.r() + P.s());
  IntVector z = horizontal_zeta(P, i0, i1, C);
  for (std::size_t v = 0; v < P.variable_count(); ++v) b.add_inequality(P.column(v), z[v]);
  for (std::size_t i = 0; i <= P.r(); ++i) {
    if (i == i0) continue;
    b.add_equality(P.column(P.var_T(i, C[i])), i == i1 ? -1 : 0);
  }
  return b;
}

// All C with l_{i c_i} = 1 for i outside {i0, i1}, in lexicographic order.
inline std::vector<std::vector<std::size_t>> admissible_selections(const PData& P, std::size_t i0,
                                                                   std::size_t i1) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> C(P.r() + 1, 1);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i > P.r()) {
      out.push_back(C);
      return;
    }
    for (std::size_t j = 1; j <= P.n_i(i); ++j) {
      if (i != i0 && i != i1 && P.l(i, j) != 1) continue;
      C[i] = j;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

namespace detail {

// B(k0) and B(i0,i1,C) have the dual cone of the columns as recession
// cone, which is {0} once P is validated.
inline std::vector<IntVector> polytope_points(const Polyhedron& b) {
  return lattice_points(b, enumeration_limit(), false);
}

inline void verify_roots(const PData& P, const std::vector<DemazureRoot>& roots) {
  for (const auto& k : roots)
    if (!satisfies_definition(P, k))
      throw CrossCheckError("enumerated root fails the definition: " + k.describe());
}

}  // namespace detail

inline std::vector<DemazureRoot> vertical_roots(const PData& P) {
  require_valid(P);
  std::vector<DemazureRoot> out;
  for (std::size_t k0 = 1; k0 <= P.m(); ++k0)
    for (auto& u : detail::polytope_points(vertical_polytope(P, k0)))
      out.push_back(make_vertical(P, std::move(u), k0));
  detail::verify_roots(P, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<DemazureRoot> horizontal_roots(const PData& P) {
  require_valid(P);
  std::vector<DemazureRoot> out;
  for (std::size_t i0 = 0; i0 <= P.r(); ++i0)
    for (std::size_t i1 = 0; i1 <= P.r(); ++i1) {
      if (i0 == i1) continue;
      for (const auto& C : admissible_selections(P, i0, i1))
        for (auto& u : detail::polytope_points(horizontal_polytope(P, i0, i1, C)))
          out.push_back(make_horizontal(P, std::move(u), i0, i1, C));
    }
  detail::verify_roots(P, out);
  std::sort(out.begin(), out.end());
  return out;
}

struct PRoots {
  std::vector<IntVector> alphas;  // sorted, deduplicated Z^s-parts
  std::vector<DemazureRoot> witnesses;

  bool contains(const IntVector& a) const {
    return std::binary_search(alphas.begin(), alphas.end(), a);
  }
};

inline PRoots collect_roots(const PData& P, std::vector<DemazureRoot> witnesses) {
  PRoots pr;
  pr.witnesses = std::move(witnesses);
  std::sort(pr.witnesses.begin(), pr.witnesses.end());
  for (const auto& k : pr.witnesses) pr.alphas.push_back(k.alpha);
  std::sort(pr.alphas.begin(), pr.alphas.end());
  pr.alphas.erase(std::unique(pr.alphas.begin(), pr.alphas.end()), pr.alphas.end());
  if (is_minimally_presented(P))
    for (const auto& a : pr.alphas)
      if (is_zero_vector(a)) throw CrossCheckError("zero P-root for a minimally presented P");
  return pr;
}

inline PRoots p_roots(const PData& P) {
  auto all = vertical_roots(P);
  auto hor = horizontal_roots(P);
  all.insert(all.end(), hor.begin(), hor.end());
  return collect_roots(P, std::move(all));
}

// r - 1 <= dim X + rk Cl(X) - m - 2 with dim X = s + 1
inline bool almost_homogeneity_bound_holds(const PData& P, const GradingData& g) {
  long lhs = static_cast<long>(P.r()) - 1;
  long rhs = static_cast<long>(P.s() + 1 + g.K.free_rank()) - static_cast<long>(P.m()) - 2;
  return lhs <= rhs;
}

inline bool is_almost_homogeneous(const PData& P) {
  bool yes = !horizontal_roots(P).empty();
  if (yes && is_minimally_presented(P) && !almost_homogeneity_bound_holds(P, compute_gradings(P)))
    throw CrossCheckError("horizontal roots exist but r - 1 exceeds dim X + rk Cl(X) - m - 2");
  return yes;
}

// delta_kappa: S_k0 -> S_k0 h^u for vertical roots, (h^u / h^zeta) delta_{C,beta}
// with beta_{i0} = 0, beta_{i1} = 1 for horizontal ones. The degree
// identities deg_K0 = Q0(P*u) and deg_K = 0 are checked before returning.
inline Derivation root_derivation(const AData& A, const PData& P, const DemazureRoot& k,
                                  const GradingData& g) {
  if (!satisfies_definition(P, k)) throw InvalidInput("root is inconsistent with P: " + k.describe());
  const std::size_t N = P.variable_count();
  IntVector pu = pairings(P, k.u);
  Derivation d(N);
  try {
    if (k.is_vertical()) {
      LaurentMonomial h = laurent_from(pu);
      d.set_image(P.var_S(k.k0), Polynomial::variable(N, P.var_S(k.k0)) * h);
    } else {
      RatVector beta = row_space_vector(A, k.i0, k.i1);
      IntVector shift = pu;
      IntVector zeta = horizontal_zeta(P, k.i0, k.i1, k.C);
      for (std::size_t v = 0; v < N; ++v) shift[v] -= zeta[v];
      d = delta_C_beta(A, P, k.C, beta) * Polynomial::from_laurent(laurent_from(shift));
    }
  } catch (const InvalidInput& e) {
    throw CrossCheckError(std::string("root derivation is not polynomial: ") + e.what());
  }
  auto deg = derivation_degree0(g, d);
  if (!deg) throw CrossCheckError("root derivation is not K0-homogeneous");
  if (!g.K0.equal(*deg, g.K0.project(pu)))
    throw CrossCheckError("root derivation degree differs from Q0(P*u)");
  if (!g.K.is_zero(downgrade(g, *deg))) throw CrossCheckError("root derivation has nonzero K-degree");
  return d;
}

inline Derivation root_derivation(const AData& A, const PData& P, const DemazureRoot& k) {
  return root_derivation(A, P, k, compute_gradings(P));
}

}  // namespace torusone
