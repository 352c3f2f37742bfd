#pragma once

// The grading groups K0 = Z^{n+m}/im(P0*) and K = Z^{n+m}/im(P*), generator
// degrees, the relation degree mu and the weight monoid of R(A,P0).

#include <optional>
#include <utility>
#include <vector>

#include "torusone/errors.hpp"
#include "torusone/exact.hpp"
#include "torusone/polyhedra.hpp"
#include "torusone/presentation.hpp"

namespace torusone {

struct GradingData {
  std::size_t n = 0, m = 0, r = 0;
  AbelianGroupStructure K0;
  AbelianGroupStructure K;
  AbelianGroupStructure K0_hor;  // Z^n / im(L0*)
  std::vector<IntVector> deg0;   // per variable, canonical K0 coordinates
  std::vector<IntVector> degK;
  IntVector mu0;
  IntVector muK;
  IntMatrix p0;

  std::size_t variable_count() const { return n + m; }
};

inline GradingData compute_gradings(const PData& P) {
  GradingData g;
  g.n = P.n();
  g.m = P.m();
  g.r = P.r();
  g.p0 = P.p0();
  g.K0 = cokernel(g.p0.transpose());
  g.K = cokernel(P.matrix().transpose());
  IntMatrix l0t(g.n, g.r);
  for (std::size_t i = 0; i < g.r; ++i)
    for (std::size_t c = 0; c < g.n; ++c) l0t(c, i) = g.p0(i, c);
  g.K0_hor = cokernel(l0t);
  for (std::size_t v = 0; v < g.variable_count(); ++v) {
    g.deg0.push_back(g.K0.project_basis(v));
    g.degK.push_back(g.K.project_basis(v));
  }
  for (std::size_t i = 0; i <= P.r(); ++i) {
    IntVector mu = g.K0.zero();
    for (std::size_t j = 1; j <= P.n_i(i); ++j)
      mu = g.K0.add(mu, g.K0.scale(g.deg0[P.var_T(i, j)], P.l(i, j)));
    if (i == 0)
      g.mu0 = mu;
    else if (!g.K0.equal(mu, g.mu0))
      throw CrossCheckError("relation degree differs between block 0 and block " + std::to_string(i));
  }
  IntVector e(g.variable_count(), Integer(0));
  for (std::size_t j = 1; j <= P.n_i(0); ++j) e[P.var_T(0, j)] = P.l(0, j);
  g.muK = g.K.project(e);
  return g;
}

// K0 -> K induced by the identity of Z^{n+m}.
inline IntVector downgrade(const GradingData& g, const IntVector& w0) {
  return g.K.project(g.K0.lift(w0));
}

inline IntVector degree0_of(const GradingData& g, const Exponent& e) {
  IntVector x;
  for (long v : e) x.emplace_back(v);
  return g.K0.project(x);
}

inline IntVector degreeK_of(const GradingData& g, const Exponent& e) {
  IntVector x;
  for (long v : e) x.emplace_back(v);
  return g.K.project(x);
}

// Polyhedron of y in Z^r with lift(w) + P0* y >= 0; its lattice points are
// the monomials of degree w. Bounded because the columns of P0 force y = 0
// on the recession cone.
inline Polyhedron weight_fiber(const GradingData& g, const IntVector& w) {
  IntVector e = g.K0.lift(w);
  Polyhedron poly(g.r);
  for (std::size_t c = 0; c < g.variable_count(); ++c) poly.add_inequality(g.p0.col(c), -e[c]);
  return poly;
}

inline bool weight_monoid_contains(const GradingData& g, const IntVector& w) {
  return has_lattice_point(weight_fiber(g, w), enumeration_limit(), false);
}

// Number of monomials of K0-degree w.
inline std::size_t monomial_count(const GradingData& g, const IntVector& w) {
  return lattice_points(weight_fiber(g, w), enumeration_limit(), false).size();
}

// dim R_w = s_w + 1 with s_w maximal such that w - s_w mu lies in S0.
inline std::size_t component_dimension(const GradingData& g, const IntVector& w) {
  if (!weight_monoid_contains(g, w)) return 0;
  std::size_t s = 0;
  IntVector cur = w;
  while (true) {
    cur = g.K0.subtract(cur, g.mu0);
    if (!weight_monoid_contains(g, cur)) break;
    ++s;
  }
  return s + 1;
}

inline bool degrees_equal_in_K(const GradingData& g, const IntVector& a, const IntVector& b) {
  return g.K.equal(a, b);
}

// sum of all generator degrees minus (r-1) mu, in K
inline IntVector anticanonical_class(const GradingData& g, const PData& P) {
  IntVector w = g.K.zero();
  for (const auto& d : g.degK) w = g.K.add(w, d);
  Integer f = Integer(static_cast<long>(P.r())) - 1;
  return g.K.subtract(w, g.K.scale(g.muK, f));
}

// K0 = (Z^n / im L0*) + Z^m; returns (horizontal, vertical) components.
inline std::pair<IntVector, IntVector> k0_split(const GradingData& g, const IntVector& w) {
  IntVector e = g.K0.lift(w);
  IntVector t(e.begin(), e.begin() + g.n), s(e.begin() + g.n, e.end());
  return {g.K0_hor.project(t), s};
}

// Common K0-degree deg(d(x)) - deg(x) over all terms of all nonzero images,
// or nullopt if d is zero or not homogeneous.
inline std::optional<IntVector> derivation_degree0(const GradingData& g, const Derivation& d) {
  std::optional<IntVector> deg;
  for (std::size_t v = 0; v < d.nvars(); ++v)
    for (const auto& [e, c] : d.image(v).terms()) {
      IntVector w = g.K0.subtract(degree0_of(g, e), g.deg0[v]);
      if (!deg)
        deg = w;
      else if (!g.K0.equal(*deg, w))
        return std::nullopt;
    }
  return deg;
}

// Degree formula of delta_{C,beta}: r mu - sum_k w_{k c_k} in case (i),
// (r-1) mu - sum_{k != i0} w_{k c_k} in case (ii).
inline IntVector delta_degree_formula(const GradingData& g, const PData& P, const std::vector<std::size_t>& C,
                                      const RatVector& beta) {
  DeltaInfo info = delta_case(P, C, beta);
  if (info.kind == DeltaCase::Zero) throw InvalidInput("zero derivation has no degree");
  long f = static_cast<long>(P.r()) - (info.kind == DeltaCase::II ? 1 : 0);
  IntVector w = g.K0.scale(g.mu0, f);
  for (std::size_t k = 0; k <= P.r(); ++k) {
    if (info.i0 && *info.i0 == k) continue;
    w = g.K0.subtract(w, g.deg0[P.var_T(k, C[k])]);
  }
  return w;
}

}  // namespace torusone
