#pragma once

// Rational polyhedra {x : <a,x> = b (equalities), <a,x> >= b (inequalities)}
// with Fourier-Motzkin based emptiness/boundedness tests and exact lattice
// point enumeration.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torusone/errors.hpp"
#include "torusone/exact.hpp"

namespace torusone {

struct LinearConstraint {
  IntVector normal;
  Integer rhs;
};

class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(std::size_t dim) : dim_(dim) {}

  std::size_t dimension() const { return dim_; }
  const std::vector<LinearConstraint>& equalities() const { return eqs_; }
  const std::vector<LinearConstraint>& inequalities() const { return ineqs_; }

  // <a,x> = b
  Polyhedron& add_equality(IntVector a, Integer b) {
    check(a);
    eqs_.push_back({std::move(a), std::move(b)});
    return *this;
  }
  // <a,x> >= b
  Polyhedron& add_inequality(IntVector a, Integer b) {
    check(a);
    ineqs_.push_back({std::move(a), std::move(b)});
    return *this;
  }

  bool contains(const IntVector& x) const {
    if (x.size() != dim_) return false;
    for (const auto& c : eqs_)
      if (dot(c.normal, x) != c.rhs) return false;
    for (const auto& c : ineqs_)
      if (dot(c.normal, x) < c.rhs) return false;
    return true;
  }

 private:
  void check(const IntVector& a) const {
    if (a.size() != dim_) throw InvalidInput("Polyhedron: normal has wrong dimension");
  }

  std::size_t dim_ = 0;
  std::vector<LinearConstraint> eqs_;
  std::vector<LinearConstraint> ineqs_;
};

// Candidate cap for lattice enumeration; TORUSONE_MAX_ENUM overrides.
inline std::uint64_t enumeration_limit() {
  static const std::uint64_t limit = [] {
    if (const char* env = std::getenv("TORUSONE_MAX_ENUM")) {
      try {
        return static_cast<std::uint64_t>(std::stoull(env));
      } catch (...) {
      }
    }
    return static_cast<std::uint64_t>(10'000'000);
  }();
  return limit;
}

namespace fm {

// <a,x> >= b with a primitive (or zero) and b rational; `origin` records
// which input inequalities were combined (Chernikov's rule).
struct Row {
  IntVector a;
  Rational b;
  std::uint64_t origin = 0;
};

inline Row normalized(IntVector a, Rational b, std::uint64_t origin) {
  Integer g = vector_gcd(a);
  if (g > 1) {
    for (auto& x : a) x /= g;
    b /= Rational(g);
  }
  return {std::move(a), std::move(b), origin};
}

// For equal normals a row is dropped only if another one is at least as
// tight and was derived from a subset of its origins; dropping by bound
// alone would break Chernikov's rule further down the elimination.
// Returns false if a trivially infeasible row 0 >= b > 0 shows up.
inline bool prune(std::vector<Row>& rows) {
  std::map<IntVector, std::vector<Row>> groups;
  for (auto& r : rows) {
    if (is_zero_vector(r.a)) {
      if (r.b > 0) return false;
      continue;
    }
    auto& g = groups[r.a];
    auto dominates = [](const Row& x, const Row& y) {
      return x.b >= y.b && (x.origin & ~y.origin) == 0;
    };
    bool dominated = false;
    for (const auto& o : g)
      if (dominates(o, r)) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    std::erase_if(g, [&](const Row& o) { return dominates(r, o); });
    g.push_back(std::move(r));
  }
  std::vector<Row> out;
  for (auto& [normal, g] : groups)
    for (auto& r : g) out.push_back(std::move(r));
  rows = std::move(out);
  return true;
}

struct System {
  std::size_t dim = 0;
  std::vector<Row> rows;
  bool infeasible = false;
  bool track_origin = true;
  std::size_t eliminated = 0;
};

inline System make_system(std::size_t dim, const std::vector<LinearConstraint>& eqs,
                          const std::vector<LinearConstraint>& ineqs) {
  System s;
  s.dim = dim;
  std::vector<Row> rows;
  auto push = [&](IntVector a, const Integer& b) {
    rows.push_back(normalized(std::move(a), Rational(b), 0));
  };
  for (const auto& c : ineqs) push(c.normal, c.rhs);
  for (const auto& c : eqs) {
    push(c.normal, c.rhs);
    IntVector neg = c.normal;
    for (auto& x : neg) x = -x;
    push(std::move(neg), -c.rhs);
  }
  s.track_origin = rows.size() <= 64;
  for (std::size_t i = 0; i < rows.size() && s.track_origin; ++i)
    rows[i].origin = std::uint64_t(1) << i;
  s.infeasible = !prune(rows);
  s.rows = std::move(rows);
  return s;
}

// Eliminates variable k (its coefficient becomes zero in every row).
inline System eliminate(const System& in, std::size_t k) {
  System out;
  out.dim = in.dim;
  out.track_origin = in.track_origin;
  out.eliminated = in.eliminated + 1;
  if (in.infeasible) {
    out.infeasible = true;
    return out;
  }
  std::vector<const Row*> pos, neg;
  std::vector<Row> rows;
  for (const auto& r : in.rows) {
    if (r.a[k] > 0)
      pos.push_back(&r);
    else if (r.a[k] < 0)
      neg.push_back(&r);
    else
      rows.push_back(r);
  }
  for (const Row* p : pos)
    for (const Row* n : neg) {
      std::uint64_t origin = p->origin | n->origin;
      if (out.track_origin && std::popcount(origin) > static_cast<int>(out.eliminated) + 1)
        continue;
      Integer cp = -n->a[k], cn = p->a[k];
      IntVector a(in.dim);
      for (std::size_t j = 0; j < in.dim; ++j) a[j] = cp * p->a[j] + cn * n->a[j];
      a[k] = 0;
      rows.push_back(normalized(std::move(a), Rational(cp) * p->b + Rational(cn) * n->b, origin));
    }
  out.infeasible = !prune(rows);
  out.rows = std::move(rows);
  return out;
}

inline bool rationally_empty(System s) {
  for (std::size_t k = 0; k < s.dim && !s.infeasible; ++k) s = eliminate(s, k);
  if (s.infeasible) return true;
  for (const auto& r : s.rows)
    if (r.b > 0) return true;
  return false;
}

}  // namespace fm

// True iff the polyhedron has no rational point.
inline bool is_rationally_empty(const Polyhedron& p) {
  return fm::rationally_empty(fm::make_system(p.dimension(), p.equalities(), p.inequalities()));
}

// The recession cone {x : <a,x> = 0 (eq), <a,x> >= 0 (ineq)} is {0}.
inline bool is_bounded(const Polyhedron& p) {
  const std::size_t d = p.dimension();
  std::vector<LinearConstraint> eqs, ineqs;
  for (const auto& c : p.equalities()) eqs.push_back({c.normal, 0});
  for (const auto& c : p.inequalities()) ineqs.push_back({c.normal, 0});
  for (std::size_t i = 0; i < d; ++i)
    for (int sign : {1, -1}) {
      IntVector e(d, Integer(0));
      e[i] = sign;
      auto all = ineqs;
      all.push_back({e, 1});
      if (!fm::rationally_empty(fm::make_system(d, eqs, all))) return false;
    }
  return true;
}

// The cone generated by `vectors` is all of Q^dim.
inline bool positively_spans(const std::vector<IntVector>& vectors, std::size_t dim) {
  for (const auto& v : vectors)
    if (v.size() != dim) throw InvalidInput("positively_spans: vector of wrong length");
  if (dim == 0) return true;
  if (vectors.empty()) return false;
  if (rank(IntMatrix::from_rows(vectors, dim)) != dim) return false;
  Polyhedron dual(dim);
  for (const auto& v : vectors) dual.add_inequality(v, 0);
  return is_bounded(dual);
}

namespace detail {

// Inequalities C y >= c on the parameter lattice x = x0 + K y.
struct ParametrizedSystem {
  IntVector x0;
  std::vector<IntVector> basis;
  std::vector<LinearConstraint> ineqs;
};

inline std::optional<ParametrizedSystem> parametrize(const Polyhedron& p) {
  const std::size_t d = p.dimension();
  ParametrizedSystem ps;
  if (p.equalities().empty()) {
    ps.x0.assign(d, Integer(0));
    for (std::size_t i = 0; i < d; ++i) {
      IntVector e(d, Integer(0));
      e[i] = 1;
      ps.basis.push_back(std::move(e));
    }
  } else {
    std::vector<IntVector> rows;
    IntVector rhs;
    for (const auto& c : p.equalities()) {
      rows.push_back(c.normal);
      rhs.push_back(c.rhs);
    }
    auto sol = solve_integer_linear(IntMatrix::from_rows(rows, d), rhs);
    if (!sol) return std::nullopt;
    ps.x0 = sol->particular;
    ps.basis = sol->kernel;
  }
  for (const auto& c : p.inequalities()) {
    IntVector a(ps.basis.size());
    for (std::size_t j = 0; j < ps.basis.size(); ++j) a[j] = dot(c.normal, ps.basis[j]);
    ps.ineqs.push_back({std::move(a), c.rhs - dot(c.normal, ps.x0)});
  }
  return ps;
}

}  // namespace detail

// Visits every lattice point of a bounded polyhedron in lexicographic order
// of the parameter coordinates. The visitor returns false to stop early.
// With check_bounded = false the caller vouches for boundedness (an
// unbounded direction met during the descent still throws).
inline void for_each_lattice_point(const Polyhedron& p,
                                   const std::function<bool(const IntVector&)>& visit,
                                   std::uint64_t limit = enumeration_limit(),
                                   bool check_bounded = true) {
  if (check_bounded && !is_bounded(p)) throw InvalidInput("lattice_points: polyhedron is unbounded");
  auto ps = detail::parametrize(p);
  if (!ps) return;
  const std::size_t t = ps->basis.size();
  const std::size_t d = p.dimension();
  if (t == 0) {
    if (p.contains(ps->x0)) visit(ps->x0);
    return;
  }
  // chain[j] constrains the first j+1 parameters only.
  std::vector<fm::System> chain(t);
  chain[t - 1] = fm::make_system(t, {}, ps->ineqs);
  for (std::size_t j = t - 1; j > 0; --j) chain[j - 1] = fm::eliminate(chain[j], j);
  if (chain[0].infeasible) return;

  std::uint64_t candidates = 0;
  IntVector y(t, Integer(0));
  bool stop = false;

  std::function<void(std::size_t)> descend = [&](std::size_t j) {
    if (chain[j].infeasible) return;
    std::optional<Rational> lo, hi;
    for (const auto& r : chain[j].rows) {
      Rational rest = r.b;
      for (std::size_t q = 0; q < j; ++q) rest -= Rational(r.a[q] * y[q]);
      const Integer& c = r.a[j];
      if (c == 0) {
        if (rest > 0) return;
        continue;
      }
      Rational bound = rest / Rational(c);
      if (c > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    if (!lo || !hi) throw InvalidInput("lattice_points: polyhedron is unbounded");
    for (Integer v = ceil_of(*lo), top = floor_of(*hi); v <= top && !stop; ++v) {
      if (++candidates > limit)
        throw EnumerationLimit("lattice point enumeration exceeded " + std::to_string(limit) +
                               " candidates (TORUSONE_MAX_ENUM)");
      y[j] = v;
      if (j + 1 < t) {
        descend(j + 1);
      } else {
        IntVector x = ps->x0;
        for (std::size_t q = 0; q < t; ++q)
          for (std::size_t i = 0; i < d; ++i) x[i] += y[q] * ps->basis[q][i];
        // exact re-verification against the original constraints
        if (!p.contains(x)) throw CrossCheckError("lattice_points: enumerated point violates " + to_string(x));
        if (!visit(x)) stop = true;
      }
    }
  };
  descend(0);
}

inline std::vector<IntVector> lattice_points(const Polyhedron& p,
                                             std::uint64_t limit = enumeration_limit(),
                                             bool check_bounded = true) {
  std::vector<IntVector> out;
  for_each_lattice_point(
      p,
      [&](const IntVector& x) {
        out.push_back(x);
        return true;
      },
      limit, check_bounded);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool has_lattice_point(const Polyhedron& p, std::uint64_t limit = enumeration_limit(),
                              bool check_bounded = true) {
  bool found = false;
  for_each_lattice_point(
      p,
      [&](const IntVector&) {
        found = true;
        return false;
      },
      limit, check_bounded);
  return found;
}

}  // namespace torusone
