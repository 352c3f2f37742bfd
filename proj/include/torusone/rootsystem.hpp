#pragma once

// Semisimple P-roots, their splitting into vertical and horizontal ones,
// and the type of the root system read off from the K-degrees.

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "torusone/demazure.hpp"
#include "torusone/errors.hpp"
#include "torusone/grading.hpp"
#include "torusone/presentation.hpp"

namespace torusone {

enum class HorizontalType { Empty, A1, A1A1, A2, B2, A3 };

inline std::size_t root_count(HorizontalType t) {
  switch (t) {
    case HorizontalType::Empty: return 0;
    case HorizontalType::A1: return 2;
    case HorizontalType::A1A1: return 4;
    case HorizontalType::A2: return 6;
    case HorizontalType::B2: return 8;
    case HorizontalType::A3: return 12;
  }
  return 0;
}

inline std::string to_string(HorizontalType t) {
  switch (t) {
    case HorizontalType::Empty: return "empty";
    case HorizontalType::A1: return "A1";
    case HorizontalType::A1A1: return "A1+A1";
    case HorizontalType::A2: return "A2";
    case HorizontalType::B2: return "B2";
    case HorizontalType::A3: return "A3";
  }
  return "?";
}

struct SemisimpleRoot {
  IntVector alpha;
  bool vertical = false;
  std::vector<DemazureRoot> witnesses;  // of alpha itself
};

// S-variables sharing one K-degree p; contributes A_{m_p - 1}.
struct VerticalGroup {
  IntVector degree;
  std::vector<std::size_t> variables;  // k, 1-based
  std::size_t multiplicity() const { return variables.size(); }
};

// Arrangement used by the shape test: new block i is old block blocks[i],
// new column j of block i is old column columns[i][j-1].
struct Renumbering {
  std::array<std::size_t, 3> blocks{0, 1, 2};
  std::array<std::vector<std::size_t>, 3> columns;
};

struct HorizontalReport {
  HorizontalType type = HorizontalType::Empty;
  std::string detected_case = "no shape";
  std::optional<Renumbering> renumbering;
};

struct RootSystemReport {
  std::vector<IntVector> roots;  // all P-roots
  std::vector<SemisimpleRoot> semisimple;
  std::vector<VerticalGroup> vertical_part;
  HorizontalReport horizontal;

  std::size_t vertical_count() const {
    return static_cast<std::size_t>(
        std::count_if(semisimple.begin(), semisimple.end(), [](const auto& x) { return x.vertical; }));
  }
  std::size_t horizontal_count() const { return semisimple.size() - vertical_count(); }

  bool all_roots_semisimple() const { return semisimple.size() == roots.size(); }

  // e.g. "A1+A2", "empty"
  std::string vertical_type() const {
    std::vector<std::size_t> ranks;
    for (const auto& g : vertical_part)
      if (g.multiplicity() >= 2) ranks.push_back(g.multiplicity() - 1);
    std::sort(ranks.begin(), ranks.end());
    if (ranks.empty()) return "empty";
    std::string out;
    for (auto k : ranks) out += (out.empty() ? "A" : "+A") + std::to_string(k);
    return out;
  }
};

inline IntVector negated(IntVector v) {
  for (auto& x : v) x = -x;
  return v;
}

// alpha is vertical iff the K0-degree Q0(P*u) of a witness has no
// horizontal component; the witness kinds of alpha and -alpha have to
// agree with that.
inline std::vector<SemisimpleRoot> semisimple_roots(const PData& P, const PRoots& pr, const GradingData& g) {
  std::vector<SemisimpleRoot> out;
  for (const auto& a : pr.alphas) {
    if (!pr.contains(negated(a))) continue;
    SemisimpleRoot sr;
    sr.alpha = a;
    for (const auto& k : pr.witnesses)
      if (k.alpha == a) sr.witnesses.push_back(k);
    const auto& u = sr.witnesses.front().u;
    auto [hor, vert] = k0_split(g, g.K0.project(pairings(P, u)));
    sr.vertical = g.K0_hor.is_zero(hor);
    for (const auto& k : pr.witnesses) {
      if (k.alpha != a && k.alpha != negated(a)) continue;
      if (k.is_vertical() != sr.vertical)
        throw CrossCheckError("semisimple root " + to_string(a) + " has a witness of the other kind: " +
                              k.describe());
    }
    out.push_back(std::move(sr));
  }
  return out;
}

inline std::vector<SemisimpleRoot> semisimple_roots(const PData& P) {
  return semisimple_roots(P, p_roots(P), compute_gradings(P));
}

inline std::vector<VerticalGroup> vertical_type(const PData& P, const GradingData& g) {
  std::vector<VerticalGroup> groups;
  for (std::size_t k = 1; k <= P.m(); ++k) {
    const IntVector& w = g.degK[P.var_S(k)];
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const VerticalGroup& x) { return degrees_equal_in_K(g, x.degree, w); });
    if (it == groups.end())
      groups.push_back({w, {k}});
    else
      it->variables.push_back(k);
  }
  std::size_t excess = 0;
  for (const auto& x : groups) excess += x.multiplicity() - 1;
  if (excess >= P.s())
    throw CrossCheckError("sum of (m_p - 1) = " + std::to_string(excess) + " is not below s = " +
                          std::to_string(P.s()));
  return groups;
}

namespace detail {

inline std::vector<std::vector<std::size_t>> column_orders(std::size_t n) {
  std::vector<std::size_t> c(n);
  std::iota(c.begin(), c.end(), 1);
  if (n != 2) return {c};
  return {c, {2, 1}};
}

// Tag of one arrangement, or nullopt if neither shape fits.
inline std::optional<std::pair<HorizontalType, std::string>> shape_tag(const PData& P, const GradingData& g,
                                                                       const Renumbering& ren) {
  auto n = [&](std::size_t i) { return P.n_i(ren.blocks[i]); };
  auto l = [&](std::size_t i, std::size_t j) { return P.l(ren.blocks[i], ren.columns[i][j - 1]); };
  auto w = [&](std::size_t i, std::size_t j) -> const IntVector& {
    return g.degK[P.var_T(ren.blocks[i], ren.columns[i][j - 1])];
  };
  auto eq = [&](std::initializer_list<std::pair<std::size_t, std::size_t>> vs) {
    const IntVector& a = w(vs.begin()->first, vs.begin()->second);
    for (const auto& [i, j] : vs)
      if (!g.K.equal(a, w(i, j))) return false;
    return true;
  };
  auto ones = [&](std::size_t i) { return n(i) == 2 && l(i, 1) == 1 && l(i, 2) == 1; };
  if (!ones(0)) return std::nullopt;
  long sum2 = P.block_sum(ren.blocks[2]);
  const bool two_ones = ones(2);
  const bool single_square = n(2) == 1 && l(2, 1) == 2;

  if (ones(1) && eq({{0, 1}, {1, 1}}) && eq({{0, 2}, {1, 2}})) {
    // n2 = 1, l21 = 2 is not listed separately; it follows the sum >= 3
    // rule, and the B2 case shows up as (iii b) under another numbering.
    if (sum2 >= 3 || single_square) {
      const std::string c = sum2 >= 3 ? "iii a, l2 sum >= 3" : "iii a, n2 = 1, l21 = 2";
      if (eq({{0, 1}, {0, 2}, {1, 1}, {1, 2}})) return std::pair{HorizontalType::A1A1, c};
      return std::pair{HorizontalType::A1, c};
    }
    if (two_ones) {
      const std::string c = "iii a, n2 = 2, l2 = (1,1)";
      if (eq({{0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 1}, {2, 2}})) return std::pair{HorizontalType::A3, c};
      if (eq({{0, 1}, {1, 1}, {2, 1}}) && eq({{0, 2}, {1, 2}, {2, 2}}) && !eq({{0, 1}, {0, 2}}))
        return std::pair{HorizontalType::A2, c};
      if (eq({{0, 1}, {0, 2}, {1, 1}, {1, 2}})) return std::pair{HorizontalType::A1A1, c};
      return std::pair{HorizontalType::A1, c};
    }
  }
  if (n(1) == 1 && l(1, 1) == 2 && eq({{0, 1}, {0, 2}, {1, 1}})) {
    if (sum2 >= 3) return std::pair{HorizontalType::A1, "iii b, l2 sum >= 3"};
    if (single_square) {
      const std::string c = "iii b, n2 = 1, l21 = 2";
      if (eq({{0, 1}, {0, 2}, {1, 1}, {2, 1}})) return std::pair{HorizontalType::A1A1, c};
      return std::pair{HorizontalType::A1, c};
    }
    if (two_ones) {
      const std::string c = "iii b, n2 = 2, l2 = (1,1)";
      if (eq({{0, 1}, {0, 2}, {1, 1}, {2, 1}, {2, 2}})) return std::pair{HorizontalType::B2, c};
      return std::pair{HorizontalType::A1, c};
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Searches all block permutations and column orders of blocks with two
// columns; the tag with the most roots wins, ties go to the first
// arrangement in lexicographic order.
inline HorizontalReport horizontal_type(const PData& P, const GradingData& g) {
  HorizontalReport best;
  if (P.r() != 2) {
    best.detected_case = "r != 2";
    return best;
  }
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    for (const auto& c0 : detail::column_orders(P.n_i(perm[0])))
      for (const auto& c1 : detail::column_orders(P.n_i(perm[1])))
        for (const auto& c2 : detail::column_orders(P.n_i(perm[2]))) {
          Renumbering ren{perm, {c0, c1, c2}};
          auto tag = detail::shape_tag(P, g, ren);
          if (!tag) continue;
          if (!best.renumbering || root_count(tag->first) > root_count(best.type)) {
            best.type = tag->first;
            best.detected_case = tag->second;
            best.renumbering = ren;
          }
        }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

inline RootSystemReport classify(const PData& P) {
  require_valid(P);
  if (!is_minimally_presented(P)) throw InvalidInput("classify: R(A,P) is not minimally presented");
  GradingData g = compute_gradings(P);
  PRoots pr = p_roots(P);
  RootSystemReport rep;
  rep.roots = pr.alphas;
  rep.semisimple = semisimple_roots(P, pr, g);
  for (const auto& x : rep.semisimple)
    if (!pr.contains(negated(x.alpha))) throw CrossCheckError("semisimple set not closed under negation");
  rep.vertical_part = vertical_type(P, g);
  rep.horizontal = horizontal_type(P, g);

  std::size_t expected_vert = 0;
  for (const auto& x : rep.vertical_part) expected_vert += x.multiplicity() * (x.multiplicity() - 1);
  if (rep.vertical_count() != expected_vert)
    throw CrossCheckError("found " + std::to_string(rep.vertical_count()) +
                          " vertical semisimple roots, the K-degrees of the S-variables predict " +
                          std::to_string(expected_vert));
  if (rep.horizontal_count() != root_count(rep.horizontal.type))
    throw CrossCheckError("found " + std::to_string(rep.horizontal_count()) +
                          " horizontal semisimple roots, the shape test gives " + to_string(rep.horizontal.type) +
                          " (" + rep.horizontal.detected_case + ")");
  return rep;
}

// Every P-root is semisimple.
inline bool all_roots_semisimple(const PData& P) {
  PRoots pr = p_roots(P);
  for (const auto& a : pr.alphas)
    if (!pr.contains(negated(a))) return false;
  return true;
}

}  // namespace torusone
