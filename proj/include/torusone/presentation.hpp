#pragma once

// The defining data (A, P), the trinomial relations of R(A,P), sparse
// polynomials over Q and the derivations delta_{C,beta}.
//
// Index conventions follow the usual notation: blocks i = 0..r, columns
// inside block i are j = 1..n_i, the S-variables are k = 1..m. Containers
// are 0-based, so block i is stored at position i and column j at j-1.
// Variables are ordered T_01..T_0n_0, ..., T_r1..T_rn_r, S_1..S_m.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "torusone/errors.hpp"
#include "torusone/exact.hpp"
#include "torusone/polyhedra.hpp"

namespace torusone {

struct AData {
  // columns a_0, ..., a_r
  std::vector<std::array<Rational, 2>> columns;

  std::size_t r() const { return columns.empty() ? 0 : columns.size() - 1; }
  bool operator==(const AData&) const = default;

  // 2x2 minor det(a_i, a_k)
  Rational minor(std::size_t i, std::size_t k) const {
    return det2(columns.at(i)[0], columns.at(k)[0], columns.at(i)[1], columns.at(k)[1]);
  }

  bool pairwise_independent() const {
    for (std::size_t i = 0; i < columns.size(); ++i)
      for (std::size_t k = i + 1; k < columns.size(); ++k)
        if (minor(i, k) == 0) return false;
    return true;
  }

  // a_0 = (0,1), a_1 = (-1,-1), a_i = (1, 2-i) for i >= 2; for r = 2 this
  // is the matrix [[0,-1,1],[1,-1,0]] of the surface examples.
  static AData standard(std::size_t r) {
    AData a;
    a.columns.push_back({Rational(0), Rational(1)});
    a.columns.push_back({Rational(-1), Rational(-1)});
    for (std::size_t i = 2; i <= r; ++i)
      a.columns.push_back({Rational(1), Rational(2) - Rational(static_cast<long>(i))});
    return a;
  }
};

class PData {
 public:
  PData() = default;

  PData(std::vector<std::vector<long>> l, IntMatrix d, IntMatrix dprime)
      : l_(std::move(l)), d_(std::move(d)), dprime_(std::move(dprime)) {
    if (l_.empty()) throw InvalidInput("PData: no exponent blocks");
    offsets_.clear();
    n_ = 0;
    for (const auto& blk : l_) {
      if (blk.empty()) throw InvalidInput("PData: empty exponent block");
      offsets_.push_back(n_);
      n_ += blk.size();
    }
    if (d_.rows() != dprime_.rows()) throw InvalidInput("PData: d and d' have different row counts");
    if (d_.cols() != n_)
      throw InvalidInput("PData: d has " + std::to_string(d_.cols()) + " columns, expected n = " +
                         std::to_string(n_));
    full_ = build_matrix();
  }

  std::size_t r() const { return l_.size() - 1; }
  std::size_t s() const { return d_.rows(); }
  std::size_t m() const { return dprime_.cols(); }
  std::size_t n() const { return n_; }
  std::size_t n_i(std::size_t i) const { return l_.at(i).size(); }
  std::size_t block_count() const { return l_.size(); }
  std::size_t variable_count() const { return n_ + m(); }

  // j is 1-based
  long l(std::size_t i, std::size_t j) const { return l_.at(i).at(j - 1); }
  const std::vector<std::vector<long>>& exponents() const { return l_; }
  const std::vector<long>& block(std::size_t i) const { return l_.at(i); }
  long block_sum(std::size_t i) const {
    long s = 0;
    for (long x : l_.at(i)) s += x;
    return s;
  }
  long max_exponent() const {
    long mx = 0;
    for (const auto& b : l_)
      for (long x : b) mx = std::max(mx, x);
    return mx;
  }
  const IntMatrix& d() const { return d_; }
  const IntMatrix& dprime() const { return dprime_; }

  // variable positions; j and k are 1-based
  std::size_t var_T(std::size_t i, std::size_t j) const { return offsets_.at(i) + j - 1; }
  std::size_t var_S(std::size_t k) const { return n_ + k - 1; }
  bool is_T(std::size_t v) const { return v < n_; }
  // (i, j) of a T-variable, j 1-based
  std::pair<std::size_t, std::size_t> block_of(std::size_t v) const {
    for (std::size_t i = l_.size(); i-- > 0;)
      if (v >= offsets_[i]) return {i, v - offsets_[i] + 1};
    throw InvalidInput("block_of: not a T variable");
  }

  std::string variable_name(std::size_t v) const {
    if (v >= variable_count()) throw InvalidInput("variable index out of range");
    if (v >= n_) return "S" + std::to_string(v - n_ + 1);
    auto [i, j] = block_of(v);
    if (i < 10 && j < 10) return "T" + std::to_string(i) + std::to_string(j);
    return "T" + std::to_string(i) + "_" + std::to_string(j);
  }
  std::vector<std::string> variable_names() const {
    std::vector<std::string> out;
    for (std::size_t v = 0; v < variable_count(); ++v) out.push_back(variable_name(v));
    return out;
  }

  // The (r+s) x (n+m) matrix [[L0, 0], [d, d']].
  const IntMatrix& matrix() const { return full_; }

  // P0 = [L0, 0], the first r rows.
  IntMatrix p0() const {
    IntMatrix out(r(), variable_count());
    for (std::size_t i = 0; i < r(); ++i)
      for (std::size_t c = 0; c < variable_count(); ++c) out(i, c) = full_(i, c);
    return out;
  }

  IntVector column(std::size_t v) const { return full_.col(v); }
  std::vector<IntVector> columns() const {
    std::vector<IntVector> out;
    for (std::size_t c = 0; c < full_.cols(); ++c) out.push_back(full_.col(c));
    return out;
  }

  bool operator==(const PData& o) const {
    return l_ == o.l_ && d_ == o.d_ && dprime_ == o.dprime_;
  }

 private:
  IntMatrix build_matrix() const {
    const std::size_t R = r(), S = s();
    IntMatrix p(R + S, variable_count());
    for (std::size_t i = 1; i <= R; ++i) {
      for (std::size_t j = 1; j <= n_i(0); ++j) p(i - 1, var_T(0, j)) = -l(0, j);
      for (std::size_t j = 1; j <= n_i(i); ++j) p(i - 1, var_T(i, j)) = l(i, j);
    }
    for (std::size_t a = 0; a < S; ++a) {
      for (std::size_t c = 0; c < n_; ++c) p(R + a, c) = d_(a, c);
      for (std::size_t k = 0; k < m(); ++k) p(R + a, n_ + k) = dprime_(a, k);
    }
    return p;
  }

  std::vector<std::vector<long>> l_;
  IntMatrix d_;
  IntMatrix dprime_;
  std::vector<std::size_t> offsets_;
  std::size_t n_ = 0;
  IntMatrix full_;
};

// ---------------------------------------------------------------------------
// validation

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool minimally_presented = false;

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }
  const ValidationCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  std::string failures() const {
    std::string out;
    for (const auto& c : checks)
      if (!c.passed) out += (out.empty() ? "" : "; ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")");
    return out;
  }
};

namespace check_names {
inline constexpr const char* r_positive = "r >= 1";
inline constexpr const char* exponents = "exponents positive";
inline constexpr const char* s_range = "0 < s < n+m-r";
inline constexpr const char* distinct = "columns pairwise different";
inline constexpr const char* primitive = "columns primitive";
inline constexpr const char* full_cone = "columns generate Q^(r+s) as a cone";
inline constexpr const char* a_shape = "A has r+1 columns";
inline constexpr const char* a_independent = "A columns pairwise linearly independent";
}  // namespace check_names

inline bool is_minimally_presented(const PData& p) {
  if (p.r() < 2) return false;
  for (std::size_t i = 0; i <= p.r(); ++i)
    if (p.block_sum(i) < 2) return false;
  return true;
}

inline ValidationReport validate(const PData& p) {
  namespace cn = check_names;
  ValidationReport rep;
  auto add = [&](const char* name, bool ok, std::string detail = {}) {
    rep.checks.push_back({name, ok, ok ? std::string() : std::move(detail)});
  };
  add(cn::r_positive, p.r() >= 1, "only one block");

  bool pos = true;
  std::string bad;
  for (std::size_t i = 0; i <= p.r(); ++i)
    for (std::size_t j = 1; j <= p.n_i(i); ++j)
      if (p.l(i, j) < 1) {
        pos = false;
        bad = "l" + std::to_string(i) + std::to_string(j) + " = " + std::to_string(p.l(i, j));
      }
  add(cn::exponents, pos, bad);

  const long nm = static_cast<long>(p.variable_count()), rr = static_cast<long>(p.r());
  const long ss = static_cast<long>(p.s());
  add(cn::s_range, 0 < ss && ss < nm - rr,
      "s = " + std::to_string(ss) + ", n+m-r = " + std::to_string(nm - rr));

  auto cols = p.columns();
  bool distinct = true;
  for (std::size_t a = 0; a < cols.size() && distinct; ++a)
    for (std::size_t b = a + 1; b < cols.size(); ++b)
      if (cols[a] == cols[b]) {
        distinct = false;
        bad = p.variable_name(a) + " and " + p.variable_name(b);
        break;
      }
  add(cn::distinct, distinct, bad);

  bool prim = true;
  for (std::size_t a = 0; a < cols.size(); ++a)
    if (is_zero_vector(cols[a]) || vector_gcd(cols[a]) != 1) {
      prim = false;
      bad = p.variable_name(a) + " = " + to_string(cols[a]);
      break;
    }
  add(cn::primitive, prim, bad);

  add(cn::full_cone, p.r() + p.s() > 0 && positively_spans(cols, p.r() + p.s()),
      "the columns lie in a half space");
  rep.minimally_presented = is_minimally_presented(p);
  return rep;
}

inline ValidationReport validate(const AData& a, const PData& p) {
  namespace cn = check_names;
  ValidationReport rep = validate(p);
  bool shape = a.columns.size() == p.r() + 1;
  rep.checks.push_back({cn::a_shape, shape,
                        shape ? "" : "got " + std::to_string(a.columns.size())});
  bool indep = a.pairwise_independent();
  rep.checks.push_back({cn::a_independent, indep, indep ? "" : "some 2x2 minor vanishes"});
  return rep;
}

inline void require_valid(const PData& p) {
  auto rep = validate(p);
  if (!rep.ok()) throw InvalidInput("invalid P: " + rep.failures());
}

inline void require_valid(const AData& a, const PData& p) {
  auto rep = validate(a, p);
  if (!rep.ok()) throw InvalidInput("invalid (A,P): " + rep.failures());
}

// ---------------------------------------------------------------------------
// polynomials

using Exponent = std::vector<long>;

inline std::string format_rational(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q);
  if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

inline std::string format_monomial(const Exponent& e, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!out.empty()) out += '*';
    out += v < names.size() ? names[v] : "x" + std::to_string(v);
    if (e[v] != 1) out += "^" + std::to_string(e[v]);
  }
  return out;
}

// h^u with possibly negative exponents. Kept apart from Polynomial so that
// negative exponents never enter ordinary polynomials silently.
struct LaurentMonomial {
  Exponent exponent;

  bool is_polynomial() const {
    return std::all_of(exponent.begin(), exponent.end(), [](long x) { return x >= 0; });
  }
  bool is_one() const {
    return std::all_of(exponent.begin(), exponent.end(), [](long x) { return x == 0; });
  }
  LaurentMonomial operator*(const LaurentMonomial& o) const {
    if (o.exponent.size() != exponent.size()) throw InvalidInput("Laurent monomial size mismatch");
    LaurentMonomial out = *this;
    for (std::size_t i = 0; i < exponent.size(); ++i) out.exponent[i] += o.exponent[i];
    return out;
  }
  LaurentMonomial operator/(const LaurentMonomial& o) const {
    LaurentMonomial inv = o;
    for (auto& x : inv.exponent) x = -x;
    return *this * inv;
  }
  bool operator==(const LaurentMonomial&) const = default;
};

// h^x for an integer vector x in Z^{n+m}.
inline LaurentMonomial laurent_from(const IntVector& x) {
  LaurentMonomial h;
  for (const auto& v : x) h.exponent.push_back(v.convert_to<long>());
  return h;
}

class Polynomial {
 public:
  using TermMap = std::map<Exponent, Rational, std::greater<Exponent>>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
  }
  static Polynomial variable(std::size_t nvars, std::size_t v) {
    Exponent e(nvars, 0);
    e.at(v) = 1;
    return monomial(std::move(e), Rational(1));
  }
  static Polynomial monomial(Exponent e, const Rational& c) {
    for (long x : e)
      if (x < 0) throw InvalidInput("negative exponent in a polynomial");
    Polynomial p(e.size());
    p.add_term(std::move(e), c);
    return p;
  }
  // Promotes a Laurent monomial; rejects negative exponents.
  static Polynomial from_laurent(const LaurentMonomial& h, const Rational& c = Rational(1)) {
    if (!h.is_polynomial()) throw InvalidInput("Laurent monomial with negative exponent used as a polynomial");
    return monomial(h.exponent, c);
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Exponent e, const Rational& c) {
    if (e.size() != nvars_) throw InvalidInput("Polynomial: exponent of wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    same(o);
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_) out.add_term(e, c);
    return out;
  }
  Polynomial operator-() const {
    Polynomial out = *this;
    for (auto& [e, c] : out.terms_) c = -c;
    return out;
  }
  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }
  Polynomial operator*(const Polynomial& o) const {
    same(o);
    Polynomial out(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exponent e(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        out.add_term(std::move(e), c1 * c2);
      }
    return out;
  }
  Polynomial operator*(const Rational& f) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * f);
    return out;
  }
  // Multiplication by a Laurent monomial; every resulting exponent must be
  // nonnegative.
  Polynomial operator*(const LaurentMonomial& h) const {
    if (h.exponent.size() != nvars_) throw InvalidInput("Laurent monomial size mismatch");
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      Exponent f(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) {
        f[i] = e[i] + h.exponent[i];
        if (f[i] < 0) throw InvalidInput("Laurent factor leaves a negative exponent");
      }
      out.add_term(std::move(f), c);
    }
    return out;
  }

  Polynomial pow(unsigned k) const {
    Polynomial out = constant(nvars_, Rational(1));
    for (unsigned i = 0; i < k; ++i) out = out * *this;
    return out;
  }

  Polynomial derivative(std::size_t v) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e.at(v) == 0) continue;
      Exponent f = e;
      f[v] -= 1;
      out.add_term(std::move(f), c * Rational(e[v]));
    }
    return out;
  }

  bool depends_on(std::size_t v) const {
    for (const auto& [e, c] : terms_)
      if (e.at(v) != 0) return true;
    return false;
  }

  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  std::string to_string(const std::vector<std::string>& names) const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      Rational a = c < 0 ? Rational(-c) : c;
      std::string mono = format_monomial(e, names);
      if (first)
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      first = false;
      if (mono.empty())
        out += format_rational(a);
      else if (a == 1)
        out += mono;
      else
        out += format_rational(a) + "*" + mono;
    }
    return out;
  }

 private:
  void same(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw InvalidInput("Polynomial: variable count mismatch");
  }

  std::size_t nvars_ = 0;
  TermMap terms_;
};

inline Polynomial operator*(const Rational& f, const Polynomial& p) { return p * f; }

// T_i^{l_i} = prod_j T_ij^{l_ij}
inline Polynomial block_monomial(const PData& p, std::size_t i) {
  Exponent e(p.variable_count(), 0);
  for (std::size_t j = 1; j <= p.n_i(i); ++j) e[p.var_T(i, j)] = p.l(i, j);
  return Polynomial::monomial(std::move(e), Rational(1));
}

// ---------------------------------------------------------------------------
// derivations

class Derivation {
 public:
  Derivation() = default;
  explicit Derivation(std::size_t nvars) : images_(nvars, Polynomial(nvars)) {}

  std::size_t nvars() const { return images_.size(); }
  const Polynomial& image(std::size_t v) const { return images_.at(v); }
  void set_image(std::size_t v, Polynomial p) {
    if (p.nvars() != nvars()) throw InvalidInput("Derivation: image has wrong variable count");
    images_.at(v) = std::move(p);
  }
  bool is_zero() const {
    return std::all_of(images_.begin(), images_.end(), [](const auto& p) { return p.is_zero(); });
  }

  // Leibniz extension: d(f) = sum_v (df/dx_v) d(x_v)
  Polynomial apply(const Polynomial& f) const {
    if (f.nvars() != nvars()) throw InvalidInput("Derivation: polynomial has wrong variable count");
    Polynomial out(nvars());
    for (std::size_t v = 0; v < nvars(); ++v) {
      if (images_[v].is_zero() || !f.depends_on(v)) continue;
      out = out + f.derivative(v) * images_[v];
    }
    return out;
  }

  Derivation operator*(const Polynomial& h) const {
    Derivation out(nvars());
    for (std::size_t v = 0; v < nvars(); ++v) out.images_[v] = h * images_[v];
    return out;
  }
  Derivation operator*(const LaurentMonomial& h) const {
    Derivation out(nvars());
    for (std::size_t v = 0; v < nvars(); ++v) out.images_[v] = images_[v] * h;
    return out;
  }

  bool operator==(const Derivation&) const = default;

 private:
  std::vector<Polynomial> images_;
};

inline Polynomial apply(const Derivation& d, const Polynomial& f) { return d.apply(f); }

// Smallest k <= bound with d^k(x_v) = 0 for each variable, or nullopt.
inline std::vector<std::optional<unsigned>> nilpotency_orders(const Derivation& d, unsigned bound) {
  std::vector<std::optional<unsigned>> out;
  for (std::size_t v = 0; v < d.nvars(); ++v) {
    Polynomial f = Polynomial::variable(d.nvars(), v);
    std::optional<unsigned> order;
    for (unsigned k = 1; k <= bound; ++k) {
      f = d.apply(f);
      if (f.is_zero()) {
        order = k;
        break;
      }
    }
    out.push_back(order);
  }
  return out;
}

inline bool is_locally_nilpotent_on_generators(const Derivation& d, unsigned bound) {
  if (bound < 1) throw InvalidInput("nilpotency bound must be at least 1");
  auto orders = nilpotency_orders(d, bound);
  return std::all_of(orders.begin(), orders.end(), [](const auto& o) { return o.has_value(); });
}

inline unsigned default_nilpotency_bound(const PData& p) {
  return static_cast<unsigned>(p.max_exponent() + 2);
}

// ---------------------------------------------------------------------------
// relations

struct Relation {
  std::array<std::size_t, 3> triple;
  Polynomial g;
};

// g_I = det [[T_i1^l_i1, T_i2^l_i2, T_i3^l_i3], [a_i1, a_i2, a_i3]]
inline std::vector<Relation> relations(const AData& a, const PData& p) {
  if (a.columns.size() != p.r() + 1) throw InvalidInput("relations: A needs r+1 columns");
  std::vector<Relation> out;
  const std::size_t R = p.r();
  for (std::size_t i1 = 0; i1 <= R; ++i1)
    for (std::size_t i2 = i1 + 1; i2 <= R; ++i2)
      for (std::size_t i3 = i2 + 1; i3 <= R; ++i3) {
        Polynomial g = block_monomial(p, i1) * a.minor(i2, i3) -
                       block_monomial(p, i2) * a.minor(i1, i3) +
                       block_monomial(p, i3) * a.minor(i1, i2);
        out.push_back({{i1, i2, i3}, std::move(g)});
      }
  return out;
}

// beta lies in the row space of A.
inline bool in_row_space(const AData& a, const RatVector& beta) {
  if (beta.size() != a.columns.size()) return false;
  // c = (c1, c2) with c . a_0 = beta_0, c . a_1 = beta_1
  const auto& a0 = a.columns[0];
  const auto& a1 = a.columns[1];
  Rational det = det2(a0[0], a0[1], a1[0], a1[1]);
  if (det == 0) throw InvalidInput("A: columns 0 and 1 are dependent");
  Rational c1 = det2(beta[0], a0[1], beta[1], a1[1]) / det;
  Rational c2 = det2(a0[0], beta[0], a1[0], beta[1]) / det;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (c1 * a.columns[i][0] + c2 * a.columns[i][1] != beta[i]) return false;
  return true;
}

// The unique row-space vector with beta_{i0} = 0 and beta_{i1} = 1.
inline RatVector row_space_vector(const AData& a, std::size_t i0, std::size_t i1) {
  const auto& x = a.columns.at(i0);
  const auto& y = a.columns.at(i1);
  // c perpendicular to a_{i0}, scaled so that c . a_{i1} = 1
  Rational c1 = x[1], c2 = -x[0];
  Rational at1 = c1 * y[0] + c2 * y[1];
  if (at1 == 0) throw InvalidInput("A: columns are dependent");
  RatVector beta;
  for (const auto& col : a.columns) beta.push_back((c1 * col[0] + c2 * col[1]) / at1);
  return beta;
}

enum class DeltaCase { I, II, Zero };

struct DeltaInfo {
  DeltaCase kind = DeltaCase::Zero;
  std::optional<std::size_t> i0;  // the vanishing beta entry in case (ii)
  std::optional<std::size_t> i1;  // block with l_{i c_i} > 1, if any
};

inline void check_selection(const PData& p, const std::vector<std::size_t>& C) {
  if (C.size() != p.r() + 1) throw InvalidInput("C must have r+1 entries");
  for (std::size_t i = 0; i <= p.r(); ++i)
    if (C[i] < 1 || C[i] > p.n_i(i))
      throw InvalidInput("C: entry c_" + std::to_string(i) + " out of range");
}

// Case analysis of the construction; throws on violated case conditions.
inline DeltaInfo delta_case(const PData& p, const std::vector<std::size_t>& C, const RatVector& beta) {
  check_selection(p, C);
  if (beta.size() != p.r() + 1) throw InvalidInput("beta must have r+1 entries");
  DeltaInfo info;
  std::vector<std::size_t> zeros;
  for (std::size_t i = 0; i <= p.r(); ++i)
    if (beta[i] == 0) zeros.push_back(i);
  if (zeros.size() == beta.size()) return info;
  if (zeros.empty())
    info.kind = DeltaCase::I;
  else if (zeros.size() == 1) {
    info.kind = DeltaCase::II;
    info.i0 = zeros[0];
  } else {
    throw InvalidInput("beta: more than one vanishing entry");
  }
  for (std::size_t i = 0; i <= p.r(); ++i) {
    if (info.i0 && *info.i0 == i) continue;
    if (p.l(i, C[i]) > 1) {
      if (info.i1) throw InvalidInput("C: more than one selected exponent exceeds 1");
      info.i1 = i;
    }
  }
  return info;
}

// dT_k^{l_k} / dT_{k c_k}
inline Polynomial block_partial(const PData& p, std::size_t k, std::size_t c) {
  return block_monomial(p, k).derivative(p.var_T(k, c));
}

inline Derivation delta_C_beta(const AData& a, const PData& p, const std::vector<std::size_t>& C,
                               const RatVector& beta) {
  if (a.columns.size() != p.r() + 1) throw InvalidInput("delta_C_beta: A needs r+1 columns");
  if (!in_row_space(a, beta)) throw InvalidInput("beta is not in the row space of A");
  DeltaInfo info = delta_case(p, C, beta);
  const std::size_t N = p.variable_count();
  Derivation d(N);
  if (info.kind == DeltaCase::Zero) return d;
  for (std::size_t i = 0; i <= p.r(); ++i) {
    if (beta[i] == 0) continue;
    Polynomial img = Polynomial::constant(N, beta[i]);
    for (std::size_t k = 0; k <= p.r(); ++k) {
      if (k == i || (info.i0 && *info.i0 == k)) continue;
      img = img * block_partial(p, k, C[k]);
    }
    d.set_image(p.var_T(i, C[i]), std::move(img));
  }
  return d;
}

// Rational functional l_{0c_0}^{-1} e*_{0c_0} + ... + l_{rc_r}^{-1} e*_{rc_r}.
inline RatVector selection_functional(const PData& p, const std::vector<std::size_t>& C) {
  check_selection(p, C);
  RatVector phi(p.variable_count(), Rational(0));
  for (std::size_t i = 0; i <= p.r(); ++i) phi[p.var_T(i, C[i])] = Rational(1, p.l(i, C[i]));
  return phi;
}

struct PrimitivityCertificate {
  RatVector functional;
  IntVector degree_representative;  // in Z^{n+m}
  Rational value;                   // functional at the representative, < 0
};

// Certifies that deg(delta_{C,beta}) lies outside the weight cone: a
// functional nonnegative on the orthant, zero on the rows of P0 and
// negative on a representative of the degree. Throws if any check fails.
inline PrimitivityCertificate primitivity_certificate(const PData& p, const std::vector<std::size_t>& C,
                                                      const RatVector& beta, const Derivation& d) {
  DeltaInfo info = delta_case(p, C, beta);
  if (info.kind == DeltaCase::Zero) throw InvalidInput("zero derivation has no degree");
  PrimitivityCertificate cert;
  cert.functional = selection_functional(p, C);
  for (const auto& x : cert.functional)
    if (x < 0) throw CrossCheckError("functional negative on the orthant");
  IntMatrix p0 = p.p0();
  for (std::size_t row = 0; row < p0.rows(); ++row) {
    Rational s = 0;
    for (std::size_t c = 0; c < p0.cols(); ++c) s += cert.functional[c] * Rational(p0(row, c));
    if (s != 0) throw CrossCheckError("functional does not vanish on the rows of P0");
  }
  // pick the block with exponent > 1 (or any block with nonzero image)
  std::size_t pick = p.r() + 1;
  if (info.i1) pick = *info.i1;
  for (std::size_t i = 0; i <= p.r() && pick > p.r(); ++i)
    if (!d.image(p.var_T(i, C[i])).is_zero()) pick = i;
  const std::size_t v = p.var_T(pick, C[pick]);
  const Polynomial& img = d.image(v);
  if (img.is_zero()) throw CrossCheckError("selected variable has zero image");
  const Exponent& e = img.terms().begin()->first;
  cert.degree_representative.assign(p.variable_count(), Integer(0));
  for (std::size_t c = 0; c < e.size(); ++c) cert.degree_representative[c] = e[c];
  cert.degree_representative[v] -= 1;
  cert.value = 0;
  for (std::size_t c = 0; c < e.size(); ++c)
    cert.value += cert.functional[c] * Rational(cert.degree_representative[c]);
  if (cert.value >= 0) throw CrossCheckError("functional does not separate the derivation degree");
  return cert;
}

}  // namespace torusone
