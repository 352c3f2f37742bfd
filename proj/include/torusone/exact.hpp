#pragma once

// Exact integer and rational linear algebra: Hermite and Smith normal
// forms, integer linear systems and finitely generated abelian groups
// given as cokernels.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "torusone/errors.hpp"

namespace torusone {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using IntVector = std::vector<Integer>;

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs_value(a / gcd(a, b) * b);
}

// Division rounding toward -infinity; b != 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) {
  return -floor_div(-a, b);
}

// Representative of a modulo b in [0, |b|).
inline Integer mod_floor(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r < 0) r += abs_value(b);
  return r;
}

inline Integer floor_of(const Rational& q) {
  return floor_div(boost::multiprecision::numerator(q),
                   boost::multiprecision::denominator(q));
}

inline Integer ceil_of(const Rational& q) {
  return ceil_div(boost::multiprecision::numerator(q),
                  boost::multiprecision::denominator(q));
}

inline bool is_integral(const Rational& q) {
  return boost::multiprecision::denominator(q) == 1;
}

inline Integer vector_gcd(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, x);
  return g;
}

inline Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InvalidInput("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero_vector(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

// True iff the gcd of the entries is 1.
inline bool is_primitive(const IntVector& v) {
  if (v.empty() || is_zero_vector(v))
    throw InvalidInput("is_primitive: zero vector");
  return vector_gcd(v) == 1;
}

inline std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw InvalidInput("IntMatrix: ragged rows");
      for (long x : r) data_.emplace_back(x);
    }
  }

  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidInput("IntMatrix: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows) {
    return from_rows(cols, rows).transpose();
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  IntVector col(std::size_t j) const {
    IntVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw InvalidInput("IntMatrix: product shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Integer& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  IntVector operator*(const IntVector& v) const {
    if (cols_ != v.size()) throw InvalidInput("IntMatrix: vector length mismatch");
    IntVector out(rows_, Integer(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool operator==(const IntMatrix& o) const = default;

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    if (f == 0) return;
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? "," : "") << to_string(m.row(i));
  return os << ']';
}

// Fraction-free Gaussian elimination.
inline Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant: matrix not square");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

struct HermiteResult {
  IntMatrix H;  // row-style Hermite form
  IntMatrix U;  // unimodular, H = U * M
  std::size_t rank = 0;
};

// Row-style Hermite normal form: nonzero rows on top with strictly
// increasing pivot columns, pivots positive, entries above each pivot in
// [0, pivot).
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    while (true) {
      std::size_t best = h.rows();
      for (std::size_t i = r; i < h.rows(); ++i)
        if (h(i, c) != 0 && (best == h.rows() || abs_value(h(i, c)) < abs_value(h(best, c))))
          best = i;
      if (best == h.rows()) break;
      h.swap_rows(r, best);
      u.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < h.rows(); ++i) {
        if (h(i, c) == 0) continue;
        Integer q = floor_div(h(i, c), h(r, c));
        h.add_row(i, r, -q);
        u.add_row(i, r, -q);
        if (h(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row(i, r, -q);
      u.add_row(i, r, -q);
    }
    ++r;
  }
  return {std::move(h), std::move(u), r};
}

inline std::size_t rank(const IntMatrix& m) { return hermite_normal_form(m).rank; }

// Inverse of a unimodular matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
  auto hr = hermite_normal_form(m);
  if (hr.H != IntMatrix::identity(m.rows()))
    throw InvalidInput("unimodular_inverse: matrix is not unimodular");
  return hr.U;
}

struct SmithResult {
  IntMatrix S;  // diagonal, s_1 | s_2 | ..., s_i >= 0
  IntMatrix U;
  IntMatrix V;  // S = U * M * V
  std::size_t rank = 0;
};

inline SmithResult smith_normal_form(const IntMatrix& m) {
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(m.rows());
  IntMatrix v = IntMatrix::identity(m.cols());
  const std::size_t R = s.rows(), C = s.cols();
  std::size_t t = 0;
  for (; t < std::min(R, C); ++t) {
    // minimal nonzero entry of the trailing block goes to (t, t)
    auto place_min = [&]() {
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (s(i, j) != 0 && (bi == R || abs_value(s(i, j)) < abs_value(s(bi, bj)))) {
            bi = i;
            bj = j;
          }
      if (bi == R) return false;
      s.swap_rows(t, bi);
      u.swap_rows(t, bi);
      s.swap_cols(t, bj);
      v.swap_cols(t, bj);
      return true;
    };
    if (!place_min()) break;
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (s(i, t) == 0) continue;
        Integer q = floor_div(s(i, t), s(t, t));
        s.add_row(i, t, -q);
        u.add_row(i, t, -q);
        if (s(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (s(t, j) == 0) continue;
        Integer q = floor_div(s(t, j), s(t, t));
        s.add_col(j, t, -q);
        v.add_col(j, t, -q);
        if (s(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        // divisibility of the remaining block by the pivot
        std::size_t bad = R;
        for (std::size_t i = t + 1; i < R && bad == R; ++i)
          for (std::size_t j = t + 1; j < C; ++j)
            if (s(i, j) % s(t, t) != 0) {
              bad = i;
              break;
            }
        if (bad == R) break;
        s.add_row(t, bad, 1);
        u.add_row(t, bad, 1);
      }
      place_min();
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return {std::move(s), std::move(u), std::move(v), t};
}

// Z^N / (integer span of the columns of M), in canonical coordinates:
// free coordinates first, then torsion residues ordered by invariant factor.
class AbelianGroupStructure {
 public:
  AbelianGroupStructure() = default;

  explicit AbelianGroupStructure(const IntMatrix& presentation) {
    ambient_ = presentation.rows();
    auto snf = smith_normal_form(presentation);
    std::vector<IntVector> free_rows;
    for (std::size_t i = 0; i < ambient_; ++i) {
      Integer d = i < snf.rank ? snf.S(i, i) : Integer(0);
      if (d == 1) continue;
      if (d == 0)
        free_rows.push_back(snf.U.row(i));
      else {
        torsion_.push_back(d);
        torsion_rows_.push_back(snf.U.row(i));
      }
    }
    // Free coordinates in Hermite form: unique, and positive on the first
    // generator with nonzero free part.
    if (!free_rows.empty()) {
      auto h = hermite_normal_form(IntMatrix::from_rows(free_rows, ambient_));
      free_map_ = h.H;
      // lift: x = U^{-1} y, where y carries G^{-1} w_free in the free slots
      IntMatrix g_inv = unimodular_inverse(h.U);
      IntMatrix u_inv = unimodular_inverse(snf.U);
      lift_free_.assign(free_rows.size(), IntVector(ambient_, Integer(0)));
      for (std::size_t k = 0; k < free_rows.size(); ++k) {
        // column k of G^{-1} placed in the free slots of y
        IntVector y(ambient_, Integer(0));
        std::size_t slot = 0;
        for (std::size_t i = 0; i < ambient_; ++i) {
          Integer d = i < snf.rank ? snf.S(i, i) : Integer(0);
          if (d == 0) y[i] = g_inv(slot++, k);
        }
        lift_free_[k] = u_inv * y;
      }
      init_torsion_lifts(snf, u_inv);
    } else {
      free_map_ = IntMatrix(0, ambient_);
      init_torsion_lifts(snf, unimodular_inverse(snf.U));
    }
  }

  std::size_t ambient_dimension() const { return ambient_; }
  std::size_t free_rank() const { return free_map_.rows(); }
  const IntVector& torsion() const { return torsion_; }
  std::size_t coordinate_count() const { return free_rank() + torsion_.size(); }
  bool is_trivial() const { return coordinate_count() == 0; }

  IntVector zero() const { return IntVector(coordinate_count(), Integer(0)); }

  IntVector project(const IntVector& x) const {
    if (x.size() != ambient_) throw InvalidInput("project: ambient dimension mismatch");
    IntVector w = free_map_ * x;
    for (std::size_t t = 0; t < torsion_.size(); ++t)
      w.push_back(mod_floor(dot(torsion_rows_[t], x), torsion_[t]));
    return w;
  }

  IntVector project_basis(std::size_t i) const {
    IntVector e(ambient_, Integer(0));
    e.at(i) = 1;
    return project(e);
  }

  IntVector lift(const IntVector& w) const {
    check(w);
    IntVector x(ambient_, Integer(0));
    for (std::size_t k = 0; k < free_rank(); ++k)
      for (std::size_t i = 0; i < ambient_; ++i) x[i] += w[k] * lift_free_[k][i];
    for (std::size_t t = 0; t < torsion_.size(); ++t)
      for (std::size_t i = 0; i < ambient_; ++i)
        x[i] += w[free_rank() + t] * lift_torsion_[t][i];
    return x;
  }

  IntVector normalize(IntVector w) const {
    check(w);
    for (std::size_t t = 0; t < torsion_.size(); ++t)
      w[free_rank() + t] = mod_floor(w[free_rank() + t], torsion_[t]);
    return w;
  }

  IntVector add(const IntVector& a, const IntVector& b) const {
    check(a);
    check(b);
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return normalize(std::move(c));
  }

  IntVector subtract(const IntVector& a, const IntVector& b) const {
    return add(a, scale(b, -1));
  }

  IntVector scale(const IntVector& a, const Integer& f) const {
    check(a);
    IntVector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * f;
    return normalize(std::move(c));
  }

  bool equal(const IntVector& a, const IntVector& b) const {
    return normalize(a) == normalize(b);
  }

  bool is_zero(const IntVector& a) const { return equal(a, zero()); }

  IntVector free_part(const IntVector& a) const {
    check(a);
    return IntVector(a.begin(), a.begin() + free_rank());
  }
  IntVector torsion_part(const IntVector& a) const {
    check(a);
    return IntVector(a.begin() + free_rank(), a.end());
  }

  const IntMatrix& free_map() const { return free_map_; }
  const std::vector<IntVector>& torsion_maps() const { return torsion_rows_; }

  std::string describe() const {
    std::ostringstream os;
    os << "Z^" << free_rank();
    for (const auto& d : torsion_) os << " + Z/" << d;
    return os.str();
  }

 private:
  void check(const IntVector& w) const {
    if (w.size() != coordinate_count())
      throw InvalidInput("group element has wrong number of coordinates");
  }

  void init_torsion_lifts(const SmithResult& snf, const IntMatrix& u_inv) {
    lift_torsion_.clear();
    for (std::size_t i = 0; i < ambient_ && i < snf.rank; ++i) {
      if (snf.S(i, i) == 1) continue;
      IntVector y(ambient_, Integer(0));
      y[i] = 1;
      lift_torsion_.push_back(u_inv * y);
    }
  }

  std::size_t ambient_ = 0;
  IntMatrix free_map_;
  IntVector torsion_;
  std::vector<IntVector> torsion_rows_;
  std::vector<IntVector> lift_free_;
  std::vector<IntVector> lift_torsion_;
};

inline AbelianGroupStructure cokernel(const IntMatrix& m) { return AbelianGroupStructure(m); }

struct IntegerSolution {
  IntVector particular;
  std::vector<IntVector> kernel;  // basis of {x : M x = 0}
};

inline std::optional<IntegerSolution> solve_integer_linear(const IntMatrix& m,
                                                           const IntVector& b) {
  if (b.size() != m.rows()) throw InvalidInput("solve_integer_linear: length mismatch");
  auto snf = smith_normal_form(m);
  IntVector c = snf.U * b;
  IntVector y(m.cols(), Integer(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < snf.rank) {
      if (c[i] % snf.S(i, i) != 0) return std::nullopt;
      y[i] = c[i] / snf.S(i, i);
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  IntegerSolution sol;
  sol.particular = snf.V * y;
  for (std::size_t j = snf.rank; j < m.cols(); ++j) sol.kernel.push_back(snf.V.col(j));
  return sol;
}

// Rational vectors, used for A and beta.
using RatVector = std::vector<Rational>;

inline Rational det2(const Rational& a, const Rational& b, const Rational& c,
                     const Rational& d) {
  return a * d - b * c;
}

}  // namespace torusone
