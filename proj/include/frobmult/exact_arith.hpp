#pragma once

/**
 * @file exact_arith.hpp
 * @brief Prime-field scalars, arbitrary-precision rationals and the small
 * dense linear algebra the rest of the library is built on.
 *
 * Everything here is exact. F_p matrices are dense and reduced by plain
 * Gaussian elimination with first-nonzero pivoting; rational systems are
 * solved the same way over cpp_rational.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "frobmult/errors.hpp"

namespace frobmult {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

/// "num/den", always with an explicit denominator ("3/1", "0/1", "-1/2").
inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << boost::multiprecision::numerator(q) << '/' << boost::multiprecision::denominator(q);
  return os.str();
}

/// Parses "a", "a/b" (b ≠ 0). Throws ParseError.
inline Rational rational_from_string(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos)
      return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0)
      throw ParseError("zero denominator in rational '" + s + "'");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed rational '" + s + "'");
  }
}

/// Exact p^k for integer k of either sign.
inline Rational rational_power(std::uint64_t p, long k) {
  Integer base = 1;
  for (long i = 0; i < (k < 0 ? -k : k); ++i)
    base *= p;
  return k < 0 ? Rational(Integer(1), base) : Rational(base);
}

// ---------------------------------------------------------------------------
// Prime field

namespace fp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  std::uint64_t s = std::uint64_t(a) + b;
  return std::uint32_t(s >= p ? s - p : s);
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return a >= b ? a - b : std::uint32_t(std::uint64_t(a) + p - b);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return std::uint32_t((std::uint64_t(a) * b) % p);
}
inline std::uint32_t pow(std::uint32_t a, std::uint64_t k, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (k) {
    if (k & 1)
      r = r * b % p;
    b = b * b % p;
    k >>= 1;
  }
  return std::uint32_t(r);
}
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0)
    throw AlgebraError("inverse of zero in F_p");
  return pow(a, p - 2, p);
}
/// Reduces an arbitrary signed integer into [0, p).
inline std::uint32_t from_signed(long long v, std::uint32_t p) {
  long long r = v % static_cast<long long>(p);
  return std::uint32_t(r < 0 ? r + p : r);
}

} // namespace fp

/// An element of F_p carrying its modulus.
class FpScalar {
public:
  FpScalar(long long v, std::uint32_t p) : value_(fp::from_signed(v, p)), p_(p) {
    if (p < 2)
      throw AlgebraError("modulus must be at least 2");
  }

  std::uint32_t value() const { return value_; }
  std::uint32_t modulus() const { return p_; }

  friend FpScalar operator+(FpScalar a, FpScalar b) { return {fp::add(a.value_, b.value_, same(a, b)), a.p_}; }
  friend FpScalar operator-(FpScalar a, FpScalar b) { return {fp::sub(a.value_, b.value_, same(a, b)), a.p_}; }
  friend FpScalar operator*(FpScalar a, FpScalar b) { return {fp::mul(a.value_, b.value_, same(a, b)), a.p_}; }
  friend FpScalar operator/(FpScalar a, FpScalar b) {
    return {fp::mul(a.value_, fp::inv(b.value_, same(a, b)), a.p_), a.p_};
  }
  FpScalar operator-() const { return {fp::neg(value_, p_), p_}; }
  FpScalar inverse() const { return {fp::inv(value_, p_), p_}; }
  friend bool operator==(const FpScalar&, const FpScalar&) = default;

private:
  static std::uint32_t same(const FpScalar& a, const FpScalar& b) {
    if (a.p_ != b.p_)
      throw AlgebraError("F_p scalars with different moduli");
    return a.p_;
  }
  std::uint32_t value_;
  std::uint32_t p_;
};

/// Dense matrix over F_p, row-major.
class FpMatrix {
public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
      : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void set(std::size_t r, std::size_t c, long long v) { (*this)(r, c) = fp::from_signed(v, p_); }
  void set(std::size_t r, std::size_t c, FpScalar v) {
    if (v.modulus() != p_)
      throw AlgebraError("scalar modulus does not match matrix");
    (*this)(r, c) = v.value();
  }

  /// Rank by in-place row echelon reduction of a copy.
  std::size_t rank() const {
    std::vector<std::uint32_t> a = data_;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t piv = rank;
      while (piv < rows_ && a[piv * cols_ + c] == 0)
        ++piv;
      if (piv == rows_)
        continue;
      if (piv != rank)
        for (std::size_t k = c; k < cols_; ++k)
          std::swap(a[piv * cols_ + k], a[rank * cols_ + k]);
      std::uint32_t pinv = fp::inv(a[rank * cols_ + c], p_);
      for (std::size_t k = c; k < cols_; ++k)
        a[rank * cols_ + k] = fp::mul(a[rank * cols_ + k], pinv, p_);
      for (std::size_t r = rank + 1; r < rows_; ++r) {
        std::uint32_t f = a[r * cols_ + c];
        if (f == 0)
          continue;
        for (std::size_t k = c; k < cols_; ++k)
          a[r * cols_ + k] = fp::sub(a[r * cols_ + k], fp::mul(f, a[rank * cols_ + k], p_), p_);
      }
      ++rank;
    }
    return rank;
  }

  /// A basis of {v : M v = 0}, read off the reduced row echelon form.
  std::vector<std::vector<std::uint32_t>> kernel_basis() const {
    std::vector<std::uint32_t> a = data_;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
      std::size_t piv = rank;
      while (piv < rows_ && a[piv * cols_ + c] == 0)
        ++piv;
      if (piv == rows_)
        continue;
      for (std::size_t k = 0; k < cols_; ++k)
        std::swap(a[piv * cols_ + k], a[rank * cols_ + k]);
      std::uint32_t pinv = fp::inv(a[rank * cols_ + c], p_);
      for (std::size_t k = 0; k < cols_; ++k)
        a[rank * cols_ + k] = fp::mul(a[rank * cols_ + k], pinv, p_);
      for (std::size_t r = 0; r < rows_; ++r) {
        std::uint32_t f = a[r * cols_ + c];
        if (r == rank || f == 0)
          continue;
        for (std::size_t k = 0; k < cols_; ++k)
          a[r * cols_ + k] = fp::sub(a[r * cols_ + k], fp::mul(f, a[rank * cols_ + k], p_), p_);
      }
      pivot_cols.push_back(c);
      ++rank;
    }
    std::vector<std::vector<std::uint32_t>> basis;
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivot_cols)
      is_pivot[c] = true;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free])
        continue;
      std::vector<std::uint32_t> v(cols_, 0);
      v[free] = 1;
      for (std::size_t r = 0; r < pivot_cols.size(); ++r)
        v[pivot_cols[r]] = fp::neg(a[r * cols_ + free], p_);
      basis.push_back(std::move(v));
    }
    return basis;
  }

private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> data_;
};

inline std::size_t matrix_rank_fp(const FpMatrix& m) { return m.rank(); }

// ---------------------------------------------------------------------------
// Rational linear algebra

class RationalMatrix {
public:
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> operator*(std::span<const Rational> v) const {
    if (v.size() != cols_)
      throw AlgebraError("matrix/vector size mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        out[r] += (*this)(r, c) * v[c];
    return out;
  }

  /// Solves A x = b for square nonsingular A.
  std::vector<Rational> solve(std::span<const Rational> b) const {
    if (rows_ != cols_ || b.size() != rows_)
      throw AlgebraError("solve needs a square system");
    const std::size_t n = rows_;
    std::vector<Rational> a = data_;
    std::vector<Rational> x(b.begin(), b.end());
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      while (piv < n && a[piv * n + c] == 0)
        ++piv;
      if (piv == n)
        throw SingularSystemError("singular rational system");
      if (piv != c) {
        for (std::size_t k = 0; k < n; ++k)
          std::swap(a[piv * n + k], a[c * n + k]);
        std::swap(x[piv], x[c]);
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a[r * n + c] == 0)
          continue;
        Rational f = a[r * n + c] / a[c * n + c];
        for (std::size_t k = c; k < n; ++k)
          a[r * n + k] -= f * a[c * n + k];
        x[r] -= f * x[c];
      }
    }
    for (std::size_t r = 0; r < n; ++r)
      x[r] /= a[r * n + r];
    return x;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rational> data_;
};

namespace detail {
inline void check_vandermonde_input(std::span<const Rational> nodes, std::span<const Rational> rhs) {
  if (nodes.size() != rhs.size())
    throw AlgebraError("Vandermonde system: node and right-hand side counts differ");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j])
        throw SingularSystemError("Vandermonde system with repeated node " + to_string(nodes[i]));
}
} // namespace detail

/**
 * Solves the power-sum Vandermonde system
 *
 *     sum_j c_j * nodes[j]^i = rhs[i],   i = 0..n-1,
 *
 * i.e. row i of the matrix is (nodes[0]^i, ..., nodes[n-1]^i). With nodes
 * 1, p^-1, ..., p^-u and rhs the Frobenius-normalized pairings this yields the
 * eigencomponents of the decomposition.
 */
inline std::vector<Rational> solve_vandermonde(std::span<const Rational> nodes, std::span<const Rational> rhs) {
  detail::check_vandermonde_input(nodes, rhs);
  const std::size_t n = nodes.size();
  RationalMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Rational pw = 1;
    for (std::size_t i = 0; i < n; ++i) {
      m(i, j) = pw;
      pw *= nodes[j];
    }
  }
  return m.solve(rhs);
}

/// The transposed reading: polynomial coefficients c with sum_j c_j * nodes[i]^j = rhs[i].
inline std::vector<Rational> interpolate_coefficients(std::span<const Rational> nodes,
                                                      std::span<const Rational> rhs) {
  detail::check_vandermonde_input(nodes, rhs);
  const std::size_t n = nodes.size();
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Rational pw = 1;
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = pw;
      pw *= nodes[i];
    }
  }
  return m.solve(rhs);
}

} // namespace frobmult
