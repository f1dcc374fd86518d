#pragma once

/**
 * @file poly.hpp
 * @brief Sparse multivariate polynomials over F_p.
 *
 * Terms are kept sorted strictly decreasing in graded reverse-lexicographic
 * order (x_1 > x_2 > ... > x_n) with no zero coefficients. Frobenius powers
 * make polynomials very sparse and of high degree, so nothing here is dense.
 */

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/exact_arith.hpp"

namespace frobmult {

inline constexpr std::size_t kMaxVars = 8;

class Monomial {
public:
  using Exponent = std::uint16_t;

  Monomial() = default;

  static Monomial variable(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }

  template <class Range>
  static Monomial from_exponents(const Range& exps) {
    Monomial m;
    std::size_t i = 0;
    for (auto e : exps) {
      if (i >= kMaxVars)
        throw AlgebraError("too many variables for a monomial");
      m.set(i++, static_cast<unsigned>(e));
    }
    return m;
  }

  unsigned exponent(std::size_t i) const { return e_[i]; }
  unsigned degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] > other.e_[i])
        return false;
    return true;
  }

  /// Quotient other / *this; caller guarantees divisibility.
  Monomial quotient_of(const Monomial& other) const {
    Monomial q;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      q.e_[i] = Exponent(other.e_[i] - e_[i]);
    q.deg_ = other.deg_ - deg_;
    return q;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      m.set(i, unsigned(a.e_[i]) + b.e_[i]);
    return m;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      m.set(i, std::max(a.e_[i], b.e_[i]));
    return m;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.e_[i] && b.e_[i])
        return false;
    return true;
  }

  /// Every exponent multiplied by q (the monomial raised to the q-th power).
  Monomial scaled(std::uint64_t q) const {
    Monomial m;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      m.set(i, static_cast<unsigned>(std::uint64_t(e_[i]) * q));
    return m;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

  /// Graded reverse lexicographic comparison: >0 when a > b.
  friend int compare(const Monomial& a, const Monomial& b) {
    if (a.deg_ != b.deg_)
      return a.deg_ > b.deg_ ? 1 : -1;
    for (std::size_t i = kMaxVars; i-- > 0;)
      if (a.e_[i] != b.e_[i])
        return a.e_[i] < b.e_[i] ? 1 : -1;
    return 0;
  }

  /// Strict weak ordering usable in std containers (descending degrevlex).
  struct Greater {
    bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  };

private:
  void set(std::size_t i, unsigned v) {
    if (i >= kMaxVars)
      throw AlgebraError("variable index out of range");
    if (v > 0xFFFFu)
      throw AlgebraError("monomial exponent overflow");
    deg_ = deg_ - e_[i] + v;
    e_[i] = Exponent(v);
  }

  std::array<Exponent, kMaxVars> e_{};
  unsigned deg_ = 0;
};

/// Coefficient field and variable names shared by every polynomial of a ring.
class PolyRing {
public:
  PolyRing(std::uint32_t p, std::vector<std::string> names) : p_(p), names_(std::move(names)) {
    if (!is_prime(p))
      throw AlgebraError("characteristic " + std::to_string(p) + " is not prime");
    if (names_.empty() || names_.size() > kMaxVars)
      throw AlgebraError("between 1 and " + std::to_string(kMaxVars) + " variables are supported");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
      throw AlgebraError("duplicate variable names");
  }

  std::uint32_t characteristic() const { return p_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const PolyRing&, const PolyRing&) = default;

private:
  std::uint32_t p_;
  std::vector<std::string> names_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

inline PolyRingPtr make_poly_ring(std::uint32_t p, std::vector<std::string> names) {
  return std::make_shared<const PolyRing>(p, std::move(names));
}

struct Term {
  Monomial mono;
  std::uint32_t coef;
  friend bool operator==(const Term&, const Term&) = default;
};

/**
 * A polynomial over F_p. A default-constructed Poly is the zero polynomial of
 * no particular ring and combines with polynomials of any ring.
 */
class Poly {
public:
  Poly() = default;
  explicit Poly(const PolyRing* ring) : ring_(ring) {}

  static Poly constant(const PolyRing* ring, long long c) {
    Poly f(ring);
    std::uint32_t v = fp::from_signed(c, ring->characteristic());
    if (v)
      f.terms_.push_back({Monomial{}, v});
    return f;
  }
  static Poly variable(const PolyRing* ring, std::size_t i) {
    if (i >= ring->nvars())
      throw AlgebraError("variable index out of range");
    return monomial(ring, Monomial::variable(i), 1);
  }
  static Poly monomial(const PolyRing* ring, const Monomial& m, std::uint32_t c) {
    Poly f(ring);
    c %= ring->characteristic();
    if (c)
      f.terms_.push_back({m, c});
    return f;
  }
  /// Any order, duplicates combined, zeros dropped.
  static Poly from_terms(const PolyRing* ring, std::vector<Term> terms) {
    Poly f(ring);
    const std::uint32_t p = ring->characteristic();
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return compare(a.mono, b.mono) > 0; });
    for (auto& t : terms) {
      t.coef %= p;
      if (!f.terms_.empty() && f.terms_.back().mono == t.mono)
        f.terms_.back().coef = fp::add(f.terms_.back().coef, t.coef, p);
      else
        f.terms_.push_back(t);
      if (f.terms_.back().coef == 0)
        f.terms_.pop_back();
    }
    return f;
  }

  const PolyRing* ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Term& leading_term() const { return terms_.front(); }

  /// Total degree of the leading term (all terms for homogeneous f); -1 for zero.
  int degree() const { return terms_.empty() ? -1 : int(terms_.front().mono.degree()); }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree())
        return false;
    return true;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.front().mono.is_one()); }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_)
      t.coef = fp::neg(t.coef, r.ring_->characteristic());
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return combine(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return combine(a, b, true); }
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    const PolyRing* r = common_ring(a, b);
    if (a.is_zero() || b.is_zero())
      return Poly(r);
    const std::uint32_t p = r->characteristic();
    std::vector<Term> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_)
        acc.push_back({s.mono * t.mono, fp::mul(s.coef, t.coef, p)});
    return from_terms(r, std::move(acc));
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly scaled(std::uint32_t c) const {
    if (!ring_)
      return *this;
    const std::uint32_t p = ring_->characteristic();
    c %= p;
    if (c == 0)
      return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_)
      t.coef = fp::mul(t.coef, c, p);
    return r;
  }

  /// c * m * f. Degrevlex is multiplicative, so the term order survives.
  Poly times_term(const Monomial& m, std::uint32_t c) const {
    Poly r = scaled(c);
    for (auto& t : r.terms_)
      t.mono = t.mono * m;
    return r;
  }

  Poly pow(unsigned k) const {
    if (!ring_)
      throw AlgebraError("power of a ring-less zero polynomial");
    Poly result = constant(ring_, 1), base = *this;
    while (k) {
      if (k & 1)
        result *= base;
      k >>= 1;
      if (k)
        base *= base;
    }
    return result;
  }

  std::string to_string() const;

  friend const PolyRing* common_ring(const Poly& a, const Poly& b) {
    if (!a.ring_)
      return b.ring_;
    if (!b.ring_ || a.ring_ == b.ring_ || *a.ring_ == *b.ring_)
      return a.ring_;
    throw AlgebraError("polynomials from different rings");
  }

private:
  static Poly combine(const Poly& a, const Poly& b, bool subtract) {
    const PolyRing* r = common_ring(a, b);
    if (!r)
      return Poly();
    const std::uint32_t p = r->characteristic();
    Poly out(r);
    out.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : compare(a.terms_[i].mono, b.terms_[j].mono);
      if (c > 0) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        Term t = b.terms_[j++];
        if (subtract)
          t.coef = fp::neg(t.coef, p);
        out.terms_.push_back(t);
      } else {
        std::uint32_t v = subtract ? fp::sub(a.terms_[i].coef, b.terms_[j].coef, p)
                                   : fp::add(a.terms_[i].coef, b.terms_[j].coef, p);
        if (v)
          out.terms_.push_back({a.terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  const PolyRing* ring_ = nullptr;
  std::vector<Term> terms_;
};

/**
 * f^(p^e), computed termwise: over F_p the p-th power map is additive and
 * fixes scalars, so each monomial's exponents are scaled by p^e.
 */
inline Poly frobenius_power(const Poly& f, unsigned e) {
  if (e == 0 || f.is_zero())
    return f;
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i)
    q *= f.ring()->characteristic();
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms())
    terms.push_back({t.mono.scaled(q), t.coef});
  return Poly::from_terms(f.ring(), std::move(terms));
}

inline std::string monomial_to_string(const Monomial& m, const PolyRing& ring) {
  std::string s;
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    unsigned e = m.exponent(i);
    if (!e)
      continue;
    if (!s.empty())
      s += '*';
    s += ring.names()[i];
    if (e > 1)
      s += '^' + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

/// Coefficients are printed as their symmetric representative, so the output
/// re-parses to the same polynomial.
inline std::string Poly::to_string() const {
  if (terms_.empty())
    return "0";
  const std::uint32_t p = ring_->characteristic();
  std::string s;
  for (const auto& t : terms_) {
    bool negative = p > 2 && t.coef > p / 2;
    std::uint32_t mag = negative ? p - t.coef : t.coef;
    if (s.empty())
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    if (t.mono.is_one())
      s += std::to_string(mag);
    else if (mag == 1)
      s += monomial_to_string(t.mono, *ring_);
    else
      s += std::to_string(mag) + "*" + monomial_to_string(t.mono, *ring_);
  }
  return s;
}

} // namespace frobmult
