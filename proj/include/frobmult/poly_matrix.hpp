#pragma once

// Dense matrices of polynomials, the differentials of every complex.

#include <functional>
#include <span>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/groebner.hpp"
#include "frobmult/poly.hpp"

namespace frobmult {

class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(const PolyRing* ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Poly(ring)) {}

  static PolyMatrix from_columns(const PolyRing* ring, std::size_t rows, std::span<const ModuleElement> cols) {
    PolyMatrix m(ring, rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      auto polys = cols[c].to_polys(rows);
      for (std::size_t r = 0; r < rows; ++r)
        m(r, c) = std::move(polys[r]);
    }
    return m;
  }

  static PolyMatrix identity(const PolyRing* ring, std::size_t n) {
    PolyMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = Poly::constant(ring, 1);
    return m;
  }

  const PolyRing* ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Poly& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Poly& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  ModuleElement column(std::size_t c) const {
    std::vector<Poly> comps;
    comps.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      comps.push_back((*this)(r, c));
    return ModuleElement::from_polys(ring_, comps);
  }

  std::vector<ModuleElement> columns() const {
    std::vector<ModuleElement> out;
    out.reserve(cols_);
    for (std::size_t c = 0; c < cols_; ++c)
      out.push_back(column(c));
    return out;
  }

  PolyMatrix transpose() const {
    PolyMatrix t(ring_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        t(c, r) = (*this)(r, c);
    return t;
  }

  PolyMatrix map_entries(const std::function<Poly(const Poly&)>& f) const {
    PolyMatrix m = *this;
    for (auto& e : m.entries_)
      e = f(e);
    return m;
  }

  PolyMatrix scaled(long long c) const {
    if (!ring_)
      return *this;
    std::uint32_t v = fp::from_signed(c, ring_->characteristic());
    return map_entries([v](const Poly& f) { return f.scaled(v); });
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero())
        return false;
    return true;
  }

  /// Largest entry degree; -1 for the zero matrix.
  int max_entry_degree() const {
    int d = -1;
    for (const auto& e : entries_)
      d = std::max(d, e.degree());
    return d;
  }

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_)
      throw AlgebraError("matrix product: inner dimensions differ");
    const PolyRing* r = a.ring_ ? a.ring_ : b.ring_;
    PolyMatrix out(r, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Poly& aik = a(i, k);
        if (aik.is_zero())
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!b(k, j).is_zero())
            out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

private:
  const PolyRing* ring_ = nullptr;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> entries_;
};

/// The Kronecker product A ⊗ Id_n: entry ((k,y),(l,y)) = A(k,l), index (k,y) = k*n + y.
inline PolyMatrix kron_identity(const PolyMatrix& a, std::size_t n) {
  PolyMatrix m(a.ring(), a.rows() * n, a.cols() * n);
  for (std::size_t k = 0; k < a.rows(); ++k)
    for (std::size_t l = 0; l < a.cols(); ++l)
      if (!a(k, l).is_zero())
        for (std::size_t y = 0; y < n; ++y)
          m(k * n + y, l * n + y) = a(k, l);
  return m;
}

} // namespace frobmult
