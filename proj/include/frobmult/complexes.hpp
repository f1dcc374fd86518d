#pragma once

/**
 * @file complexes.hpp
 * @brief Bounded graded complexes over R = S/I: free complexes, complexes of
 * presented modules, the usual calculus on them, resolutions, and homology.
 *
 * Conventions:
 *  - homological indexing, d_i : X_i -> X_{i-1};
 *  - a generator with twist t spans R(t) and sits in degree -t;
 *  - d_i is stored as a rank(X_{i-1}) x rank(X_i) matrix (columns are images
 *    of generators), entries in normal form modulo I;
 *  - shift: (Σ^n X)_i = X_{i-n} with d scaled by (-1)^n;
 *  - tensor: d(x⊗y) = dx⊗y + (-1)^i x⊗dy;
 *  - Hom: Hom(X,Y)_n = ∏_i Hom(X_i, Y_{i+n}), d(f) = d^Y∘f - (-1)^n f∘d^X.
 *
 * Homology lengths are computed twice, independently: as a presented
 * subquotient through Gröbner bases, and degree by degree through F_p linear
 * algebra on strands (the oracle used by tests).
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/exact_arith.hpp"
#include "frobmult/graded_ring.hpp"
#include "frobmult/poly_matrix.hpp"
#include "frobmult/presented_module.hpp"

namespace frobmult {

namespace detail {

struct ComplexData {
  explicit ComplexData(GradedRing r) : ring(std::move(r)) {}
  GradedRing ring;
  int lo = 0;
  std::vector<std::vector<int>> twists;               // twists[i - lo]
  std::vector<std::vector<ModuleElement>> relations;  // relations[i - lo]
  std::vector<PolyMatrix> maps;                       // maps[i - lo] = d_i; maps[0] has no rows
};

inline bool in_range(const ComplexData& c, int i) { return i >= c.lo && i < c.lo + int(c.twists.size()); }

inline std::size_t rank_at(const ComplexData& c, int i) { return in_range(c, i) ? c.twists[i - c.lo].size() : 0; }

/// Drops zero terms at both ends, puts entries in normal form, checks shapes and homogeneity.
inline void normalize(ComplexData& c) {
  const PolyRing* S = c.ring.poly_ring();
  if (c.relations.size() < c.twists.size())
    c.relations.resize(c.twists.size());
  while (!c.twists.empty() && c.twists.back().empty()) {
    c.twists.pop_back();
    c.relations.pop_back();
    c.maps.pop_back();
  }
  std::size_t skip = 0;
  while (skip < c.twists.size() && c.twists[skip].empty())
    ++skip;
  if (skip) {
    c.twists.erase(c.twists.begin(), c.twists.begin() + long(skip));
    c.relations.erase(c.relations.begin(), c.relations.begin() + long(skip));
    c.maps.erase(c.maps.begin(), c.maps.begin() + long(skip));
    c.lo += int(skip);
  }
  if (c.twists.empty()) {
    c.lo = 0;
    c.maps.clear();
    c.relations.clear();
    return;
  }
  c.maps[0] = PolyMatrix(S, 0, c.twists[0].size());
  for (std::size_t k = 0; k < c.twists.size(); ++k) {
    const int i = c.lo + int(k);
    const auto src = degrees_from_twists(c.twists[k]);
    const std::vector<int> tgt = k ? degrees_from_twists(c.twists[k - 1]) : std::vector<int>{};
    PolyMatrix& d = c.maps[k];
    if (d.rows() != tgt.size() || d.cols() != src.size())
      throw AlgebraError("differential d_" + std::to_string(i) + " has shape " + std::to_string(d.rows()) + "x" +
                         std::to_string(d.cols()) + ", expected " + std::to_string(tgt.size()) + "x" +
                         std::to_string(src.size()));
    for (std::size_t r = 0; r < d.rows(); ++r)
      for (std::size_t col = 0; col < d.cols(); ++col) {
        Poly& e = d(r, col);
        common_ring(Poly(S), e);
        e = c.ring.normal_form(e);
        if (e.is_zero()) {
          e = Poly(S);
          continue;
        }
        if (!e.is_homogeneous() || e.degree() != src[col] - tgt[r])
          throw AlgebraError("entry (" + std::to_string(r) + "," + std::to_string(col) + ") of d_" +
                             std::to_string(i) + " is not homogeneous of degree " +
                             std::to_string(src[col] - tgt[r]));
      }
    std::vector<ModuleElement> rels;
    for (const auto& rel : c.relations[k]) {
      for (const auto& t : rel.terms())
        if (t.comp >= src.size())
          throw AlgebraError("relation beyond the rank of term " + std::to_string(i));
      if (!rel.is_homogeneous(src))
        throw AlgebraError("relation of term " + std::to_string(i) + " is not homogeneous");
      ModuleElement v = reduce_mod_ideal(c.ring, rel);
      if (!v.is_zero())
        rels.push_back(std::move(v));
    }
    c.relations[k] = std::move(rels);
  }
}

/// Image of a module element (in term i) under d_i, as an element of term i-1.
inline ModuleElement apply(const ComplexData& c, const PolyMatrix& d, const ModuleElement& v) {
  auto comps = v.to_polys(d.cols());
  std::vector<Poly> out(d.rows(), Poly(c.ring.poly_ring()));
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (!comps[j].is_zero() && !d(r, j).is_zero())
        out[r] += d(r, j) * comps[j];
    out[r] = c.ring.normal_form(out[r]);
  }
  return ModuleElement::from_polys(c.ring.poly_ring(), out);
}

inline bool has_relations(const ComplexData& c) {
  return std::any_of(c.relations.begin(), c.relations.end(), [](const auto& r) { return !r.empty(); });
}

} // namespace detail

/// Common read-only interface of FreeComplex and PresentedComplex.
class ComplexBase {
public:
  const GradedRing& ring() const { return d_->ring; }
  /// Lowest and highest homological degree with a nonzero term; hi < lo for the zero complex.
  int lo() const { return d_->lo; }
  int hi() const { return d_->lo + int(d_->twists.size()) - 1; }
  bool is_zero() const { return d_->twists.empty(); }

  std::size_t rank(int i) const { return detail::rank_at(*d_, i); }
  std::vector<int> twists(int i) const { return detail::in_range(*d_, i) ? d_->twists[i - d_->lo] : std::vector<int>{}; }
  std::vector<int> degrees(int i) const { return degrees_from_twists(twists(i)); }

  /// d_i : X_i -> X_{i-1}; the zero matrix of the right shape outside the stored range.
  PolyMatrix d(int i) const {
    if (detail::in_range(*d_, i) && detail::in_range(*d_, i - 1))
      return d_->maps[i - d_->lo];
    return PolyMatrix(ring().poly_ring(), rank(i - 1), rank(i));
  }

  const detail::ComplexData& data() const { return *d_; }

protected:
  explicit ComplexBase(std::shared_ptr<const detail::ComplexData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::ComplexData> d_;
};

/// A bounded complex of finitely generated graded free R-modules.
class FreeComplex : public ComplexBase {
public:
  /**
   * twists[k] are the generator twists of X_{lo+k}; maps[k] is d_{lo+k+1}
   * (so maps.size() == twists.size() - 1). Throws unless d∘d = 0 mod I.
   */
  FreeComplex(GradedRing ring, int lo, std::vector<std::vector<int>> twists, std::vector<PolyMatrix> maps)
      : ComplexBase(build(std::move(ring), lo, std::move(twists), std::move(maps))) {}

  /// R^r(twists) concentrated in homological degree `at`.
  static FreeComplex free_module(GradedRing ring, std::vector<int> twists, int at = 0) {
    return FreeComplex(std::move(ring), at, {std::move(twists)}, {});
  }
  static FreeComplex ring_complex(GradedRing ring) { return free_module(std::move(ring), {0}); }
  static FreeComplex zero(GradedRing ring) { return FreeComplex(std::move(ring), 0, {}, {}); }

  static FreeComplex from_data(detail::ComplexData data) {
    if (detail::has_relations(data))
      throw AlgebraError("a free complex cannot carry relations");
    detail::normalize(data);
    return FreeComplex(std::make_shared<const detail::ComplexData>(std::move(data)));
  }

private:
  explicit FreeComplex(std::shared_ptr<const detail::ComplexData> d) : ComplexBase(std::move(d)) {}
  static std::shared_ptr<const detail::ComplexData> build(GradedRing ring, int lo,
                                                          std::vector<std::vector<int>> twists,
                                                          std::vector<PolyMatrix> maps);
};

/// A bounded complex whose terms are presented modules R^{r_i}(twists)/Rel_i.
class PresentedComplex : public ComplexBase {
public:
  /**
   * As FreeComplex, plus relations[k] for the term X_{lo+k}. Validated
   * eagerly: every map must send relations into relations, and consecutive
   * maps must compose to zero modulo the relations.
   */
  PresentedComplex(GradedRing ring, int lo, std::vector<std::vector<int>> twists,
                   std::vector<std::vector<ModuleElement>> relations, std::vector<PolyMatrix> maps);

  explicit PresentedComplex(const FreeComplex& x) : ComplexBase(share(x)) {}

  /// A module placed in homological degree `at`.
  static PresentedComplex module(const PresentedModule& m, int at = 0) {
    return PresentedComplex(m.ring(), at, {m.twists()}, {m.relations()}, {});
  }

  const std::vector<ModuleElement>& relations(int i) const {
    static const std::vector<ModuleElement> none;
    return detail::in_range(*d_, i) ? d_->relations[i - d_->lo] : none;
  }

  PresentedModule term(int i) const { return PresentedModule(ring(), twists(i), relations(i)); }

  bool is_free() const { return !detail::has_relations(*d_); }

  /// Trusted construction for outputs of the complex calculus (valid by construction).
  static PresentedComplex from_data(detail::ComplexData data) {
    detail::normalize(data);
    return PresentedComplex(std::make_shared<const detail::ComplexData>(std::move(data)));
  }

  /// Well-definedness certificate: maps preserve relations and d∘d = 0 on generators modulo relations.
  bool validate() const;

private:
  explicit PresentedComplex(std::shared_ptr<const detail::ComplexData> d) : ComplexBase(std::move(d)) {}
  static std::shared_ptr<const detail::ComplexData> share(const ComplexBase& x) {
    return std::make_shared<const detail::ComplexData>(x.data());
  }
};

/// d_{i-1} ∘ d_i = 0 modulo I for every i (relations ignored).
inline bool dd_is_zero(const ComplexBase& x) {
  for (int i = x.lo() + 2; i <= x.hi(); ++i) {
    PolyMatrix prod = x.d(i - 1) * x.d(i);
    for (std::size_t r = 0; r < prod.rows(); ++r)
      for (std::size_t c = 0; c < prod.cols(); ++c)
        if (!x.ring().normal_form(prod(r, c)).is_zero())
          return false;
  }
  return true;
}

inline std::shared_ptr<const detail::ComplexData> FreeComplex::build(GradedRing ring, int lo,
                                                                     std::vector<std::vector<int>> twists,
                                                                     std::vector<PolyMatrix> maps) {
  if (!twists.empty() && maps.size() + 1 != twists.size())
    throw AlgebraError("a complex with " + std::to_string(twists.size()) + " terms needs " +
                       std::to_string(twists.size() - 1) + " differentials");
  detail::ComplexData data(ring);
  data.lo = lo;
  data.twists = std::move(twists);
  data.relations.assign(data.twists.size(), {});
  if (!data.twists.empty()) {
    data.maps.push_back(PolyMatrix(ring.poly_ring(), 0, data.twists[0].size()));
    for (auto& m : maps)
      data.maps.push_back(std::move(m));
  }
  detail::normalize(data);
  auto ptr = std::make_shared<const detail::ComplexData>(std::move(data));
  FreeComplex probe(ptr);
  if (!dd_is_zero(probe))
    throw AlgebraError("d∘d is not zero modulo the ring ideal");
  return ptr;
}

inline PresentedComplex::PresentedComplex(GradedRing ring, int lo, std::vector<std::vector<int>> twists,
                                          std::vector<std::vector<ModuleElement>> relations,
                                          std::vector<PolyMatrix> maps)
    : ComplexBase(nullptr) {
  if (!twists.empty() && maps.size() + 1 != twists.size())
    throw AlgebraError("a complex with " + std::to_string(twists.size()) + " terms needs " +
                       std::to_string(twists.size() - 1) + " differentials");
  if (relations.size() > twists.size())
    throw AlgebraError("more relation lists than terms");
  detail::ComplexData data(ring);
  data.lo = lo;
  data.twists = std::move(twists);
  data.relations = std::move(relations);
  data.relations.resize(data.twists.size());
  if (!data.twists.empty()) {
    data.maps.push_back(PolyMatrix(ring.poly_ring(), 0, data.twists[0].size()));
    for (auto& m : maps)
      data.maps.push_back(std::move(m));
  }
  detail::normalize(data);
  d_ = std::make_shared<const detail::ComplexData>(std::move(data));
  if (!validate())
    throw AlgebraError("presented complex is not well defined: a map does not preserve relations or d∘d ≠ 0");
}

inline bool PresentedComplex::validate() const {
  for (int i = lo() + 1; i <= hi(); ++i) {
    const auto tgt_degs = degrees(i - 1);
    GroebnerBasis target = submodule_basis(ring(), tgt_degs, relations(i - 1));
    const PolyMatrix di = d(i);
    for (const auto& rel : relations(i))
      if (!target.reduce(detail::apply(*d_, di, rel)).is_zero())
        return false;
    if (i - 1 > lo()) {
      const PolyMatrix prod = d(i - 1) * di;
      GroebnerBasis target2 = submodule_basis(ring(), degrees(i - 2), relations(i - 2));
      for (std::size_t c = 0; c < prod.cols(); ++c)
        if (!target2.reduce(prod.column(c)).is_zero())
          return false;
    }
  }
  return true;
}

/// A degree-preserving chain map φ: X -> Y between free complexes.
class ChainMap {
public:
  /// maps[i] : X_i -> Y_i as a rank(Y_i) x rank(X_i) matrix; missing degrees are zero.
  ChainMap(FreeComplex source, FreeComplex target, std::map<int, PolyMatrix> maps)
      : source_(std::move(source)), target_(std::move(target)) {
    require_same_ring(source_.ring(), target_.ring());
    const GradedRing& R = source_.ring();
    for (auto& [i, m] : maps) {
      if (m.rows() != target_.rank(i) || m.cols() != source_.rank(i))
        throw AlgebraError("chain map component " + std::to_string(i) + " has the wrong shape");
      const auto src = source_.degrees(i), tgt = target_.degrees(i);
      for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
          Poly e = R.normal_form(m(r, c));
          if (!e.is_zero() && (!e.is_homogeneous() || e.degree() != src[c] - tgt[r]))
            throw AlgebraError("chain map component " + std::to_string(i) + " is not degree preserving");
          m(r, c) = e.is_zero() ? Poly(R.poly_ring()) : e;
        }
      maps_[i] = m;
    }
    const int lo = std::min(source_.lo(), target_.lo()), hi = std::max(source_.hi(), target_.hi());
    for (int i = lo; i <= hi + 1; ++i) {
      PolyMatrix lhs = target_.d(i) * at(i);
      PolyMatrix rhs = at(i - 1) * source_.d(i);
      for (std::size_t r = 0; r < lhs.rows(); ++r)
        for (std::size_t c = 0; c < lhs.cols(); ++c)
          if (!R.normal_form(lhs(r, c) - rhs(r, c)).is_zero())
            throw AlgebraError("not a chain map: d∘φ ≠ φ∘d in degree " + std::to_string(i));
    }
  }

  const FreeComplex& source() const { return source_; }
  const FreeComplex& target() const { return target_; }

  PolyMatrix at(int i) const {
    auto it = maps_.find(i);
    if (it != maps_.end())
      return it->second;
    return PolyMatrix(source_.ring().poly_ring(), target_.rank(i), source_.rank(i));
  }

private:
  FreeComplex source_, target_;
  std::map<int, PolyMatrix> maps_;
};

// ---------------------------------------------------------------------------
// Constructors and calculus

/**
 * The Koszul complex K(a_1..a_t): K_i has basis e_J for J ⊆ {1..t}, |J| = i,
 * in lexicographic order; d(e_J) = Σ_k (-1)^k a_{j_k} e_{J∖j_k} (k counted
 * from 0). e_J has twist -Σ_{j∈J} deg a_j.
 */
inline FreeComplex koszul(const GradedRing& ring, std::span<const Poly> elements) {
  const std::size_t t = elements.size();
  if (t > 16)
    throw AlgebraError("Koszul complexes on more than 16 elements are not supported");
  std::vector<int> degs;
  for (const auto& a : elements) {
    if (!a.is_homogeneous())
      throw AlgebraError("Koszul element " + a.to_string() + " is not homogeneous");
    degs.push_back(std::max(a.degree(), 0));
  }
  // Subsets as bitmasks grouped by size, lexicographic on the sorted index lists.
  std::vector<std::vector<unsigned>> subsets(t + 1);
  auto rec = [&](auto&& self, unsigned mask, std::size_t next, std::size_t size) -> void {
    subsets[size].push_back(mask);
    for (std::size_t j = next; j < t; ++j)
      self(self, mask | (1u << j), j + 1, size + 1);
  };
  rec(rec, 0u, 0, 0);
  std::vector<std::vector<int>> twists(t + 1);
  std::vector<std::map<unsigned, std::size_t>> index(t + 1);
  for (std::size_t i = 0; i <= t; ++i)
    for (std::size_t k = 0; k < subsets[i].size(); ++k) {
      unsigned mask = subsets[i][k];
      int tw = 0;
      for (std::size_t j = 0; j < t; ++j)
        if (mask & (1u << j))
          tw -= degs[j];
      twists[i].push_back(tw);
      index[i][mask] = k;
    }
  std::vector<PolyMatrix> maps;
  for (std::size_t i = 1; i <= t; ++i) {
    PolyMatrix m(ring.poly_ring(), subsets[i - 1].size(), subsets[i].size());
    for (std::size_t c = 0; c < subsets[i].size(); ++c) {
      unsigned mask = subsets[i][c];
      int pos = 0;
      for (std::size_t j = 0; j < t; ++j) {
        if (!(mask & (1u << j)))
          continue;
        std::size_t r = index[i - 1].at(mask & ~(1u << j));
        m(r, c) = pos % 2 ? -elements[j] : elements[j];
        ++pos;
      }
    }
    maps.push_back(std::move(m));
  }
  return FreeComplex(ring, 0, std::move(twists), std::move(maps));
}

inline FreeComplex koszul(const GradedRing& ring, std::initializer_list<Poly> elements) {
  std::vector<Poly> v(elements);
  return koszul(ring, std::span<const Poly>(v));
}

namespace detail {

inline ComplexData shifted(const ComplexData& x, int n) {
  ComplexData out = x;
  out.lo = x.lo + n;
  if (n % 2)
    for (std::size_t k = 1; k < out.maps.size(); ++k)
      out.maps[k] = out.maps[k].scaled(-1);
  return out;
}

/// Block-diagonal copies of `rels` (elements of R^g) inside R^{copies*g}.
inline std::vector<ModuleElement> repeat_relations(const std::vector<ModuleElement>& rels, std::size_t copies,
                                                   std::size_t g) {
  std::vector<ModuleElement> out;
  for (std::size_t l = 0; l < copies; ++l)
    for (const auto& r : rels)
      out.push_back(r.shifted_components(long(l * g)));
  return out;
}

/// X ⊗ Y with X free; generator (a, b) of X_i ⊗ Y_j has index a*rank(Y_j) + b.
inline ComplexData tensor(const ComplexData& x, const ComplexData& y) {
  if (has_relations(x))
    throw AlgebraError("tensor: the first factor must be a free complex");
  require_same_ring(x.ring, y.ring);
  const PolyRing* S = x.ring.poly_ring();
  ComplexData out(x.ring);
  if (x.twists.empty() || y.twists.empty())
    return out;
  const int xhi = x.lo + int(x.twists.size()) - 1, yhi = y.lo + int(y.twists.size()) - 1;
  out.lo = x.lo + y.lo;
  const int hi = xhi + yhi;
  // offset[n][i] = position of the X_i ⊗ Y_{n-i} block inside (X⊗Y)_n.
  std::vector<std::map<int, std::size_t>> offset(hi - out.lo + 1);
  for (int n = out.lo; n <= hi; ++n) {
    std::vector<int> tw;
    std::vector<ModuleElement> rels;
    for (int i = x.lo; i <= xhi; ++i) {
      const int j = n - i;
      if (!in_range(y, j))
        continue;
      offset[n - out.lo][i] = tw.size();
      const auto& xt = x.twists[i - x.lo];
      const auto& yt = y.twists[j - y.lo];
      for (std::size_t a = 0; a < xt.size(); ++a)
        for (std::size_t b = 0; b < yt.size(); ++b)
          tw.push_back(xt[a] + yt[b]);
      for (auto& r : repeat_relations(y.relations[j - y.lo], xt.size(), yt.size()))
        rels.push_back(r.shifted_components(long(offset[n - out.lo][i])));
    }
    out.twists.push_back(std::move(tw));
    out.relations.push_back(std::move(rels));
  }
  for (int n = out.lo; n <= hi; ++n) {
    const std::size_t cols = out.twists[n - out.lo].size();
    const std::size_t rows = n > out.lo ? out.twists[n - 1 - out.lo].size() : 0;
    PolyMatrix m(S, rows, cols);
    if (n > out.lo) {
      for (const auto& [i, off] : offset[n - out.lo]) {
        const int j = n - i;
        const std::size_t ra = rank_at(x, i), rb = rank_at(y, j);
        // dx ⊗ y into X_{i-1} ⊗ Y_j.
        if (in_range(x, i - 1) && offset[n - 1 - out.lo].count(i - 1)) {
          const PolyMatrix& dx = x.maps[i - x.lo];
          const std::size_t toff = offset[n - 1 - out.lo].at(i - 1);
          for (std::size_t k = 0; k < dx.rows(); ++k)
            for (std::size_t a = 0; a < ra; ++a)
              if (!dx(k, a).is_zero())
                for (std::size_t b = 0; b < rb; ++b)
                  m(toff + k * rb + b, off + a * rb + b) = dx(k, a);
        }
        // (-1)^i x ⊗ dy into X_i ⊗ Y_{j-1}.
        if (in_range(y, j - 1) && offset[n - 1 - out.lo].count(i)) {
          const PolyMatrix& dy = y.maps[j - y.lo];
          const std::size_t toff = offset[n - 1 - out.lo].at(i);
          const std::size_t rc = rank_at(y, j - 1);
          for (std::size_t a = 0; a < ra; ++a)
            for (std::size_t c = 0; c < rc; ++c)
              for (std::size_t b = 0; b < rb; ++b)
                if (!dy(c, b).is_zero())
                  m(toff + a * rc + c, off + a * rb + b) = (i % 2 ? -dy(c, b) : dy(c, b));
        }
      }
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

/**
 * Hom(X, Y) with X free. Hom(X_i, Y_j) is stored as Y_j^{rank X_i}: the
 * component (l, y) = l*rank(Y_j) + y is the y-th coordinate of f(e_l).
 */
inline ComplexData hom(const ComplexData& x, const ComplexData& y) {
  if (has_relations(x))
    throw AlgebraError("hom_complex: the source must be a free complex");
  require_same_ring(x.ring, y.ring);
  const PolyRing* S = x.ring.poly_ring();
  ComplexData out(x.ring);
  if (x.twists.empty() || y.twists.empty())
    return out;
  const int xhi = x.lo + int(x.twists.size()) - 1, yhi = y.lo + int(y.twists.size()) - 1;
  out.lo = y.lo - xhi;
  const int hi = yhi - x.lo;
  std::vector<std::map<int, std::size_t>> offset(hi - out.lo + 1);  // offset[n][i] for Hom(X_i, Y_{i+n})
  for (int n = out.lo; n <= hi; ++n) {
    std::vector<int> tw;
    std::vector<ModuleElement> rels;
    for (int i = x.lo; i <= xhi; ++i) {
      const int j = i + n;
      if (!in_range(y, j))
        continue;
      offset[n - out.lo][i] = tw.size();
      const auto& xt = x.twists[i - x.lo];
      const auto& yt = y.twists[j - y.lo];
      for (std::size_t l = 0; l < xt.size(); ++l)
        for (std::size_t b = 0; b < yt.size(); ++b)
          tw.push_back(yt[b] - xt[l]);
      for (auto& r : repeat_relations(y.relations[j - y.lo], xt.size(), yt.size()))
        rels.push_back(r.shifted_components(long(offset[n - out.lo][i])));
    }
    out.twists.push_back(std::move(tw));
    out.relations.push_back(std::move(rels));
  }
  for (int n = out.lo; n <= hi; ++n) {
    const std::size_t cols = out.twists[n - out.lo].size();
    const std::size_t rows = n > out.lo ? out.twists[n - 1 - out.lo].size() : 0;
    PolyMatrix m(S, rows, cols);
    if (n > out.lo) {
      const bool n_odd = (n % 2) != 0;
      for (const auto& [i, off] : offset[n - out.lo]) {
        const int j = i + n;
        const std::size_t rl = rank_at(x, i), gj = rank_at(y, j);
        // d^Y ∘ f lands in Hom(X_i, Y_{j-1}).
        if (in_range(y, j - 1) && offset[n - 1 - out.lo].count(i)) {
          const PolyMatrix& dy = y.maps[j - y.lo];
          const std::size_t toff = offset[n - 1 - out.lo].at(i);
          const std::size_t gc = rank_at(y, j - 1);
          for (std::size_t l = 0; l < rl; ++l)
            for (std::size_t c = 0; c < gc; ++c)
              for (std::size_t b = 0; b < gj; ++b)
                if (!dy(c, b).is_zero())
                  m(toff + l * gc + c, off + l * gj + b) = dy(c, b);
        }
        // -(-1)^n f ∘ d^X lands in Hom(X_{i+1}, Y_j).
        if (in_range(x, i + 1) && offset[n - 1 - out.lo].count(i + 1)) {
          const PolyMatrix& dx = x.maps[i + 1 - x.lo];
          const std::size_t toff = offset[n - 1 - out.lo].at(i + 1);
          for (std::size_t mm = 0; mm < dx.cols(); ++mm)
            for (std::size_t l = 0; l < dx.rows(); ++l)
              if (!dx(l, mm).is_zero()) {
                Poly e = n_odd ? dx(l, mm) : -dx(l, mm);
                for (std::size_t b = 0; b < gj; ++b)
                  m(toff + mm * gj + b, off + l * gj + b) += e;
              }
        }
      }
    }
    out.maps.push_back(std::move(m));
  }
  return out;
}

} // namespace detail

inline FreeComplex shift(const FreeComplex& x, int n) { return FreeComplex::from_data(detail::shifted(x.data(), n)); }
inline PresentedComplex shift(const PresentedComplex& x, int n) {
  return PresentedComplex::from_data(detail::shifted(x.data(), n));
}

inline FreeComplex tensor(const FreeComplex& x, const FreeComplex& y) {
  return FreeComplex::from_data(detail::tensor(x.data(), y.data()));
}
inline PresentedComplex tensor(const FreeComplex& x, const PresentedComplex& y) {
  return PresentedComplex::from_data(detail::tensor(x.data(), y.data()));
}

inline FreeComplex hom_complex(const FreeComplex& x, const FreeComplex& y) {
  return FreeComplex::from_data(detail::hom(x.data(), y.data()));
}
inline PresentedComplex hom_complex(const FreeComplex& x, const PresentedComplex& y) {
  return PresentedComplex::from_data(detail::hom(x.data(), y.data()));
}

/// X^* = Hom(X, R) with R in degree 0.
inline FreeComplex star_dual(const FreeComplex& x) { return hom_complex(x, FreeComplex::ring_complex(x.ring())); }

/// Cone(φ)_n = Y_n ⊕ X_{n-1}, d(y, x) = (dy + φx, -dx).
inline FreeComplex cone(const ChainMap& phi) {
  const FreeComplex& x = phi.source();
  const FreeComplex& y = phi.target();
  const PolyRing* S = x.ring().poly_ring();
  const int lo = std::min(y.lo(), x.lo() + 1), hi = std::max(y.hi(), x.hi() + 1);
  detail::ComplexData out(x.ring());
  if (x.is_zero() && y.is_zero())
    return FreeComplex::from_data(std::move(out));
  out.lo = lo;
  for (int n = lo; n <= hi; ++n) {
    std::vector<int> tw = y.twists(n);
    auto xt = x.twists(n - 1);
    tw.insert(tw.end(), xt.begin(), xt.end());
    out.twists.push_back(std::move(tw));
  }
  out.relations.assign(out.twists.size(), {});
  for (int n = lo; n <= hi; ++n) {
    const std::size_t yn = y.rank(n), xn = x.rank(n - 1);
    const std::size_t ym = n > lo ? y.rank(n - 1) : 0, xm = n > lo ? x.rank(n - 2) : 0;
    PolyMatrix m(S, ym + xm, yn + xn);
    if (n > lo) {
      const PolyMatrix dy = y.d(n), dx = x.d(n - 1), f = phi.at(n - 1);
      for (std::size_t r = 0; r < ym; ++r)
        for (std::size_t c = 0; c < yn; ++c)
          m(r, c) = dy(r, c);
      for (std::size_t r = 0; r < ym; ++r)
        for (std::size_t c = 0; c < xn; ++c)
          m(r, yn + c) = f(r, c);
      for (std::size_t r = 0; r < xm; ++r)
        for (std::size_t c = 0; c < xn; ++c)
          m(ym + r, yn + c) = -dx(r, c);
    }
    out.maps.push_back(std::move(m));
  }
  return FreeComplex::from_data(std::move(out));
}

// ---------------------------------------------------------------------------
// Resolutions

struct Resolution {
  FreeComplex complex;
  bool terminated;  // true when the last kernel was zero (finite projective dimension found)
};

/**
 * Minimal graded free resolution of M, computed for at most max_steps
 * syzygy steps (F_0..F_{max_steps}).
 */
inline Resolution resolve(const PresentedModule& m, int max_steps) {
  if (max_steps < 0)
    throw AlgebraError("max_steps must be non-negative");
  const GradedRing& R = m.ring();
  const PolyRing* S = R.poly_ring();
  PresentedModule mm = m.minimized();

  std::vector<std::vector<int>> twists{mm.twists()};
  std::vector<PolyMatrix> maps;
  std::vector<ModuleElement> next = mm.relations();
  bool terminated = next.empty();
  for (int step = 1; step <= max_steps && !terminated; ++step) {
    const auto tgt = degrees_from_twists(twists.back());
    std::vector<int> src;
    for (const auto& v : next)
      src.push_back(element_degree(v, tgt));
    maps.push_back(PolyMatrix::from_columns(S, tgt.size(), next));
    twists.push_back(twists_from_degrees(src));
    auto ker = kernel(R, maps.back(), src, tgt);
    next = minimal_generators(R, src, ker);
    terminated = next.empty();
  }
  return {FreeComplex(R, 0, std::move(twists), std::move(maps)), terminated};
}

// ---------------------------------------------------------------------------
// Homology

namespace detail {

inline std::vector<ModuleElement> nonzero_columns(const PolyMatrix& m, std::span<const int> col_degrees,
                                                  std::vector<int>* degs) {
  std::vector<ModuleElement> out;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    ModuleElement v = m.column(c);
    if (v.is_zero())
      continue;
    out.push_back(std::move(v));
    if (degs)
      degs->push_back(col_degrees[c]);
  }
  return out;
}

} // namespace detail

/**
 * H_i(X) as a presented module: generators are cycles (kernel of d_i modulo
 * the relations of X_{i-1}) not already boundaries, relations are the
 * syzygies of [cycles | image of d_{i+1} | relations of X_i | I*basis]
 * restricted to the cycle coordinates.
 */
inline PresentedModule homology_module(const PresentedComplex& x, int i) {
  const GradedRing& R = x.ring();
  const auto degs = x.degrees(i);
  if (degs.empty())
    return PresentedModule::free(R, {});

  std::vector<ModuleElement> cycles = kernel(R, x.d(i), degs, x.degrees(i - 1), x.relations(i - 1));

  std::vector<int> bdegs;
  std::vector<ModuleElement> boundaries = detail::nonzero_columns(x.d(i + 1), x.degrees(i + 1), &bdegs);
  for (const auto& r : x.relations(i)) {
    boundaries.push_back(r);
    bdegs.push_back(element_degree(r, degs));
  }
  GroebnerBasis gb = submodule_basis(R, degs, boundaries);
  std::vector<ModuleElement> reduced;
  for (const auto& c : cycles) {
    ModuleElement r = gb.reduce(c);
    if (!r.is_zero())
      reduced.push_back(std::move(r));
  }
  std::vector<ModuleElement> gens = minimal_generators(R, degs, reduced, boundaries);
  if (gens.empty())
    return PresentedModule::free(R, {});

  std::vector<int> gdegs;
  for (const auto& g : gens)
    gdegs.push_back(element_degree(g, degs));
  std::vector<ModuleElement> cols = gens;
  std::vector<int> cdegs = gdegs;
  cols.insert(cols.end(), boundaries.begin(), boundaries.end());
  cdegs.insert(cdegs.end(), bdegs.begin(), bdegs.end());
  std::vector<ModuleElement> rels;
  for (const auto& syz : relative_syzygies(R, cols, cdegs, degs, {})) {
    std::vector<ModTerm> head;
    for (const auto& t : syz.terms())
      if (t.comp < gens.size())
        head.push_back(t);
    if (!head.empty())
      rels.push_back(ModuleElement::from_sorted_terms(R.poly_ring(), std::move(head)));
  }
  return PresentedModule(R, twists_from_degrees(gdegs), std::move(rels));
}

inline PresentedModule homology_module(const FreeComplex& x, int i) {
  return homology_module(PresentedComplex(x), i);
}

inline Length homology_length(const PresentedComplex& x, int i) { return homology_module(x, i).length(); }
inline Length homology_length(const FreeComplex& x, int i) { return homology_module(x, i).length(); }

/// Lengths and dimensions of every homology module of a complex, computed once.
struct HomologyProfile {
  int lo = 0;
  std::vector<Length> lengths;              // lengths[i - lo]
  std::vector<std::optional<int>> dims;     // dims[i - lo], nullopt for H_i = 0

  bool all_finite() const {
    return std::all_of(lengths.begin(), lengths.end(), [](const Length& l) { return l.has_value(); });
  }
  /// max_i dim H_i; nullopt when the complex is acyclic.
  std::optional<int> support_dim() const {
    std::optional<int> best;
    for (const auto& d : dims)
      if (d && (!best || *d > *best))
        best = d;
    return best;
  }
};

inline HomologyProfile homology_profile(const PresentedComplex& x) {
  HomologyProfile prof;
  prof.lo = x.lo();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    PresentedModule h = homology_module(x, i);
    prof.lengths.push_back(h.length());
    prof.dims.push_back(h.dimension());
  }
  return prof;
}
inline HomologyProfile homology_profile(const FreeComplex& x) { return homology_profile(PresentedComplex(x)); }

/// max_i dim H_i(X); nullopt for an acyclic complex.
inline std::optional<int> support_dim(const PresentedComplex& x) { return homology_profile(x).support_dim(); }
inline std::optional<int> support_dim(const FreeComplex& x) { return homology_profile(x).support_dim(); }

/// dim R - dim Supp X; nullopt for an acyclic complex.
inline std::optional<int> codim(const PresentedComplex& x) {
  auto d = support_dim(x);
  if (!d)
    return std::nullopt;
  return x.ring().krull_dim() - *d;
}
inline std::optional<int> codim(const FreeComplex& x) { return codim(PresentedComplex(x)); }

// ---------------------------------------------------------------------------
// Strand oracle

struct StrandResult {
  std::int64_t length = 0;
  int dmax = 0;
  bool cap_warning = false;  // homology was still nonzero at dmax (or the range was empty)
};

namespace detail {

/// Coordinates of a free module strand F_d: pairs (generator, standard monomial of degree d - deg).
class StrandBasis {
public:
  StrandBasis(const GradedRing& ring, std::span<const int> degrees, int d) {
    for (std::size_t j = 0; j < degrees.size(); ++j) {
      offset_.push_back(size_);
      auto monos = ring.monomial_basis(d - degrees[j]);
      std::map<Monomial, std::size_t, Monomial::Greater> idx;
      for (std::size_t k = 0; k < monos.size(); ++k)
        idx[monos[k]] = k;
      size_ += monos.size();
      index_.push_back(std::move(idx));
      monomials_.push_back(std::move(monos));
    }
  }

  std::size_t size() const { return size_; }
  const std::vector<Monomial>& monomials(std::size_t gen) const { return monomials_[gen]; }

  /// Writes the coordinates of a reduced homogeneous element into `row`.
  void coordinates(const ModuleElement& v, std::uint32_t* row) const {
    for (const auto& t : v.terms())
      row[offset_[t.comp] + index_[t.comp].at(t.mono)] = t.coef;
  }

private:
  std::size_t size_ = 0;
  std::vector<std::size_t> offset_;
  std::vector<std::map<Monomial, std::size_t, Monomial::Greater>> index_;
  std::vector<std::vector<Monomial>> monomials_;
};

inline std::size_t rank_of_rows(const std::vector<ModuleElement>& rows, const StrandBasis& basis, std::uint32_t p) {
  if (rows.empty() || basis.size() == 0)
    return 0;
  FpMatrix m(rows.size(), basis.size(), p);
  for (std::size_t r = 0; r < rows.size(); ++r)
    basis.coordinates(rows[r], &m(r, 0));
  return m.rank();
}

/// All products m*ρ (m a standard monomial) of degree d, reduced mod I.
inline void append_multiples(const GradedRing& R, const std::vector<ModuleElement>& gens,
                             std::span<const int> gen_degrees, int d, std::vector<ModuleElement>& out) {
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (const auto& m : R.monomial_basis(d - gen_degrees[k])) {
      ModuleElement v = reduce_mod_ideal(R, gens[k].times_term(m, 1));
      if (!v.is_zero())
        out.push_back(std::move(v));
    }
}

inline std::int64_t strand_homology_dim(const PresentedComplex& x, int i, int d) {
  const GradedRing& R = x.ring();
  const std::uint32_t p = R.characteristic();
  const auto di = x.degrees(i), dprev = x.degrees(i - 1);
  StrandBasis fi(R, di, d), fprev(R, dprev, d);
  if (fi.size() == 0)
    return 0;

  auto relation_rows = [&](int k, std::span<const int> degs) {
    std::vector<ModuleElement> rows;
    std::vector<int> rdegs;
    for (const auto& r : x.relations(k))
      rdegs.push_back(element_degree(r, degs));
    append_multiples(R, x.relations(k), rdegs, d, rows);
    return rows;
  };

  // Images of the strand F_{i,d} in F_{i-1,d}, together with U_{i-1,d}.
  std::vector<ModuleElement> uprev = relation_rows(i - 1, dprev);
  const std::size_t rank_uprev = rank_of_rows(uprev, fprev, p);
  std::vector<ModuleElement> image = uprev;
  const PolyMatrix dmat = x.d(i);
  for (std::size_t j = 0; j < di.size(); ++j)
    for (const auto& m : fi.monomials(j)) {
      ModuleElement v = detail::apply(x.data(), dmat, ModuleElement::basis_multiple(R.poly_ring(), std::uint32_t(j),
                                                                                     Poly::monomial(R.poly_ring(), m, 1)));
      if (!v.is_zero())
        image.push_back(std::move(v));
    }
  const std::size_t rank_image = rank_of_rows(image, fprev, p) - rank_uprev;

  // Boundaries plus U_{i,d} inside F_{i,d}.
  std::vector<ModuleElement> bnd = relation_rows(i, di);
  const auto dnext = x.degrees(i + 1);
  std::vector<int> cdegs;
  std::vector<ModuleElement> cols = nonzero_columns(x.d(i + 1), dnext, &cdegs);
  append_multiples(R, cols, cdegs, d, bnd);
  const std::size_t rank_bnd = rank_of_rows(bnd, fi, p);

  return std::int64_t(fi.size()) - std::int64_t(rank_image) - std::int64_t(rank_bnd);
}

} // namespace detail

/**
 * Default strand cap for H_i: the largest generator degree of X_{i-1}, X_i,
 * X_{i+1} plus (n+1)*D, D the largest entry / relation / ideal-generator degree.
 */
inline int default_strand_cap(const PresentedComplex& x, int i) {
  int top = 0;
  for (int k = i - 1; k <= i + 1; ++k)
    for (int g : x.degrees(k))
      top = std::max(top, g);
  int D = std::max(1, x.ring().max_generator_degree());
  for (int k = i; k <= i + 1; ++k)
    D = std::max(D, x.d(k).max_entry_degree());
  for (int k = i - 1; k <= i; ++k) {
    for (const auto& r : x.relations(k))
      for (const auto& t : r.terms())
        D = std::max(D, int(t.mono.degree()));
  }
  return top + int(x.ring().nvars() + 1) * D;
}

/**
 * Length of H_i(X) summed strand by strand up to dmax, using only F_p ranks:
 * dim H_{i,d} = dim F_{i,d} - rank(d_i on F_{i,d} modulo U_{i-1,d})
 *               - rank(im d_{i+1} + U_{i,d}).
 */
inline StrandResult strand_homology_length(const PresentedComplex& x, int i, std::optional<int> dmax = std::nullopt) {
  StrandResult res;
  res.dmax = dmax ? *dmax : default_strand_cap(x, i);
  const auto degs = x.degrees(i);
  if (degs.empty())
    return res;
  const int dlo = *std::min_element(degs.begin(), degs.end());
  if (res.dmax < dlo) {
    res.cap_warning = true;
    return res;
  }
  std::int64_t last = 0;
  for (int d = dlo; d <= res.dmax; ++d) {
    last = detail::strand_homology_dim(x, i, d);
    res.length += last;
  }
  res.cap_warning = last != 0;
  return res;
}

inline StrandResult strand_homology_length(const FreeComplex& x, int i, std::optional<int> dmax = std::nullopt) {
  return strand_homology_length(PresentedComplex(x), i, dmax);
}

} // namespace frobmult
