#pragma once

/**
 * @file groebner.hpp
 * @brief Buchberger's algorithm for submodules of graded free modules S^r,
 * S = F_p[x_1..x_n].
 *
 * Module terms are ordered position-over-term: a term in component i is larger
 * than any term in component j > i; inside one component degrevlex decides.
 * Each free generator e_i carries a degree, so homogeneity means every term
 * c*m*e_i of an element has deg(m) + degree(e_i) equal.
 *
 * S-pairs are processed lowest degree first (normal strategy), pruned with
 * the Gebauer–Möller update. The product criterion is only sound for ideals
 * and is only used when the ambient rank is one.
 */

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/poly.hpp"

namespace frobmult {

struct ModTerm {
  std::uint32_t comp;
  Monomial mono;
  std::uint32_t coef;
  friend bool operator==(const ModTerm&, const ModTerm&) = default;
};

/// Position-over-term comparison: >0 when a is the larger term.
inline int compare(const ModTerm& a, const ModTerm& b) {
  if (a.comp != b.comp)
    return a.comp < b.comp ? 1 : -1;
  return compare(a.mono, b.mono);
}

/// An element of a free module S^r, stored as a sorted term list.
class ModuleElement {
public:
  ModuleElement() = default;
  explicit ModuleElement(const PolyRing* ring) : ring_(ring) {}

  /// Builds sum_i comps[i] * e_i.
  static ModuleElement from_polys(const PolyRing* ring, std::span<const Poly> comps) {
    ModuleElement v(ring);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      common_ring(Poly(ring), comps[i]);
      for (const auto& t : comps[i].terms())
        v.terms_.push_back({std::uint32_t(i), t.mono, t.coef});
    }
    return v;
  }

  /// f * e_i.
  static ModuleElement basis_multiple(const PolyRing* ring, std::uint32_t i, const Poly& f) {
    ModuleElement v(ring);
    for (const auto& t : f.terms())
      v.terms_.push_back({i, t.mono, t.coef});
    return v;
  }

  static ModuleElement unit_vector(const PolyRing* ring, std::uint32_t i) {
    ModuleElement v(ring);
    v.terms_.push_back({i, Monomial{}, 1});
    return v;
  }

  /// Terms must already be strictly decreasing with nonzero coefficients.
  static ModuleElement from_sorted_terms(const PolyRing* ring, std::vector<ModTerm> terms) {
    ModuleElement v(ring);
    v.terms_ = std::move(terms);
    return v;
  }

  const PolyRing* ring() const { return ring_; }
  const std::vector<ModTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  const ModTerm& leading_term() const { return terms_.front(); }

  Poly component(std::uint32_t i) const {
    std::vector<Term> ts;
    for (const auto& t : terms_)
      if (t.comp == i)
        ts.push_back({t.mono, t.coef});
    Poly f(ring_);
    return ts.empty() ? f : Poly::from_terms(ring_, std::move(ts));
  }

  std::vector<Poly> to_polys(std::size_t rank) const {
    std::vector<std::vector<Term>> parts(rank);
    for (const auto& t : terms_) {
      if (t.comp >= rank)
        throw AlgebraError("module element has a component beyond the requested rank");
      parts[t.comp].push_back({t.mono, t.coef});
    }
    std::vector<Poly> out;
    out.reserve(rank);
    for (auto& p : parts)
      out.push_back(p.empty() ? Poly(ring_) : Poly::from_terms(ring_, std::move(p)));
    return out;
  }

  /// Degree of the leading term given the generator degrees; nullopt for zero.
  std::optional<int> degree(std::span<const int> gen_degrees) const {
    if (terms_.empty())
      return std::nullopt;
    return int(terms_.front().mono.degree()) + gen_degrees[terms_.front().comp];
  }

  bool is_homogeneous(std::span<const int> gen_degrees) const {
    if (terms_.empty())
      return true;
    const int d = *degree(gen_degrees);
    for (const auto& t : terms_) {
      if (t.comp >= gen_degrees.size())
        return false;
      if (int(t.mono.degree()) + gen_degrees[t.comp] != d)
        return false;
    }
    return true;
  }

  /// Every component index shifted by `by` (may be negative when all comps allow it).
  ModuleElement shifted_components(long by) const {
    ModuleElement v = *this;
    for (auto& t : v.terms_)
      t.comp = std::uint32_t(long(t.comp) + by);
    return v;
  }

  /// c * m * v.
  ModuleElement times_term(const Monomial& m, std::uint32_t c) const {
    ModuleElement v(ring_);
    const std::uint32_t p = ring_->characteristic();
    c %= p;
    if (c == 0)
      return v;
    v.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
      v.terms_.push_back({t.comp, t.mono * m, fp::mul(t.coef, c, p)});
    return v;
  }

  ModuleElement times(const Poly& f) const {
    ModuleElement acc(ring_);
    for (const auto& t : f.terms())
      acc += times_term(t.mono, t.coef);
    return acc;
  }

  ModuleElement monic() const {
    if (terms_.empty() || terms_.front().coef == 1)
      return *this;
    return times_term(Monomial{}, fp::inv(terms_.front().coef, ring_->characteristic()));
  }

  friend ModuleElement operator+(const ModuleElement& a, const ModuleElement& b) { return axpy(a, b, 1, false); }
  friend ModuleElement operator-(const ModuleElement& a, const ModuleElement& b) { return axpy(a, b, 1, true); }
  ModuleElement& operator+=(const ModuleElement& b) { return *this = *this + b; }
  ModuleElement& operator-=(const ModuleElement& b) { return *this = *this - b; }
  friend bool operator==(const ModuleElement& a, const ModuleElement& b) { return a.terms_ == b.terms_; }

private:
  friend ModuleElement subtract_scaled(const ModuleElement& a, const ModuleElement& b, std::size_t skip_a,
                                       std::size_t skip_b, const Monomial& m, std::uint32_t c);

  static ModuleElement axpy(const ModuleElement& a, const ModuleElement& b, std::uint32_t, bool subtract) {
    const PolyRing* r = a.ring_ ? a.ring_ : b.ring_;
    if (a.ring_ && b.ring_ && a.ring_ != b.ring_ && !(*a.ring_ == *b.ring_))
      throw AlgebraError("module elements over different rings");
    ModuleElement out(r);
    if (!r)
      return out;
    const std::uint32_t p = r->characteristic();
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c = i == a.terms_.size() ? -1 : j == b.terms_.size() ? 1 : compare(a.terms_[i], b.terms_[j]);
      if (c > 0) {
        out.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        ModTerm t = b.terms_[j++];
        if (subtract)
          t.coef = fp::neg(t.coef, p);
        out.terms_.push_back(t);
      } else {
        std::uint32_t v = subtract ? fp::sub(a.terms_[i].coef, b.terms_[j].coef, p)
                                   : fp::add(a.terms_[i].coef, b.terms_[j].coef, p);
        if (v)
          out.terms_.push_back({a.terms_[i].comp, a.terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  const PolyRing* ring_ = nullptr;
  std::vector<ModTerm> terms_;
};

/// a[skip_a..] - c*m*b[skip_b..]; the merge used by reduction steps once the
/// leading terms are known to cancel.
inline ModuleElement subtract_scaled(const ModuleElement& a, const ModuleElement& b, std::size_t skip_a,
                                     std::size_t skip_b, const Monomial& m, std::uint32_t c) {
  const std::uint32_t p = a.ring_->characteristic();
  ModuleElement out(a.ring_);
  out.terms_.reserve(a.terms_.size() + b.terms_.size());
  std::size_t i = skip_a, j = skip_b;
  const std::uint32_t negc = fp::neg(c, p);
  while (i < a.terms_.size() || j < b.terms_.size()) {
    int cmp;
    ModTerm bt{};
    if (j < b.terms_.size())
      bt = {b.terms_[j].comp, b.terms_[j].mono * m, 0};
    if (i == a.terms_.size())
      cmp = -1;
    else if (j == b.terms_.size())
      cmp = 1;
    else
      cmp = compare(a.terms_[i], bt);
    if (cmp > 0) {
      out.terms_.push_back(a.terms_[i++]);
    } else if (cmp < 0) {
      bt.coef = fp::mul(b.terms_[j++].coef, negc, p);
      out.terms_.push_back(bt);
    } else {
      std::uint32_t v = fp::add(a.terms_[i].coef, fp::mul(b.terms_[j].coef, negc, p), p);
      if (v)
        out.terms_.push_back({a.terms_[i].comp, a.terms_[i].mono, v});
      ++i;
      ++j;
    }
  }
  return out;
}

/**
 * A Gröbner basis of a submodule of a graded free module. Immutable once
 * built; construct through buchberger().
 */
class GroebnerBasis {
public:
  GroebnerBasis() = default;

  const PolyRing* ring() const { return ring_; }
  std::size_t rank() const { return degrees_.size(); }
  const std::vector<int>& generator_degrees() const { return degrees_; }
  const std::vector<ModuleElement>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }

  /// Leading monomials of the basis elements whose leading term lies in comp.
  std::vector<Monomial> leading_monomials(std::uint32_t comp) const {
    std::vector<Monomial> out;
    for (const auto& g : elements_)
      if (g.leading_term().comp == comp)
        out.push_back(g.leading_term().mono);
    return out;
  }

  /// Full normal form: no term of the result is divisible by a leading term.
  ModuleElement reduce(const ModuleElement& v) const { return reduce_with(elements_, by_comp_, v); }

  bool contains(const ModuleElement& v) const { return reduce(v).is_zero(); }

  /// Buchberger certificate: every S-pair reduces to zero.
  bool is_certified() const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
      for (std::size_t j = i + 1; j < elements_.size(); ++j)
        if (elements_[i].leading_term().comp == elements_[j].leading_term().comp &&
            !reduce(s_pair(elements_[i], elements_[j])).is_zero())
          return false;
    return true;
  }

  static ModuleElement s_pair(const ModuleElement& f, const ModuleElement& g) {
    const auto& a = f.leading_term();
    const auto& b = g.leading_term();
    Monomial l = lcm(a.mono, b.mono);
    const std::uint32_t p = f.ring()->characteristic();
    ModuleElement lhs = f.times_term(a.mono.quotient_of(l), fp::inv(a.coef, p));
    return subtract_scaled(lhs, g, 1, 1, b.mono.quotient_of(l), fp::inv(b.coef, p));
  }

  static ModuleElement reduce_with(const std::vector<ModuleElement>& basis,
                                   const std::vector<std::vector<std::size_t>>& by_comp, ModuleElement v) {
    if (v.is_zero() || basis.empty())
      return v;
    const PolyRing* ring = v.ring() ? v.ring() : basis.front().ring();
    const std::uint32_t p = ring->characteristic();
    std::vector<ModTerm> rem;
    while (!v.is_zero()) {
      const ModTerm lt = v.leading_term();
      const ModuleElement* red = nullptr;
      if (lt.comp < by_comp.size())
        for (std::size_t idx : by_comp[lt.comp])
          if (basis[idx].leading_term().mono.divides(lt.mono)) {
            red = &basis[idx];
            break;
          }
      if (red) {
        const ModTerm& rl = red->leading_term();
        std::uint32_t c = fp::mul(lt.coef, fp::inv(rl.coef, p), p);
        v = subtract_scaled(v, *red, 1, 1, rl.mono.quotient_of(lt.mono), c);
      } else {
        rem.push_back(lt);
        v = ModuleElement::from_sorted_terms(ring, std::vector<ModTerm>(v.terms().begin() + 1, v.terms().end()));
      }
    }
    return ModuleElement::from_sorted_terms(ring, std::move(rem));
  }

private:
  friend GroebnerBasis buchberger(const PolyRing* ring, std::vector<int> gen_degrees,
                                  std::span<const ModuleElement> gens);

  void index() {
    by_comp_.assign(degrees_.size(), {});
    for (std::size_t i = 0; i < elements_.size(); ++i)
      by_comp_[elements_[i].leading_term().comp].push_back(i);
  }

  const PolyRing* ring_ = nullptr;
  std::vector<int> degrees_;
  std::vector<ModuleElement> elements_;
  std::vector<std::vector<std::size_t>> by_comp_;
};

namespace detail {

struct PendingPair {
  std::size_t i, j; // j == npos marks an input generator i
  Monomial lcm;
  int degree;
};

inline constexpr std::size_t kInput = std::numeric_limits<std::size_t>::max();

} // namespace detail

/**
 * Reduced Gröbner basis of the submodule of S^r generated by `gens`, where
 * r = gen_degrees.size(). Inputs must be homogeneous. Output is autoreduced,
 * monic and sorted by leading term (component, then ascending monomial), so
 * equal submodules give identical bases.
 */
inline GroebnerBasis buchberger(const PolyRing* ring, std::vector<int> gen_degrees,
                                std::span<const ModuleElement> gens) {
  using detail::PendingPair;
  const std::size_t rank = gen_degrees.size();
  const bool ideal_case = rank == 1;

  std::vector<ModuleElement> inputs;
  for (const auto& g : gens) {
    if (g.is_zero())
      continue;
    if (g.ring() && g.ring() != ring && !(*g.ring() == *ring))
      throw AlgebraError("generator over a different ring");
    for (const auto& t : g.terms())
      if (t.comp >= rank)
        throw AlgebraError("generator component beyond the ambient rank");
    if (!g.is_homogeneous(gen_degrees))
      throw AlgebraError("buchberger requires homogeneous generators");
    inputs.push_back(g);
  }

  std::vector<ModuleElement> basis;
  std::vector<std::vector<std::size_t>> by_comp(rank);
  std::vector<PendingPair> queue;
  for (std::size_t k = 0; k < inputs.size(); ++k)
    queue.push_back({k, detail::kInput, Monomial{}, *inputs[k].degree(gen_degrees)});

  auto insert = [&](ModuleElement h) {
    h = h.monic();
    const std::size_t k = basis.size();
    const ModTerm& lh = h.leading_term();
    const std::uint32_t comp = lh.comp;

    // Gebauer–Möller: new pairs {h, g}.
    struct Cand {
      std::size_t g;
      Monomial l;
      bool coprime;
    };
    std::vector<Cand> cands;
    for (std::size_t g : by_comp[comp]) {
      const Monomial& lg = basis[g].leading_term().mono;
      cands.push_back({g, lcm(lh.mono, lg), ideal_case && coprime(lh.mono, lg)});
    }
    std::vector<Cand> kept;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      bool keep = cands[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < cands.size() && keep; ++b)
          if (cands[b].l.divides(cands[a].l))
            keep = false;
        for (const auto& d : kept)
          if (keep && d.l.divides(cands[a].l))
            keep = false;
      }
      if (keep)
        kept.push_back(cands[a]);
    }
    // Chain criterion on the old pairs.
    std::erase_if(queue, [&](const PendingPair& pr) {
      if (pr.j == detail::kInput || basis[pr.i].leading_term().comp != comp)
        return false;
      if (!lh.mono.divides(pr.lcm))
        return false;
      Monomial li = lcm(basis[pr.i].leading_term().mono, lh.mono);
      Monomial lj = lcm(basis[pr.j].leading_term().mono, lh.mono);
      return !(li == pr.lcm) && !(lj == pr.lcm);
    });
    for (const auto& c : kept)
      if (!c.coprime)
        queue.push_back({c.g, k, c.l, int(c.l.degree()) + gen_degrees[comp]});

    basis.push_back(std::move(h));
    by_comp[comp].push_back(k);
  };

  while (!queue.empty()) {
    auto it = std::min_element(queue.begin(), queue.end(), [](const PendingPair& a, const PendingPair& b) {
      if (a.degree != b.degree)
        return a.degree < b.degree;
      bool ai = a.j == detail::kInput, bi = b.j == detail::kInput;
      if (ai != bi)
        return ai;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    PendingPair pr = *it;
    queue.erase(it);
    ModuleElement s = pr.j == detail::kInput ? inputs[pr.i] : GroebnerBasis::s_pair(basis[pr.i], basis[pr.j]);
    ModuleElement r = GroebnerBasis::reduce_with(basis, by_comp, std::move(s));
    if (!r.is_zero())
      insert(std::move(r));
  }

  // Minimalize, then tail-reduce.
  std::vector<ModuleElement> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const ModTerm& li = basis[i].leading_term();
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j)
        continue;
      const ModTerm& lj = basis[j].leading_term();
      if (lj.comp == li.comp && lj.mono.divides(li.mono) && (!(lj.mono == li.mono) || j < i))
        redundant = true;
    }
    if (!redundant)
      minimal.push_back(basis[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [](const ModuleElement& a, const ModuleElement& b) {
    return compare(a.leading_term(), b.leading_term()) < 0;
  });

  GroebnerBasis gb;
  gb.ring_ = ring;
  gb.degrees_ = std::move(gen_degrees);
  gb.elements_ = minimal;
  gb.index();
  for (std::size_t i = 0; i < gb.elements_.size(); ++i) {
    std::vector<ModuleElement> others;
    std::vector<std::vector<std::size_t>> others_by_comp(rank);
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) {
        others_by_comp[minimal[j].leading_term().comp].push_back(others.size());
        others.push_back(minimal[j]);
      }
    ModuleElement tail = ModuleElement::from_sorted_terms(
        ring, std::vector<ModTerm>(minimal[i].terms().begin() + 1, minimal[i].terms().end()));
    tail = GroebnerBasis::reduce_with(others, others_by_comp, std::move(tail));
    std::vector<ModTerm> ts{minimal[i].leading_term()};
    ts.insert(ts.end(), tail.terms().begin(), tail.terms().end());
    gb.elements_[i] = ModuleElement::from_sorted_terms(ring, std::move(ts)).monic();
  }
  return gb;
}

/// Ideal convenience: rank-one module generated by polynomials of degree >= 0.
inline GroebnerBasis buchberger(const PolyRing* ring, std::span<const Poly> gens) {
  std::vector<ModuleElement> els;
  for (const auto& f : gens)
    if (!f.is_zero())
      els.push_back(ModuleElement::basis_multiple(ring, 0, f));
  return buchberger(ring, {0}, els);
}

inline std::vector<Poly> to_polys(const GroebnerBasis& gb) {
  std::vector<Poly> out;
  for (const auto& g : gb.elements())
    out.push_back(g.component(0));
  return out;
}

/**
 * Generators of the module of syzygies of `columns` (elements of S^a with
 * generator degrees `ambient_degrees`). column_degrees[j] is the degree given
 * to the j-th syzygy coordinate; it must equal the degree of a nonzero column.
 *
 * Computed by eliminating the first a components from the Gröbner basis of
 * the rows (col_j | e_j) in S^(a+m); the survivors, shifted down by a, form a
 * Gröbner basis of the syzygy module.
 */
inline std::vector<ModuleElement> syzygies(const PolyRing* ring, std::span<const int> ambient_degrees,
                                           std::span<const ModuleElement> columns,
                                           std::span<const int> column_degrees) {
  if (columns.size() != column_degrees.size())
    throw AlgebraError("syzygies: one degree per column is required");
  const std::size_t a = ambient_degrees.size();
  std::vector<int> degrees(ambient_degrees.begin(), ambient_degrees.end());
  degrees.insert(degrees.end(), column_degrees.begin(), column_degrees.end());
  std::vector<ModuleElement> rows;
  rows.reserve(columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    auto d = columns[j].degree(ambient_degrees);
    if (d && *d != column_degrees[j])
      throw AlgebraError("syzygies: column degree does not match its entries");
    rows.push_back(columns[j] + ModuleElement::unit_vector(ring, std::uint32_t(a + j)));
  }
  GroebnerBasis gb = buchberger(ring, degrees, rows);
  std::vector<ModuleElement> out;
  for (const auto& g : gb.elements())
    if (g.leading_term().comp >= a)
      out.push_back(g.shifted_components(-long(a)));
  return out;
}

inline std::vector<ModuleElement> syzygies(const GroebnerBasis& gb) {
  std::vector<int> degs;
  for (const auto& g : gb.elements())
    degs.push_back(*g.degree(gb.generator_degrees()));
  return syzygies(gb.ring(), gb.generator_degrees(), gb.elements(), degs);
}

// ---------------------------------------------------------------------------
// Monomial ideal combinatorics

/**
 * Krull dimension of S/J for the monomial ideal J generated by `gens`:
 * the size of the largest variable subset U with no generator supported
 * inside U. nullopt when J is the unit ideal (empty variety).
 */
inline std::optional<int> monomial_dimension(std::span<const Monomial> gens, std::size_t nvars) {
  std::vector<unsigned> supports;
  for (const auto& m : gens) {
    if (m.is_one())
      return std::nullopt;
    unsigned s = 0;
    for (std::size_t i = 0; i < nvars; ++i)
      if (m.exponent(i))
        s |= 1u << i;
    supports.push_back(s);
  }
  int best = 0;
  for (unsigned u = 0; u < (1u << nvars); ++u) {
    int size = std::popcount(u);
    if (size <= best)
      continue;
    bool independent = std::none_of(supports.begin(), supports.end(), [u](unsigned s) { return (s & ~u) == 0; });
    if (independent)
      best = size;
  }
  return best;
}

/// All monomials of degree d in nvars variables, descending degrevlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned d) {
  std::vector<Monomial> out;
  std::vector<unsigned> e(nvars, 0);
  auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
    if (i + 1 == nvars) {
      e[i] = left;
      out.push_back(Monomial::from_exponents(e));
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, d);
  std::sort(out.begin(), out.end(), Monomial::Greater{});
  return out;
}

inline bool is_standard(const Monomial& m, std::span<const Monomial> gens) {
  return std::none_of(gens.begin(), gens.end(), [&](const Monomial& g) { return g.divides(m); });
}

/// Monomials of degree d outside the monomial ideal, descending degrevlex.
inline std::vector<Monomial> standard_monomials_of_degree(std::span<const Monomial> gens, std::size_t nvars,
                                                         int d) {
  std::vector<Monomial> out;
  if (d < 0)
    return out;
  for (const auto& m : monomials_of_degree(nvars, unsigned(d)))
    if (is_standard(m, gens))
      out.push_back(m);
  return out;
}

/**
 * Number of standard monomials of a zero-dimensional monomial ideal (or the
 * unit ideal); nullopt when S/J has positive dimension. Walks degree by degree
 * using that standard monomials form an order ideal.
 */
inline std::optional<std::int64_t> count_standard_monomials(std::span<const Monomial> gens, std::size_t nvars) {
  auto dim = monomial_dimension(gens, nvars);
  if (!dim)
    return 0;
  if (*dim > 0)
    return std::nullopt;
  std::int64_t total = 0;
  std::set<Monomial, Monomial::Greater> layer{Monomial{}};
  while (!layer.empty()) {
    total += std::int64_t(layer.size());
    std::set<Monomial, Monomial::Greater> next;
    for (const auto& m : layer)
      for (std::size_t i = 0; i < nvars; ++i) {
        Monomial n = m * Monomial::variable(i);
        if (is_standard(n, gens))
          next.insert(n);
      }
    layer = std::move(next);
  }
  return total;
}

} // namespace frobmult
