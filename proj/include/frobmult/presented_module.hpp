#pragma once

/**
 * @file presented_module.hpp
 * @brief Graded modules over R = S/I given by generators and relations, and
 * the kernel / minimal-generator computations that complexes are built from.
 *
 * Everything is lifted to S: a submodule of R^r is handled as the submodule of
 * S^r generated by its lifts together with I*(standard basis).
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/graded_ring.hpp"
#include "frobmult/groebner.hpp"
#include "frobmult/poly_matrix.hpp"

namespace frobmult {

/// Length of a module: a finite count, or std::nullopt for infinite length.
using Length = std::optional<std::int64_t>;

inline std::vector<int> degrees_from_twists(std::span<const int> twists) {
  std::vector<int> d;
  d.reserve(twists.size());
  for (int t : twists)
    d.push_back(-t);
  return d;
}

inline std::vector<int> twists_from_degrees(std::span<const int> degrees) { return degrees_from_twists(degrees); }

/// Krull dimension of S/I from a Gröbner basis of an ideal; nullopt for the unit ideal.
inline std::optional<int> krull_dim(const GroebnerBasis& gb) {
  if (gb.rank() != 1)
    throw AlgebraError("krull_dim expects an ideal");
  return monomial_dimension(gb.leading_monomials(0), gb.ring()->nvars());
}

/// Degree of a homogeneous nonzero element; throws on zero.
inline int element_degree(const ModuleElement& v, std::span<const int> degrees) {
  auto d = v.degree(degrees);
  if (!d)
    throw AlgebraError("degree of the zero element");
  return *d;
}

/// Componentwise normal form modulo I.
inline ModuleElement reduce_mod_ideal(const GradedRing& ring, const ModuleElement& v) {
  if (ring.is_polynomial_ring() || v.is_zero())
    return v;
  std::uint32_t rank = 0;
  for (const auto& t : v.terms())
    rank = std::max(rank, t.comp + 1);
  auto comps = v.to_polys(rank);
  for (auto& f : comps)
    f = ring.normal_form(f);
  return ModuleElement::from_polys(ring.poly_ring(), comps);
}

/// The elements g*e_l for g in the Gröbner basis of I and every basis vector e_l.
inline std::vector<ModuleElement> ideal_multiples(const GradedRing& ring, std::span<const int> degrees,
                                                  std::vector<int>* out_degrees = nullptr) {
  std::vector<ModuleElement> out;
  for (std::size_t l = 0; l < degrees.size(); ++l)
    for (const auto& g : ring.groebner_polys()) {
      out.push_back(ModuleElement::basis_multiple(ring.poly_ring(), std::uint32_t(l), g));
      if (out_degrees)
        out_degrees->push_back(g.degree() + degrees[l]);
    }
  return out;
}

/// Gröbner basis of the submodule of S^r generated by `gens` and I*S^r.
inline GroebnerBasis submodule_basis(const GradedRing& ring, std::span<const int> degrees,
                                     std::span<const ModuleElement> gens) {
  std::vector<ModuleElement> all(gens.begin(), gens.end());
  auto im = ideal_multiples(ring, degrees);
  all.insert(all.end(), im.begin(), im.end());
  return buchberger(ring.poly_ring(), std::vector<int>(degrees.begin(), degrees.end()), all);
}

/**
 * Syzygies over R of the columns `cols` (elements of R^b with degrees
 * target_degrees), modulo the extra submodule `target_relations` of R^b.
 * Returns generators of {v in R^a : sum v_j cols_j in target_relations}, each
 * reduced mod I, zero vectors dropped.
 */
inline std::vector<ModuleElement> relative_syzygies(const GradedRing& ring, std::span<const ModuleElement> cols,
                                                    std::span<const int> col_degrees,
                                                    std::span<const int> target_degrees,
                                                    std::span<const ModuleElement> target_relations) {
  const std::size_t a = cols.size();
  if (a == 0)
    return {};
  std::vector<ModuleElement> all(cols.begin(), cols.end());
  std::vector<int> degs(col_degrees.begin(), col_degrees.end());
  for (const auto& r : target_relations) {
    if (r.is_zero())
      continue;
    all.push_back(r);
    degs.push_back(element_degree(r, target_degrees));
  }
  auto im = ideal_multiples(ring, target_degrees, &degs);
  all.insert(all.end(), im.begin(), im.end());

  std::vector<ModuleElement> out;
  for (const auto& syz : syzygies(ring.poly_ring(), target_degrees, all, degs)) {
    std::vector<ModTerm> head;
    for (const auto& t : syz.terms())
      if (t.comp < a)
        head.push_back(t);
    ModuleElement v = reduce_mod_ideal(ring, ModuleElement::from_sorted_terms(ring.poly_ring(), std::move(head)));
    if (!v.is_zero() && std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(std::move(v));
  }
  std::vector<int> src(col_degrees.begin(), col_degrees.end());
  std::stable_sort(out.begin(), out.end(), [&](const ModuleElement& x, const ModuleElement& y) {
    int dx = *x.degree(src), dy = *y.degree(src);
    if (dx != dy)
      return dx < dy;
    return compare(x.leading_term(), y.leading_term()) > 0;
  });
  return out;
}

/**
 * Generators of ker(A : R^a -> R^b / target_relations), where A is b x a,
 * homogeneous for the given source/target degrees. The zero matrix (or b = 0)
 * yields the standard basis.
 */
inline std::vector<ModuleElement> kernel(const GradedRing& ring, const PolyMatrix& a,
                                         std::span<const int> source_degrees, std::span<const int> target_degrees,
                                         std::span<const ModuleElement> target_relations = {}) {
  if (a.cols() != source_degrees.size() || a.rows() != target_degrees.size())
    throw AlgebraError("kernel: matrix shape does not match the degree lists");
  return relative_syzygies(ring, a.columns(), source_degrees, target_degrees, target_relations);
}

/**
 * A minimal homogeneous generating set of the submodule spanned by `gens`
 * modulo `base` (and I): generators are scanned by increasing degree and kept
 * only when not already in the span of the kept ones.
 */
inline std::vector<ModuleElement> minimal_generators(const GradedRing& ring, std::span<const int> degrees,
                                                     std::span<const ModuleElement> gens,
                                                     std::span<const ModuleElement> base = {}) {
  std::vector<std::pair<int, std::size_t>> order;
  for (std::size_t k = 0; k < gens.size(); ++k)
    if (!gens[k].is_zero())
      order.push_back({element_degree(gens[k], degrees), k});
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<ModuleElement> kept;
  std::vector<ModuleElement> span_gens(base.begin(), base.end());
  GroebnerBasis gb = submodule_basis(ring, degrees, span_gens);
  for (auto [deg, k] : order) {
    (void)deg;
    if (gb.reduce(gens[k]).is_zero())
      continue;
    kept.push_back(gens[k]);
    span_gens.push_back(gens[k]);
    gb = submodule_basis(ring, degrees, span_gens);
  }
  return kept;
}

/**
 * A graded module R^r(twists) / <relations>. Twist t on a generator means the
 * summand R(t), whose generator sits in degree -t.
 */
class PresentedModule {
public:
  PresentedModule(GradedRing ring, std::vector<int> twists, std::vector<ModuleElement> relations)
      : ring_(std::move(ring)), twists_(std::move(twists)) {
    const auto degs = degrees_from_twists(twists_);
    for (const auto& r : relations) {
      for (const auto& t : r.terms())
        if (t.comp >= twists_.size())
          throw AlgebraError("relation has a component beyond the number of generators");
      if (!r.is_homogeneous(degs))
        throw AlgebraError("relation is not homogeneous for the generator twists");
      ModuleElement v = reduce_mod_ideal(ring_, r);
      if (!v.is_zero())
        relations_.push_back(std::move(v));
    }
    gb_ = submodule_basis(ring_, degs, relations_);
  }

  static PresentedModule free(GradedRing ring, std::vector<int> twists) {
    return PresentedModule(std::move(ring), std::move(twists), {});
  }

  /// R/J for a homogeneous ideal J (generated in R).
  static PresentedModule cyclic(GradedRing ring, std::span<const Poly> ideal) {
    std::vector<ModuleElement> rels;
    for (const auto& f : ideal) {
      if (!f.is_homogeneous())
        throw AlgebraError("quotient generator " + f.to_string() + " is not homogeneous");
      rels.push_back(ModuleElement::basis_multiple(ring.poly_ring(), 0, f));
    }
    return PresentedModule(std::move(ring), {0}, std::move(rels));
  }

  const GradedRing& ring() const { return ring_; }
  std::size_t rank() const { return twists_.size(); }
  const std::vector<int>& twists() const { return twists_; }
  std::vector<int> generator_degrees() const { return degrees_from_twists(twists_); }
  const std::vector<ModuleElement>& relations() const { return relations_; }

  /// Gröbner basis of relations + I*(ambient basis).
  const GroebnerBasis& groebner_basis() const { return gb_; }

  ModuleElement reduce(const ModuleElement& v) const { return gb_.reduce(v); }
  bool is_zero_element(const ModuleElement& v) const { return gb_.reduce(v).is_zero(); }

  /// Count of standard monomials of the leading-term module, or nullopt when infinite.
  Length length() const {
    std::int64_t total = 0;
    for (std::uint32_t k = 0; k < rank(); ++k) {
      auto c = count_standard_monomials(gb_.leading_monomials(k), ring_.nvars());
      if (!c)
        return std::nullopt;
      total += *c;
    }
    return total;
  }

  /// Krull dimension; nullopt for the zero module.
  std::optional<int> dimension() const {
    std::optional<int> best;
    for (std::uint32_t k = 0; k < rank(); ++k) {
      auto d = monomial_dimension(gb_.leading_monomials(k), ring_.nvars());
      if (d && (!best || *d > *best))
        best = d;
    }
    return best;
  }

  bool is_zero() const { return !dimension().has_value(); }

  /**
   * An isomorphic presentation with no unit entries: generators killed by a
   * relation with a constant coefficient are eliminated, then the remaining
   * relations are cut down to a minimal generating set.
   */
  PresentedModule minimized() const {
    const PolyRing* S = ring_.poly_ring();
    std::vector<int> twists = twists_;
    std::vector<std::vector<Poly>> rels;
    for (const auto& r : relations_)
      rels.push_back(r.to_polys(twists.size()));

    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> pivot;
      for (std::size_t j = 0; j < rels.size() && !pivot; ++j)
        for (std::size_t k = 0; k < twists.size(); ++k)
          if (!rels[j][k].is_zero() && rels[j][k].is_constant()) {
            pivot = {{j, k}};
            break;
          }
      if (!pivot)
        break;
      auto [j, k] = *pivot;
      const std::uint32_t p = ring_.characteristic();
      const std::uint32_t cinv = fp::inv(rels[j][k].leading_term().coef, p);
      std::vector<Poly> piv = rels[j];
      std::vector<std::vector<Poly>> next;
      for (std::size_t q = 0; q < rels.size(); ++q) {
        if (q == j)
          continue;
        std::vector<Poly> v = rels[q];
        Poly factor = v[k].scaled(cinv);
        if (!factor.is_zero())
          for (std::size_t l = 0; l < v.size(); ++l)
            v[l] = ring_.normal_form(v[l] - factor * piv[l]);
        v.erase(v.begin() + long(k));
        if (std::any_of(v.begin(), v.end(), [](const Poly& f) { return !f.is_zero(); }))
          next.push_back(std::move(v));
      }
      twists.erase(twists.begin() + long(k));
      rels = std::move(next);
    }

    std::vector<ModuleElement> elems;
    for (const auto& v : rels)
      elems.push_back(ModuleElement::from_polys(S, v));
    const auto degs = degrees_from_twists(twists);
    auto minimal = minimal_generators(ring_, degs, elems);
    return PresentedModule(ring_, std::move(twists), std::move(minimal));
  }

private:
  GradedRing ring_;
  std::vector<int> twists_;
  std::vector<ModuleElement> relations_;
  GroebnerBasis gb_;
};

inline Length module_length(const PresentedModule& m) { return m.length(); }

} // namespace frobmult
