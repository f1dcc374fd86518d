#pragma once

/**
 * @file frobenius.hpp
 * @brief The Frobenius functor on free complexes, the canonical module of a
 * Cohen–Macaulay quotient, and complexes of copies of it.
 *
 * On a free complex, F^e raises every differential entry to the p^e-th power.
 * Twists are multiplied by p^e so the result stays homogeneous; lengths do
 * not depend on the grading.
 */

#include <string>
#include <vector>

#include "frobmult/complexes.hpp"
#include "frobmult/errors.hpp"
#include "frobmult/graded_ring.hpp"
#include "frobmult/poly_matrix.hpp"
#include "frobmult/presented_module.hpp"

namespace frobmult {

/// The e-fold bracket power: every generator raised to the p^e-th power.
inline std::vector<Poly> bracket_power(std::span<const Poly> gens, unsigned e) {
  std::vector<Poly> out;
  out.reserve(gens.size());
  for (const auto& g : gens)
    out.push_back(frobenius_power(g, e));
  return out;
}

namespace detail {

inline PolyMatrix frobenius_matrix(const GradedRing& ring, const PolyMatrix& m, unsigned e) {
  return m.map_entries([&](const Poly& f) { return ring.normal_form(frobenius_power(f, e)); });
}

inline std::int64_t frobenius_scale(const GradedRing& ring, unsigned e) {
  std::int64_t q = 1;
  for (unsigned i = 0; i < e; ++i)
    q *= ring.characteristic();
  return q;
}

} // namespace detail

/// LF^e(X): same ranks, entries raised to the p^e-th power, twists scaled by p^e.
inline FreeComplex lf(const FreeComplex& x, unsigned e) {
  if (e == 0)
    return x;
  const GradedRing& R = x.ring();
  const std::int64_t q = detail::frobenius_scale(R, e);
  detail::ComplexData out = x.data();
  for (auto& tw : out.twists)
    for (int& t : tw)
      t = int(t * q);
  for (auto& m : out.maps)
    m = detail::frobenius_matrix(R, m, e);
  return FreeComplex::from_data(std::move(out));
}

/**
 * ω_R = Ext^c_S(R, S(-n)) for R = S/I Cohen–Macaulay of codimension c, with
 * S the ambient polynomial ring in n variables.
 */
class CanonicalModule {
public:
  CanonicalModule(PresentedModule omega, int codim) : omega_(std::move(omega)), codim_(codim) {}

  const PresentedModule& module() const { return omega_; }
  const GradedRing& ring() const { return omega_.ring(); }
  int codim() const { return codim_; }
  std::size_t rank() const { return omega_.rank(); }
  const std::vector<int>& twists() const { return omega_.twists(); }
  const std::vector<ModuleElement>& relations() const { return omega_.relations(); }

  /// True when ω ≅ R(a) for some a, i.e. R is Gorenstein.
  bool is_free_rank_one() const {
    PresentedModule m = omega_.minimized();
    return m.rank() == 1 && m.relations().empty();
  }

private:
  PresentedModule omega_;
  int codim_;
};

/**
 * Resolves R over S and dualizes the last map. Throws UnsupportedRingError
 * unless the minimal resolution has length exactly codim (Cohen–Macaulay).
 */
inline CanonicalModule canonical_module(const GradedRing& ring) {
  const int n = int(ring.nvars());
  const int c = n - ring.krull_dim();
  if (c == 0)
    return CanonicalModule(PresentedModule::free(ring, {-n}), 0);

  GradedRing S = ring.ambient();
  Resolution res = resolve(PresentedModule::cyclic(S, ring.ideal()), n + 1);
  if (!res.terminated)
    throw UnsupportedRingError("the resolution of the ring over its ambient polynomial ring did not terminate");
  const int len = res.complex.hi();
  if (len != c)
    throw UnsupportedRingError("ring is not Cohen-Macaulay: projective dimension " + std::to_string(len) +
                               " exceeds codimension " + std::to_string(c));

  const FreeComplex& F = res.complex;
  std::vector<int> twists;
  for (int t : F.twists(c))
    twists.push_back(-t - n);
  // ω is the cokernel of d_c^T; its relations are the rows of d_c.
  const PolyMatrix dc = F.d(c);
  std::vector<ModuleElement> rels;
  for (std::size_t r = 0; r < dc.rows(); ++r) {
    std::vector<Poly> row;
    for (std::size_t j = 0; j < dc.cols(); ++j)
      row.push_back(dc(r, j));
    ModuleElement v = reduce_mod_ideal(ring, ModuleElement::from_polys(ring.poly_ring(), row));
    if (!v.is_zero())
      rels.push_back(std::move(v));
  }
  return CanonicalModule(PresentedModule(ring, std::move(twists), std::move(rels)), c);
}

/**
 * A complex whose terms are direct sums of twisted copies of ω. It is stored
 * as a pattern free complex: pattern term i with twists t_l stands for
 * ⊕_l ω(t_l), and pattern matrices act through Hom(ω, ω) = R.
 */
class OmegaComplex {
public:
  OmegaComplex(CanonicalModule omega, FreeComplex pattern) : omega_(std::move(omega)), pattern_(std::move(pattern)) {
    require_same_ring(omega_.ring(), pattern_.ring());
  }

  const CanonicalModule& omega() const { return omega_; }
  const FreeComplex& pattern() const { return pattern_; }
  const GradedRing& ring() const { return pattern_.ring(); }
  int lo() const { return pattern_.lo(); }
  int hi() const { return pattern_.hi(); }

  /// The complex of presented modules: generator (l, y) of term i has index l*g + y and twist t_l + s_y.
  PresentedComplex expand() const {
    const std::size_t g = omega_.rank();
    const auto& s = omega_.twists();
    detail::ComplexData out(ring());
    out.lo = pattern_.lo();
    for (int i = pattern_.lo(); i <= pattern_.hi(); ++i) {
      std::vector<int> tw;
      for (int t : pattern_.twists(i))
        for (int sy : s)
          tw.push_back(t + sy);
      out.twists.push_back(std::move(tw));
      out.relations.push_back(detail::repeat_relations(omega_.relations(), pattern_.rank(i), g));
      out.maps.push_back(kron_identity(pattern_.d(i), g));
    }
    return PresentedComplex::from_data(std::move(out));
  }

private:
  CanonicalModule omega_;
  FreeComplex pattern_;
};

/// G^e on an ω-complex: pattern entries raised to the p^e-th power.
inline OmegaComplex g_on_omega(const OmegaComplex& y, unsigned e) { return OmegaComplex(y.omega(), lf(y.pattern(), e)); }

/// X^† = Hom(X, ω) for a free complex X, as an ω-complex.
inline OmegaComplex dagger(const FreeComplex& x, const CanonicalModule& omega) {
  return OmegaComplex(omega, star_dual(x));
}

inline OmegaComplex dagger(const FreeComplex& x) { return dagger(x, canonical_module(x.ring())); }

} // namespace frobmult
