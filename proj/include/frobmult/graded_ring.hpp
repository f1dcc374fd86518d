#pragma once

/**
 * @file graded_ring.hpp
 * @brief R = F_p[x_1..x_n]/I for a homogeneous ideal I.
 *
 * The Gröbner basis of I (degrevlex, declared variable order) and the Krull
 * dimension are computed when the ring is built; afterwards a GradedRing is an
 * immutable, cheaply copyable handle. Elements of R are polynomials of S in
 * normal form.
 */

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "frobmult/errors.hpp"
#include "frobmult/groebner.hpp"
#include "frobmult/poly.hpp"
#include "frobmult/poly_parse.hpp"

namespace frobmult {

class GradedRing {
public:
  GradedRing(PolyRingPtr poly, std::vector<Poly> ideal) {
    auto d = std::make_shared<Data>();
    d->poly = std::move(poly);
    for (auto& f : ideal) {
      common_ring(Poly(d->poly.get()), f);
      if (!f.is_homogeneous())
        throw AlgebraError("ideal generator " + f.to_string() + " is not homogeneous");
      if (!f.is_zero())
        d->ideal.push_back(std::move(f));
    }
    d->gb = buchberger(d->poly.get(), d->ideal);
    d->gb_polys = to_polys(d->gb);
    d->leading = d->gb.leading_monomials(0);
    auto dim = monomial_dimension(d->leading, d->poly->nvars());
    if (!dim)
      throw AlgebraError("the ideal is the unit ideal");
    d->krull_dim = *dim;
    d_ = std::move(d);
  }

  GradedRing(std::uint32_t p, std::vector<std::string> vars, const std::vector<std::string>& ideal)
      : GradedRing(parse_ideal(make_poly_ring(p, std::move(vars)), ideal)) {}

  static GradedRing polynomial_ring(std::uint32_t p, std::vector<std::string> vars) {
    return GradedRing(make_poly_ring(p, std::move(vars)), {});
  }

  /// The ambient polynomial ring S, sharing this ring's variables.
  GradedRing ambient() const { return GradedRing(d_->poly, {}); }

  std::uint32_t characteristic() const { return d_->poly->characteristic(); }
  std::size_t nvars() const { return d_->poly->nvars(); }
  const std::vector<std::string>& var_names() const { return d_->poly->names(); }
  const PolyRing* poly_ring() const { return d_->poly.get(); }
  const PolyRingPtr& poly_ring_ptr() const { return d_->poly; }

  const std::vector<Poly>& ideal() const { return d_->ideal; }
  const GroebnerBasis& groebner_basis() const { return d_->gb; }
  const std::vector<Poly>& groebner_polys() const { return d_->gb_polys; }
  const std::vector<Monomial>& leading_monomials() const { return d_->leading; }
  int krull_dim() const { return d_->krull_dim; }
  bool is_polynomial_ring() const { return d_->gb_polys.empty(); }

  Poly zero() const { return Poly(poly_ring()); }
  Poly one() const { return Poly::constant(poly_ring(), 1); }
  Poly var(std::size_t i) const { return Poly::variable(poly_ring(), i); }
  Poly parse(std::string_view text) const { return parse_poly(poly_ring(), text); }

  /// Remainder of f on division by the Gröbner basis of I.
  Poly normal_form(const Poly& f) const {
    if (f.is_zero() || d_->gb_polys.empty())
      return f.ring() ? f : zero();
    common_ring(Poly(poly_ring()), f);
    return d_->gb.reduce(ModuleElement::basis_multiple(poly_ring(), 0, f)).component(0);
  }

  /// Standard monomials of degree d: a k-basis of R_d.
  std::vector<Monomial> monomial_basis(int d) const {
    return standard_monomials_of_degree(d_->leading, nvars(), d);
  }

  std::size_t hilbert_function(int d) const { return monomial_basis(d).size(); }

  int max_generator_degree() const {
    int m = 0;
    for (const auto& f : d_->ideal)
      m = std::max(m, f.degree());
    return m;
  }

  friend bool operator==(const GradedRing& a, const GradedRing& b) {
    if (a.d_ == b.d_)
      return true;
    return *a.d_->poly == *b.d_->poly && a.d_->gb_polys == b.d_->gb_polys;
  }

private:
  struct Data {
    PolyRingPtr poly;
    std::vector<Poly> ideal;
    GroebnerBasis gb;
    std::vector<Poly> gb_polys;
    std::vector<Monomial> leading;
    int krull_dim = 0;
  };

  struct Parsed {
    PolyRingPtr poly;
    std::vector<Poly> gens;
  };
  explicit GradedRing(Parsed p) : GradedRing(std::move(p.poly), std::move(p.gens)) {}
  static Parsed parse_ideal(PolyRingPtr poly, const std::vector<std::string>& ideal) {
    Parsed out{poly, {}};
    for (const auto& s : ideal)
      out.gens.push_back(parse_poly(poly.get(), s));
    return out;
  }

  std::shared_ptr<const Data> d_;
};

inline void require_same_ring(const GradedRing& a, const GradedRing& b) {
  if (!(a == b))
    throw AlgebraError("objects live over different rings");
}

} // namespace frobmult
