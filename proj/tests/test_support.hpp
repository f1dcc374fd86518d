#pragma once

// Readable failure messages for library types, plus small shared builders.

#include <ostream>
#include <random>

#include "frobmult/graded_ring.hpp"
#include "frobmult/groebner.hpp"
#include "frobmult/poly.hpp"

namespace frobmult {

inline void PrintTo(const Poly& f, std::ostream* os) { *os << (f.ring() ? f.to_string() : std::string("0")); }

inline void PrintTo(const ModuleElement& v, std::ostream* os) {
  *os << "[";
  bool first = true;
  for (const auto& t : v.terms()) {
    if (!first)
      *os << " + ";
    first = false;
    *os << t.coef << "*" << monomial_to_string(t.mono, *v.ring()) << "*e" << t.comp;
  }
  *os << "]";
}

namespace testing_support {

/// A random form of degree deg built from `terms` random monomials (terms may cancel).
inline Poly random_form(const GradedRing& r, std::mt19937& rng, int deg, int terms = 3) {
  Poly f = r.zero();
  auto monos = monomials_of_degree(r.nvars(), unsigned(deg));
  for (int k = 0; k < terms; ++k)
    f += Poly::monomial(r.poly_ring(), monos[rng() % monos.size()],
                        1 + std::uint32_t(rng() % (r.characteristic() - 1)));
  return f;
}

} // namespace testing_support

} // namespace frobmult
