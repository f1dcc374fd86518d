#include <gtest/gtest.h>

#include <map>
#include <random>

#include "frobmult/graded_ring.hpp"

using namespace frobmult;

namespace {

Poly random_poly(const GradedRing& r, std::mt19937& rng, int max_deg, bool homogeneous) {
  int d = int(rng() % (max_deg + 1));
  Poly f = r.zero();
  for (int k = 0; k < 4; ++k) {
    int deg = homogeneous ? d : int(rng() % (max_deg + 1));
    auto monos = monomials_of_degree(r.nvars(), unsigned(deg));
    f += Poly::monomial(r.poly_ring(), monos[rng() % monos.size()], std::uint32_t(rng() % r.characteristic()));
  }
  return f;
}

/// dim_k (S/I)_d by linear algebra on the spanning set {m*g} of I_d.
std::size_t hilbert_by_linear_algebra(const GradedRing& r, int d) {
  auto basis = monomials_of_degree(r.nvars(), unsigned(d));
  std::map<Monomial, std::size_t, Monomial::Greater> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index[basis[i]] = i;
  std::vector<Poly> span;
  for (const auto& g : r.ideal())
    if (g.degree() <= d)
      for (const auto& m : monomials_of_degree(r.nvars(), unsigned(d - g.degree())))
        span.push_back(g.times_term(m, 1));
  FpMatrix mat(std::max<std::size_t>(span.size(), 1), basis.size(), r.characteristic());
  for (std::size_t i = 0; i < span.size(); ++i)
    for (const auto& t : span[i].terms())
      mat(i, index.at(t.mono)) = t.coef;
  return basis.size() - mat.rank();
}

} // namespace

TEST(PolyArithmetic, FreshmansDreamOverF2) {
  GradedRing r = GradedRing::polynomial_ring(2, {"x", "y"});
  Poly s = r.parse("x+y");
  EXPECT_EQ(s * s, r.parse("x^2+y^2"));
}

TEST(PolyArithmetic, AddZeroIsIdentity) {
  GradedRing r = GradedRing::polynomial_ring(3, {"x", "y", "z"});
  Poly f = r.parse("x^2*y - 3*z + 2");
  EXPECT_EQ(f + r.zero(), f);
  EXPECT_EQ(f + Poly(), f);
}

TEST(PolyArithmetic, DifferenceOfSquaresOverF5) {
  GradedRing r = GradedRing::polynomial_ring(5, {"x", "y"});
  EXPECT_EQ(r.parse("x+y") * r.parse("x-y"), r.parse("x^2-y^2"));
  EXPECT_EQ((r.parse("x+y") * r.parse("x-y")).to_string(), "x^2 - y^2");
}

TEST(PolyArithmetic, RingMismatchThrows) {
  GradedRing a = GradedRing::polynomial_ring(2, {"x", "y"});
  GradedRing b = GradedRing::polynomial_ring(3, {"x", "y"});
  EXPECT_THROW(a.var(0) + b.var(0), AlgebraError);
  EXPECT_THROW(a.var(0) * b.var(1), AlgebraError);
}

TEST(PolyArithmetic, NoZeroCoefficientsStored) {
  GradedRing r = GradedRing::polynomial_ring(3, {"x", "y"});
  Poly f = r.parse("x + 2*x + y");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f, r.var(1));
  for (const auto& t : (r.parse("x-y") * r.parse("x+y+1")).terms())
    EXPECT_NE(t.coef, 0u);
}

TEST(Parser, GrammarAndErrors) {
  GradedRing r = GradedRing::polynomial_ring(7, {"x", "y", "z"});
  EXPECT_EQ(r.parse("x^2*y - 3*z"), r.var(0) * r.var(0) * r.var(1) - r.var(2).scaled(3));
  EXPECT_EQ(r.parse("-(x+y)^2"), -(r.parse("x^2 + 2*x*y + y^2")));
  EXPECT_EQ(r.parse(" 9 "), Poly::constant(r.poly_ring(), 2));
  EXPECT_EQ(r.parse("x*(y+z) - x*y"), r.parse("x*z"));
  EXPECT_THROW(r.parse("x +"), ParseError);
  EXPECT_THROW(r.parse("w"), ParseError);
  EXPECT_THROW(r.parse("(x"), ParseError);
  EXPECT_THROW(r.parse("x^"), ParseError);
  EXPECT_THROW(r.parse("x y"), ParseError);
}

TEST(Parser, ToStringRoundTrips) {
  GradedRing r = GradedRing::polynomial_ring(5, {"x", "y", "z"});
  std::mt19937 rng(4);
  for (int it = 0; it < 100; ++it) {
    Poly f = random_poly(r, rng, 4, false);
    EXPECT_EQ(r.parse(f.to_string()), f) << f.to_string();
  }
}

TEST(GradedRingConstruction, RejectsBadInput) {
  EXPECT_THROW(GradedRing(4, {"x"}, {}), AlgebraError);
  EXPECT_THROW(GradedRing(2, {"x", "y"}, {"x^2 + y"}), AlgebraError);
  EXPECT_THROW(GradedRing(2, {"x", "x"}, {}), AlgebraError);
  EXPECT_THROW(GradedRing(2, {"x"}, {"1"}), AlgebraError);
  EXPECT_THROW(GradedRing(2, {"x"}, {"q"}), ParseError);
}

TEST(GradedRingConstruction, KrullDimension) {
  EXPECT_EQ(GradedRing(5, {"x", "y"}, {}).krull_dim(), 2);
  EXPECT_EQ(GradedRing(5, {"x", "y"}, {"x", "y"}).krull_dim(), 0);
  EXPECT_EQ(GradedRing(5, {"x", "y"}, {"x*y"}).krull_dim(), 1);
  EXPECT_EQ(GradedRing(2, {"x", "y", "z", "w"}, {"x*w - y*z"}).krull_dim(), 3);
}

TEST(NormalForm, Examples) {
  GradedRing r(2, {"x", "y"}, {"x*y"});
  EXPECT_TRUE(r.normal_form(r.parse("x*y")).is_zero());
  GradedRing r2(2, {"x", "y"}, {"x*y", "x+y"});
  EXPECT_TRUE(r2.normal_form(r2.parse("x^2")).is_zero());
  EXPECT_EQ(r2.normal_form(r2.parse("x")), r2.parse("y"));
  EXPECT_EQ(r.normal_form(r.parse("x^3 + y")), r.parse("x^3 + y"));
}

TEST(NormalForm, IdempotentAndMultiplicative) {
  std::mt19937 rng(21);
  GradedRing r(3, {"x", "y", "z"}, {"x*y - z^2", "y^3"});
  for (int it = 0; it < 60; ++it) {
    Poly f = random_poly(r, rng, 4, false), g = random_poly(r, rng, 3, false);
    Poly nf = r.normal_form(f);
    EXPECT_EQ(r.normal_form(nf), nf);
    EXPECT_EQ(r.normal_form(f * g), r.normal_form(nf * r.normal_form(g)));
    // f - NF(f) lies in I: its normal form vanishes.
    EXPECT_TRUE(r.normal_form(f - nf).is_zero());
  }
}

TEST(MonomialBasis, Examples) {
  GradedRing r = GradedRing::polynomial_ring(3, {"x", "y"});
  auto b = r.monomial_basis(2);
  ASSERT_EQ(b.size(), 3u);
  EXPECT_EQ(b[0], Monomial::from_exponents(std::vector<int>{2, 0}));
  EXPECT_EQ(b[1], Monomial::from_exponents(std::vector<int>{1, 1}));
  EXPECT_EQ(b[2], Monomial::from_exponents(std::vector<int>{0, 2}));

  GradedRing q(2, {"x", "y"}, {"x*y"});
  auto b3 = q.monomial_basis(3);
  ASSERT_EQ(b3.size(), 2u);
  EXPECT_EQ(b3[0], Monomial::from_exponents(std::vector<int>{3, 0}));
  EXPECT_EQ(b3[1], Monomial::from_exponents(std::vector<int>{0, 3}));

  GradedRing art(2, {"x", "y"}, {"x^2", "x*y", "y^2"});
  EXPECT_TRUE(art.monomial_basis(2).empty());
  EXPECT_TRUE(art.monomial_basis(7).empty());
}

TEST(MonomialBasis, MatchesHilbertFunction) {
  GradedRing free3 = GradedRing::polynomial_ring(2, {"x", "y", "z"});
  for (int d = 0; d < 8; ++d)
    EXPECT_EQ(free3.monomial_basis(d).size(), std::size_t((d + 2) * (d + 1) / 2));
  for (const auto& ideal : std::vector<std::vector<std::string>>{
           {"x*y"}, {"x^2 + y*z", "x*y*z"}, {"x^2 - y^2", "x*z", "z^3 + y^3"}, {"x*y - z^2", "y^3"}}) {
    GradedRing r(3, {"x", "y", "z"}, ideal);
    for (int d = 0; d < 7; ++d)
      EXPECT_EQ(r.hilbert_function(d), hilbert_by_linear_algebra(r, d)) << "degree " << d;
  }
}

TEST(FrobeniusPower, Examples) {
  GradedRing r2 = GradedRing::polynomial_ring(2, {"x", "y"});
  EXPECT_EQ(frobenius_power(r2.parse("x+y"), 1), r2.parse("x^2+y^2"));
  Poly f = r2.parse("x^3*y + x + 1");
  EXPECT_EQ(frobenius_power(f, 0), f);
  GradedRing r3 = GradedRing::polynomial_ring(3, {"x", "y"});
  EXPECT_EQ(frobenius_power(r3.parse("x+y"), 1), r3.parse("x^3+y^3"));
  EXPECT_EQ(frobenius_power(r3.parse("x+y"), 1), r3.parse("(x+y)^3"));
}

TEST(FrobeniusPower, RingHomomorphismProperty) {
  std::mt19937 rng(8);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    GradedRing r = GradedRing::polynomial_ring(p, {"x", "y", "z"});
    for (int it = 0; it < 20; ++it) {
      Poly f = random_poly(r, rng, 3, false), g = random_poly(r, rng, 3, false);
      for (unsigned e : {1u, 2u}) {
        EXPECT_EQ(frobenius_power(f * g, e), frobenius_power(f, e) * frobenius_power(g, e));
        EXPECT_EQ(frobenius_power(f + g, e), frobenius_power(f, e) + frobenius_power(g, e));
      }
      EXPECT_EQ(frobenius_power(f, 1), f.pow(p));
    }
  }
}
