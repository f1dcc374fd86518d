#pragma once

/**
 * @file multiplicity.hpp
 * @brief Euler characteristics, intersection multiplicities, Euler forms,
 * Frobenius-normalized pairing sequences and their Vandermonde decomposition.
 *
 * A class [X] is never materialized: it is represented by its pairings
 * against caller-supplied test objects. For a free complex X with
 * s = codim Supp X, the sequence e ↦ p^{-es}·χ(F^e X, Y) is a finite sum
 * Σ_j c_j p^{-je}; the c_j are recovered exactly by a Vandermonde solve, and
 * c_0 is the Dutta multiplicity.
 */

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobmult/complexes.hpp"
#include "frobmult/errors.hpp"
#include "frobmult/exact_arith.hpp"
#include "frobmult/frobenius.hpp"

namespace frobmult {

/// Anything that can be paired against a free complex. Modules enter as complexes in degree 0.
using TestObject = std::variant<FreeComplex, PresentedComplex, OmegaComplex>;

inline PresentedComplex as_presented(const TestObject& y) {
  if (const auto* f = std::get_if<FreeComplex>(&y))
    return PresentedComplex(*f);
  if (const auto* o = std::get_if<OmegaComplex>(&y))
    return o->expand();
  return std::get<PresentedComplex>(y);
}

inline TestObject module_object(const PresentedModule& m) { return PresentedComplex::module(m); }

// ---------------------------------------------------------------------------
// Euler characteristic and pairings

/// Σ (-1)^i length H_i(Z). Throws HypothesisError if some H_i has infinite length.
inline Rational euler_char(const PresentedComplex& z) {
  Rational acc = 0;
  for (int i = z.lo(); i <= z.hi(); ++i) {
    Length l = homology_length(z, i);
    if (!l)
      throw HypothesisError("H_" + std::to_string(i) + " has infinite length; the Euler characteristic is undefined");
    acc += (i % 2 ? -1 : 1) * Rational(*l);
  }
  return acc;
}

inline Rational euler_char(const FreeComplex& z) { return euler_char(PresentedComplex(z)); }
inline Rational euler_char(const TestObject& z) { return euler_char(as_presented(z)); }

/// χ(X, Y) = χ(X ⊗ Y).
inline Rational chi(const FreeComplex& x, const TestObject& y) { return euler_char(tensor(x, as_presented(y))); }

/// ξ(X, Y) = χ(Hom(X, Y)); X must be free (Y may be an ω-complex).
inline Rational xi(const FreeComplex& x, const TestObject& y) { return euler_char(hom_complex(x, as_presented(y))); }

/// max_i dim H_i; nullopt when the object is acyclic.
inline std::optional<int> support_dim(const TestObject& y) { return support_dim(as_presented(y)); }

// ---------------------------------------------------------------------------
// Hypotheses

/**
 * A free complex X together with s = codim Supp X and the policy for the
 * dimension hypothesis dim Supp X + dim Supp Y ≤ dim R. In lenient mode a
 * violation becomes a warning. Infinite-length homology is never downgraded.
 */
class PairingContext {
public:
  explicit PairingContext(FreeComplex x, bool lenient = false) : x_(std::move(x)), lenient_(lenient) {
    auto d = frobmult::support_dim(x_);
    if (!d)
      throw HypothesisError("the complex is acyclic; its support is empty");
    dim_ = *d;
    codim_ = x_.ring().krull_dim() - dim_;
  }

  const FreeComplex& x() const { return x_; }
  const GradedRing& ring() const { return x_.ring(); }
  std::uint32_t p() const { return x_.ring().characteristic(); }
  int support_dim() const { return dim_; }
  int codim() const { return codim_; }
  bool lenient() const { return lenient_; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(std::string w) const {
    if (std::find(warnings_.begin(), warnings_.end(), w) == warnings_.end())
      warnings_.push_back(std::move(w));
  }

  /// Checks dim Supp X + dim Supp Y ≤ dim R for a test object; returns dim Supp Y (nullopt if acyclic).
  std::optional<int> check(const TestObject& y) const {
    require_same_ring(ring(), as_presented(y).ring());
    auto dy = frobmult::support_dim(y);
    if (dy && dim_ + *dy > ring().krull_dim()) {
      std::string msg = "dim Supp X + dim Supp Y = " + std::to_string(dim_ + *dy) + " exceeds dim R = " +
                        std::to_string(ring().krull_dim());
      if (!lenient_)
        throw HypothesisError(msg);
      warn(msg);
    }
    return dy;
  }

private:
  FreeComplex x_;
  bool lenient_;
  int dim_ = 0;
  int codim_ = 0;
  mutable std::vector<std::string> warnings_;
};

/// max(0, codim Supp X - 2): an upper bound for the vanishing dimension, the default order.
inline int vdim_bound(const FreeComplex& x) {
  auto c = codim(x);
  if (!c)
    throw HypothesisError("the complex is acyclic; its codimension is undefined");
  return std::max(0, *c - 2);
}

// ---------------------------------------------------------------------------
// Vandermonde decomposition

struct HeldOut {
  int e;
  Rational predicted;
  Rational actual;
};

/// Components c_0..c_u of a sequence a_e = Σ_j c_j p^{-je}, fitted on e = 0..u.
struct EigenDecomposition {
  std::uint32_t p = 2;
  int order = 0;
  std::vector<Rational> sequence;    // a_0..a_u
  std::vector<Rational> components;  // c_0..c_u
  std::optional<HeldOut> held_out;   // a_{u+1} predicted vs computed

  Rational predicted(int e) const {
    Rational acc = 0;
    for (std::size_t j = 0; j < components.size(); ++j)
      acc += components[j] * rational_power(p, -long(j) * e);
    return acc;
  }
  bool validated() const { return held_out && held_out->predicted == held_out->actual; }
  Rational residual() const { return held_out ? held_out->actual - held_out->predicted : Rational(0); }
};

/// Fits components to a_0..a_u on the nodes 1, p^{-1}, ..., p^{-u}.
inline EigenDecomposition fit_decomposition(std::uint32_t p, std::vector<Rational> sequence) {
  if (sequence.empty())
    throw AlgebraError("cannot decompose an empty sequence");
  EigenDecomposition d;
  d.p = p;
  d.order = int(sequence.size()) - 1;
  std::vector<Rational> nodes;
  for (int j = 0; j <= d.order; ++j)
    nodes.push_back(rational_power(p, -j));
  d.components = solve_vandermonde(nodes, sequence);
  d.sequence = std::move(sequence);
  return d;
}

/// Evaluates a_0..a_{u+1}, fits on the first u+1 values and holds out the last one.
inline EigenDecomposition decompose_sequence(std::uint32_t p, int u, const std::function<Rational(int)>& value) {
  if (u < 0)
    throw AlgebraError("the decomposition order must be non-negative");
  std::vector<Rational> seq;
  for (int e = 0; e <= u; ++e)
    seq.push_back(value(e));
  EigenDecomposition d = fit_decomposition(p, std::move(seq));
  d.held_out = HeldOut{u + 1, d.predicted(u + 1), value(u + 1)};
  return d;
}

/// p^{-es}·χ(F^e X, Y) for e = 0..u.
inline std::vector<Rational> phi_sequence(const PairingContext& ctx, const TestObject& y, int u) {
  ctx.check(y);
  std::vector<Rational> out;
  for (int e = 0; e <= u; ++e)
    out.push_back(rational_power(ctx.p(), -long(e) * ctx.codim()) * chi(lf(ctx.x(), unsigned(e)), y));
  return out;
}

inline EigenDecomposition decompose(const PairingContext& ctx, const TestObject& y, std::optional<int> order = {}) {
  ctx.check(y);
  const int u = order ? *order : vdim_bound(ctx.x());
  return decompose_sequence(ctx.p(), u, [&](int e) {
    return rational_power(ctx.p(), -long(e) * ctx.codim()) * chi(lf(ctx.x(), unsigned(e)), y);
  });
}

/// χ_∞(X, Y): the degree-0 component.
inline Rational dutta(const PairingContext& ctx, const TestObject& y, std::optional<int> order = {}) {
  return decompose(ctx, y, order).components.front();
}

struct XiAnalogs {
  EigenDecomposition upper;                // ξ^∞ from e ↦ p^{-es} ξ(F^e X, Y)
  std::optional<EigenDecomposition> lower; // ξ_∞ from e ↦ p^{-et} ξ(X, G^e Y), ω-complexes only
  Rational xi_upper() const { return upper.components.front(); }
  std::optional<Rational> xi_lower() const {
    if (!lower)
      return std::nullopt;
    return lower->components.front();
  }
};

inline XiAnalogs xi_analogs(const PairingContext& ctx, const TestObject& y, std::optional<int> order = {}) {
  auto dy = ctx.check(y);
  const int u = order ? *order : vdim_bound(ctx.x());
  XiAnalogs out{decompose_sequence(ctx.p(), u,
                                   [&](int e) {
                                     return rational_power(ctx.p(), -long(e) * ctx.codim()) *
                                            xi(lf(ctx.x(), unsigned(e)), y);
                                   }),
                std::nullopt};
  if (const auto* w = std::get_if<OmegaComplex>(&y); w && dy) {
    const int t = ctx.ring().krull_dim() - *dy;
    out.lower = decompose_sequence(ctx.p(), u, [&](int e) {
      return rational_power(ctx.p(), -long(e) * t) * xi(ctx.x(), TestObject(g_on_omega(*w, unsigned(e))));
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checkers

struct SelfDualityCase {
  Rational chi;
  Rational signed_xi;  // (-1)^s ξ
  std::vector<Rational> components;
  std::vector<Rational> star_components;
  std::vector<Rational> expected_star;  // (-1)^{i+s} c_i
  bool pairing_ok() const { return chi == signed_xi; }
  bool components_ok() const { return star_components == expected_star; }
  bool ok() const { return pairing_ok() && components_ok(); }
};

struct SelfDualityVerdict {
  std::vector<SelfDualityCase> cases;
  bool pass() const {
    return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.ok(); });
  }
};

/**
 * For each test Y: χ(X, Y) against (-1)^s ξ(X, Y), and the decomposition of
 * X^* against (-1)^s times the alternating-sign decomposition of X.
 */
inline SelfDualityVerdict check_self_duality(const PairingContext& ctx, std::span<const TestObject> tests,
                                             std::optional<int> order = {}) {
  if (tests.empty())
    throw AlgebraError("self-duality check needs at least one test object");
  const int u = order ? *order : vdim_bound(ctx.x());
  const int s = ctx.codim();
  const int sign_s = s % 2 ? -1 : 1;
  PairingContext star(star_dual(ctx.x()), ctx.lenient());
  SelfDualityVerdict v;
  for (const auto& y : tests) {
    SelfDualityCase c;
    c.chi = chi(ctx.x(), y);
    c.signed_xi = sign_s * xi(ctx.x(), y);
    c.components = decompose(ctx, y, u).components;
    c.star_components = fit_decomposition(ctx.p(), phi_sequence(star, y, u)).components;
    for (std::size_t i = 0; i < c.components.size(); ++i)
      c.expected_star.push_back(((int(i) + s) % 2 ? -1 : 1) * c.components[i]);
    v.cases.push_back(std::move(c));
  }
  for (const auto& w : star.warnings())
    ctx.warn(w);
  return v;
}

struct VanishingRow {
  std::string side;  // "F" or "G"
  int e;
  Rational actual;
  Rational expected;
  bool ok() const { return actual == expected; }
};

struct NumericalVanishingVerdict {
  std::vector<VanishingRow> rows;
  std::vector<std::string> notes;
  bool f_checked = false;
  bool g_checked = false;
  bool pass() const {
    return (f_checked || g_checked) &&
           std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.ok(); });
  }
};

/**
 * For a finite-length module N of finite projective dimension, with F its
 * resolution and d = dim R:
 *   F side: χ(F^e F) = p^{ed}·length N;
 *   G side (R Cohen–Macaulay): χ(G^e F^†) = p^{ed}·χ(F^†).
 */
inline NumericalVanishingVerdict check_numerical_vanishing(const PresentedModule& n, int e_max,
                                                           std::optional<int> max_steps = {}) {
  const GradedRing& R = n.ring();
  Length len = n.length();
  if (!len)
    throw HypothesisError("the module does not have finite length");
  NumericalVanishingVerdict v;
  Resolution res = resolve(n, max_steps ? *max_steps : int(R.nvars()) + 1);
  if (!res.terminated) {
    v.notes.push_back("resolution did not terminate; projective dimension not certified finite");
    return v;
  }
  const int d = R.krull_dim();
  const std::uint32_t p = R.characteristic();
  for (int e = 1; e <= e_max; ++e) {
    Rational q = rational_power(p, long(e) * d);
    v.rows.push_back({"F", e, euler_char(lf(res.complex, unsigned(e))), q * Rational(*len)});
  }
  v.f_checked = true;
  try {
    OmegaComplex y = dagger(res.complex, canonical_module(R));
    Rational base = euler_char(y.expand());
    for (int e = 1; e <= e_max; ++e) {
      Rational q = rational_power(p, long(e) * d);
      v.rows.push_back({"G", e, euler_char(g_on_omega(y, unsigned(e)).expand()), q * base});
    }
    v.g_checked = true;
  } catch (const UnsupportedRingError& err) {
    v.notes.push_back(std::string("G side skipped: ") + err.what());
  }
  return v;
}

// ---------------------------------------------------------------------------
// Aggregate report

struct MultiplicityReport {
  Rational chi;
  Rational xi;
  Rational chi_infinity;
  Rational xi_upper;
  std::optional<Rational> xi_lower;
  int dim_x = 0;
  std::optional<int> dim_y;
  int codim_x = 0;
  int vdim_upper_bound = 0;
  EigenDecomposition decomposition;
  SelfDualityVerdict self_duality;
};

inline MultiplicityReport multiplicity_report(const PairingContext& ctx, const TestObject& y,
                                              std::optional<int> order = {}) {
  MultiplicityReport r;
  r.dim_y = ctx.check(y);
  r.dim_x = ctx.support_dim();
  r.codim_x = ctx.codim();
  r.vdim_upper_bound = vdim_bound(ctx.x());
  r.chi = chi(ctx.x(), y);
  r.xi = xi(ctx.x(), y);
  r.decomposition = decompose(ctx, y, order);
  r.chi_infinity = r.decomposition.components.front();
  XiAnalogs a = xi_analogs(ctx, y, order);
  r.xi_upper = a.xi_upper();
  r.xi_lower = a.xi_lower();
  std::vector<TestObject> one{y};
  r.self_duality = check_self_duality(ctx, one, order);
  return r;
}

} // namespace frobmult
