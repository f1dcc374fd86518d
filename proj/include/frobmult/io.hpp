#pragma once

/**
 * @file io.hpp
 * @brief JSON problem files: ring, named objects, task list; and the
 * serialization of complexes used by both problem files and reports.
 *
 * A complex is written as
 *
 *     {"degrees": {"0": {"twists": [0]}, "1": {"twists": [-1, -1]}},
 *      "maps":    {"1": [["x", "y"]]}}
 *
 * where maps["i"] is d_i with rank(X_{i-1}) rows and rank(X_i) columns and a
 * term may carry "relations": a list of vectors of rank(X_i) polynomials.
 */

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobmult/complexes.hpp"
#include "frobmult/errors.hpp"
#include "frobmult/frobenius.hpp"
#include "frobmult/graded_ring.hpp"
#include "frobmult/multiplicity.hpp"

namespace frobmult::io {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Writing

inline Json poly_vector_json(std::span<const Poly> v) {
  Json out = Json::array();
  for (const auto& f : v)
    out.push_back(f.to_string());
  return out;
}

inline Json matrix_json(const PolyMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(m(r, c).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json module_json(const std::vector<int>& twists, const std::vector<ModuleElement>& relations) {
  Json t{{"twists", twists}};
  if (!relations.empty()) {
    Json rels = Json::array();
    for (const auto& rel : relations)
      rels.push_back(poly_vector_json(rel.to_polys(twists.size())));
    t["relations"] = std::move(rels);
  }
  return t;
}

inline Json complex_json(const ComplexBase& x) {
  Json degrees = Json::object();
  Json maps = Json::object();
  const auto& data = x.data();
  for (int i = x.lo(); i <= x.hi(); ++i) {
    degrees[std::to_string(i)] = module_json(x.twists(i), data.relations[i - x.lo()]);
    if (i > x.lo() && !x.d(i).is_zero())
      maps[std::to_string(i)] = matrix_json(x.d(i));
  }
  return Json{{"degrees", std::move(degrees)}, {"maps", std::move(maps)}};
}

inline Json module_json(const PresentedModule& m) { return module_json(m.twists(), m.relations()); }

inline Json ring_json(const GradedRing& r) {
  Json ideal = Json::array();
  for (const auto& g : r.ideal())
    ideal.push_back(g.to_string());
  return Json{{"p", r.characteristic()}, {"vars", r.var_names()}, {"ideal", std::move(ideal)}};
}

// ---------------------------------------------------------------------------
// Reading

namespace detail {

template <class T>
T get_as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline int parse_index(const std::string& key, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty())
    throw ParseError(what + ": '" + key + "' is not a homological degree");
  return v;
}

} // namespace detail

inline Poly parse_poly_in(const GradedRing& r, const Json& j, const std::string& what) {
  if (!j.is_string())
    throw ParseError(what + ": expected a polynomial string");
  return r.normal_form(r.parse(j.get<std::string>()));
}

inline std::vector<Poly> parse_poly_list(const GradedRing& r, const Json& j, const std::string& what) {
  if (!j.is_array())
    throw ParseError(what + ": expected a list of polynomial strings");
  std::vector<Poly> out;
  for (const auto& e : j)
    out.push_back(parse_poly_in(r, e, what));
  return out;
}

inline GradedRing parse_ring(const Json& j) {
  if (!j.is_object())
    throw ParseError("ring: expected an object with keys p, vars, ideal");
  if (!j.contains("p") || !j.contains("vars"))
    throw ParseError("ring: keys 'p' and 'vars' are required");
  auto p = detail::get_as<std::int64_t>(j.at("p"), "ring.p");
  if (p < 2 || p > std::int64_t(UINT32_MAX) || !is_prime(std::uint64_t(p)))
    throw ParseError("ring.p: " + std::to_string(p) + " is not a machine-word prime");
  auto vars = detail::get_as<std::vector<std::string>>(j.at("vars"), "ring.vars");
  std::vector<std::string> ideal;
  if (j.contains("ideal"))
    ideal = detail::get_as<std::vector<std::string>>(j.at("ideal"), "ring.ideal");
  return GradedRing(std::uint32_t(p), std::move(vars), ideal);
}

inline std::vector<ModuleElement> parse_relations(const GradedRing& r, const Json& j, std::size_t rank,
                                                  const std::string& what) {
  if (!j.is_array())
    throw ParseError(what + ": relations must be a list of vectors");
  std::vector<ModuleElement> out;
  for (const auto& v : j) {
    auto comps = parse_poly_list(r, v, what);
    if (comps.size() != rank)
      throw ParseError(what + ": relation has " + std::to_string(comps.size()) + " components, expected " +
                       std::to_string(rank));
    out.push_back(ModuleElement::from_polys(r.poly_ring(), comps));
  }
  return out;
}

inline PresentedModule parse_module(const GradedRing& r, const Json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("twists"))
    throw ParseError(what + ": a module needs 'twists'");
  auto twists = detail::get_as<std::vector<int>>(j.at("twists"), what + ".twists");
  std::vector<ModuleElement> rels;
  if (j.contains("relations"))
    rels = parse_relations(r, j.at("relations"), twists.size(), what + ".relations");
  return PresentedModule(r, std::move(twists), std::move(rels));
}

/// Reads the complex schema; the result is free exactly when no term has relations.
inline PresentedComplex parse_complex(const GradedRing& r, const Json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("degrees") || !j.at("degrees").is_object())
    throw ParseError(what + ": a complex needs a 'degrees' object");
  std::map<int, PresentedModule> terms;
  for (const auto& [key, term] : j.at("degrees").items())
    terms.emplace(detail::parse_index(key, what + ".degrees"), parse_module(r, term, what + ".degrees." + key));
  if (terms.empty())
    return PresentedComplex(FreeComplex::zero(r));

  const int lo = terms.begin()->first;
  const int hi = terms.rbegin()->first;
  std::vector<std::vector<int>> twists;
  std::vector<std::vector<ModuleElement>> rels;
  for (int i = lo; i <= hi; ++i) {
    auto it = terms.find(i);
    twists.push_back(it == terms.end() ? std::vector<int>{} : it->second.twists());
    rels.push_back(it == terms.end() ? std::vector<ModuleElement>{} : it->second.relations());
  }
  auto rank = [&](int i) { return i < lo || i > hi ? std::size_t(0) : twists[i - lo].size(); };

  std::map<int, PolyMatrix> given;
  if (j.contains("maps")) {
    if (!j.at("maps").is_object())
      throw ParseError(what + ".maps: expected an object keyed by degree");
    for (const auto& [key, rows] : j.at("maps").items()) {
      const int i = detail::parse_index(key, what + ".maps");
      if (i <= lo || i > hi)
        throw ParseError(what + ".maps." + key + ": no differential leaves degree " + key);
      if (!rows.is_array() || rows.size() != rank(i - 1))
        throw ParseError(what + ".maps." + key + ": expected " + std::to_string(rank(i - 1)) + " rows");
      PolyMatrix m(r.poly_ring(), rank(i - 1), rank(i));
      for (std::size_t a = 0; a < rows.size(); ++a) {
        auto row = parse_poly_list(r, rows[a], what + ".maps." + key);
        if (row.size() != rank(i))
          throw ParseError(what + ".maps." + key + ": expected " + std::to_string(rank(i)) + " columns");
        for (std::size_t b = 0; b < row.size(); ++b)
          m(a, b) = row[b];
      }
      given.emplace(i, std::move(m));
    }
  }
  std::vector<PolyMatrix> maps;
  for (int i = lo + 1; i <= hi; ++i) {
    auto it = given.find(i);
    maps.push_back(it == given.end() ? PolyMatrix(r.poly_ring(), rank(i - 1), rank(i)) : it->second);
  }
  const bool free = std::all_of(rels.begin(), rels.end(), [](const auto& v) { return v.empty(); });
  if (free)
    return PresentedComplex(FreeComplex(r, lo, std::move(twists), std::move(maps)));
  return PresentedComplex(r, lo, std::move(twists), std::move(rels), std::move(maps));
}

// ---------------------------------------------------------------------------
// Named objects

/// A problem-file object: a complex of one of the three kinds, remembering the module it came from, if any.
struct Object {
  TestObject complex;
  std::optional<PresentedModule> module;
  std::vector<std::string> notes;

  bool is_free() const {
    if (std::holds_alternative<FreeComplex>(complex))
      return true;
    const auto* p = std::get_if<PresentedComplex>(&complex);
    return p && p->is_free();
  }
};

inline Object make_object(PresentedComplex c) {
  if (c.is_free())
    return Object{FreeComplex::from_data(c.data()), std::nullopt, {}};
  return Object{std::move(c), std::nullopt, {}};
}

inline Object make_object(const PresentedModule& m) {
  Object o = make_object(PresentedComplex::module(m));
  o.module = m;
  return o;
}

/// The free complex behind an object; throws unless every term is free.
inline FreeComplex as_free(const Object& o, const std::string& name) {
  if (const auto* f = std::get_if<FreeComplex>(&o.complex))
    return *f;
  if (const auto* p = std::get_if<PresentedComplex>(&o.complex); p && p->is_free())
    return FreeComplex::from_data(p->data());
  throw AlgebraError("object '" + name + "' must be a complex of free modules");
}

inline PresentedModule as_module(const Object& o, const std::string& name) {
  if (!o.module)
    throw AlgebraError("object '" + name + "' is not a module");
  return *o.module;
}

class Problem {
public:
  Problem(GradedRing ring, Json objects, Json tasks)
      : ring_(std::move(ring)), defs_(std::move(objects)), tasks_(std::move(tasks)) {
    if (!defs_.is_object())
      throw ParseError("objects: expected an object keyed by name");
    if (!tasks_.is_array())
      throw ParseError("tasks: expected a list");
  }

  const GradedRing& ring() const { return ring_; }
  const Json& tasks() const { return tasks_; }
  const Json& definitions() const { return defs_; }

  /// Evaluates (and caches) a named object.
  const Object& get(const std::string& name) const {
    if (auto it = cache_.find(name); it != cache_.end())
      return it->second;
    if (!defs_.contains(name))
      throw ParseError("unknown object '" + name + "'");
    if (!visiting_.insert(name).second)
      throw ParseError("object '" + name + "' is defined in terms of itself");
    Object o = build(defs_.at(name), name);
    visiting_.erase(name);
    return cache_.emplace(name, std::move(o)).first->second;
  }

  /// A reference (string) or an inline definition.
  Object resolve_ref(const Json& j, const std::string& what) const {
    if (j.is_string())
      return get(j.get<std::string>());
    return build(j, what);
  }

private:
  Object build(const Json& j, const std::string& what) const {
    if (!j.is_object() || j.empty())
      throw ParseError(what + ": expected an object definition");
    const GradedRing& R = ring_;
    if (j.contains("degrees"))
      return make_object(parse_complex(R, j, what));
    const auto& [kind, arg] = *j.items().begin();
    const std::string at = what + "." + kind;
    if (kind == "complex")
      return make_object(parse_complex(R, arg, at));
    if (kind == "koszul")
      return make_object(PresentedComplex(koszul(R, parse_poly_list(R, arg, at))));
    if (kind == "module")
      return make_object(parse_module(R, arg, at));
    if (kind == "cyclic")
      return make_object(PresentedModule::cyclic(R, parse_poly_list(R, arg, at)));
    if (kind == "free")
      return make_object(PresentedModule::free(R, detail::get_as<std::vector<int>>(arg, at)));
    if (kind == "resolve") {
      const int steps = j.contains("steps") ? detail::get_as<int>(j.at("steps"), what + ".steps") : int(R.nvars()) + 1;
      Resolution res = resolve(as_module(resolve_ref(arg, at), at), steps);
      Object o = make_object(PresentedComplex(res.complex));
      if (!res.terminated)
        o.notes.push_back(what + ": resolution truncated after " + std::to_string(steps) + " steps");
      return o;
    }
    if (kind == "shift") {
      const int by = j.contains("by") ? detail::get_as<int>(j.at("by"), what + ".by") : 1;
      return make_object(shift(as_presented(resolve_ref(arg, at).complex), by));
    }
    if (kind == "star_dual")
      return make_object(PresentedComplex(star_dual(as_free(resolve_ref(arg, at), at))));
    if (kind == "frobenius") {
      const unsigned e = j.contains("power") ? detail::get_as<unsigned>(j.at("power"), what + ".power") : 1u;
      Object src = resolve_ref(arg, at);
      if (const auto* w = std::get_if<OmegaComplex>(&src.complex))
        return Object{g_on_omega(*w, e), std::nullopt, {}};
      return make_object(PresentedComplex(lf(as_free(src, at), e)));
    }
    if (kind == "tensor" || kind == "hom") {
      if (!arg.is_array() || arg.size() != 2)
        throw ParseError(at + ": expected two operands");
      FreeComplex a = as_free(resolve_ref(arg[0], at + "[0]"), at + "[0]");
      PresentedComplex b = as_presented(resolve_ref(arg[1], at + "[1]").complex);
      return make_object(kind == "tensor" ? tensor(a, b) : hom_complex(a, b));
    }
    if (kind == "canonical")
      return Object{OmegaComplex(canonical_module(R), FreeComplex::ring_complex(R)), std::nullopt, {}};
    if (kind == "dagger")
      return Object{dagger(as_free(resolve_ref(arg, at), at)), std::nullopt, {}};
    if (kind == "omega") {
      PresentedComplex pattern = parse_complex(R, arg, at);
      return Object{OmegaComplex(canonical_module(R), as_free(make_object(pattern), at)), std::nullopt, {}};
    }
    throw ParseError(what + ": unknown constructor '" + kind + "'");
  }

  GradedRing ring_;
  Json defs_;
  Json tasks_;
  mutable std::map<std::string, Object> cache_;
  mutable std::set<std::string> visiting_;
};

inline Problem parse_problem(const Json& j) {
  if (!j.is_object() || !j.contains("ring"))
    throw ParseError("problem: the top level must be an object with a 'ring' key");
  for (const auto& [key, _] : j.items())
    if (key != "ring" && key != "objects" && key != "tasks")
      throw ParseError("problem: unexpected top-level key '" + key + "'");
  return Problem(parse_ring(j.at("ring")), j.value("objects", Json::object()), j.value("tasks", Json::array()));
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline Problem load_problem(const std::string& path) { return parse_problem(read_json_file(path)); }

/// A problem file containing the given ring and one named complex.
inline Json problem_json(const GradedRing& r, const std::string& name, const ComplexBase& x) {
  return Json{{"ring", ring_json(r)}, {"objects", Json{{name, complex_json(x)}}}, {"tasks", Json::array()}};
}

} // namespace frobmult::io
