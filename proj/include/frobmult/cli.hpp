#pragma once

/**
 * @file cli.hpp
 * @brief Command dispatch for the frobmult tool. Every command produces a
 * report {"task", "values", "warnings", "status"}; rationals are "num/den"
 * strings so no JSON consumer loses precision.
 */

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "frobmult/io.hpp"
#include "frobmult/multiplicity.hpp"

namespace frobmult::cli {

using io::Json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> all{"chi",       "xi",      "dutta",          "decompose",
                                            "frobenius", "homology", "resolve",       "check-selfdual",
                                            "check-numvanishing", "canonical"};
  return all;
}

/// One task: a command plus its operands and options.
struct Task {
  std::string command;
  std::string x = "X";
  std::vector<std::string> y{"Y"};
  std::optional<int> order;
  std::optional<unsigned> power;
  std::optional<int> degree;
  std::optional<int> steps;
  bool lenient = false;

  Json to_json() const {
    Json t{{"command", command}};
    if (command != "canonical" && command != "check-numvanishing")
      t["x"] = x;
    if (command != "canonical" && command != "frobenius" && command != "homology" && command != "resolve") {
      if (command == "check-selfdual" || y.size() != 1)
        t["y"] = y;
      else
        t["y"] = y.front();
    }
    if (order)
      t["order"] = *order;
    if (power)
      t["power"] = *power;
    if (degree)
      t["degree"] = *degree;
    if (steps)
      t["steps"] = *steps;
    if (lenient)
      t["lenient"] = true;
    return t;
  }
};

/// Reads a task entry of a problem file.
inline Task task_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("command"))
    throw ParseError("task: expected an object with a 'command'");
  Task t;
  t.command = io::detail::get_as<std::string>(j.at("command"), "task.command");
  if (j.contains("x"))
    t.x = io::detail::get_as<std::string>(j.at("x"), "task.x");
  if (j.contains("y")) {
    const Json& y = j.at("y");
    t.y = y.is_array() ? io::detail::get_as<std::vector<std::string>>(y, "task.y")
                       : std::vector<std::string>{io::detail::get_as<std::string>(y, "task.y")};
  }
  if (j.contains("order"))
    t.order = io::detail::get_as<int>(j.at("order"), "task.order");
  if (j.contains("power"))
    t.power = io::detail::get_as<unsigned>(j.at("power"), "task.power");
  if (j.contains("degree"))
    t.degree = io::detail::get_as<int>(j.at("degree"), "task.degree");
  if (j.contains("steps"))
    t.steps = io::detail::get_as<int>(j.at("steps"), "task.steps");
  if (j.contains("lenient"))
    t.lenient = io::detail::get_as<bool>(j.at("lenient"), "task.lenient");
  return t;
}

enum class Status { ok, hypothesis_violation, error };

inline const char* status_name(Status s) {
  switch (s) {
  case Status::ok:
    return "ok";
  case Status::hypothesis_violation:
    return "hypothesis_violation";
  default:
    return "error";
  }
}

inline int exit_code(Status s) {
  switch (s) {
  case Status::ok:
    return 0;
  case Status::hypothesis_violation:
    return 2;
  default:
    return 1;
  }
}

struct Report {
  Json task;
  Json values = Json::object();
  std::vector<std::string> warnings;
  Status status = Status::ok;
  std::optional<std::string> error;
  std::optional<double> timing_ms;

  Json to_json() const {
    Json j{{"task", task}, {"values", values}, {"warnings", warnings}, {"status", status_name(status)}};
    if (error)
      j["error"] = *error;
    if (timing_ms)
      j["timing_ms"] = *timing_ms;
    return j;
  }
};

// ---------------------------------------------------------------------------
// Value formatting

inline std::string rat(const Rational& q) { return to_string(q); }

inline Json rat_list(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v)
    out.push_back(rat(q));
  return out;
}

inline Json length_json(const Length& l) { return l ? Json(rat(Rational(*l))) : Json("infinite"); }

inline Json dim_json(const std::optional<int>& d) { return d ? Json(*d) : Json(nullptr); }

inline Json decomposition_json(const EigenDecomposition& d) {
  Json j{{"order", d.order}, {"sequence", rat_list(d.sequence)}, {"components", rat_list(d.components)}};
  if (d.held_out)
    j["held_out"] = Json{{"e", d.held_out->e},
                         {"predicted", rat(d.held_out->predicted)},
                         {"actual", rat(d.held_out->actual)}};
  j["validated"] = d.validated();
  return j;
}

inline void note_decomposition(Report& r, const std::string& what, const EigenDecomposition& d) {
  if (d.held_out && !d.validated())
    r.warnings.push_back(what + ": prediction at e = " + std::to_string(d.held_out->e) + " misses by " +
                         rat(d.residual()) + "; the order is too small");
}

// ---------------------------------------------------------------------------
// Dispatch

namespace detail {

inline void collect_notes(Report& r, const io::Object& o) {
  for (const auto& n : o.notes)
    r.warnings.push_back(n);
}

inline const io::Object& object(Report& r, const io::Problem& pb, const std::string& name) {
  const io::Object& o = pb.get(name);
  collect_notes(r, o);
  return o;
}

inline void run_command(Report& r, const io::Problem& pb, const Task& t) {
  const GradedRing& R = pb.ring();
  auto x_free = [&] { return io::as_free(object(r, pb, t.x), t.x); };
  auto y_obj = [&]() -> TestObject {
    if (t.y.size() != 1)
      throw ParseError(t.command + ": expected exactly one test object");
    return object(r, pb, t.y.front()).complex;
  };
  auto finish_ctx = [&](const PairingContext& ctx) {
    for (const auto& w : ctx.warnings())
      r.warnings.push_back(w);
  };

  if (t.command == "chi" || t.command == "xi") {
    PairingContext ctx(x_free(), t.lenient);
    TestObject y = y_obj();
    ctx.check(y);
    r.values[t.command] = rat(t.command == "chi" ? chi(ctx.x(), y) : xi(ctx.x(), y));
    finish_ctx(ctx);
  } else if (t.command == "dutta") {
    PairingContext ctx(x_free(), t.lenient);
    MultiplicityReport m = multiplicity_report(ctx, y_obj(), t.order);
    r.values["chi"] = rat(m.chi);
    r.values["xi"] = rat(m.xi);
    r.values["chi_infinity"] = rat(m.chi_infinity);
    r.values["xi_upper_infinity"] = rat(m.xi_upper);
    r.values["xi_lower_infinity"] = m.xi_lower ? Json(rat(*m.xi_lower)) : Json(nullptr);
    r.values["dim_supp_x"] = m.dim_x;
    r.values["dim_supp_y"] = dim_json(m.dim_y);
    r.values["codim_supp_x"] = m.codim_x;
    r.values["vdim_bound"] = m.vdim_upper_bound;
    r.values["decomposition"] = decomposition_json(m.decomposition);
    r.values["self_duality"] = m.self_duality.pass() ? "PASS" : "FAIL";
    note_decomposition(r, "decomposition", m.decomposition);
    finish_ctx(ctx);
  } else if (t.command == "decompose") {
    PairingContext ctx(x_free(), t.lenient);
    EigenDecomposition d = decompose(ctx, y_obj(), t.order);
    r.values = decomposition_json(d);
    note_decomposition(r, "decomposition", d);
    finish_ctx(ctx);
  } else if (t.command == "frobenius") {
    const unsigned e = t.power.value_or(1);
    const io::Object& src = object(r, pb, t.x);
    r.values["power"] = e;
    if (const auto* w = std::get_if<OmegaComplex>(&src.complex)) {
      r.values["omega_pattern"] = io::complex_json(g_on_omega(*w, e).pattern());
    } else {
      r.values["complex"] = io::complex_json(lf(io::as_free(src, t.x), e));
    }
  } else if (t.command == "homology") {
    PresentedComplex z = as_presented(object(r, pb, t.x).complex);
    auto one = [&](int i) {
      PresentedModule h = homology_module(z, i);
      Length len = h.length();
      std::optional<int> dim = h.dimension();
      return Json{{"length", length_json(len)}, {"dimension", dim_json(dim)}};
    };
    if (t.degree) {
      Json h = one(*t.degree);
      r.values["degree"] = *t.degree;
      r.values["length"] = h["length"];
      r.values["dimension"] = h["dimension"];
    } else {
      Json all = Json::object();
      for (int i = z.lo(); i <= z.hi(); ++i)
        all[std::to_string(i)] = one(i);
      r.values["homology"] = std::move(all);
    }
  } else if (t.command == "resolve") {
    PresentedModule m = io::as_module(object(r, pb, t.x), t.x);
    Resolution res = resolve(m, t.steps.value_or(int(R.nvars()) + 1));
    Json ranks = Json::array();
    for (int i = res.complex.lo(); i <= res.complex.hi(); ++i)
      ranks.push_back(res.complex.rank(i));
    r.values["terminated"] = res.terminated;
    r.values["ranks"] = std::move(ranks);
    r.values["complex"] = io::complex_json(res.complex);
    if (!res.terminated)
      r.warnings.push_back("resolution truncated; projective dimension not certified finite");
  } else if (t.command == "check-selfdual") {
    PairingContext ctx(x_free(), t.lenient);
    std::vector<TestObject> tests;
    for (const auto& name : t.y)
      tests.push_back(object(r, pb, name).complex);
    for (const auto& y : tests)
      ctx.check(y);
    SelfDualityVerdict v = check_self_duality(ctx, tests, t.order);
    Json cases = Json::array();
    for (std::size_t k = 0; k < v.cases.size(); ++k) {
      const auto& c = v.cases[k];
      cases.push_back(Json{{"y", t.y[k]},
                           {"chi", rat(c.chi)},
                           {"signed_xi", rat(c.signed_xi)},
                           {"components", rat_list(c.components)},
                           {"star_components", rat_list(c.star_components)},
                           {"verdict", c.ok() ? "PASS" : "FAIL"}});
    }
    r.values["codim_supp_x"] = ctx.codim();
    r.values["cases"] = std::move(cases);
    r.values["verdict"] = v.pass() ? "PASS" : "FAIL";
    finish_ctx(ctx);
  } else if (t.command == "check-numvanishing") {
    if (t.y.size() != 1)
      throw ParseError("check-numvanishing: expected exactly one module");
    PresentedModule n = io::as_module(object(r, pb, t.y.front()), t.y.front());
    NumericalVanishingVerdict v = check_numerical_vanishing(n, int(t.power.value_or(3)), t.steps);
    Json rows = Json::array();
    for (const auto& row : v.rows)
      rows.push_back(Json{{"side", row.side},
                          {"e", row.e},
                          {"actual", rat(row.actual)},
                          {"expected", rat(row.expected)},
                          {"verdict", row.ok() ? "PASS" : "FAIL"}});
    r.values["rows"] = std::move(rows);
    r.values["f_side_checked"] = v.f_checked;
    r.values["g_side_checked"] = v.g_checked;
    r.values["verdict"] = v.pass() ? "PASS" : "FAIL";
    for (const auto& note : v.notes)
      r.warnings.push_back(note);
  } else if (t.command == "canonical") {
    CanonicalModule w = canonical_module(R);
    PresentedModule minimal = w.module().minimized();
    r.values["codim"] = w.codim();
    r.values["module"] = io::module_json(w.module());
    r.values["minimal_rank"] = minimal.rank();
    r.values["free_rank_one"] = w.is_free_rank_one();
  } else {
    throw ParseError("unknown command '" + t.command + "'");
  }
}

} // namespace detail

/// Runs one task; errors become a failed report instead of escaping.
inline Report run(const io::Problem& pb, const Task& t, bool timing = false) {
  Report r;
  r.task = t.to_json();
  const auto start = std::chrono::steady_clock::now();
  try {
    detail::run_command(r, pb, t);
  } catch (const HypothesisError& e) {
    r.values = Json::object();
    r.status = Status::hypothesis_violation;
    r.error = e.what();
  } catch (const Error& e) {
    r.values = Json::object();
    r.status = Status::error;
    r.error = e.what();
  }
  if (timing)
    r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

/// Renders a report as "key: value" lines; scalars print bare, structures as compact JSON.
inline std::string to_text(const Report& r) {
  std::string out = "task: " + r.task.dump() + "\n";
  out += "status: " + std::string(status_name(r.status)) + "\n";
  if (r.error)
    out += "error: " + *r.error + "\n";
  for (const auto& [key, value] : r.values.items())
    out += key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
  for (const auto& w : r.warnings)
    out += "warning: " + w + "\n";
  if (r.timing_ms)
    out += "timing_ms: " + std::to_string(*r.timing_ms) + "\n";
  return out;
}

/// The more severe of two statuses: errors outrank hypothesis violations.
inline Status worst(Status a, Status b) {
  if (a == Status::error || b == Status::error)
    return Status::error;
  return a == Status::ok ? b : a;
}

} // namespace frobmult::cli
