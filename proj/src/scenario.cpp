#include "neass/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "neass/builder.hpp"
#include "neass/io.hpp"

namespace neass {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& msg) {
  throw ValidationError("scenario." + key + ": " + msg);
}

const json& need(const json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) fail(path.empty() ? key : path + "." + key, "missing");
  return j.at(key);
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(path.empty() ? it.key() : path + "." + it.key(), "unknown key");
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<double> as_number_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(as_number(j[i], path));
  return out;
}

std::vector<int> as_int_list(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a non-empty array of integers");
  std::vector<int> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path));
  return out;
}

Ramp parse_ramp(const json& j, const std::string& path) {
  const std::string kind = as_string(need(j, "kind", path), path + ".kind");
  if (kind == "constant") {
    check_keys(j, {"kind", "value"}, path);
    return Ramp::constant(as_number(need(j, "value", path), path + ".value"));
  }
  if (kind == "linear" || kind == "smoothstep") {
    check_keys(j, {"kind", "from", "to", "window"}, path);
    const json& w = need(j, "window", path);
    if (!w.is_array() || w.size() != 2) fail(path + ".window", "expected [t0, t1]");
    const double t0 = as_number(w[0], path + ".window");
    const double t1 = as_number(w[1], path + ".window");
    const double from = as_number(need(j, "from", path), path + ".from");
    const double to = as_number(need(j, "to", path), path + ".to");
    if (!(t1 > t0)) fail(path + ".window", "needs t1 > t0");
    return kind == "linear" ? Ramp::linear(from, to, t0, t1) : Ramp::smoothstep(from, to, t0, t1);
  }
  if (kind == "sinusoid") {
    check_keys(j, {"kind", "offset", "amp", "omega", "phase"}, path);
    const double phase = j.contains("phase") ? as_number(j["phase"], path + ".phase") : 0.0;
    return Ramp::sinusoid(as_number(need(j, "offset", path), path + ".offset"),
                          as_number(need(j, "amp", path), path + ".amp"),
                          as_number(need(j, "omega", path), path + ".omega"), phase);
  }
  fail(path + ".kind", "unknown ramp kind '" + kind + "'");
}

std::vector<TermSpec> parse_terms(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of terms");
  std::vector<TermSpec> out;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    check_keys(j[i], {"sites", "op", "ramp"}, p);
    TermSpec t;
    for (int s : as_int_list(need(j[i], "sites", p), p + ".sites")) t.sites.push_back(s);
    t.expr = as_string(need(j[i], "op", p), p + ".op");
    t.ramp_name = as_string(need(j[i], "ramp", p), p + ".ramp");
    out.push_back(std::move(t));
  }
  return out;
}

json ramp_to_json(const Ramp& r) {
  switch (r.kind()) {
    case Ramp::Kind::Constant:
      return {{"kind", "constant"}, {"value", r.from}};
    case Ramp::Kind::Linear:
      return {{"kind", "linear"}, {"from", r.from}, {"to", r.to}, {"window", {r.t0, r.t1}}};
    case Ramp::Kind::Smoothstep:
      return {{"kind", "smoothstep"}, {"from", r.from}, {"to", r.to}, {"window", {r.t0, r.t1}}};
    case Ramp::Kind::Sinusoid:
      return {{"kind", "sinusoid"},
              {"offset", r.from},
              {"amp", r.to},
              {"omega", r.omega},
              {"phase", r.phase}};
  }
  return {};
}

json terms_to_json(const std::vector<TermSpec>& terms) {
  json arr = json::array();
  for (const auto& t : terms)
    arr.push_back({{"sites", t.sites}, {"op", t.expr}, {"ramp", t.ramp_name}});
  return arr;
}

}  // namespace

Scenario Scenario::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ValidationError("cannot open scenario file: " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

Scenario Scenario::parse(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("scenario: invalid JSON (") + e.what() + ")");
  }

  check_keys(j,
             {"schema", "name", "kind", "geometry", "interval", "region", "order", "ramps",
              "hamiltonian", "perturbation", "potential", "observables", "sweep", "probe",
              "integrator", "fd_step", "seed", "tolerances"},
             "");

  Scenario s;
  s.schema = as_string(need(j, "schema", ""), "schema");
  if (s.schema != "neass-scenario/1") fail("schema", "unsupported schema '" + s.schema + "'");
  s.name = as_string(need(j, "name", ""), "name");
  const std::string kind = as_string(need(j, "kind", ""), "kind");
  if (kind == "adiabatic")
    s.kind = ScenarioKind::Adiabatic;
  else if (kind == "neass")
    s.kind = ScenarioKind::Neass;
  else if (kind == "lr")
    s.kind = ScenarioKind::LiebRobinson;
  else
    fail("kind", "expected one of adiabatic, neass, lr");

  {
    const json& g = need(j, "geometry", "");
    check_keys(g, {"dimension", "length", "flavors"}, "geometry");
    s.dimension = as_int(need(g, "dimension", "geometry"), "geometry.dimension");
    if (s.dimension != 1)
      fail("geometry.dimension", "scenario files describe chains; use the library API for 2d");
    s.length = as_int(need(g, "length", "geometry"), "geometry.length");
    if (s.length < 2) fail("geometry.length", "needs at least two sites");
    s.flavors = g.contains("flavors") ? as_int(g["flavors"], "geometry.flavors") : 1;
    if (s.flavors < 1) fail("geometry.flavors", "must be positive");
  }

  {
    const json& iv = need(j, "interval", "");
    if (!iv.is_array() || iv.size() != 2) fail("interval", "expected [t_begin, t_end]");
    s.t_begin = as_number(iv[0], "interval");
    s.t_end = as_number(iv[1], "interval");
    if (!(s.t_end > s.t_begin)) fail("interval", "needs t_end > t_begin");
  }

  if (j.contains("region")) {
    const json& rg = j["region"];
    if (!rg.is_array()) fail("region", "expected an array of sites");
    for (size_t i = 0; i < rg.size(); ++i) s.region.push_back(as_int(rg[i], "region"));
  }
  if (j.contains("order")) {
    s.order = as_int(j["order"], "order");
    if (s.order < 0 || s.order > 6) fail("order", "must lie in 0..6");
  }

  {
    const json& r = need(j, "ramps", "");
    if (!r.is_object() || r.empty()) fail("ramps", "expected a non-empty object");
    for (auto it = r.begin(); it != r.end(); ++it)
      s.ramps.emplace(it.key(), parse_ramp(it.value(), "ramps." + it.key()));
  }

  s.h_terms = parse_terms(need(j, "hamiltonian", ""), "hamiltonian");
  if (s.h_terms.empty()) fail("hamiltonian", "needs at least one term");
  if (j.contains("perturbation")) s.h1_terms = parse_terms(j["perturbation"], "perturbation");

  if (j.contains("potential")) {
    const json& p = j["potential"];
    check_keys(p, {"values", "ramp"}, "potential");
    s.potential_values = as_number_list(need(p, "values", "potential"), "potential.values");
    s.potential_ramp = as_string(need(p, "ramp", "potential"), "potential.ramp");
    if (static_cast<int>(s.potential_values.size()) != s.length)
      fail("potential.values", "needs one value per site");
  }

  auto check_ramp_ref = [&](const std::string& name, const std::string& path) {
    if (!s.ramps.count(name)) fail(path, "references unknown ramp '" + name + "'");
  };
  for (size_t i = 0; i < s.h_terms.size(); ++i)
    check_ramp_ref(s.h_terms[i].ramp_name, "hamiltonian[" + std::to_string(i) + "].ramp");
  for (size_t i = 0; i < s.h1_terms.size(); ++i)
    check_ramp_ref(s.h1_terms[i].ramp_name, "perturbation[" + std::to_string(i) + "].ramp");
  if (!s.potential_values.empty()) check_ramp_ref(s.potential_ramp, "potential.ramp");

  {
    const json& obs = need(j, "observables", "");
    if (!obs.is_array() || obs.empty()) fail("observables", "expected a non-empty array");
    for (size_t i = 0; i < obs.size(); ++i) {
      const std::string p = "observables[" + std::to_string(i) + "]";
      check_keys(obs[i], {"name", "op"}, p);
      const std::string nm = as_string(need(obs[i], "name", p), p + ".name");
      for (const auto& [existing, ignored] : s.observables)
        if (existing == nm) fail(p + ".name", "duplicate observable name '" + nm + "'");
      s.observables.push_back({nm, as_string(need(obs[i], "op", p), p + ".op")});
    }
  }

  if (s.kind == ScenarioKind::LiebRobinson) {
    const json& p = need(j, "probe", "");
    check_keys(p, {"a", "b_sites", "times", "eps", "eta"}, "probe");
    ProbeSpec ps;
    ps.a_expr = as_string(need(p, "a", "probe"), "probe.a");
    ps.b_sites = as_int_list(need(p, "b_sites", "probe"), "probe.b_sites");
    ps.times = as_number_list(need(p, "times", "probe"), "probe.times");
    ps.eps = p.contains("eps") ? as_number(p["eps"], "probe.eps") : 0.0;
    ps.eta = p.contains("eta") ? as_number(p["eta"], "probe.eta") : 1.0;
    if (!(ps.eta > 0)) fail("probe.eta", "must be positive");
    for (int b : ps.b_sites)
      if (b < 0 || b >= s.length) fail("probe.b_sites", "site out of range");
    for (double t : ps.times)
      if (t < s.t_begin) fail("probe.times", "before the schedule start");
    s.probe = ps;
  } else {
    const json& sw = need(j, "sweep", "");
    check_keys(sw, {"mode", "t0", "t1", "eps", "eta", "grid", "orders", "observable"}, "sweep");
    const std::string mode = as_string(need(sw, "mode", "sweep"), "sweep.mode");
    if (mode == "eta")
      s.sweep.mode = SweepSpec::Mode::Eta;
    else if (mode == "eps")
      s.sweep.mode = SweepSpec::Mode::Eps;
    else
      fail("sweep.mode", "expected 'eta' or 'eps'");
    s.sweep.t0 = as_number(need(sw, "t0", "sweep"), "sweep.t0");
    s.sweep.t1 = as_number(need(sw, "t1", "sweep"), "sweep.t1");
    if (!(s.sweep.t1 > s.sweep.t0)) fail("sweep.t1", "needs t1 > t0");
    if (s.kind == ScenarioKind::Adiabatic &&
        (s.sweep.t0 < s.t_begin || s.sweep.t1 > s.t_end))
      fail("sweep", "window must lie inside the schedule interval");
    if (sw.contains("eps")) s.sweep.fixed_eps = as_number(sw["eps"], "sweep.eps");
    if (sw.contains("eta")) s.sweep.fixed_eta = as_number(sw["eta"], "sweep.eta");
    s.sweep.grid = as_number_list(need(sw, "grid", "sweep"), "sweep.grid");
    for (double g : s.sweep.grid)
      if (!(g > 0)) fail("sweep.grid", "entries must be positive");
    s.sweep.orders = as_int_list(need(sw, "orders", "sweep"), "sweep.orders");
    for (int n : s.sweep.orders)
      if (n < 0 || n > 6) fail("sweep.orders", "entries must lie in 0..6");
    s.sweep.observable = as_string(need(sw, "observable", "sweep"), "sweep.observable");
    bool found = false;
    for (const auto& [nm, ignored] : s.observables) found |= (nm == s.sweep.observable);
    if (!found) fail("sweep.observable", "references unknown observable");
  }

  if (j.contains("integrator")) {
    const json& ig = j["integrator"];
    check_keys(ig, {"tol", "backend"}, "integrator");
    if (ig.contains("tol")) {
      s.integrator.tol = as_number(ig["tol"], "integrator.tol");
      if (!(s.integrator.tol > 0)) fail("integrator.tol", "must be positive");
    }
    if (ig.contains("backend")) {
      const std::string b = as_string(ig["backend"], "integrator.backend");
      if (b == "rk45")
        s.integrator.backend = IntegratorOptions::Backend::RK45;
      else if (b == "magnus")
        s.integrator.backend = IntegratorOptions::Backend::Magnus;
      else
        fail("integrator.backend", "expected 'rk45' or 'magnus'");
    }
  }
  if (j.contains("fd_step")) {
    s.fd_step = as_number(j["fd_step"], "fd_step");
    if (!(s.fd_step >= 0)) fail("fd_step", "must be non-negative");
  }
  if (j.contains("seed")) s.seed = static_cast<unsigned>(as_int(j["seed"], "seed"));
  if (j.contains("tolerances")) {
    const json& t = j["tolerances"];
    check_keys(t, {"slope_margin", "floor", "eta_independence"}, "tolerances");
    if (t.contains("slope_margin"))
      s.tolerances.slope_margin = as_number(t["slope_margin"], "tolerances.slope_margin");
    if (t.contains("floor")) s.tolerances.floor = as_number(t["floor"], "tolerances.floor");
    if (t.contains("eta_independence"))
      s.tolerances.eta_independence =
          as_number(t["eta_independence"], "tolerances.eta_independence");
    if (!(s.tolerances.slope_margin > 0) || !(s.tolerances.floor > 0) ||
        !(s.tolerances.eta_independence > 0))
      fail("tolerances", "must be positive");
  }

  // Materialization smoke pass: geometry, schedule, and observables must
  // build (this also validates site ranges and expressions with key context).
  const FockSpace fs = s.make_space();
  try {
    s.make_schedule();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("scenario.hamiltonian: ") + e.what());
  }
  for (const auto& [nm, expr] : s.observables) {
    try {
      build_operator(fs, expr);
    } catch (const ValidationError& e) {
      throw ValidationError("scenario.observables." + nm + ": " + e.what());
    }
  }
  if (s.probe) {
    try {
      build_operator(fs, s.probe->a_expr);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("scenario.probe.a: ") + e.what());
    }
  }
  return s;
}

std::string Scenario::canonical() const {
  json j;
  j["schema"] = schema;
  j["name"] = name;
  j["kind"] = kind == ScenarioKind::Adiabatic ? "adiabatic"
              : kind == ScenarioKind::Neass   ? "neass"
                                              : "lr";
  j["geometry"] = {{"dimension", dimension}, {"length", length}, {"flavors", flavors}};
  j["interval"] = {t_begin, t_end};
  j["region"] = region;
  j["order"] = order;
  json rj = json::object();
  for (const auto& [nm, r] : ramps) rj[nm] = ramp_to_json(r);
  j["ramps"] = rj;
  j["hamiltonian"] = terms_to_json(h_terms);
  j["perturbation"] = terms_to_json(h1_terms);
  if (!potential_values.empty())
    j["potential"] = {{"values", potential_values}, {"ramp", potential_ramp}};
  json obs = json::array();
  for (const auto& [nm, expr] : observables) obs.push_back({{"name", nm}, {"op", expr}});
  j["observables"] = obs;
  if (probe) {
    j["probe"] = {{"a", probe->a_expr},
                  {"b_sites", probe->b_sites},
                  {"times", probe->times},
                  {"eps", probe->eps},
                  {"eta", probe->eta}};
  } else {
    j["sweep"] = {{"mode", sweep.mode == SweepSpec::Mode::Eta ? "eta" : "eps"},
                  {"t0", sweep.t0},
                  {"t1", sweep.t1},
                  {"eps", sweep.fixed_eps},
                  {"eta", sweep.fixed_eta},
                  {"grid", sweep.grid},
                  {"orders", sweep.orders},
                  {"observable", sweep.observable}};
  }
  j["integrator"] = {
      {"tol", integrator.tol},
      {"backend", integrator.backend == IntegratorOptions::Backend::RK45 ? "rk45" : "magnus"}};
  j["fd_step"] = fd_step;
  j["seed"] = seed;
  j["tolerances"] = {{"slope_margin", tolerances.slope_margin},
                     {"floor", tolerances.floor},
                     {"eta_independence", tolerances.eta_independence}};
  return j.dump();
}

std::uint64_t Scenario::hash() const { return fnv1a64(canonical()); }

LatticeGeometry Scenario::make_geometry() const {
  return LatticeGeometry::chain(length, flavors);
}

FockSpace Scenario::make_space() const { return FockSpace(make_geometry()); }

Schedule Scenario::make_schedule() const {
  FockSpace fs = make_space();
  Schedule sched(fs, t_begin, t_end);
  std::map<std::string, int> idx;
  for (const auto& [nm, r] : ramps) idx[nm] = sched.add_ramp(r);
  for (const auto& t : h_terms) {
    SiteSet sites = canonical_sites(t.sites, length);
    sched.add_h_term(sites, build_operator(fs, t.expr, &sites), idx.at(t.ramp_name));
  }
  for (const auto& t : h1_terms) {
    SiteSet sites = canonical_sites(t.sites, length);
    sched.add_h1_term(sites, build_operator(fs, t.expr, &sites), idx.at(t.ramp_name));
  }
  if (!potential_values.empty()) sched.set_potential(potential_values, idx.at(potential_ramp));
  if (!region.empty()) sched.set_region(region);
  sched.validate();
  return sched;
}

FockOperator Scenario::make_observable(const FockSpace& fs, const std::string& name) const {
  for (const auto& [nm, expr] : observables)
    if (nm == name) return build_operator(fs, expr);
  throw ValidationError("unknown observable '" + name + "'");
}

}  // namespace neass
