#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pdm/error.hpp"
#include "pdm/expr.hpp"
#include "pdm/manifest_data.hpp"
#include "pdm/params.hpp"

namespace pdm {

enum class Separation { spherical, cylindrical, cartesian_x3, cartesian_x1 };

inline std::string to_string(Separation s) {
  switch (s) {
    case Separation::spherical: return "spherical";
    case Separation::cylindrical: return "cylindrical";
    case Separation::cartesian_x3: return "cartesian-x3";
    case Separation::cartesian_x1: return "cartesian-x1";
  }
  return "?";
}

inline Separation separation_from_string(std::string_view s) {
  if (s == "spherical") return Separation::spherical;
  if (s == "cylindrical") return Separation::cylindrical;
  if (s == "cartesian-x3") return Separation::cartesian_x3;
  if (s == "cartesian-x1") return Separation::cartesian_x1;
  throw DomainError("unknown separation scheme '" + std::string(s) + "'");
}

// listed: column-4 symmetry. auxiliary: P0, unit and sub-case extras. candidate: alternative
// readings of a printed generator. control: known non-symmetry used as a negative control.
enum class GeneratorRole { listed, auxiliary, candidate, control };

inline std::string to_string(GeneratorRole r) {
  switch (r) {
    case GeneratorRole::listed: return "listed";
    case GeneratorRole::auxiliary: return "auxiliary";
    case GeneratorRole::candidate: return "candidate";
    case GeneratorRole::control: return "control";
  }
  return "?";
}

inline GeneratorRole role_from_string(std::string_view s) {
  if (s == "listed") return GeneratorRole::listed;
  if (s == "auxiliary") return GeneratorRole::auxiliary;
  if (s == "candidate") return GeneratorRole::candidate;
  if (s == "control") return GeneratorRole::control;
  throw DomainError("unknown generator role '" + std::string(s) + "'");
}

struct OperatorTerm {
  Expr coefficient;
  std::string basis;
  bool operator==(const OperatorTerm&) const = default;
};

// S = c_t d/dt + sum_a c_a d/dx_a + c_0.
struct GeneratorSpec {
  std::string name;
  GeneratorRole role = GeneratorRole::listed;
  std::string note;
  std::vector<OperatorTerm> terms;
  std::string derived_from;  // nonempty: coefficients are d/dt of that generator's
  Expr c_t;
  std::array<Expr, 3> c;
  Expr c_0;

  bool time_dependent() const {
    if (c_t.depends_on_time() || c_0.depends_on_time()) return true;
    for (const auto& e : c)
      if (e.depends_on_time()) return true;
    return false;
  }

  bool has_time_derivative() const { return !c_t.is_zero(); }

  GeneratorSpec bind(const ParameterSet& ps) const {
    GeneratorSpec g = *this;
    g.c_t = c_t.bind(ps);
    for (auto& e : g.c) e = e.bind(ps);
    g.c_0 = c_0.bind(ps);
    for (auto& term : g.terms) term.coefficient = term.coefficient.bind(ps);
    return g;
  }

  GeneratorSpec time_derivative(std::string new_name) const {
    GeneratorSpec g;
    g.name = std::move(new_name);
    g.role = role;
    g.derived_from = name;
    g.c_t = c_t.diff(Var::t);
    for (int a = 0; a < 3; ++a) g.c[a] = c[a].diff(Var::t);
    g.c_0 = c_0.diff(Var::t);
    return g;
  }

  // Multiplies every coefficient of one basis term by (1+eps); used to build perturbed negative controls.
  GeneratorSpec perturbed(double eps) const;

  static GeneratorSpec unit() {
    GeneratorSpec g;
    g.name = "unit";
    g.role = GeneratorRole::auxiliary;
    g.terms = {{Expr(1.0), "1"}};
    g.c_0 = Expr(1.0);
    return g;
  }
};

namespace detail {

struct Coeffs {
  Expr ct;
  std::array<Expr, 3> c;
  Expr c0;
};

// Expansion of the named basis operators into first-order coefficients (p_a = -i d_a).
inline Coeffs basis_coefficients(std::string_view name) {
  const Expr I = Expr::i();
  Coeffs k;
  auto axis = [&](char ch) -> int {
    if (ch < '1' || ch > '3') throw DomainError("bad axis in basis operator '" + std::string(name) + "'");
    return ch - '1';
  };
  if (name == "1") {
    k.c0 = Expr(1.0);
  } else if (name == "P0") {
    k.ct = I;
  } else if (name.size() == 2 && name[0] == 'P') {
    k.c[axis(name[1])] = -I;
  } else if (name.size() == 3 && name[0] == 'M') {
    int a = axis(name[1]), b = axis(name[2]);
    if (a == b) throw DomainError("degenerate rotation '" + std::string(name) + "'");
    k.c[b] = -I * Expr::x(a);
    k.c[a] = I * Expr::x(b);
  } else if (name == "D") {
    for (int n = 0; n < 3; ++n) k.c[n] = -I * Expr::x(n);
    k.c0 = Expr(cplx(0.0, -1.5));
  } else if (name.size() == 2 && name[0] == 'K') {
    int a = axis(name[1]);
    for (int n = 0; n < 3; ++n) k.c[n] = Expr(cplx(0.0, 2.0)) * Expr::x(a) * Expr::x(n);
    k.c[a] = k.c[a] - I * pow(Expr::r(), Expr(2.0));
    k.c0 = Expr(cplx(0.0, 3.0)) * Expr::x(a);
  } else if (name.size() == 2 && name[0] == 'L') {
    int a = axis(name[1]);
    static const char* rot[] = {"M23", "M31", "M12"};
    return basis_coefficients(rot[a]);
  } else {
    throw DomainError("unknown basis operator '" + std::string(name) + "'");
  }
  return k;
}

inline void expand_terms(GeneratorSpec& g) {
  g.c_t = Expr(0.0);
  g.c = {Expr(0.0), Expr(0.0), Expr(0.0)};
  g.c_0 = Expr(0.0);
  for (const auto& term : g.terms) {
    Coeffs k = basis_coefficients(term.basis);
    g.c_t = g.c_t + term.coefficient * k.ct;
    for (int a = 0; a < 3; ++a) g.c[a] = g.c[a] + term.coefficient * k.c[a];
    g.c_0 = g.c_0 + term.coefficient * k.c0;
  }
}

}  // namespace detail

inline GeneratorSpec GeneratorSpec::perturbed(double eps) const {
  GeneratorSpec g = *this;
  g.name = name + "_perturbed";
  g.role = GeneratorRole::control;
  if (!g.terms.empty()) {
    g.terms.front().coefficient = g.terms.front().coefficient * Expr(1.0 + eps);
    detail::expand_terms(g);
  } else {
    g.c_0 = g.c_0 + Expr(eps);
  }
  return g;
}

struct Box {
  std::array<double, 3> lo{}, hi{};
  bool operator==(const Box&) const = default;
};

struct SystemSpec {
  int id = 0;
  Expr inverse_mass;
  Expr potential;
  Separation separation = Separation::spherical;
  std::vector<std::string> parameters;
  std::vector<double> excluded_sigma;
  std::string nonseparable_unless_zero;
  bool forbid_all_zero = false;
  Box box;
  std::vector<GeneratorSpec> generators;

  // False exactly when the row's separability parameter is set and nonzero (ids 4 and 5 with kappa != 0).
  bool solvable(const ParameterSet& ps) const {
    if (nonseparable_unless_zero.empty()) return true;
    auto v = ps.get(nonseparable_unless_zero);
    return !v || *v == cplx(0.0);
  }

  const GeneratorSpec& generator(std::string_view name) const {
    for (const auto& g : generators)
      if (g.name == name) return g;
    throw DomainError("system " + std::to_string(id) + " has no generator '" + std::string(name) + "'");
  }

  bool has_generator(std::string_view name) const {
    return std::any_of(generators.begin(), generators.end(), [&](const auto& g) { return g.name == name; });
  }

  std::vector<const GeneratorSpec*> with_role(GeneratorRole r) const {
    std::vector<const GeneratorSpec*> out;
    for (const auto& g : generators)
      if (g.role == r) out.push_back(&g);
    return out;
  }
};

struct ValidatedParams {
  ParameterSet params;
  std::vector<std::string> flags;
  bool solvable = true;

  bool has_flag(std::string_view f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }
};

inline ValidatedParams validate_params(const SystemSpec& spec, const ParameterSet& ps) {
  ValidatedParams out;
  for (const auto& name : spec.parameters) {
    auto v = ps.get(name);
    if (!v) throw DomainError("system " + std::to_string(spec.id) + " requires parameter '" + name + "'");
    out.params.set(name, *v);
  }
  if (!spec.excluded_sigma.empty()) {
    double s = out.params.real("sigma");
    for (double bad : spec.excluded_sigma)
      if (s == bad) {
        std::ostringstream msg;
        msg << "system " << spec.id << " excludes sigma = " << bad;
        throw DomainError(msg.str());
      }
  }
  if (spec.forbid_all_zero && !spec.parameters.empty()) {
    bool all_zero = true;
    for (const auto& name : spec.parameters)
      if (name != "sigma" && *out.params.get(name) != cplx(0.0)) all_zero = false;
    if (all_zero) throw DomainError("system " + std::to_string(spec.id) + ": parameters may not all vanish");
  }
  out.solvable = spec.solvable(out.params);
  if (!out.solvable) out.flags.push_back("not separable for " + spec.nonseparable_unless_zero + "!=0");
  if (spec.id == 3 && out.params.real("nu") == 0.0) out.flags.push_back("scale-invariant sub-case");
  if (spec.id == 7 && out.params.real("sigma") * std::abs(*out.params.lambda) != 0.0)
    out.flags.push_back("not separable in cylindrical variables unless sigma*lambda=0");
  if (spec.id == 10 && *out.params.lambda == cplx(0.0)) out.flags.push_back("lambda=0: no closed form");
  if (spec.id == 11) {
    // the oscillator reduction uses the exponent s = sigma/2 (z = r^{-sigma/2})
    double s = 0.5 * out.params.real("sigma"), k = out.params.real("kappa");
    if (2.0 * k == -s * s - 3.0 * s - 2.0) out.flags.push_back("oscillator condition 2kappa=-sigma^2-3sigma-2 holds");
  }
  return out;
}

// Manifest (de)serialization. Grammar documented in docs/manifest.md.
inline SystemSpec system_from_json(const nlohmann::json& j) {
  SystemSpec s;
  s.id = j.at("id").get<int>();
  s.inverse_mass = Expr::parse(j.at("inverse_mass").get<std::string>());
  s.potential = Expr::parse(j.at("potential").get<std::string>());
  s.parameters = j.value("parameters", std::vector<std::string>{});
  for (const auto& p : s.parameters)
    if (!ParameterSet::known(p)) throw DomainError("manifest: unknown parameter '" + p + "'");
  s.separation = separation_from_string(j.at("separation").get<std::string>());
  s.excluded_sigma = j.value("excluded_sigma", std::vector<double>{});
  s.nonseparable_unless_zero = j.value("nonseparable_unless_zero", std::string{});
  s.forbid_all_zero = j.value("forbid_all_zero", false);
  const auto& box = j.at("box");
  for (int a = 0; a < 3; ++a) {
    s.box.lo[a] = box.at("lo").at(a).get<double>();
    s.box.hi[a] = box.at("hi").at(a).get<double>();
    if (!(s.box.lo[a] < s.box.hi[a])) throw DomainError("manifest: empty box");
  }
  for (const auto& gj : j.at("generators")) {
    GeneratorSpec g;
    g.name = gj.at("name").get<std::string>();
    g.role = role_from_string(gj.at("role").get<std::string>());
    g.note = gj.value("note", std::string{});
    if (gj.contains("derive")) {
      if (gj.at("derive").get<std::string>() != "dt") throw DomainError("manifest: only 'dt' derivation is supported");
      std::string of = gj.at("of").get<std::string>();
      const GeneratorSpec& base = s.generator(of);
      GeneratorSpec d = base.time_derivative(g.name);
      d.role = g.role;
      d.note = g.note;
      g = d;
    } else {
      for (const auto& t : gj.at("terms"))
        g.terms.push_back({Expr::parse(t.at(0).get<std::string>()), t.at(1).get<std::string>()});
      detail::expand_terms(g);
    }
    if (s.has_generator(g.name)) throw DomainError("manifest: duplicate generator '" + g.name + "'");
    s.generators.push_back(std::move(g));
  }
  return s;
}

inline nlohmann::ordered_json system_to_json(const SystemSpec& s) {
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["inverse_mass"] = s.inverse_mass.str();
  j["potential"] = s.potential.str();
  j["parameters"] = s.parameters;
  j["separation"] = to_string(s.separation);
  if (!s.excluded_sigma.empty()) j["excluded_sigma"] = s.excluded_sigma;
  if (!s.nonseparable_unless_zero.empty()) j["nonseparable_unless_zero"] = s.nonseparable_unless_zero;
  if (s.forbid_all_zero) j["forbid_all_zero"] = true;
  j["box"] = {{"lo", s.box.lo}, {"hi", s.box.hi}};
  auto gens = nlohmann::ordered_json::array();
  for (const auto& g : s.generators) {
    nlohmann::ordered_json gj;
    gj["name"] = g.name;
    gj["role"] = to_string(g.role);
    if (!g.derived_from.empty()) {
      gj["derive"] = "dt";
      gj["of"] = g.derived_from;
    } else {
      auto terms = nlohmann::ordered_json::array();
      for (const auto& t : g.terms) terms.push_back({t.coefficient.str(), t.basis});
      gj["terms"] = terms;
    }
    if (!g.note.empty()) gj["note"] = g.note;
    gens.push_back(gj);
  }
  j["generators"] = gens;
  return j;
}

inline std::vector<SystemSpec> parse_manifest(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.value("format", std::string{}) != "pdm-systems") throw DomainError("manifest: wrong format tag");
  if (j.value("version", 0) != 1) throw DomainError("manifest: unsupported version");
  std::vector<SystemSpec> out;
  for (const auto& sj : j.at("systems")) out.push_back(system_from_json(sj));
  for (size_t k = 0; k < out.size(); ++k)
    if (out[k].id != int(k) + 1) throw DomainError("manifest: systems must be listed with ids 1..N in order");
  return out;
}

inline std::string write_manifest(const std::vector<SystemSpec>& systems) {
  nlohmann::ordered_json j;
  j["format"] = "pdm-systems";
  j["version"] = 1;
  j["systems"] = nlohmann::ordered_json::array();
  for (const auto& s : systems) j["systems"].push_back(system_to_json(s));
  return j.dump(2) + "\n";
}

inline std::vector<SystemSpec> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open manifest '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

inline const std::vector<SystemSpec>& catalog() {
  static const std::vector<SystemSpec> systems = [] {
    auto s = parse_manifest(kBuiltinManifest);
    if (s.size() != 11) throw DomainError("built-in manifest must hold 11 systems");
    return s;
  }();
  return systems;
}

inline const SystemSpec& get_system(int id) {
  if (id < 1 || id > 11) throw DomainError("unknown system id " + std::to_string(id) + " (valid: 1..11)");
  return catalog()[id - 1];
}

inline bool operator==(const GeneratorSpec& a, const GeneratorSpec& b) {
  return a.name == b.name && a.role == b.role && a.note == b.note && a.terms == b.terms &&
         a.derived_from == b.derived_from && a.c_t == b.c_t && a.c == b.c && a.c_0 == b.c_0;
}

inline bool operator==(const SystemSpec& a, const SystemSpec& b) {
  return a.id == b.id && a.inverse_mass == b.inverse_mass && a.potential == b.potential &&
         a.separation == b.separation && a.parameters == b.parameters && a.excluded_sigma == b.excluded_sigma &&
         a.nonseparable_unless_zero == b.nonseparable_unless_zero && a.forbid_all_zero == b.forbid_all_zero &&
         a.box == b.box && a.generators == b.generators;
}

}  // namespace pdm
