#pragma once

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/error.hpp"
#include "pdm/parallel.hpp"
#include "pdm/separation.hpp"
#include "pdm/spectra.hpp"
#include "pdm/sturm.hpp"
#include "pdm/verify.hpp"

namespace pdm::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kOperational = 1, kRefuted = 2 };

enum class Controls { report, strict, off };

struct RunConfig {
  std::optional<int> system;
  std::vector<std::pair<std::string, std::string>> sets;  // raw k=v, applied in order
  int l_lo = 0, l_hi = 0;
  int levels = 4;
  std::string grid = "standard";
  std::optional<std::pair<double, double>> box;
  std::optional<double> tol;
  std::string bc = "dirichlet";
  std::string out = "pdm-out";
  std::set<std::string> formats{"csv", "json"};
  std::uint64_t seed = 1;
  Controls controls = Controls::report;
  std::string which = "symmetries";
  std::string identity;  // restrict verify to one generator
};

// ---------------------------------------------------------------- parsing

inline std::pair<int, int> parse_range(const std::string& s) {
  auto c = s.find(':');
  try {
    if (c == std::string::npos) {
      int v = std::stoi(s);
      return {v, v};
    }
    int a = std::stoi(s.substr(0, c)), b = std::stoi(s.substr(c + 1));
    if (b < a) throw DomainError("range '" + s + "' is empty");
    return {a, b};
  } catch (const std::logic_error&) {
    throw DomainError("bad range '" + s + "', expected a:b");
  }
}

inline std::pair<double, double> parse_interval(const std::string& s) {
  auto c = s.find(':');
  if (c == std::string::npos) throw DomainError("bad box '" + s + "', expected lo:hi");
  try {
    double a = std::stod(s.substr(0, c)), b = std::stod(s.substr(c + 1));
    if (!(b > a)) throw DomainError("box '" + s + "' needs lo < hi");
    return {a, b};
  } catch (const std::logic_error&) {
    throw DomainError("bad box '" + s + "', expected lo:hi");
  }
}

// "1.5", "-2", "2i", "-0.5i", "i"
inline cplx parse_value(std::string s) {
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
  bool imag = !s.empty() && s.back() == 'i';
  if (imag) s.pop_back();
  if (imag && (s.empty() || s == "+" || s == "-")) s += "1";
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw DomainError("bad numeric value '" + s + (imag ? "i" : "") + "'");
  return imag ? cplx(0.0, v) : cplx(v, 0.0);
}

inline std::pair<std::string, std::string> split_set(const std::string& kv) {
  auto e = kv.find('=');
  if (e == std::string::npos || e == 0) throw DomainError("--set expects k=v, got '" + kv + "'");
  return {kv.substr(0, e), kv.substr(e + 1)};
}

inline Controls parse_controls(const std::string& s) {
  if (s == "strict") return Controls::strict;
  if (s == "off") return Controls::off;
  if (s == "report") return Controls::report;
  throw DomainError("--controls must be strict, report or off");
}

inline std::set<std::string> parse_formats(const std::string& s) {
  std::set<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item != "csv" && item != "json") throw DomainError("unknown format '" + item + "'");
    out.insert(item);
  }
  if (out.empty()) throw DomainError("--format needs csv, json or both");
  return out;
}

// Declarative config file; see docs/manifest.md for the keys. Flags given afterwards override it.
inline void load_config(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open config '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("config '" + path + "': " + e.what());
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const auto& v = it.value();
    if (k == "system") cfg.system = v.get<int>();
    else if (k == "set") {
      for (auto p = v.begin(); p != v.end(); ++p)
        cfg.sets.push_back({p.key(), p.value().is_string() ? p.value().get<std::string>() : p.value().dump()});
    } else if (k == "l_range") std::tie(cfg.l_lo, cfg.l_hi) = parse_range(v.get<std::string>());
    else if (k == "levels") cfg.levels = v.get<int>();
    else if (k == "grid") cfg.grid = v.get<std::string>();
    else if (k == "box") cfg.box = parse_interval(v.get<std::string>());
    else if (k == "tol") cfg.tol = v.get<double>();
    else if (k == "bc") cfg.bc = v.get<std::string>();
    else if (k == "out") cfg.out = v.get<std::string>();
    else if (k == "format") cfg.formats = parse_formats(v.get<std::string>());
    else if (k == "seed") cfg.seed = v.get<std::uint64_t>();
    else if (k == "controls") cfg.controls = parse_controls(v.get<std::string>());
    else if (k == "which") cfg.which = v.get<std::string>();
    else if (k == "identity") cfg.identity = v.get<std::string>();
    else throw DomainError("config '" + path + "': unknown key '" + k + "'");
  }
}

// Table parameters go to the ParameterSet; k1, k2, k3, omega_ax, coupling, angular_level are quantum numbers.
struct Resolved {
  ParameterSet params;
  QuantumNumbers qn;
};

inline Resolved resolve_sets(const RunConfig& cfg) {
  Resolved r;
  for (const auto& [k, v] : cfg.sets) {
    if (ParameterSet::known(k)) r.params.set(k, parse_value(v));
    else if (k == "k1") r.qn.k1 = parse_value(v).real();
    else if (k == "k2") r.qn.k2 = parse_value(v).real();
    else if (k == "k3") r.qn.k3 = parse_value(v).real();
    else if (k == "omega_ax") r.qn.omega_ax = parse_value(v).real();
    else if (k == "coupling") r.qn.coupling = parse_value(v).real();
    else if (k == "angular_level") r.qn.angular_level = int(parse_value(v).real());
    else throw DomainError("unknown parameter '" + k + "'");
  }
  return r;
}

inline int grid_number(const std::string& profile) {
  size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(profile.substr(1), &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used + 1 != profile.size()) throw DomainError("bad grid '" + profile + "', expected nXXX");
  return n;
}

inline std::vector<int> verify_grids(const std::string& profile) {
  if (profile == "coarse") return {32, 48, 64};
  if (profile == "standard") return {48, 64, 96};
  if (profile == "fine") return {64, 96, 128};
  if (profile.size() > 1 && profile[0] == 'n') {
    int n = grid_number(profile);
    if (n < 32) throw DomainError("grid n must be at least 32");
    return {n / 2, (2 * n) / 3, n};
  }
  throw DomainError("--grid must be coarse, standard, fine or nXXX");
}

inline RefineOptions refine_options(const std::string& profile) {
  RefineOptions o;
  if (profile == "coarse") o.n0 = 64;
  else if (profile == "standard") o.n0 = 128;
  else if (profile == "fine") o.n0 = 256;
  else if (profile.size() > 1 && profile[0] == 'n') {
    o.n0 = grid_number(profile);
    if (o.n0 < 64) throw DomainError("grid n must be at least 64 for eigensolves");
  }
  else throw DomainError("--grid must be coarse, standard, fine or nXXX");
  return o;
}

// ---------------------------------------------------------------- output

inline std::string num(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON number: 17 significant digits; non-finite values become null.
inline ojson jnum(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

inline void dump_json(std::ostream& os, const ojson& j, int indent = 0) {
  std::string pad(indent, ' '), in(indent + 2, ' ');
  switch (j.type()) {
    case ojson::value_t::object: {
      if (j.empty()) {
        os << "{}";
        break;
      }
      os << "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        os << in << ojson(it.key()).dump() << ": ";
        dump_json(os, it.value(), indent + 2);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << "}";
      break;
    }
    case ojson::value_t::array: {
      if (j.empty()) {
        os << "[]";
        break;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        os << in;
        dump_json(os, j[i], indent + 2);
        os << (i + 1 < j.size() ? ",\n" : "\n");
      }
      os << pad << "]";
      break;
    }
    case ojson::value_t::number_float:
      os << num(j.get<double>());
      break;
    default:
      os << j.dump();
  }
}

inline void write_json(const fs::path& p, const ojson& j) {
  std::ofstream f(p);
  if (!f) throw DomainError("cannot write " + p.string());
  dump_json(f, j);
  f << "\n";
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

inline ojson to_json(const ParameterSet& ps) {
  ojson o = ojson::object();
  for (auto n : ParameterSet::names) {
    auto v = ps.get(n);
    if (!v) continue;
    if (v->imag() == 0.0) o[std::string(n)] = jnum(v->real());
    else o[std::string(n)] = {{"re", jnum(v->real())}, {"im", jnum(v->imag())}};
  }
  return o;
}

inline ojson to_json(const ClaimReport& r) {
  ojson levels = ojson::array();
  for (size_t i = 0; i < r.labels.size(); ++i)
    levels.push_back({{"label", r.labels[i]},
                      {"claimed", jnum(r.claimed[i])},
                      {"oracle", jnum(r.oracle[i])},
                      {"oracle_error", jnum(i < r.oracle_error.size() ? r.oracle_error[i] : 0.0)}});
  return {{"id", r.id},
          {"description", r.description},
          {"convention", r.convention},
          {"oracle", r.oracle_kind},
          {"verdict", to_string(r.verdict)},
          {"tol", jnum(r.tol)},
          {"shift", jnum(r.shift)},
          {"max_deviation", jnum(r.max_deviation)},
          {"levels", levels},
          {"skipped", r.skipped},
          {"note", r.note}};
}

inline ojson to_json(const ResidualReport& r) {
  ojson sp = ojson::array(), rs = ojson::array();
  for (double h : r.spacings) sp.push_back(jnum(h));
  for (double v : r.residuals) rs.push_back(jnum(v));
  return {{"identity", r.identity}, {"system", r.system},   {"kind", r.kind},         {"t", jnum(r.t)},
          {"control", r.control},   {"spacings", sp},       {"residuals", rs},        {"order", jnum(r.order)},
          {"tol", jnum(r.tol)},     {"pass", r.pass},       {"as_expected", r.as_expected()}, {"note", r.note}};
}

inline ojson to_json(const ClosureResult& c) {
  ojson sc = ojson::array();
  int m = int(c.structure.size());
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      ojson terms = ojson::object();
      for (size_t k = 0; k < c.names.size(); ++k)
        if (std::abs(c.structure[i][j][k]) > 1e-6) terms[c.names[k]] = jnum(c.structure[i][j][k]);
      sc.push_back({{"pair", {c.names[i], c.names[j]}}, {"terms", terms}, {"fit_residual", jnum(c.fit_residual[i][j])}});
    }
  ojson sv = ojson::array();
  for (double s : c.singular_values) sv.push_back(jnum(s));
  return {{"system", c.system},
          {"spacing", jnum(c.spacing)},
          {"generators", c.names},
          {"rank", c.rank},
          {"rank_deficient", c.rank_deficient},
          {"singular_values", sv},
          {"max_fit_residual", jnum(c.max_fit_residual)},
          {"max_antisymmetry", jnum(c.max_antisymmetry)},
          {"max_imaginary", jnum(c.max_imaginary)},
          {"structure", sc}};
}

inline ojson to_json(const std::vector<PairingRow>& rows, double tol) {
  ojson a = ojson::array();
  for (const auto& r : rows)
    a.push_back({{"k", r.k}, {"upper", jnum(r.upper)}, {"partner", jnum(r.partner)}, {"diff", jnum(r.diff)}, {"tol", jnum(tol)}, {"pass", r.pass}});
  return a;
}

// ---------------------------------------------------------------- list

inline std::string solvable_note(const SystemSpec& s) {
  return s.nonseparable_unless_zero.empty() ? "yes" : "not separable for " + s.nonseparable_unless_zero + "!=0";
}

inline int cmd_list(std::ostream& os, std::optional<int> only = std::nullopt) {
  os << "id | f | V | parameters | generators | solvable\n";
  for (int id = 1; id <= 11; ++id) {
    if (only && *only != id) continue;
    const SystemSpec& s = get_system(id);
    std::string params, gens;
    for (const auto& p : s.parameters) params += (params.empty() ? "" : ",") + p;
    for (const auto* g : s.with_role(GeneratorRole::listed)) gens += (gens.empty() ? "" : ",") + g->name;
    os << s.id << " | " << s.inverse_mass.str() << " | " << s.potential.str() << " | " << (params.empty() ? "-" : params) << " | "
       << gens << " | " << solvable_note(s) << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- solve

struct EigenRow {
  int system = 0;
  std::string l_or_kappa, aux_qn;
  int k = 0;
  double lambda_raw = 0.0;
  std::string convention;
  bool extrapolated = false;
  double residual = 0.0;
};

inline bool spherical(int id) { return id == 1 || id == 2 || id == 10 || id == 11; }
inline bool cylindrical(int id) { return id == 4 || id == 7 || id == 8 || id == 9; }

inline std::vector<ClaimReport> claims_for(int id, const ParameterSet& ps, const RunConfig& cfg) {
  double tol = cfg.tol.value_or(1e-6);
  switch (id) {
    case 1: {
      So4Options o;
      o.claim_tol = tol;
      return so4_claims(o);
    }
    case 2:
      return so13_claims(tol);
    case 8:
      return bessel_claims(tol);
    case 10: {
      if (!ps.lambda || ps.lambda->imag() != 0.0 || ps.lambda->real() == 0.0 || !ps.nu) return {};
      LogOscOptions o;
      o.lambda = ps.lambda->real();
      o.nu = *ps.nu;
      o.l_max = cfg.l_hi;
      o.levels = std::max(cfg.levels, 1);
      o.claim_tol = tol;
      return log_osc_claims(o);
    }
    case 11: {
      std::vector<ClaimReport> out;
      if (ps.sigma && ps.kappa && ps.omega && ps.omega->imag() == 0.0) {
        OscillatorOptions o;
        o.sigma = 0.5 * *ps.sigma;  // table sigma -> exponent of the oscillator chart
        o.kappa = *ps.kappa;
        o.omega = ps.omega->real();
        o.l_max = cfg.l_hi;
        o.levels = std::max(cfg.levels, 1);
        o.claim_tol = tol;
        out = deformed_osc_claims(o);
      }
      MorseOptions m;
      if (ps.nu) m.nu = *ps.nu;
      if (ps.sigma) m.sigma = *ps.sigma;
      if (ps.omega && ps.omega->imag() == 0.0) m.omega = ps.omega->real();
      m.claim_tol = std::max(tol, 1e-5);
      for (auto& r : morse_claims(m)) out.push_back(r);
      return out;
    }
    default:
      return {};
  }
}

inline void write_eigen_csv(const fs::path& p, const std::vector<EigenRow>& rows) {
  std::ofstream f(p);
  if (!f) throw DomainError("cannot write " + p.string());
  f << "system,l_or_kappa,aux_qn,k,lambda_raw,lambda_convention,extrapolated,residual\n";
  for (const auto& r : rows)
    f << r.system << "," << csv_field(r.l_or_kappa) << "," << csv_field(r.aux_qn) << "," << r.k << "," << num(r.lambda_raw) << ","
      << csv_field(r.convention) << "," << (r.extrapolated ? "true" : "false") << "," << num(r.residual) << "\n";
}

inline int cmd_solve(const RunConfig& cfg, std::ostream& log = std::cerr) {
  if (!cfg.system) throw DomainError("solve needs --system");
  const int id = *cfg.system;
  const SystemSpec& spec = get_system(id);
  Resolved res = resolve_sets(cfg);
  ValidatedParams vp = validate_params(spec, res.params);
  if (!vp.solvable)
    throw Unsupported("system " + std::to_string(id) + " is not separable for " + spec.nonseparable_unless_zero +
                      " != 0 (symmetry algebra only; no separated spectrum)");
  if (cfg.levels < 0) throw DomainError("--levels must be non-negative");
  ReduceOptions ro;
  if (cfg.bc == "periodic") ro.angular_bc = Endpoint::periodic;
  else if (cfg.bc != "dirichlet") throw DomainError("--bc must be dirichlet or periodic");
  ro.window = cfg.box;
  RefineOptions rf = refine_options(cfg.grid);
  double tol = cfg.tol.value_or(1e-9);

  std::vector<int> ls;
  if (spherical(id) || cylindrical(id))
    for (int l = cfg.l_lo; l <= cfg.l_hi; ++l) ls.push_back(l);
  else
    ls.push_back(0);
  std::vector<std::vector<EigenRow>> slots(ls.size());
  std::vector<std::exception_ptr> errors(ls.size());
  if (cfg.levels > 0) {
    parallel_tasks(ls.size(), [&](size_t t) {
      try {
        QuantumNumbers qn = res.qn;
        std::string lk;
        if (spherical(id)) qn.l = ls[t], lk = std::to_string(ls[t]);
        else if (cylindrical(id)) qn.kappa_ang = ls[t], lk = std::to_string(ls[t]);
        for (const auto& red : reduce(spec, vp.params, qn, ro)) {
          if (!red.solver) continue;
          EigenResult er = refine(*red.solver, cfg.levels, tol, rf);
          for (int k = 0; k < int(er.eigenvalues.size()); ++k)
            slots[t].push_back({id, lk, red.label, k, red.solver->to_raw(er.eigenvalues[k]), red.solver->to_raw.convention,
                                er.extrapolated, k < int(er.residuals.size()) ? er.residuals[k] : 0.0});
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<EigenRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  std::vector<ClaimReport> claims = cfg.levels > 0 ? claims_for(id, vp.params, cfg) : std::vector<ClaimReport>{};

  fs::create_directories(cfg.out);
  if (cfg.formats.count("csv")) write_eigen_csv(fs::path(cfg.out) / "eigenvalues.csv", rows);
  if (cfg.formats.count("json")) {
    ojson cj = ojson::array();
    for (const auto& c : claims) cj.push_back(to_json(c));
    ojson doc = {{"schema", 1}, {"command", "solve"}, {"system", id}, {"params", to_json(vp.params)},
                 {"l_range", {cfg.l_lo, cfg.l_hi}}, {"levels", cfg.levels}, {"grid", cfg.grid}, {"claims", cj}};
    write_json(fs::path(cfg.out) / "claims.json", doc);
  }
  bool refuted = false;
  for (const auto& c : claims) {
    log << c.id << ": " << to_string(c.verdict) << "\n";
    refuted = refuted || c.verdict == Verdict::refuted;
  }
  log << rows.size() << " levels written to " << cfg.out << "\n";
  return refuted ? kRefuted : kOk;
}

// ---------------------------------------------------------------- verify

inline void write_residuals_csv(const fs::path& p, const std::vector<ResidualReport>& reps) {
  std::ofstream f(p);
  if (!f) throw DomainError("cannot write " + p.string());
  f << "system,identity,kind,t,control,spacing,residual\n";
  for (const auto& r : reps)
    for (size_t i = 0; i < r.spacings.size(); ++i)
      f << r.system << "," << csv_field(r.identity) << "," << r.kind << "," << num(r.t) << "," << (r.control ? "true" : "false") << ","
        << num(r.spacings[i]) << "," << num(r.residuals[i]) << "\n";
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& log = std::cerr) {
  VerifyOptions vo;
  vo.grids = verify_grids(cfg.grid);
  vo.seed = cfg.seed;
  if (cfg.tol) vo.tol = *cfg.tol;
  Resolved res = resolve_sets(cfg);
  std::vector<ResidualReport> reports;
  ojson extra = ojson::object();
  auto need_system = [&]() -> SystemSpec {
    if (!cfg.system) throw DomainError("verify " + cfg.which + " needs --system");
    SystemSpec s = get_system(*cfg.system);
    if (cfg.box) {
      s.box.lo = {cfg.box->first, cfg.box->first, cfg.box->first};
      s.box.hi = {cfg.box->second, cfg.box->second, cfg.box->second};
    }
    return s;
  };
  if (cfg.which == "symmetries") {
    SystemSpec s = need_system();
    ParameterSet ps = validate_params(s, res.params).params;
    if (!cfg.identity.empty()) {
      const GeneratorSpec& g = s.generator(cfg.identity);  // throws on unknown names
      std::mt19937_64 rng(cfg.seed);
      TestField f = random_field(s.box, rng);
      GeneratorSpec b = g.bind(ps);
      bool td = b.time_dependent() || b.has_time_derivative();
      for (double t : td ? std::vector<double>{0.0, 0.3, 1.7} : std::vector<double>{0.0})
        reports.push_back(symmetry_residual(s, ps, g, t, f, vo));
    } else {
      reports = symmetry_reports(s, ps, vo, true, cfg.controls != Controls::off);
    }
  } else if (cfg.which == "casimir") {
    SystemSpec s = need_system();
    std::mt19937_64 rng(cfg.seed);
    CasimirResult c = casimir_residual(s.id, random_field(s.box, rng), vo);
    reports = c.reports;
    extra["casimir_fit"] = {{"alpha", jnum(c.fit_alpha)}, {"beta", jnum(c.fit_beta)}};
  } else if (cfg.which == "closure") {
    SystemSpec s = need_system();
    ParameterSet ps = validate_params(s, res.params).params;
    if (time_independent_listed(s, ps).size() < 2) throw DomainError("closure needs at least two time-independent generators");
    ClosureResult c = lie_closure(s, ps, vo.grids.back(), 20, cfg.seed);
    extra["closure"] = to_json(c);
    ResidualReport r;
    r.identity = "closure";
    r.system = s.id;
    r.kind = "closure";
    r.tol = cfg.tol.value_or(1e-5);
    r.spacings = {c.spacing};
    r.residuals = {c.max_fit_residual};
    r.order = std::numeric_limits<double>::quiet_NaN();
    r.pass = c.max_fit_residual <= r.tol && c.max_antisymmetry <= 1e-6 && !c.rank_deficient;
    r.note = "rank " + std::to_string(c.rank) + ", antisymmetry " + num(c.max_antisymmetry);
    reports.push_back(r);
  } else if (cfg.which == "susy" || cfg.which == "susy-morse") {
    SusyOptions so;
    if (cfg.tol) so.tol = *cfg.tol;
    double sigma = res.params.sigma.value_or(1.0);
    double omega = res.params.omega ? res.params.omega->real() : 1.0;
    SusyResult sr = cfg.which == "susy" ? susy_oscillator(cfg.l_lo, sigma, omega, so)
                                        : susy_morse(res.params.nu.value_or(2.5), sigma, omega, MorseConvention::factorized, so);
    reports = sr.reports;
    extra["pairing"] = to_json(sr.pairing, sr.pairing_tol);
    extra["pairing_pass"] = sr.pairing_pass;
    ResidualReport p;
    p.identity = "partner pairing";
    p.kind = "susy";
    p.tol = sr.pairing_tol;
    for (const auto& row : sr.pairing) {
      p.spacings.push_back(double(row.k));
      p.residuals.push_back(std::abs(row.diff));
    }
    p.pass = sr.pairing_pass;
    p.note = "lambda_{k+1}(H) - lambda_k(partner), k = 0..";
    reports.push_back(p);
  } else {
    throw DomainError("unknown verify target '" + cfg.which + "' (symmetries|casimir|closure|susy|susy-morse)");
  }

  fs::create_directories(cfg.out);
  if (cfg.formats.count("json")) {
    ojson rj = ojson::array();
    for (const auto& r : reports) rj.push_back(to_json(r));
    ojson doc = {{"schema", 1}, {"command", "verify"}, {"which", cfg.which}, {"system", cfg.system ? ojson(*cfg.system) : ojson(nullptr)},
                 {"seed", cfg.seed}, {"grid", cfg.grid}, {"reports", rj}};
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    write_json(fs::path(cfg.out) / "reports.json", doc);
  }
  if (cfg.formats.count("csv")) write_residuals_csv(fs::path(cfg.out) / "residuals.csv", reports);
  bool ok = true;
  for (const auto& r : reports) {
    log << (r.pass ? "PASS " : "FAIL ") << r.identity << (r.control ? " (control)" : "") << "\n";
    if (r.control && cfg.controls != Controls::strict) continue;
    ok = ok && r.pass;
  }
  return ok ? kOk : kRefuted;
}

// ---------------------------------------------------------------- report

inline ojson read_json(const fs::path& p) {
  std::ifstream f(p);
  if (!f) throw DomainError("cannot read " + p.string());
  try {
    return ojson::parse(f);
  } catch (const ojson::exception& e) {
    throw DomainError(p.string() + ": " + e.what());
  }
}

inline std::string jstr(const ojson& v) {
  if (v.is_null()) return "-";
  if (v.is_number_float()) return num(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Collates claims.json and reports.json under the run directory into report.md plus plot-data CSVs.
inline int cmd_report(const RunConfig& cfg, std::ostream& log = std::cerr) {
  fs::path dir(cfg.out);
  fs::path cp = dir / "claims.json", rp = dir / "reports.json";
  if (!fs::exists(cp) && !fs::exists(rp)) throw DomainError("no claims.json or reports.json under " + dir.string());
  std::ostringstream md;
  md << "# PDM verification report\n\n";
  bool refuted = false;
  if (fs::exists(cp)) {
    ojson c = read_json(cp);
    md << "## Spectral claims (system " << jstr(c["system"]) << ")\n\n";
    md << "| claim | convention | verdict | max deviation | shift | note |\n|---|---|---|---|---|---|\n";
    std::ofstream plot(dir / "plot-levels.csv");
    plot << "claim,label,claimed,oracle\n";
    for (const auto& r : c["claims"]) {
      md << "| " << jstr(r["id"]) << " | " << jstr(r["convention"]) << " | " << jstr(r["verdict"]) << " | " << jstr(r["max_deviation"])
         << " | " << jstr(r["shift"]) << " | " << jstr(r["note"]) << " |\n";
      refuted = refuted || r["verdict"] == "REFUTED";
      for (const auto& lv : r["levels"])
        plot << csv_field(jstr(r["id"])) << "," << csv_field(jstr(lv["label"])) << "," << jstr(lv["claimed"]) << "," << jstr(lv["oracle"])
             << "\n";
    }
    md << "\n";
    for (const auto& r : c["claims"]) {
      md << "### " << jstr(r["id"]) << "\n\n" << jstr(r["description"]) << "\n\nOracle: " << jstr(r["oracle"]) << "\n\n";
      md << "| level | claimed | oracle |\n|---|---|---|\n";
      for (const auto& lv : r["levels"]) md << "| " << jstr(lv["label"]) << " | " << jstr(lv["claimed"]) << " | " << jstr(lv["oracle"]) << " |\n";
      for (const auto& s : r["skipped"]) md << "\n- skipped " << jstr(s);
      md << "\n\n";
    }
  }
  if (fs::exists(rp)) {
    ojson r = read_json(rp);
    md << "## Residual checks (" << jstr(r["which"]) << ", system " << jstr(r["system"]) << ")\n\n";
    md << "| identity | t | control | order | finest residual | result |\n|---|---|---|---|---|---|\n";
    std::ofstream plot(dir / "plot-residuals.csv");
    plot << "identity,t,spacing,residual\n";
    for (const auto& x : r["reports"]) {
      const auto& res = x["residuals"];
      md << "| " << jstr(x["identity"]) << " | " << jstr(x["t"]) << " | " << (x["control"].get<bool>() ? "yes" : "no") << " | "
         << jstr(x["order"]) << " | " << (res.empty() ? "-" : jstr(res.back())) << " | " << (x["pass"].get<bool>() ? "PASS" : "FAIL")
         << " |\n";
      for (size_t i = 0; i < res.size(); ++i)
        plot << csv_field(jstr(x["identity"])) << "," << jstr(x["t"]) << "," << jstr(x["spacings"][i]) << "," << jstr(res[i]) << "\n";
    }
    if (r.contains("pairing")) {
      md << "\n| k | lambda_{k+1}(H) | lambda_k(partner) | diff |\n|---|---|---|---|\n";
      for (const auto& p : r["pairing"])
        md << "| " << jstr(p["k"]) << " | " << jstr(p["upper"]) << " | " << jstr(p["partner"]) << " | " << jstr(p["diff"]) << " |\n";
    }
    md << "\n";
  }
  std::ofstream f(dir / "report.md");
  if (!f) throw DomainError("cannot write report.md");
  f << md.str();
  log << "wrote " << (dir / "report.md").string() << "\n";
  return refuted ? kRefuted : kOk;
}

}  // namespace pdm::cli
