// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
// Exit status is 0 when every criterion ran; --strict also makes any FAIL nonzero.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pdm/cli.hpp"
#include "pdm/selfcheck.hpp"
#include "pdm/separation.hpp"
#include "pdm/spectra.hpp"
#include "pdm/verify.hpp"

using namespace pdm;

namespace {

struct Outcome {
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string fmt_report(const ResidualReport& r) {
  return fmt("%-34s order %6.2f  finest %.3e  %s", (r.identity + (r.t != 0.0 ? fmt(" t=%.1f", r.t) : "")).c_str(), r.order,
             r.residuals.empty() ? NAN : r.residuals.back(), r.pass ? "pass" : "fail");
}

const ClaimReport& find(const std::vector<ClaimReport>& v, const std::string& id) {
  for (const auto& r : v)
    if (r.id == id) return r;
  throw ContractViolation("no claim report " + id);
}

// 1. Morse levels and bound-state count.
Outcome morse() {
  Outcome o;
  const double nu = 2.5, sigma = 1.0, omega = 1.0;
  MorseSpectrum m = morse_spectrum(nu, sigma, omega, MorseConvention::factorized, 1e-9);
  double worst = 0.0;
  bool ok = m.bound.size() == 3;
  for (int n = 0; n < 3 && n < int(m.bound.size()); ++n) {
    double want = -(nu - n * sigma) * (nu - n * sigma);
    worst = std::max(worst, std::abs(m.bound[n] - want));
    o.details.push_back(fmt("n=%d  FD %.12f  formula %.12f", n, m.bound[n], want));
  }
  ok = ok && worst <= 1e-5;
  MorseSpectrum p = morse_spectrum(nu, sigma, omega, MorseConvention::printed, 1e-9);
  o.details.push_back(fmt("coupling -(2 omega nu + omega sigma), the sign W = nu - omega e^{-sigma rho} factorizes: %zu bound states",
                          m.bound.size()));
  o.details.push_back(fmt("coupling as printed, +(2 omega nu + omega sigma): %zu bound states (claim REFUTED in claims.json)",
                          p.bound.size()));
  o.pass = ok;
  o.summary = fmt("%zu bound states, max |FD - formula| = %.2e (tol 1e-5)", m.bound.size(), worst);
  return o;
}

// 2. Deformed oscillator levels, plus the linear-vs-radical verdict recorded without asserting it.
Outcome oscillator(const std::filesystem::path& out) {
  Outcome o;
  double worst = 0.0;
  for (int l = 0; l <= 1; ++l) {
    SLProblem pr = liouville_power(1.0, -3.0, 1.0, l);
    EigenResult er = refine(pr, 2, 1e-10);
    for (int n = 0; n <= 1; ++n) {
      double E = pr.to_raw(er.eigenvalues[n]), want = 2.0 * n + l + 1.5;
      worst = std::max(worst, std::abs(E - want));
      o.details.push_back(fmt("n=%d l=%d  FD %.12f  omega(2n+l+3/2) %.12f", n, l, E, want));
    }
  }
  OscillatorOptions opt;
  opt.l_max = 2;
  auto claims = deformed_osc_claims(opt);
  cli::ojson cj = cli::ojson::array();
  for (const auto& c : claims) {
    cj.push_back(cli::to_json(c));
    o.details.push_back("claims.json: " + c.id + " " + to_string(c.verdict));
  }
  std::filesystem::create_directories(out);
  cli::write_json(out / "claims.json", {{"schema", 1}, {"command", "acceptance"}, {"criterion", 2}, {"claims", cj}});
  o.pass = worst <= 1e-5;
  o.summary = fmt("max |FD - omega(2n+l+3/2)| = %.2e (tol 1e-5)", worst);
  return o;
}

// 3. SUSY partner pairing and factorization decay.
Outcome susy() {
  Outcome o;
  SusyResult r = susy_oscillator(0.0, 1.0, 1.0);
  bool decay = true;
  for (const auto& rep : r.reports) {
    o.details.push_back(fmt_report(rep));
    if (rep.note.empty()) decay = decay && rep.order >= 1.7;  // the printed factorization identities
  }
  double worst = 0.0;
  for (const auto& p : r.pairing) {
    worst = std::max(worst, std::abs(p.diff));
    o.details.push_back(fmt("k=%d  lambda_{k+1}(H_l) %.10f  lambda_k(H_{l+sigma}) %.10f  diff %.3e", p.k, p.upper, p.partner, p.diff));
  }
  o.details.push_back("a a+ = H_{l+sigma} + omega(2l+1), so the partner levels sit 2 sigma omega below; see the derived identity above");
  SusyResult m = susy_morse(2.5, 1.0, 1.0);
  for (const auto& p : m.pairing)
    o.details.push_back(fmt("Morse k=%d  lambda_{k+1}(H_nu) %.10f  lambda_k(H_{nu-sigma}) %.10f  diff %.3e", p.k, p.upper, p.partner, p.diff));
  o.pass = r.pairing_pass && decay;
  o.summary = fmt("pairing max |diff| = %.3e (tol 1e-5), printed factorizations decay: %s", worst, decay ? "yes" : "no");
  return o;
}

// 4. so(4) eigenfunctions and the constant-shift adjudication.
Outcome so4() {
  Outcome o;
  So4Options opt;
  opt.levels = {{1, 0}, {2, 0}, {2, 1}};
  auto claims = so4_claims(opt);
  const ClaimReport& e = find(claims, "so4-eigenfunction");
  double worst = 0.0;
  for (size_t i = 0; i < e.labels.size(); ++i) {
    double d = std::abs(e.claimed[i] - e.oracle[i]);
    worst = std::max(worst, d);
    o.details.push_back(fmt("%s  Rayleigh %.10f  FD %.10f  |diff| %.2e", e.labels[i].c_str(), e.claimed[i], e.oracle[i], d));
  }
  const ClaimReport& s = find(claims, "so4-energy-vs-radial");
  for (const auto& c : claims) o.details.push_back(c.id + ": " + to_string(c.verdict) + (c.shift != 0.0 ? fmt(" shift %.6f", c.shift) : ""));
  bool decided = s.verdict == Verdict::confirmed_up_to_shift || s.verdict == Verdict::refuted;
  o.pass = e.labels.size() == 3 && worst <= e.tol && decided;
  o.summary = fmt("max |Rayleigh - FD| = %.2e (tol 10h^2 = %.2e); energy-vs-radial %s", worst, e.tol, to_string(s.verdict).c_str());
  return o;
}

// 5. Symmetry residuals for systems 1, 2, 3 (nu = 0) and 10, with the P1 control on system 1.
Outcome symmetries() {
  Outcome o;
  VerifyOptions vo;
  bool ok = true;
  std::vector<std::pair<int, ParameterSet>> runs;
  runs.push_back({1, {}});
  runs.push_back({2, {}});
  ParameterSet p3;
  p3.set("nu", 0.0);
  runs.push_back({3, p3});
  ParameterSet p10;
  p10.set("lambda", 1.0);
  p10.set("nu", 0.5);
  runs.push_back({10, p10});
  double control = 0.0;
  bool control_ok = false;
  for (auto& [id, ps] : runs) {
    const SystemSpec& s = get_system(id);
    for (const auto& r : symmetry_reports(s, ps, vo, false, id == 1)) {
      o.details.push_back(fmt("system %-2d ", id) + fmt_report(r) + (r.control ? "  (control)" : ""));
      if (r.control) {
        if (r.identity == "[H,P1]") {
          control = r.residuals.back();
          control_ok = !r.pass && control >= 1e-2;
        }
        continue;
      }
      ok = ok && r.pass;
    }
  }
  o.pass = ok && control_ok;
  o.summary = fmt("listed generators %s; P1 control plateau %.3g (needs >= 1e-2)", ok ? "all pass" : "NOT all pass", control);
  return o;
}

// 6. Casimir identities.
Outcome casimir() {
  Outcome o;
  bool ok = true;
  for (int id : {1, 2}) {
    std::mt19937_64 rng(100 + id);
    CasimirResult c = casimir_residual(id, random_field(get_system(id).box, rng));
    for (const auto& r : c.reports) {
      o.details.push_back(fmt("system %d ", id) + fmt_report(r) + (r.note.empty() ? "" : "  [" + r.note + "]"));
      if (r.note != "derived constants") ok = ok && r.order >= 1.7;
    }
    o.details.push_back(fmt("system %d least-squares C1 = %.6f H %+.6f", id, c.fit_alpha, c.fit_beta));
  }
  o.pass = ok;
  o.summary = ok ? "printed C1 and C2 identities decay" : "printed C1 identities plateau (C2 decays)";
  return o;
}

// 7. Lie closure of the six listed generators.
Outcome closure() {
  Outcome o;
  bool ok = true;
  for (int id : {1, 2}) {
    ClosureResult c = lie_closure(get_system(id), {}, 96);
    bool good = c.rank == 6 && c.max_antisymmetry <= 1e-6 && c.max_fit_residual <= 1e-5;
    ok = ok && good;
    o.details.push_back(fmt("system %d  rank %d  fit residual %.2e  antisymmetry %.2e  imag %.2e", id, c.rank, c.max_fit_residual,
                            c.max_antisymmetry, c.max_imaginary));
  }
  o.pass = ok;
  o.summary = ok ? "rank 6, antisymmetric, closes on the finest grid" : "closure criteria not met";
  return o;
}

// 8. Scale invariance of system 3 at nu = 0 and the K_{i nu} ODE check. The physical x3 problem is
// pushed through the generic x3 = e^y change on a box scaled with 1/k, independent of the solver chart.
Outcome scale_invariance() {
  Outcome o;
  const SystemSpec& s = get_system(3);
  ParameterSet ps;
  ps.set("nu", 0.0);
  RefineOptions ro;
  ro.adapt_window = false;
  std::vector<std::vector<double>> levels;
  for (double k : {0.5, 1.0, 2.0}) {
    QuantumNumbers qn;
    qn.k1 = k;
    qn.k2 = 0.0;
    Reduction red = reduce(s, ps, qn)[0];
    double shift = std::log(k);
    SLProblem gen = change_variable(red.physical, exp(Expr::xi()), -12.0 - shift, 3.0 - shift, "x3 = e^y");
    gen.left = gen.right = Endpoint::dirichlet;
    EigenResult eg = refine(gen, 4, 1e-10, ro);
    std::vector<double> E;
    for (double mu : eg.eigenvalues) E.push_back(gen.to_raw(mu));
    levels.push_back(E);
    o.details.push_back(fmt("k=%.1f  box y in [%.4f, %.4f]  E_0..3 = %.10f %.10f %.10f %.10f", k, gen.a, gen.b, E[0], E[1], E[2], E[3]));
    if (k == 1.0) {
      EigenResult ec = refine(*red.solver, 4, 1e-10, ro);
      std::vector<double> Ec;
      for (double mu : ec.eigenvalues) Ec.push_back(red.solver->to_raw(mu));
      levels.push_back(Ec);
      o.details.push_back(fmt("k=1.0  Liouville chart            E_0..3 = %.10f %.10f %.10f %.10f", Ec[0], Ec[1], Ec[2], Ec[3]));
    }
  }
  double spread = 0.0;
  for (size_t j = 0; j < levels[0].size(); ++j)
    for (size_t i = 1; i < levels.size(); ++i) spread = std::max(spread, std::abs(levels[i][j] - levels[0][j]));
  auto suites = selfcheck::ode_suites(812, 1e-6, 100);
  const auto& k = suites.back();
  o.details.push_back(fmt("%s: %d points, worst %.2e", k.name.c_str(), k.count, k.worst));
  o.pass = spread <= 1e-6 && k.pass();
  o.summary = fmt("eigenvalue spread across k = %.2e (tol 1e-6); K_{i nu} ODE worst %.2e (tol 1e-6)", spread, k.worst);
  return o;
}

// 9. Special-function dual paths and ODE residuals.
Outcome specfun_suites() {
  Outcome o;
  bool ok = true;
  for (const auto& s : selfcheck::dual_path()) {
    ok = ok && s.pass();
    o.details.push_back(fmt("dual  %-44s worst %.2e (tol %.0e)", s.name.c_str(), s.worst, s.tol));
  }
  for (const auto& s : selfcheck::ode_suites()) {
    ok = ok && s.pass();
    o.details.push_back(fmt("ode   %-44s worst %.2e (tol %.0e)", s.name.c_str(), s.worst, s.tol));
  }
  o.pass = ok;
  o.summary = ok ? "all suites within tolerance" : "a suite exceeds its tolerance";
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 10. Byte-identical solve output for identical config and seed.
Outcome determinism(const std::filesystem::path& out) {
  Outcome o;
  cli::RunConfig cfg;
  cfg.system = 11;
  cfg.sets = {{"sigma", "2"}, {"kappa", "-3"}, {"omega", "1"}};
  cfg.l_lo = 0;
  cfg.l_hi = 2;
  cfg.levels = 4;
  std::ostringstream sink;
  bool same = true;
  cfg.out = (out / "run-a").string();
  cli::cmd_solve(cfg, sink);
  cfg.out = (out / "run-b").string();
  cli::cmd_solve(cfg, sink);
  for (const char* file : {"eigenvalues.csv", "claims.json"}) {
    std::string a = slurp(out / "run-a" / file), b = slurp(out / "run-b" / file);
    bool eq = !a.empty() && a == b;
    same = same && eq;
    o.details.push_back(fmt("%s: %zu bytes, %s", file, a.size(), eq ? "identical" : "DIFFERENT"));
  }
  o.pass = same;
  o.summary = same ? "two solve runs are byte-identical" : "solve outputs differ";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = false;
  std::filesystem::path out = "acceptance-out";
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--strict")) strict = true;
    else if (!std::strcmp(argv[i], "--out") && i + 1 < argc) out = argv[++i];
    else only.push_back(std::atoi(argv[i]));
  }
  std::vector<std::pair<int, std::function<Outcome()>>> criteria{
      {1, morse},
      {2, [&] { return oscillator(out / "criterion-2"); }},
      {3, susy},
      {4, so4},
      {5, symmetries},
      {6, casimir},
      {7, closure},
      {8, scale_invariance},
      {9, specfun_suites},
      {10, [&] { return determinism(out / "criterion-10"); }},
  };
  int fails = 0, errors = 0;
  for (auto& [id, run] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    auto t0 = std::chrono::steady_clock::now();
    try {
      Outcome o = run();
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("criterion %2d: %s  %s  [%.1f s]\n", id, o.pass ? "PASS" : "FAIL", o.summary.c_str(), secs);
      for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
      fails += !o.pass;
    } catch (const std::exception& e) {
      std::printf("criterion %2d: FAIL  error: %s\n", id, e.what());
      ++errors;
    }
    std::fflush(stdout);
  }
  std::printf("%d criteria failed, %d errored\n", fails, errors);
  if (errors) return 1;
  return strict && fails ? 2 : 0;
}
