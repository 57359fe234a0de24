#include <CLI11.hpp>

#include <iostream>

#include "pdm/cli.hpp"

using namespace pdm::cli;

int main(int argc, char** argv) {
  CLI::App app{"pdm: separated spectra and symmetry checks for position-dependent-mass Schrodinger systems"};
  app.require_subcommand(1);

  std::string config, l_range, box, format, controls;
  std::optional<int> system;
  std::vector<std::string> sets;
  RunConfig flags;
  double tol = 0.0;

  auto common = [&](CLI::App* c) {
    c->add_option("--config", config, "JSON run config; flags override it");
    c->add_option("--system", system, "system id 1..11");
    c->add_option("--set", sets, "parameter or quantum number k=v (repeatable); imaginary values as 2i");
    c->add_option("--l-range", l_range, "a:b, inclusive (l or kappa)");
    c->add_option("--levels", flags.levels, "levels per separated problem");
    c->add_option("--grid", flags.grid, "coarse|standard|fine|nXXX");
    c->add_option("--box", box, "lo:hi (solve: continuum window; verify: cube)");
    c->add_option("--tol", tol, "tolerance override");
    c->add_option("--bc", flags.bc, "dirichlet|periodic for angular problems");
    c->add_option("--out", flags.out, "output directory");
    c->add_option("--format", format, "csv,json");
    c->add_option("--seed", flags.seed, "test-field seed");
    c->add_option("--controls", controls, "strict|report|off");
  };

  auto* list = app.add_subcommand("list", "print the system table");
  list->add_option("--system", system, "only this id");
  auto* solve = app.add_subcommand("solve", "separated eigenvalues and claim verdicts");
  common(solve);
  auto* verify = app.add_subcommand("verify", "commutator, Casimir, closure and factorization residuals");
  common(verify);
  verify->add_option("which", flags.which, "symmetries|casimir|closure|susy|susy-morse");
  verify->add_option("--identity", flags.identity, "single generator name");
  auto* report = app.add_subcommand("report", "collate a run directory into report.md");
  report->add_option("--out", flags.out, "run directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list(std::cout, system);
    RunConfig cfg;
    if (!config.empty()) load_config(config, cfg);
    auto given = [&](CLI::App* c, const char* name) { return c->count(name) > 0; };
    CLI::App* sub = solve->parsed() ? solve : verify->parsed() ? verify : report;
    if (system) cfg.system = system;
    for (const auto& kv : sets) cfg.sets.push_back(split_set(kv));
    if (!l_range.empty()) std::tie(cfg.l_lo, cfg.l_hi) = parse_range(l_range);
    if (!box.empty()) cfg.box = parse_interval(box);
    if (!format.empty()) cfg.formats = parse_formats(format);
    if (!controls.empty()) cfg.controls = parse_controls(controls);
    if (sub != report) {
      if (given(sub, "--levels")) cfg.levels = flags.levels;
      if (given(sub, "--grid")) cfg.grid = flags.grid;
      if (given(sub, "--tol")) cfg.tol = tol;
      if (given(sub, "--bc")) cfg.bc = flags.bc;
      if (given(sub, "--seed")) cfg.seed = flags.seed;
    }
    if (given(sub, "--out")) cfg.out = flags.out;
    if (sub == verify) {
      if (given(verify, "which")) cfg.which = flags.which;
      if (given(verify, "--identity")) cfg.identity = flags.identity;
    }
    if (sub == solve) return cmd_solve(cfg);
    if (sub == verify) return cmd_verify(cfg);
    return cmd_report(cfg);
  } catch (const std::exception& e) {
    std::cerr << "pdm: " << e.what() << "\n";
    return kOperational;
  }
}
