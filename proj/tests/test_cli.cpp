#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pdm/cli.hpp"

using namespace pdm;
using namespace pdm::cli;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("pdm-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunConfig oscillator_run(const fs::path& out) {
  RunConfig c;
  c.system = 11;
  c.sets = {{"sigma", "2"}, {"kappa", "-3"}, {"omega", "1"}};
  c.l_lo = 0;
  c.l_hi = 2;
  c.levels = 3;
  c.out = out.string();
  return c;
}

}  // namespace

TEST(Cli, Parsers) {
  EXPECT_EQ(parse_range("0:3"), std::make_pair(0, 3));
  EXPECT_EQ(parse_range("2"), std::make_pair(2, 2));
  EXPECT_THROW(parse_range("3:1"), DomainError);
  EXPECT_THROW(parse_range("a:b"), DomainError);
  EXPECT_EQ(parse_value("2i"), cplx(0, 2));
  EXPECT_EQ(parse_value("-i"), cplx(0, -1));
  EXPECT_EQ(parse_value(" 1.5 "), cplx(1.5, 0));
  EXPECT_THROW(parse_value("1.5x"), DomainError);
  EXPECT_THROW(split_set("=3"), DomainError);
  EXPECT_EQ(parse_formats("json,csv").size(), 2u);
  EXPECT_THROW(parse_formats("xml"), DomainError);
  EXPECT_THROW(parse_controls("sometimes"), DomainError);
  EXPECT_EQ(verify_grids("n96"), (std::vector<int>{48, 64, 96}));
  EXPECT_THROW(verify_grids("n16"), DomainError);
  EXPECT_THROW(verify_grids("n9x"), DomainError);
  EXPECT_THROW(refine_options("huge"), DomainError);
}

TEST(Cli, ResolveSetsRoutesQuantumNumbers) {
  RunConfig c;
  c.sets = {{"nu", "0"}, {"k1", "0.5"}, {"k2", "1"}, {"lambda", "2i"}};
  Resolved r = resolve_sets(c);
  EXPECT_EQ(*r.params.nu, 0.0);
  EXPECT_EQ(*r.params.lambda, cplx(0, 2));
  EXPECT_EQ(*r.qn.k1, 0.5);
  c.sets = {{"zeta", "1"}};
  EXPECT_THROW(resolve_sets(c), DomainError);
}

TEST(Cli, ConfigFileAndUnknownKeys) {
  fs::path d = scratch("config");
  fs::create_directories(d);
  std::ofstream(d / "run.json") << R"({"system": 11, "set": {"sigma": 2, "kappa": "-3", "omega": 1}, "l_range": "0:1",
    "levels": 2, "grid": "coarse", "seed": 9, "controls": "strict", "format": "json"})";
  RunConfig c;
  load_config((d / "run.json").string(), c);
  EXPECT_EQ(*c.system, 11);
  EXPECT_EQ(c.sets.size(), 3u);
  EXPECT_EQ(c.l_hi, 1);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.controls, Controls::strict);
  EXPECT_EQ(c.formats, std::set<std::string>{"json"});
  std::ofstream(d / "bad.json") << R"({"sytem": 1})";
  EXPECT_THROW(load_config((d / "bad.json").string(), c), DomainError);
  EXPECT_THROW(load_config((d / "missing.json").string(), c), DomainError);
}

TEST(Cli, SolveWritesLevelsAndFlagsRefutations) {
  fs::path d = scratch("solve");
  std::ostringstream log;
  EXPECT_EQ(cmd_solve(oscillator_run(d), log), kRefuted);  // the printed-sign Morse claim is refuted
  std::ifstream f(d / "eigenvalues.csv");
  std::string line;
  std::getline(f, line);
  EXPECT_EQ(line, "system,l_or_kappa,aux_qn,k,lambda_raw,lambda_convention,extrapolated,residual");
  int rows = 0;
  while (std::getline(f, line)) {
    std::stringstream ss(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    ASSERT_EQ(cells.size(), 8u);
    int l = std::stoi(cells[1]), k = std::stoi(cells[3]);
    EXPECT_NEAR(std::stod(cells[4]), 2.0 * k + l + 1.5, 1e-7) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 9);
  ojson j = read_json(d / "claims.json");
  EXPECT_EQ(j["schema"], 1);
  std::map<std::string, std::string> v;
  for (const auto& c : j["claims"]) v[c["id"]] = c["verdict"];
  EXPECT_EQ(v["osc-linear"], "CONFIRMED");
  EXPECT_EQ(v["morse[factorized-sign]"], "CONFIRMED");
  EXPECT_EQ(v["morse[printed-sign]"], "REFUTED");
}

TEST(Cli, SolveIsByteDeterministic) {
  fs::path a = scratch("det-a"), b = scratch("det-b");
  std::ostringstream log;
  cmd_solve(oscillator_run(a), log);
  cmd_solve(oscillator_run(b), log);
  for (const char* file : {"eigenvalues.csv", "claims.json"}) EXPECT_EQ(slurp(a / file), slurp(b / file)) << file;
}

TEST(Cli, SolveRefusals) {
  std::ostringstream log;
  RunConfig c;
  c.out = scratch("refuse").string();
  EXPECT_THROW(cmd_solve(c, log), DomainError);  // no system
  c.system = 4;
  c.sets = {{"kappa", "1"}, {"lambda", "1"}};
  EXPECT_THROW(cmd_solve(c, log), Unsupported);
  c = oscillator_run(scratch("sigma1"));
  c.sets[0].second = "1";
  EXPECT_THROW(cmd_solve(c, log), DomainError);  // excluded sigma
  c = oscillator_run(scratch("bc"));
  c.bc = "robin";
  EXPECT_THROW(cmd_solve(c, log), DomainError);
}

TEST(Cli, ZeroLevelsWritesHeaderOnly) {
  fs::path d = scratch("zero");
  RunConfig c = oscillator_run(d);
  c.levels = 0;
  std::ostringstream log;
  EXPECT_EQ(cmd_solve(c, log), kOk);
  EXPECT_EQ(slurp(d / "eigenvalues.csv"), "system,l_or_kappa,aux_qn,k,lambda_raw,lambda_convention,extrapolated,residual\n");
}

TEST(Cli, VerifySusyAndReport) {
  fs::path d = scratch("susy");
  RunConfig c;
  c.which = "susy-morse";
  c.sets = {{"nu", "2.5"}};
  c.out = d.string();
  std::ostringstream log;
  EXPECT_EQ(cmd_verify(c, log), kOk);
  ojson j = read_json(d / "reports.json");
  EXPECT_TRUE(j["pairing_pass"].get<bool>());
  EXPECT_EQ(cmd_report(c, log), kOk);
  std::string md = slurp(d / "report.md");
  EXPECT_NE(md.find("partner pairing"), std::string::npos);
  EXPECT_TRUE(fs::exists(d / "plot-residuals.csv"));
  c.which = "susy";
  c.out = scratch("susy-osc").string();
  EXPECT_EQ(cmd_verify(c, log), kRefuted);  // pairing offset of 2 sigma omega
}

TEST(Cli, VerifyIdentityAndControls) {
  std::ostringstream log;
  RunConfig c;
  c.system = 1;
  c.grid = "coarse";
  c.identity = "nope";
  c.out = scratch("ident").string();
  EXPECT_THROW(cmd_verify(c, log), DomainError);
  c.identity = "P1";
  // a failing control only affects the exit status under --controls strict
  EXPECT_EQ(cmd_verify(c, log), kOk);
  c.controls = Controls::strict;
  EXPECT_EQ(cmd_verify(c, log), kRefuted);
  c.which = "bogus";
  EXPECT_THROW(cmd_verify(c, log), DomainError);
}

TEST(Cli, ReportNeedsInputs) {
  RunConfig c;
  c.out = scratch("empty").string();
  fs::create_directories(c.out);
  std::ostringstream log;
  EXPECT_THROW(cmd_report(c, log), DomainError);
}

TEST(Cli, ListHasElevenRows) {
  std::ostringstream os;
  cmd_list(os);
  std::string s = os.str();
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n'), 12);
}

TEST(Cli, NumberFormatting) {
  EXPECT_EQ(num(0.1), "0.10000000000000001");
  EXPECT_EQ(jnum(std::nan("")), ojson(nullptr));
}
