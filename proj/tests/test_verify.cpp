#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdm/verify.hpp"

using namespace pdm;

namespace {
VerifyOptions coarse() {
  VerifyOptions o;
  o.grids = {32, 40, 48};
  return o;
}

const ResidualReport& by_identity(const std::vector<ResidualReport>& v, const std::string& id) {
  for (const auto& r : v)
    if (r.identity == id) return r;
  throw std::runtime_error("missing report " + id);
}
}  // namespace

TEST(Verify, FittedOrderAndJudge) {
  std::vector<double> h{0.1, 0.05, 0.025};
  EXPECT_NEAR(fitted_order(h, {3e-2, 7.5e-3, 1.875e-3}), 2.0, 1e-12);
  ResidualReport r;
  r.spacings = h;
  r.residuals = {1e-3, 2.5e-4, 6.25e-5};
  judge(r);
  EXPECT_TRUE(r.pass);
  r.residuals = {1.0, 1.0, 1.0};
  judge(r);
  EXPECT_FALSE(r.pass);
  r.residuals = {1e-12, 3e-12, 2e-12};
  judge(r);
  EXPECT_TRUE(r.pass);  // round-off floor
  r.residuals = {1e-1, 2.5e-2, 6.25e-3};
  judge(r);
  EXPECT_FALSE(r.pass);  // converging but the finest is above tolerance
  r.control = true;
  EXPECT_TRUE(r.as_expected());
  r.spacings = {0.1, 0.05};
  r.residuals = {1, 1};
  EXPECT_THROW(judge(r), ContractViolation);
}

TEST(Verify, RandomFieldVanishesAtFaces) {
  std::mt19937_64 rng(5);
  const Box& box = get_system(1).box;
  TestField f = random_field(box, rng);
  EXPECT_LT(std::abs(f(box.lo[0], f.center[1], f.center[2])) / std::abs(f(f.center[0], f.center[1], f.center[2])), 1e-3);
}

TEST(Verify, RotationsCommuteWithSystemOneAndControlsFail) {
  const SystemSpec& s = get_system(1);
  std::mt19937_64 rng(2);
  TestField field = random_field(s.box, rng);
  VerifyOptions o;
  o.grids = {48, 64, 80};
  ResidualReport m = symmetry_residual(s, {}, s.generator("M21"), 0.0, field, o);
  EXPECT_TRUE(m.pass) << m.order << " " << m.residuals.back();
  EXPECT_GT(m.order, 6.0);
  ResidualReport p = symmetry_residual(s, {}, s.generator("P1"), 0.0, field, o);
  EXPECT_FALSE(p.pass);
  EXPECT_GT(p.residuals.back(), 1.0);
}

TEST(Verify, ScaleInvariantSystemThree) {
  ParameterSet ps;
  ps.set("nu", 0.0);
  auto reps = symmetry_reports(get_system(3), ps, coarse(), false, true);
  for (const auto& r : reps)
    if (!r.control) EXPECT_TRUE(r.pass || r.order > 5.0) << r.identity << " " << r.residuals.back();
    else EXPECT_FALSE(r.pass) << r.identity;
}

TEST(Verify, PerturbedControlChangesOneComponent) {
  const SystemSpec& s = get_system(1);
  auto listed = time_independent_listed(s, {});
  GeneratorSpec g = perturbed_control(listed, {}, 0.01);
  EXPECT_EQ(g.role, GeneratorRole::control);
  Point p{0.3, 0.4, -0.2, 0.0, 0.0};
  int changed = 0;
  for (const auto& base : listed)
    if (g.name == base.name + "_perturbed")
      for (int a = 0; a < 3; ++a) changed += std::abs(g.c[a].eval(p) - base.c[a].eval(p)) > 1e-12;
  EXPECT_EQ(changed, 1);
}

TEST(Verify, CasimirFitOnCoarseGrids) {
  std::mt19937_64 rng(101);
  CasimirResult c = casimir_residual(1, random_field(get_system(1).box, rng), coarse());
  EXPECT_NEAR(c.fit_alpha, 0.5, 1e-3);
  EXPECT_NEAR(c.fit_beta, -2.25, 1e-2);
  for (const auto& r : c.reports)
    if (r.identity == "C1 - (H - 9)/2") EXPECT_NEAR(r.residuals.back(), 2.25, 0.05);
}

TEST(Verify, ClosureOnSmallGrid) {
  ClosureResult c = lie_closure(get_system(1), {}, 40, 12);
  EXPECT_EQ(c.rank, 6);
  EXPECT_LT(c.max_antisymmetry, 1e-6);
  EXPECT_LT(c.max_fit_residual, 1e-3);
  // [M21, M31] = -i M32 up to orientation: the constant is +-1 and nothing else is excited
  int i = 3, j = 4;
  double big = 0;
  int nbig = 0;
  for (size_t k = 0; k < c.names.size(); ++k)
    if (std::abs(c.structure[i][j][k]) > 1e-3) {
      ++nbig;
      big = c.structure[i][j][k];
    }
  EXPECT_EQ(nbig, 1);
  EXPECT_NEAR(std::abs(big), 1.0, 1e-3);
}

TEST(Verify, SusyOscillatorOffset) {
  SusyResult r = susy_oscillator(0.0, 1.0, 1.0);
  EXPECT_TRUE(by_identity(r.reports, "a+a - C_l - H_l").pass);
  EXPECT_FALSE(by_identity(r.reports, "a a+ - H_{l+sigma}").pass);
  EXPECT_TRUE(by_identity(r.reports, "a a+ - H_{l+sigma} - omega(2l+1)").pass);
  EXPECT_FALSE(r.pairing_pass);
  for (const auto& p : r.pairing) EXPECT_NEAR(p.diff, 2.0, 1e-6);
}

TEST(Verify, SusyMorsePairs) {
  SusyResult r = susy_morse(2.5, 1.0, 1.0);
  EXPECT_TRUE(r.pairing_pass);
  for (const auto& rep : r.reports) EXPECT_TRUE(rep.pass) << rep.identity;
  // partner of the three-level well holds two levels
  EXPECT_EQ(r.pairing.size(), 2u);
}
