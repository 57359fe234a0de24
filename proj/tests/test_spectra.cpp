#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "pdm/spectra.hpp"

using namespace pdm;

namespace {
std::map<std::string, Verdict> verdicts(const std::vector<ClaimReport>& v) {
  std::map<std::string, Verdict> out;
  for (const auto& r : v) out[r.id] = r.verdict;
  return out;
}
}  // namespace

TEST(Spectra, DecideClassifies) {
  ClaimReport r = make_report("x", "", "H", "", 1e-6);
  add_level(r, "a", 1.0, 1.0 + 1e-8);
  add_level(r, "b", 2.0, 2.0);
  decide(r);
  EXPECT_EQ(r.verdict, Verdict::confirmed);
  ClaimReport s = make_report("y", "", "H", "", 1e-6);
  add_level(s, "a", 5.0, 1.0);
  add_level(s, "b", 9.0, 5.0);
  decide(s);
  EXPECT_EQ(s.verdict, Verdict::confirmed_up_to_shift);
  EXPECT_DOUBLE_EQ(s.shift, 4.0);
  ClaimReport t = make_report("z", "", "H", "", 1e-6);
  add_level(t, "a", 5.0, 1.0);
  decide(t);
  EXPECT_EQ(t.verdict, Verdict::refuted);  // a single level cannot establish a shift
  ClaimReport u = make_report("w", "", "H", "", 1e-6);
  add_level(u, "a", 5.0, 1.0, 0.0, "complex");
  decide(u);
  EXPECT_EQ(u.verdict, Verdict::undecided);
  EXPECT_EQ(u.skipped.size(), 1u);
}

TEST(Spectra, So4Verdicts) {
  auto v = verdicts(so4_claims());
  EXPECT_EQ(v["so4-energy[H=2E]"], Verdict::refuted);
  EXPECT_EQ(v["so4-energy[2H]"], Verdict::confirmed);
  EXPECT_EQ(v["so4-radial-rhs"], Verdict::confirmed);
  EXPECT_EQ(v["so4-energy-vs-radial"], Verdict::confirmed_up_to_shift);
  EXPECT_EQ(v["so4-eigenfunction"], Verdict::confirmed);
}

TEST(Spectra, So4ThetaChartOracle) {
  // theta chart of system 1: -u'' + l(l+1)/sin^2 u = (n+l+1)^2 u exactly, H = 2 mu + 5/2.
  for (int l = 0; l <= 1; ++l) {
    SLProblem sol = *reduce(get_system(1), {}, QuantumNumbers{.l = l})[0].solver;
    EigenResult r = refine(sol, 2, 1e-9);
    for (int n = 0; n < 2; ++n) {
      double N = n + l + 1;
      EXPECT_NEAR(sol.to_raw(r.eigenvalues[n]), 2 * N * N + 2.5, 1e-6);
      EXPECT_DOUBLE_EQ(so4_energy(int(N)).value, 4 * N * N + 5);
    }
  }
}

TEST(Spectra, So13Verdicts) {
  auto v = verdicts(so13_claims());
  EXPECT_EQ(v["so13-eigenfunction"], Verdict::confirmed);
  EXPECT_EQ(v["so13-energy[k=j1]"], Verdict::refuted);
}

TEST(Spectra, OscillatorVerdicts) {
  OscillatorOptions o;
  o.l_max = 2;
  auto v = verdicts(deformed_osc_claims(o));
  EXPECT_EQ(v["osc-linear"], Verdict::confirmed);
  EXPECT_EQ(v["osc-exact"], Verdict::confirmed);
  EXPECT_EQ(v["osc-radical"], Verdict::refuted);
  // l = 0, 1 make the radicand negative; those levels are skipped, not judged
  auto skipped = deformed_osc_claims(OscillatorOptions{});
  for (const auto& r : skipped)
    if (r.id == "osc-radical") EXPECT_EQ(r.verdict, Verdict::undecided);
}

TEST(Spectra, OscillatorFormulas) {
  EXPECT_TRUE(oscillator_condition(1.0, -3.0));
  EXPECT_FALSE(oscillator_condition(1.0, -2.0));
  for (int n = 0; n < 3; ++n)
    for (int l = 0; l < 3; ++l) {
      EXPECT_NEAR(deformed_osc_exact(n, l, 1.0, 1.0, -3.0), 2.0 * n + l + 1.5, 1e-14);
      EXPECT_NEAR(deformed_osc_energy(n, l, 1.0, 1.0, -3.0).linear.value, 2.0 * n + l + 1.5, 1e-14);
    }
}

TEST(Spectra, MorseVerdicts) {
  auto v = verdicts(morse_claims());
  EXPECT_EQ(v["morse[factorized-sign]"], Verdict::confirmed);
  EXPECT_EQ(v["morse[printed-sign]"], Verdict::refuted);
  EXPECT_EQ(morse_spectrum(2.5, 1.0, 1.0, MorseConvention::printed).bound.size(), 0u);
  EXPECT_EQ(morse_spectrum(2.5, 1.0, 1.0, MorseConvention::factorized).bound.size(), 3u);
}

TEST(Spectra, LogOscillator) {
  auto v = verdicts(log_osc_claims(LogOscOptions{}));
  EXPECT_EQ(v["log-osc-printed"], Verdict::refuted);
  EXPECT_EQ(v["log-osc-completed"], Verdict::refuted);
  EXPECT_EQ(v["log-osc-exact"], Verdict::confirmed);
  EXPECT_EQ(v["log-osc-printed-operator"], Verdict::confirmed);
  // harmonic oscillator in y with frequency |lambda|/sqrt 2 after completing the square
  double lambda = 1.5, nu = 0.5;
  for (int n = 0; n < 3; ++n)
    EXPECT_NEAR(log_osc_exact(n, 0, lambda, nu), lambda * (n + 0.5) - nu * nu / (2 * lambda * lambda) + 9.0 / 8.0, 1e-14);
}

TEST(Spectra, BesselVerdicts) {
  auto v = verdicts(bessel_claims());
  EXPECT_EQ(v["bessel-J-printed"], Verdict::refuted);
  EXPECT_EQ(v["bessel-J-sqrt-index"], Verdict::refuted);
  EXPECT_EQ(v["bessel-K-imaginary-order"], Verdict::confirmed);
  BesselIndex b = bessel_level_index(1, 3.0);
  EXPECT_DOUBLE_EQ(b.alpha, -1.0);
}

TEST(Spectra, KImaginaryOrderSolvesCylindricalEquation) {
  // independent of the claim driver: K_{i mu}(rt)/rt at Etilde = kappa^2 + 1 + mu^2
  double mu = 1.3;
  int ka = 1;
  double worst = cylindrical_residual(bessel_k_over_r(mu, 1.0), ka, ka * ka + 1.0 + mu * mu, 1.0, {0.8, 1.7, 2.9});
  EXPECT_LT(worst, 1e-7);
}

TEST(Spectra, EigenfunctionSamplesMatchFdVector) {
  // system 11 ground state sampled on the solver chart is parallel to the FD eigenvector
  ParameterSet ps;
  ps.set("sigma", 2.0);
  ps.set("kappa", -3.0);
  ps.set("omega", 1.0);
  QuantumNumbers qn{.l = 1};
  SLProblem sol = *reduce(get_system(11), ps, qn)[0].solver;
  Discretization d = discretize(sol, 2000);
  EigenResult r = eigen_lowest(d, 1);
  std::vector<double> u = sample_on_chart(sol, build_eigenfunction(11, qn, ps, 0), d);
  double uu = 0, vv = 0, uv = 0;
  for (int i = 0; i < d.n; ++i) {
    uu += u[i] * u[i] * d.weight[i];
    vv += r.vectors[0][i] * r.vectors[0][i] * d.weight[i];
    uv += u[i] * r.vectors[0][i] * d.weight[i];
  }
  EXPECT_GT(std::abs(uv) / std::sqrt(uu * vv), 1.0 - 1e-6);
}
