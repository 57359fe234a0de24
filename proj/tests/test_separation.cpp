#include <gtest/gtest.h>

#include <cmath>

#include "pdm/separation.hpp"
#include "pdm/spectra.hpp"

using namespace pdm;

namespace {

// An exact change of chart maps the pointwise ratio (L phi)/(w phi) of any smooth phi onto the
// solver's ratio for u = A phi(x(xi)), once both are put in raw units.
double chart_mismatch(const Reduction& r, const std::vector<double>& xis) {
  const SLProblem& sol = *r.solver;
  auto phi = [](double x) { return std::exp(-0.5 * (x - 1.2) * (x - 1.2)) * (1.0 + 0.3 * x); };
  Eigenfunction in_sol;
  in_sol.f = [&](double xi) {
    Point p{0, 0, 0, 0, xi};
    return sol.chart.amplitude.eval(p).real() * phi(sol.chart.x_of_xi.eval(p).real());
  };
  Eigenfunction in_phys;
  in_phys.f = phi;
  double worst = 0.0;
  for (double xi : xis) {
    double x = sol.chart.x_of_xi.eval(Point{0, 0, 0, 0, xi}).real();
    double a = sol.to_raw(local_eigenvalue(sol, in_sol, {xi}, 1e-3).value);
    double b = r.physical.to_raw(local_eigenvalue(r.physical, in_phys, {x}, 1e-4).value);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(b)));
  }
  return worst;
}

}  // namespace

TEST(Separation, ChartsPreserveTheOperator) {
  struct Case {
    int id;
    ParameterSet ps;
    QuantumNumbers qn;
    std::vector<double> xis;
  };
  ParameterSet p3, p8, p10, p11;
  p3.set("nu", 0.4);
  p8.set("lambda", 0.0);
  p8.set("mu", 0.0);
  p8.set("nu", 0.3);
  p10.set("lambda", 1.0);
  p10.set("nu", 0.5);
  p11.set("sigma", 2.0);
  p11.set("kappa", -3.0);
  p11.set("omega", 1.0);
  std::vector<Case> cases{
      {1, {}, QuantumNumbers{.l = 0}, {0.6, 1.2, 1.9}},
      {1, {}, QuantumNumbers{.l = 2}, {0.6, 1.2, 1.9}},
      {3, p3, QuantumNumbers{.k1 = 0.7, .k2 = 0.2}, {-0.8, 0.0, 0.7}},
      {8, p8, QuantumNumbers{.kappa_ang = 1, .k3 = 0.5}, {-0.8, 0.0, 0.7}},
      {10, p10, QuantumNumbers{.l = 1}, {-1.0, 0.0, 1.0}},
      {11, p11, QuantumNumbers{.l = 1}, {0.6, 1.0, 1.5}},
  };
  for (const auto& c : cases) {
    QuantumNumbers qn = c.qn;
    if (c.id == 8) qn.angular_level = 0;
    auto red = reduce(get_system(c.id), c.ps, qn, ReduceOptions{.angular_bc = Endpoint::periodic});
    const Reduction& r = red.back();
    ASSERT_TRUE(r.solver.has_value()) << c.id;
    EXPECT_LT(chart_mismatch(r, c.xis), 1e-6) << "system " << c.id << " " << r.solver->label;
  }
}

TEST(Separation, DeformedOscillatorLevels) {
  // sigma = 1, kappa = -3: delta = 0, so l(l+1)/z^2 + z^2 with -u'' gives mu = 2(2n + l + 3/2).
  for (int l = 0; l <= 2; ++l) {
    SLProblem p = liouville_power(1.0, -3.0, 1.0, l);
    EigenResult r = refine(p, 3, 1e-10);
    for (int n = 0; n < 3; ++n) EXPECT_NEAR(p.to_raw(r.eigenvalues[n]), 2.0 * n + l + 1.5, 1e-8) << n << " " << l;
  }
  EXPECT_THROW(liouville_power(0.0, 0.0, 1.0, 0), DomainError);
  EXPECT_THROW(liouville_power(1.0, -10.0, 1.0, 0), DomainError);
}

TEST(Separation, MorseWell) {
  // -u'' + e^{-2 rho} - 6 e^{-rho}: levels -(5/2 - n)^2, three of them.
  SLProblem p = morse_problem(1.0, 1.0, -6.0);
  Discretization d = discretize(p, 4096);
  EXPECT_EQ(sturm_count(d, 0.0), 3);
  EigenResult r = refine(p, 3, 1e-10);
  for (int n = 0; n < 3; ++n) EXPECT_NEAR(r.eigenvalues[n], -(2.5 - n) * (2.5 - n), 1e-7);
}

TEST(Separation, LogTransformMatchesRadialForm) {
  // Same spectrum before and after rho = ln r.
  double sigma = 1.0, omega = 1.0, g = -6.0;
  LogTransform t = liouville_log(sigma, omega, 2.5, MorseConvention::factorized);
  ASSERT_DOUBLE_EQ(t.coupling, g);
  RefineOptions ro;
  ro.adapt_window = false;
  const double lo = -3.5, hi = 14.0;
  SLProblem m = t.problem;
  m.a = m.window_a = lo;
  m.b = m.window_b = hi;
  m.a_infinite = m.b_infinite = false;
  m.left = m.right = Endpoint::dirichlet;
  EigenResult a = refine(m, 2, 1e-9, ro);
  SLProblem pr = log_radial_problem(sigma, omega, g);
  SLProblem y = change_variable(pr, exp(Expr::xi()), lo, hi, "r = e^rho");
  y.left = y.right = Endpoint::dirichlet;
  EigenResult b = refine(y, 2, 1e-9, ro);
  for (int n = 0; n < 2; ++n) EXPECT_NEAR(m.to_raw(a.eigenvalues[n]), pr.to_raw(b.eigenvalues[n]), 1e-6);
}

TEST(Separation, Refusals) {
  ParameterSet p4;
  p4.set("kappa", 1.0);
  p4.set("lambda", 1.0);
  EXPECT_THROW(reduce(get_system(4), p4, QuantumNumbers{.kappa_ang = 0}), Unsupported);
  ParameterSet p7;
  p7.set("sigma", 1.0);
  p7.set("kappa", 1.0);
  p7.set("lambda", 2.0);
  EXPECT_THROW(reduce(get_system(7), p7, QuantumNumbers{.kappa_ang = 0}), Unsupported);
  EXPECT_THROW(reduce(get_system(1), {}, QuantumNumbers{}), DomainError);
  auto r2 = reduce(get_system(2), {}, QuantumNumbers{.l = 0});
  EXPECT_FALSE(r2[0].solver.has_value());
}

TEST(Separation, SphericalRadialCoefficients) {
  SLProblem p = sep::spherical_radial(get_system(1), {}, 1);
  double r = 0.7, f = std::pow(r * r + 1, 2), fp = 4 * r * (r * r + 1);
  EXPECT_NEAR(p.eval_p(r), 0.5 * f, 1e-14);
  EXPECT_NEAR(p.eval_q(r), fp / (2 * r) + f / (r * r) - 3 * r * r, 1e-12);
}
