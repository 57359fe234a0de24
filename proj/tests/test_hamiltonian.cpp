#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdm/hamiltonian.hpp"

using namespace pdm;

namespace {

// psi = exp(-a r^2) with f = 1 + x1^2 and V = x2: H psi = -1/2 (f Lap psi + d1 f d1 psi) + V psi.
cplx gauss(double x, double y, double z) { return std::exp(-(x * x + y * y + z * z)); }
cplx h_gauss(double x, double y, double z) {
  double r2 = x * x + y * y + z * z, g = std::exp(-r2);
  double lap = (4 * r2 - 6) * g, f = 1 + x * x, d1f = 2 * x, d1g = -2 * x * g;
  return -0.5 * (f * lap + d1f * d1g) + y * g;
}

double max_err(const Grid3& g, const GridField& u, int margin) {
  double e = 0.0;
  for (size_t k = 0; k < u.v.size(); ++k) {
    auto ijk = g.unpack(k);
    bool in = true;
    for (int a = 0; a < 3; ++a) in = in && ijk[a] >= margin && ijk[a] < g.n(a) - margin;
    if (!in) continue;
    Point p = g.point(k);
    e = std::max(e, std::abs(u.v[k] - h_gauss(p.x1, p.x2, p.x3)));
  }
  return e;
}

}  // namespace

TEST(Hamiltonian, SchemesConvergeAtTheirOrders) {
  Expr f = Expr::parse("1 + x1^2"), V = Expr::parse("x2");
  double prev2 = 0, prev8 = 0;
  for (int n : {32, 64}) {
    Grid3 g({-5, -5, -5}, {5, 5, 5}, {n, n, n});
    GridField psi = GridField::sample(g, gauss);
    psi.clear_border(4);
    double e2 = max_err(g, HamiltonianOp(f, V, g, HamiltonianScheme::divergence2).apply(psi), 6);
    double e8 = max_err(g, HamiltonianOp(f, V, g, HamiltonianScheme::central, 8).apply(psi), 6);
    if (n == 64) {
      EXPECT_GT(std::log2(prev2 / e2), 1.8);
      EXPECT_GT(std::log2(prev8 / e8), 6.0);
      EXPECT_LT(e8, 1e-5);
    }
    prev2 = e2;
    prev8 = e8;
  }
}

TEST(Hamiltonian, DivergenceFormIsSymmetric) {
  Expr f = Expr::parse("(r^2+1)^2"), V = Expr::parse("-3*r^2");
  Grid3 g({-2, -2, -2}, {2, 2, 2}, {20, 20, 20});
  std::mt19937_64 rng(3);
  std::normal_distribution<double> N;
  GridField u(g), w(g);
  for (auto& x : u.v) x = {N(rng), N(rng)};
  for (auto& x : w.v) x = {N(rng), N(rng)};
  u.clear_border(2);
  w.clear_border(2);
  HamiltonianOp H(f, V, g);
  cplx a = inner_product(g, u, H.apply(w)), b = inner_product(g, H.apply(u), w);
  EXPECT_LT(std::abs(a - b), 1e-10 * std::abs(a));
}

TEST(Hamiltonian, RejectsUnboundParametersAndBorderSupport) {
  Grid3 g({-1, -1, -1}, {1, 1, 1}, {16, 16, 16});
  EXPECT_THROW(HamiltonianOp(Expr::parse("1"), Expr::parse("kappa*r"), g), ContractViolation);
  GridField psi = GridField::sample(g, [](double, double, double) { return cplx(1.0); });
  HamiltonianOp H(Expr(1.0), Expr(0.0), g);
  EXPECT_THROW(H.apply(psi), ContractViolation);
  EXPECT_THROW(Grid3({0, 0, 0}, {1, 1, 1}, {8, 16, 16}), ContractViolation);
}

TEST(Hamiltonian, GeneratorMatchesAnalyticDerivative) {
  // S = x2 d/dx1 - x1 d/dx2 + 2: rotation annihilates the radial Gaussian, leaving 2 psi.
  GeneratorSpec s;
  s.c = {Expr::x2(), -Expr::x1(), Expr(0.0)};
  s.c_0 = Expr(2.0);
  Grid3 g({-5, -5, -5}, {5, 5, 5}, {48, 48, 48});
  GridField psi = GridField::sample(g, gauss);
  psi.clear_border(4);
  GridField out = apply_generator(s, g, psi, 0.0);
  double worst = 0.0;
  for (size_t k = 0; k < out.v.size(); ++k) {
    auto ijk = g.unpack(k);
    if (std::min({ijk[0], ijk[1], ijk[2]}) < 6 || std::max({ijk[0], ijk[1], ijk[2]}) >= 42) continue;
    worst = std::max(worst, std::abs(out.v[k] - 2.0 * psi.v[k]));
  }
  EXPECT_LT(worst, 1e-4);
  GeneratorSpec st = s;
  st.c_t = Expr(1.0);
  EXPECT_THROW(apply_generator(st, g, psi, 0.0), ContractViolation);
}

TEST(Hamiltonian, EffectivePotential) {
  // f = e^{2 x1}: Lap f = 4f, |grad f|^2 / (2f) = 2f.
  Expr f = Expr::parse("exp(2*x1)");
  auto V = effective_potential(Expr(1.0), f, 0.5, -1.0);
  Point p{0.3, 0, 0, 0, 0};
  double fv = std::exp(0.6);
  EXPECT_NEAR(V(p).real(), 1.0 + 0.25 * (-0.5) * 4 * fv + (-0.5) * 2 * fv, 1e-12);
  auto bad = effective_potential(Expr(0.0), Expr::parse("x1"), 0, 0);
  EXPECT_THROW(bad(Point{-1, 0, 0, 0, 0}), DomainError);
}
