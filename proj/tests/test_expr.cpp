#include <gtest/gtest.h>

#include <cmath>

#include "pdm/expr.hpp"
#include "pdm/params.hpp"

using namespace pdm;

namespace {
Point at(double x1, double x2, double x3, double t = 0.0) { return {x1, x2, x3, t, 0.0}; }
}  // namespace

TEST(Expr, ParsesPrecedenceAndPowers) {
  Expr e = Expr::parse("1 + 2*x1^2 - x2/4");
  EXPECT_DOUBLE_EQ(e.eval_real(at(3, 2, 0)), 1 + 18 - 0.5);
  EXPECT_DOUBLE_EQ(Expr::parse("-2^2").eval_real(at(0, 0, 0)), -4.0);
  EXPECT_DOUBLE_EQ(Expr::parse("2^3^2").eval_real(at(0, 0, 0)), 512.0);
}

TEST(Expr, DerivedRadiusSymbols) {
  Point p = at(1, 2, 2);
  EXPECT_NEAR(Expr::parse("r").eval_real(p), 3.0, 1e-15);
  EXPECT_NEAR(Expr::parse("rt").eval_real(p), std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(Expr::parse("(r^2+1)^2").eval_real(p), 100.0, 1e-12);
}

TEST(Expr, DiffMatchesCentralDifference) {
  Expr e = Expr::parse("exp(-r^2) * sin(x1) + log(1 + x3^2) * x2 + t*x1");
  Point p = at(0.3, -0.7, 1.1, 0.4);
  for (Var v : {Var::x1, Var::x2, Var::x3, Var::t}) {
    double h = 1e-5;
    Point a = p, b = p;
    double* ca = v == Var::x1 ? &a.x1 : v == Var::x2 ? &a.x2 : v == Var::x3 ? &a.x3 : &a.t;
    double* cb = v == Var::x1 ? &b.x1 : v == Var::x2 ? &b.x2 : v == Var::x3 ? &b.x3 : &b.t;
    *ca += h;
    *cb -= h;
    double fd = (e.eval_real(a) - e.eval_real(b)) / (2 * h);
    EXPECT_NEAR(e.diff(v).eval_real(p), fd, 1e-8);
  }
}

TEST(Expr, ImaginaryUnitAndComplexPowers) {
  Expr e = Expr::parse("exp(i*x1)");
  cplx v = e.eval(at(std::numbers::pi / 2, 0, 0));
  EXPECT_NEAR(v.real(), 0.0, 1e-15);
  EXPECT_NEAR(v.imag(), 1.0, 1e-15);
  cplx s = Expr::parse("(-4)^0.5").eval(at(0, 0, 0));
  EXPECT_NEAR(s.imag(), 2.0, 1e-14);
}

TEST(Expr, BindLeavesUnsetParametersSymbolic) {
  Expr e = Expr::parse("kappa*x1 + nu");
  ParameterSet ps;
  ps.set("kappa", 2.0);
  Expr b = e.bind(ps);
  EXPECT_TRUE(b.has_params());
  EXPECT_EQ(b.param_names(), std::set<std::string>{"nu"});
  ps.set("nu", -1.0);
  EXPECT_FALSE(e.bind(ps).has_params());
  EXPECT_DOUBLE_EQ(e.bind(ps).eval_real(at(3, 0, 0)), 5.0);
}

TEST(Expr, SubstituteAndRoundTrip) {
  Expr e = Expr::parse("x1^2 + 3*x2");
  Expr s = e.substitute(Sym::x1, Expr::parse("x3 + 1"));
  EXPECT_DOUBLE_EQ(s.eval_real(at(100, 2, 1)), 4.0 + 6.0);
  for (const char* txt : {"(r^2+1)^2", "-3*r^2", "kappa/rt^2 + omega^2*x3", "exp(-sigma*x1) - 2*nu*log(r)"}) {
    Expr a = Expr::parse(txt);
    Expr b = Expr::parse(a.str());
    Point p = at(0.4, 0.9, -1.3);
    ParameterSet ps;
    for (auto n : ParameterSet::names) ps.set(n, 0.7);
    EXPECT_NEAR(std::abs(a.eval(p, &ps) - b.eval(p, &ps)), 0.0, 1e-13) << txt << " -> " << a.str();
  }
}

TEST(Expr, ParseErrors) {
  EXPECT_THROW(Expr::parse("1 +"), DomainError);
  EXPECT_THROW(Expr::parse("x1 x2"), DomainError);
  EXPECT_THROW(Expr::parse("foo(x1)"), DomainError);
  EXPECT_THROW(Expr::parse("alpha*x1"), DomainError);
}

TEST(Params, RealityRules) {
  ParameterSet ps;
  EXPECT_THROW(ps.set("kappa", cplx(0, 1)), DomainError);
  EXPECT_THROW(ps.set("lambda", cplx(1, 1)), DomainError);
  EXPECT_NO_THROW(ps.set("lambda", cplx(0, 2)));
  EXPECT_NO_THROW(ps.set("omega", 3.0));
  EXPECT_THROW(ps.set("nu", std::nan("")), DomainError);
  EXPECT_THROW(ps.set("beta", 1.0), DomainError);
  EXPECT_THROW(ps.real("sigma"), DomainError);
  EXPECT_TRUE(ps.is_set("lambda"));
}
