#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/error.hpp"
#include "pdm/expr.hpp"
#include "pdm/sl_problem.hpp"
#include "pdm/sturm.hpp"

namespace pdm {

struct QuantumNumbers {
  std::optional<int> l, m;             // spherical
  std::optional<int> kappa_ang;        // cylindrical angular number (e^{i kappa phi})
  std::optional<double> omega_ax;      // cylindrical axial wavenumber
  std::optional<double> k1, k2;        // Cartesian transverse wavenumbers
  std::optional<double> k3;            // axial wavenumber for angular-potential systems
  std::optional<int> angular_level;    // which angular eigenvalue feeds the radial problem (default 0)
  std::optional<double> coupling;      // energy entering as a coupling constant (systems 7, 9 angular)
};

struct ReduceOptions {
  Endpoint angular_bc = Endpoint::dirichlet;  // [0, 2 pi] angular problems: dirichlet or periodic
  bool angular_line = false;                  // system 9: read phi on the whole line (Morse reading)
  std::optional<std::pair<double, double>> window;  // override for boxed continuum windows (solver chart)
};

// One separated factor: the self-adjoint problem in the original coordinate and, when the original
// form has singular or infinite ends that suit finite differences poorly, an equivalent normal form
// with a chart back to the original coordinate. `solver` equals `physical` when no chart is needed.
struct Reduction {
  std::string label;
  SLProblem physical;
  std::optional<SLProblem> solver;
};

namespace sep {

inline Expr c(double v) { return Expr(v); }
inline const Expr& X() {
  static const Expr x = Expr::xi();
  return x;
}

inline double need(const std::optional<int>& v, const char* what) {
  if (!v) throw DomainError(std::string("missing quantum number ") + what);
  return *v;
}
inline double need(const std::optional<double>& v, const char* what) {
  if (!v) throw DomainError(std::string("missing quantum number ") + what);
  return *v;
}

inline double real_param(const ParameterSet& ps, const char* name) { return ps.real(name); }

// Square of a real-or-imaginary parameter (lambda, omega): always real.
inline double square_param(const ParameterSet& ps, const char* name) {
  auto v = ps.get(name);
  if (!v) throw DomainError(std::string("parameter '") + name + "' is not set");
  return (*v * *v).real();
}

inline SLProblem make(std::string label, Expr p, Expr q, Expr w, double a, double b) {
  SLProblem pr;
  pr.label = std::move(label);
  pr.p = std::move(p);
  pr.q = std::move(q);
  pr.w = std::move(w);
  pr.a = a;
  pr.b = b;
  pr.window_a = a;
  pr.window_b = b;
  return pr;
}

inline SLProblem& infinite(SLProblem& pr, bool left, bool right, double wa, double wb) {
  pr.a_infinite = left;
  pr.b_infinite = right;
  if (left) pr.a = -std::numeric_limits<double>::infinity();
  if (right) pr.b = std::numeric_limits<double>::infinity();
  pr.window_a = wa;
  pr.window_b = wb;
  return pr;
}

// Radial problem of a spherically symmetric system after psi = phi(r) Y_lm / r:
// -(f phi'/2)' + [f'/(2r) + f l(l+1)/(2r^2) + V] phi = lambda phi.
inline SLProblem spherical_radial(const SystemSpec& spec, const ParameterSet& ps, int l) {
  Expr f = spec.inverse_mass.bind(ps).substitute(Sym::r, X());
  Expr V = spec.potential.bind(ps).substitute(Sym::r, X());
  Expr fp = f.diff(Var::xi);
  Expr q = fp / (c(2.0) * X()) + f * c(0.5 * l * (l + 1)) / (X() * X()) + V;
  SLProblem pr = make("system " + std::to_string(spec.id) + " radial l=" + std::to_string(l), f * c(0.5), q, c(1.0), 0.0,
                      std::numeric_limits<double>::infinity());
  pr.variable = "r";
  pr.b_infinite = true;
  pr.window_a = 0.0;
  pr.window_b = 10.0;
  pr.left = l == 0 ? Endpoint::dirichlet : Endpoint::natural_singular;
  pr.right = Endpoint::natural_singular;
  pr.to_raw = {1.0, 0.0, "H"};
  return pr;
}

}  // namespace sep

// Exact change of independent variable x = X(xi) (X increasing): the transformed problem
// -(p~ u')' + q~ u = lambda w~ u with p~ = p(X)/X', q~ = q(X) X', w~ = w(X) X' has the same eigenvalues.
inline SLProblem change_variable(const SLProblem& pr, const Expr& x_of_xi, double a, double b, std::string chart_name) {
  Expr d = x_of_xi.diff(Var::xi);
  SLProblem out = pr;
  out.p = pr.p.substitute(Sym::xi, x_of_xi) / d;
  out.q = pr.q.substitute(Sym::xi, x_of_xi) * d;
  out.w = pr.w.substitute(Sym::xi, x_of_xi) * d;
  out.a = a;
  out.b = b;
  out.a_infinite = std::isinf(a);
  out.b_infinite = std::isinf(b);
  if (!out.a_infinite) out.window_a = a;
  if (!out.b_infinite) out.window_b = b;
  out.variable = "xi";
  out.chart = {std::move(chart_name), x_of_xi, Expr(1.0)};
  out.label = pr.label + " [" + out.chart.description + "]";
  return out;
}

// -sigma^2 u'' + ((l(l+1) + delta)/z^2 + omega^2 z^2) u = mu u on (0, inf),
// delta = 3/4 (sigma+1)(sigma+3) + 2 kappa. mu is twice the energy.
inline SLProblem liouville_power(double sigma, double kappa, double omega, int l) {
  if (sigma == 0.0) throw DomainError("liouville_power: sigma must be nonzero");
  double delta = 0.75 * (sigma + 1.0) * (sigma + 3.0) + 2.0 * kappa;
  double cc = l * (l + 1.0) + delta;
  if (cc < -0.25 * sigma * sigma)
    throw DomainError("liouville_power: inverse-square coefficient below -sigma^2/4; operator not bounded below");
  const Expr& z = sep::X();
  SLProblem pr = sep::make("deformed oscillator l=" + std::to_string(l), sep::c(sigma * sigma),
                           sep::c(cc) / (z * z) + sep::c(omega * omega) * z * z, sep::c(1.0), 0.0, 0.0);
  sep::infinite(pr, false, true, 0.0, 4.0 + 4.0 / std::max(std::abs(omega), 0.25));
  pr.variable = "z";
  pr.left = cc == 0.0 ? Endpoint::dirichlet : Endpoint::natural_singular;
  pr.right = Endpoint::natural_singular;
  pr.to_raw = {0.5, 0.0, "E"};
  pr.note = "delta=" + Expr(delta).str();
  if (omega == 0.0) pr.boxed = true;
  return pr;
}

// H_l = -sigma^2 d^2/dz^2 + ((2l+1)^2 - sigma^2)/(4 z^2) + omega^2 z^2; l may be non-integer (l + sigma).
inline SLProblem oscillator_family(double l, double sigma, double omega) {
  const Expr& z = sep::X();
  double cc = ((2.0 * l + 1.0) * (2.0 * l + 1.0) - sigma * sigma) / 4.0;
  SLProblem pr = sep::make("H_l l=" + Expr(l).str(), sep::c(sigma * sigma),
                           sep::c(cc) / (z * z) + sep::c(omega * omega) * z * z, sep::c(1.0), 0.0, 0.0);
  sep::infinite(pr, false, true, 0.0, 4.0 + 4.0 / std::max(std::abs(omega), 0.25));
  pr.variable = "z";
  pr.right = Endpoint::natural_singular;
  pr.left = cc == 0.0 ? Endpoint::dirichlet : Endpoint::natural_singular;
  pr.to_raw = {1.0, 0.0, "H_l"};
  return pr;
}

enum class MorseConvention {
  printed,    // coupling of e^{-sigma rho} is +(2 omega nu + omega sigma), as in the transformed equation
  factorized  // coupling -(2 omega nu + omega sigma), the sign produced by W = nu - omega e^{-sigma rho}
};

// -u'' + omega^2 e^{-2 sigma rho} u + g e^{-sigma rho} u = eps_hat u on the whole line.
inline SLProblem morse_problem(double sigma, double omega, double g, std::string label = "Morse") {
  if (sigma == 0.0) throw DomainError("morse_problem: sigma must be nonzero");
  const Expr& rho = sep::X();
  Expr e1 = exp(sep::c(-sigma) * rho);
  SLProblem pr = sep::make(std::move(label), sep::c(1.0), sep::c(omega * omega) * e1 * e1 + sep::c(g) * e1, sep::c(1.0), 0.0, 0.0);
  // Wall side: where omega^2 e^{-2 sigma rho} ~ 1e3; open side: several decay lengths.
  double wall = -std::log(1e3) / (2.0 * std::abs(sigma)) + std::log(std::max(std::abs(omega), 1e-3)) / std::abs(sigma);
  double open = 40.0 / std::abs(sigma);
  if (sigma > 0)
    sep::infinite(pr, true, true, wall, open);
  else
    sep::infinite(pr, true, true, -open, -wall);
  pr.variable = "rho";
  pr.left = pr.right = Endpoint::natural_singular;
  pr.to_raw = {1.0, 0.0, "eps_hat"};
  return pr;
}

inline double morse_coupling(double nu, double sigma, double omega, MorseConvention conv) {
  double g = 2.0 * omega * nu + omega * sigma;
  return conv == MorseConvention::printed ? g : -g;
}

// Roles-swapped radial problem of system 11 (table sigma): rho = ln r, R = e^{-(sigma+3) rho / 2} u gives
// -u'' + omega^2 e^{-2 sigma rho} u + g e^{-sigma rho} u = eps_hat u, eps_hat = eps - ((sigma+3)/2)^2,
// with eps = -l(l+1) - 2 kappa and g = -2E. `nu` enters through g = +-(2 omega nu + omega sigma).
struct LogTransform {
  SLProblem problem;
  double coupling = 0.0;
  double shift = 0.0;  // eps = eps_hat + shift
};

inline LogTransform liouville_log(double sigma, double omega, double nu, MorseConvention conv = MorseConvention::printed) {
  if (omega == 0.0) throw DomainError("liouville_log: omega must be nonzero");
  if (sigma == 0.0) throw DomainError("liouville_log: sigma must be nonzero");
  LogTransform t;
  t.coupling = morse_coupling(nu, sigma, omega, conv);
  t.shift = std::pow((sigma + 3.0) / 2.0, 2);
  t.problem = morse_problem(sigma, omega, t.coupling, "log-transformed radial (Morse form)");
  t.problem.to_raw = {1.0, t.shift, "eps"};
  return t;
}

// The same problem before the transform, in phi = r R:
// -(r^{2+sigma} phi')' + (omega^2 r^{-sigma} + g) phi = e~ r^sigma phi, eps = e~ + 2 + sigma.
inline SLProblem log_radial_problem(double sigma, double omega, double g) {
  const Expr& r = sep::X();
  SLProblem pr = sep::make("roles-swapped radial", pow(r, sep::c(2.0 + sigma)),
                           sep::c(omega * omega) * pow(r, sep::c(-sigma)) + sep::c(g), pow(r, sep::c(sigma)), 0.0, 0.0);
  sep::infinite(pr, false, true, 0.0, 10.0);
  pr.variable = "r";
  pr.left = pr.right = Endpoint::natural_singular;
  pr.to_raw = {1.0, 2.0 + sigma, "eps"};
  return pr;
}

// Equation in y = sqrt(2) ln r as printed for system 10: -u'' + (l(l+1) + nu y + lambda^2 y^2 / 2) u = E~ u.
inline SLProblem log_oscillator_printed(int l, double nu, double lambda2) {
  const Expr& y = sep::X();
  SLProblem pr = sep::make("log oscillator (printed form)", sep::c(1.0),
                           sep::c(l * (l + 1.0)) + sep::c(nu) * y + sep::c(0.5 * lambda2) * y * y, sep::c(1.0), 0.0, 0.0);
  double centre = lambda2 != 0.0 ? -nu / lambda2 : 0.0;
  double half = 6.0 + 6.0 / std::pow(std::max(std::abs(lambda2), 1e-2), 0.25);
  sep::infinite(pr, true, true, centre - half, centre + half);
  pr.variable = "y";
  pr.to_raw = {1.0, 0.0, "Etilde"};
  if (!(lambda2 > 0.0)) pr.boxed = true;
  return pr;
}

namespace sep {

// System 8 angular factor on [0, 2 pi]: -Phi'' + (lambda^2 phi^2 + 2 mu phi) Phi = m Phi.
inline SLProblem angular_oscillator(double lambda2, double mu, const ReduceOptions& opts) {
  const Expr& x = X();
  SLProblem pr = make("system 8 angular", c(1.0), c(lambda2) * x * x + c(2.0 * mu) * x, c(1.0), 0.0, 2.0 * std::numbers::pi);
  pr.variable = "phi";
  pr.left = pr.right = opts.angular_bc;
  pr.to_raw = {1.0, 0.0, "m"};
  pr.note = "boundary condition on [0, 2 pi] is a modelling choice";
  return pr;
}

}  // namespace sep

// Separates a solvable system for the given quantum numbers.
inline std::vector<Reduction> reduce(const SystemSpec& spec, const ParameterSet& params, const QuantumNumbers& qn,
                                     const ReduceOptions& opts = {}) {
  using sep::c;
  ValidatedParams vp = validate_params(spec, params);
  if (!vp.solvable)
    throw Unsupported("system " + std::to_string(spec.id) + " is not separable for " + spec.nonseparable_unless_zero + " != 0");
  const ParameterSet& ps = vp.params;
  const Expr& x = sep::X();
  std::vector<Reduction> out;
  auto window = [&](double lo, double hi) { return opts.window ? *opts.window : std::make_pair(lo, hi); };

  switch (spec.id) {
    case 1: {
      int l = int(sep::need(qn.l, "l"));
      SLProblem phys = sep::spherical_radial(spec, ps, l);
      // theta = 2 arctan r; u = (f/2)^{1/4} phi; -u'' + l(l+1)/sin^2(theta) u = mu u, lambda_H = 2 mu + 5/2.
      SLProblem sol = sep::make("system 1 radial l=" + std::to_string(l) + " [theta = 2 arctan r]", c(1.0),
                                c(l * (l + 1.0)) / (sin(x) * sin(x)), c(1.0), 0.0, std::numbers::pi);
      sol.variable = "theta";
      sol.left = sol.right = l == 0 ? Endpoint::dirichlet : Endpoint::natural_singular;
      sol.to_raw = {2.0, 2.5, "H"};
      Expr r = sin(x) / (c(1.0) + cos(x));
      sol.chart = {"r = tan(theta/2)", r, pow(pow(c(1.0) + r * r, c(2.0)) * c(0.5), c(0.25))};
      out.push_back({"radial", phys, sol});
      break;
    }
    case 2: {
      int l = int(sep::need(qn.l, "l"));
      SLProblem phys = sep::spherical_radial(spec, ps, l);
      phys.b = 1.0;
      phys.b_infinite = false;
      phys.window_b = 1.0;
      phys.note = "inverse mass vanishes at r=1; no eigensolve across the singular sphere";
      out.push_back({"radial (0,1)", phys, std::nullopt});
      break;
    }
    case 3: {
      double k1 = sep::need(qn.k1, "k1"), k2 = sep::need(qn.k2, "k2");
      double k = std::hypot(k1, k2), nu = ps.real("nu");
      SLProblem phys = sep::make("system 3 x3 factor", x * x * c(0.5), c(0.5 * k * k) * x * x + c(nu) * log(x), c(1.0), 0.0, 0.0);
      sep::infinite(phys, false, true, 0.0, 10.0);
      phys.variable = "x3";
      phys.left = phys.right = Endpoint::natural_singular;
      // y = ln x3, Phi = e^{-y/2} u: -u'' + (k^2 e^{2y} + 2 nu y) u = E~ u, E~ = 2E - 1/4.
      SLProblem sol = sep::make("system 3 [y = ln x3]", c(1.0), c(k * k) * exp(c(2.0) * x) + c(2.0 * nu) * x, c(1.0), 0.0, 0.0);
      sol.variable = "y";
      sol.to_raw = {0.5, 0.125, "H"};
      sol.chart = {"x3 = e^y", exp(x), exp(c(0.5) * x)};
      double shift = k > 0 ? std::log(k) : 0.0;
      if (k > 0.0 && nu < 0.0) {
        sep::infinite(sol, true, true, -10.0 - shift, 3.0 - shift);
      } else {
        auto [lo, hi] = window(-12.0, 3.0);
        sol.a = sol.window_a = lo - shift;
        sol.b = sol.window_b = hi - shift;
        sol.boxed = true;
        sol.note = "continuous spectrum: eigenvalues of the boxed problem only";
      }
      out.push_back({"x3", phys, sol});
      break;
    }
    case 4: {
      int m = int(sep::need(qn.kappa_ang, "kappa_ang"));
      double k3 = qn.omega_ax.value_or(0.0);
      Expr lam = spec.potential.bind(ps).substitute(Sym::x3, c(0.0)).substitute(Sym::rt, x);
      SLProblem phys = sep::make("system 4 radial", pow(x, c(4.0)) * c(0.5),
                                 c(0.5 * m * m) * x * x + c(0.5 * k3 * k3) * pow(x, c(4.0)) + x * lam, x, 0.0, 0.0);
      sep::infinite(phys, false, true, 0.0, 10.0);
      phys.variable = "rt";
      phys.left = phys.right = Endpoint::natural_singular;
      SLProblem sol = change_variable(phys, exp(x), -6.0, 3.0, "rt = e^y");
      auto [lo, hi] = window(-6.0, 3.0);
      sol.a = sol.window_a = lo;
      sol.b = sol.window_b = hi;
      sol.boxed = true;
      out.push_back({"radial", phys, sol});
      break;
    }
    case 5: {
      double k2 = sep::need(qn.k2, "k2"), k3 = qn.k3.value_or(0.0);
      double lam = ps.real("lambda");
      SLProblem phys = sep::make("system 5 x1 factor", pow(x, c(3.0)) * c(0.5),
                                 c(0.5 * (k2 * k2 + k3 * k3)) * pow(x, c(3.0)) + c(lam) * x, c(1.0), 0.0, 0.0);
      sep::infinite(phys, false, true, 0.0, 10.0);
      phys.variable = "x1";
      phys.left = phys.right = Endpoint::natural_singular;
      SLProblem sol = change_variable(phys, exp(x), -6.0, 3.0, "x1 = e^y");
      auto [lo, hi] = window(-6.0, 3.0);
      sol.a = sol.window_a = lo;
      sol.b = sol.window_b = hi;
      sol.boxed = true;
      out.push_back({"x1", phys, sol});
      break;
    }
    case 6: {
      double k = std::hypot(sep::need(qn.k1, "k1"), sep::need(qn.k2, "k2"));
      double s = ps.real("sigma"), kap = ps.real("kappa");
      SLProblem phys = sep::make("system 6 x3 factor", pow(x, c(s + 2.0)) * c(0.5),
                                 c(0.5 * k * k) * pow(x, c(s + 2.0)) + c(kap) * pow(x, c(s)), c(1.0), 0.0, 0.0);
      sep::infinite(phys, false, true, 0.0, 10.0);
      phys.variable = "x3";
      phys.left = phys.right = Endpoint::natural_singular;
      SLProblem sol = change_variable(phys, exp(x), -6.0, 3.0, "x3 = e^y");
      auto [lo, hi] = window(-6.0, 3.0);
      sol.a = sol.window_a = lo;
      sol.b = sol.window_b = hi;
      sol.boxed = true;
      out.push_back({"x3", phys, sol});
      break;
    }
    case 7: {
      if (vp.has_flag("not separable in cylindrical variables unless sigma*lambda=0"))
        throw Unsupported("system 7 separates in cylindrical variables only for sigma*lambda = 0");
      int m = int(sep::need(qn.kappa_ang, "kappa_ang"));
      double k3 = qn.omega_ax.value_or(0.0);
      double s = ps.real("sigma"), kap = ps.real("kappa");
      SLProblem phys = sep::make("system 7 radial (lambda=0)", pow(x, c(s + 3.0)) * c(0.5),
                                 x * (c(0.5 * m * m + kap) * pow(x, c(s)) + c(0.5 * k3 * k3) * pow(x, c(s + 2.0))), x, 0.0, 0.0);
      sep::infinite(phys, false, true, 0.0, 10.0);
      phys.variable = "rt";
      phys.left = phys.right = Endpoint::natural_singular;
      SLProblem sol = change_variable(phys, exp(x), -6.0, 3.0, "rt = e^y");
      auto [lo, hi] = window(-6.0, 3.0);
      sol.a = sol.window_a = lo;
      sol.b = sol.window_b = hi;
      sol.boxed = true;
      out.push_back({"radial", phys, sol});
      break;
    }
    case 8: {
      double lambda2 = sep::square_param(ps, "lambda"), mu = ps.real("mu"), nu = ps.real("nu");
      double k = qn.k3.value_or(qn.omega_ax.value_or(0.0));
      SLProblem ang = sep::angular_oscillator(lambda2, mu, opts);
      double m;
      if (lambda2 == 0.0 && mu == 0.0 && opts.angular_bc == Endpoint::periodic) {
        int ka = int(sep::need(qn.kappa_ang, "kappa_ang"));
        m = double(ka) * ka;
      } else {
        int level = qn.angular_level.value_or(0);
        m = refine(ang, level + 1, 1e-10).eigenvalues.back();
      }
      out.push_back({"angular", ang, ang});
      SLProblem phys = sep::make("system 8 radial", pow(x, c(3.0)) * c(0.5),
                                 x * (c(0.5 * k * k) * x * x + c(nu) * log(x) + c(0.5 * m)), x, 0.0, 0.0);
      sep::infinite(phys, false, true, 0.0, 10.0);
      phys.variable = "rt";
      phys.left = phys.right = Endpoint::natural_singular;
      phys.note = "angular eigenvalue m=" + Expr(m).str();
      // y = ln rt, Psi = e^{-y} u: -u'' + (k^2 e^{2y} + 2 nu y + m + 1) u = 2E u.
      SLProblem sol = sep::make("system 8 radial [y = ln rt]", c(1.0),
                                c(k * k) * exp(c(2.0) * x) + c(2.0 * nu) * x + c(m + 1.0), c(1.0), 0.0, 0.0);
      sol.variable = "y";
      sol.to_raw = {0.5, 0.0, "H"};
      sol.chart = {"rt = e^y", exp(x), exp(x)};
      sol.note = phys.note;
      double shift = k > 0 ? std::log(k) : 0.0;
      if (k > 0.0 && nu < 0.0) {
        sep::infinite(sol, true, true, -10.0 - shift, 3.0 - shift);
      } else {
        auto [lo, hi] = window(-12.0, 3.0);
        sol.a = sol.window_a = lo - shift;
        sol.b = sol.window_b = hi - shift;
        sol.boxed = true;
        sol.note += "; continuous spectrum: boxed eigenvalues only";
      }
      out.push_back({"radial", phys, sol});
      break;
    }
    case 9: {
      double s = ps.real("sigma"), kap = ps.real("kappa"), om2 = sep::square_param(ps, "omega");
      double k = qn.k3.value_or(qn.omega_ax.value_or(0.0));
      SLProblem rad = sep::make("system 9 radial [y = ln rt]", c(1.0), c(1.0) + c(k * k) * exp(c(2.0) * x), c(1.0), 0.0, 0.0);
      auto [lo, hi] = window(-12.0, 3.0);
      rad.a = rad.window_a = lo;
      rad.b = rad.window_b = hi;
      rad.variable = "y";
      rad.boxed = true;
      rad.to_raw = {1.0, 0.0, "eps"};
      rad.chart = {"rt = e^y", exp(x), exp(x)};
      rad.note = "continuous spectrum eps >= 1: boxed eigenvalues only";
      SLProblem rad_phys = sep::make("system 9 radial", pow(x, c(3.0)) * c(0.5), c(0.5 * k * k) * pow(x, c(3.0)), x, 0.0, 0.0);
      sep::infinite(rad_phys, false, true, 0.0, 10.0);
      rad_phys.variable = "rt";
      rad_phys.to_raw = {2.0, 0.0, "eps"};
      out.push_back({"radial", rad_phys, rad});
      double energy = sep::need(qn.coupling, "coupling (energy)");
      Expr e = exp(c(s) * x);
      SLProblem ang_phys = sep::make("system 9 angular", e, c(2.0 * kap) * e + c(om2) / e - c(2.0 * energy), e, 0.0,
                                     2.0 * std::numbers::pi);
      ang_phys.variable = "phi";
      ang_phys.left = ang_phys.right = opts.angular_bc;
      ang_phys.to_raw = {1.0, 0.0, "-eps"};
      // Phi = e^{-sigma phi / 2} v: -v'' + (omega^2 e^{-2 sigma phi} - 2E e^{-sigma phi}) v = (-eps - 2 kappa - sigma^2/4) v.
      Expr e1 = exp(c(-s) * x);
      SLProblem ang = sep::make("system 9 angular [Morse form]", c(1.0), c(om2) * e1 * e1 - c(2.0 * energy) * e1, c(1.0), 0.0,
                                2.0 * std::numbers::pi);
      ang.variable = "phi";
      ang.left = ang.right = opts.angular_bc;
      ang.to_raw = {1.0, 2.0 * kap + 0.25 * s * s, "-eps"};
      ang.chart = {"identity", x, exp(c(0.5 * s) * x)};
      if (opts.angular_bc == Endpoint::periodic) {
        // the amplitude e^{sigma phi / 2} does not preserve periodicity: solve the original form
        ang = ang_phys;
      }
      if (opts.angular_line) {
        if (!(om2 > 0.0)) throw DomainError("system 9 whole-line angular problem needs real nonzero omega");
        ang = morse_problem(s, std::sqrt(std::abs(om2)), -2.0 * energy, "system 9 angular [Morse form, whole line]");
        ang.to_raw = {1.0, 2.0 * kap + 0.25 * s * s, "-eps"};
        ang.chart = {"identity", x, exp(c(0.5 * s) * x)};
      }
      out.push_back({"angular", ang_phys, ang});
      break;
    }
    case 10: {
      int l = int(sep::need(qn.l, "l"));
      double lambda2 = sep::square_param(ps, "lambda"), nu = ps.real("nu");
      SLProblem phys = sep::spherical_radial(spec, ps, l);
      // y = sqrt(2) ln r, u = (r^2/2)^{1/4} phi: -u'' + (l(l+1)/2 + 9/8 + nu y/sqrt 2 + lambda^2 y^2 / 4) u = lambda_H u.
      const double rt2 = std::numbers::sqrt2;
      SLProblem sol = sep::make("system 10 radial l=" + std::to_string(l) + " [y = sqrt(2) ln r]", c(1.0),
                                c(0.5 * l * (l + 1.0) + 9.0 / 8.0) + c(nu / rt2) * x + c(0.25 * lambda2) * x * x, c(1.0), 0.0, 0.0);
      sol.variable = "y";
      sol.to_raw = {1.0, 0.0, "H"};
      sol.chart = {"r = e^{y/sqrt 2}", exp(x / c(rt2)), pow(c(0.5), c(0.25)) * exp(x / c(2.0 * rt2))};
      if (lambda2 > 0.0) {
        double centre = -nu * rt2 / lambda2;
        double half = 6.0 + 8.0 / std::sqrt(std::sqrt(lambda2));
        sep::infinite(sol, true, true, centre - half, centre + half);
      } else {
        auto [lo, hi] = window(-12.0, 12.0);
        sol.a = sol.window_a = lo;
        sol.b = sol.window_b = hi;
        sol.boxed = true;
        sol.note = "lambda^2 <= 0: no confinement, boxed eigenvalues only";
      }
      out.push_back({"radial", phys, sol});
      break;
    }
    case 11: {
      int l = int(sep::need(qn.l, "l"));
      double s = ps.real("sigma"), kap = ps.real("kappa"), om2 = sep::square_param(ps, "omega");
      SLProblem phys = sep::spherical_radial(spec, ps, l);
      // z = r^{-sigma/2}: the deformed-oscillator form with exponent sigma/2.
      if (om2 < 0.0) throw DomainError("system 11 with imaginary omega: potential unbounded below");
      SLProblem sol = liouville_power(0.5 * s, kap, std::sqrt(om2), l);
      sol.label = "system 11 radial l=" + std::to_string(l) + " [z = r^{-sigma/2}]";
      sol.to_raw = {0.5, 0.0, "H"};
      double se = 0.5 * s;
      sol.chart = {"r = z^{-2/sigma}", pow(x, c(-1.0 / se)), pow(x, c(-(se + 1.0) / (2.0 * se)))};
      out.push_back({"radial", phys, sol});
      break;
    }
    default:
      throw DomainError("no reduction for system " + std::to_string(spec.id));
  }
  for (auto& r : out) {
    r.physical.check_self_adjoint();
    if (r.solver) r.solver->check_self_adjoint();
  }
  return out;
}

}  // namespace pdm
