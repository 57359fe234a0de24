#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "pdm/error.hpp"
#include "pdm/expr.hpp"

namespace pdm {

enum class Endpoint { dirichlet, periodic, natural_singular };

inline std::string to_string(Endpoint e) {
  switch (e) {
    case Endpoint::dirichlet: return "dirichlet-truncated";
    case Endpoint::periodic: return "periodic";
    case Endpoint::natural_singular: return "natural-singular";
  }
  return "?";
}

// Maps an eigenvalue mu of the SL problem to the eigenvalue of the operator it was derived from:
// raw = scale * mu + shift. `convention` names what `raw` means (e.g. "H", "2H", "Etilde").
struct EigenMap {
  double scale = 1.0;
  double shift = 0.0;
  std::string convention = "raw";

  double operator()(double mu) const { return scale * mu + shift; }
  double inverse(double raw) const { return (raw - shift) / scale; }
};

// Original coordinate x = x_of_xi(xi); a reduced solution phi(x) appears in this chart as
// u(xi) = amplitude(xi) * phi(x_of_xi(xi)).
struct Chart {
  std::string description = "identity";
  Expr x_of_xi = Expr::xi();
  Expr amplitude = Expr(1.0);
};

// -(p u')' + q u = mu w u on (a, b). Infinite ends are truncated to [window_a, window_b] at first.
struct SLProblem {
  std::string label;
  std::string variable = "xi";
  Expr p = Expr(1.0), q = Expr(0.0), w = Expr(1.0);
  double a = 0.0, b = 1.0;
  bool a_infinite = false, b_infinite = false;
  double window_a = 0.0, window_b = 1.0;
  Endpoint left = Endpoint::dirichlet, right = Endpoint::dirichlet;
  Chart chart;
  EigenMap to_raw;
  std::string note;
  bool boxed = false;  // continuous spectrum: eigenvalues are a boxed approximation only

  bool periodic() const { return left == Endpoint::periodic; }
  bool infinite() const { return a_infinite || b_infinite; }

  double eval_p(double x) const { return real_at(p, x, "p"); }
  double eval_q(double x) const { return real_at(q, x, "q"); }
  double eval_w(double x) const { return real_at(w, x, "w"); }

  // Self-adjointness check: p > 0 and w > 0 on `samples` interior points of the working interval.
  void check_self_adjoint(int samples = 1000) const {
    double lo = a_infinite ? window_a : a, hi = b_infinite ? window_b : b;
    for (int k = 1; k <= samples; ++k) {
      double x = lo + (hi - lo) * k / (samples + 1.0);
      if (!(eval_p(x) > 0.0)) throw DomainError(label + ": p is not positive at " + std::to_string(x));
      if (!(eval_w(x) > 0.0)) throw DomainError(label + ": w is not positive at " + std::to_string(x));
      eval_q(x);
    }
  }

  static double real_at(const Expr& e, double x, const char* what) {
    cplx v = e.eval(Point{0, 0, 0, 0, x});
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError(std::string("SL coefficient ") + what + " is not finite at " + std::to_string(x));
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v.real())))
      throw DomainError(std::string("SL coefficient ") + what + " is not real at " + std::to_string(x));
    return v.real();
  }
};

}  // namespace pdm
