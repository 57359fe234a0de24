#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "pdm/error.hpp"

namespace pdm::specfun {

namespace detail {

// Neumaier compensated accumulator.
struct Sum {
  double s = 0.0, c = 0.0;
  void add(double v) {
    double t = s + v;
    if (std::abs(s) >= std::abs(v))
      c += (s - t) + v;
    else
      c += (v - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

inline bool is_nonpositive_integer(double a, int& n) {
  double r = std::round(a);
  if (std::abs(a - r) > 1e-12 * std::max(1.0, std::abs(a)) || r > 0.0) return false;
  n = int(-r);
  return true;
}

inline void check_lower(double c, int n, const char* who) {
  int m;
  if (is_nonpositive_integer(c, m) && m < n)
    throw DomainError(std::string(who) + ": lower parameter is a nonpositive integer reached before termination");
}

}  // namespace detail

// 2F1(a, b; c; x) for a = 0, -1, -2, ...: the |a|+1 term polynomial.
inline double hyp2f1_terminating(double a, double b, double c, double x) {
  int n;
  if (!detail::is_nonpositive_integer(a, n)) throw Unsupported("hyp2f1_terminating: a must be a nonpositive integer");
  detail::check_lower(c, n, "hyp2f1_terminating");
  detail::Sum s;
  double term = 1.0;
  s.add(term);
  for (int k = 0; k < n; ++k) {
    term *= (-n + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
    s.add(term);
  }
  return s.value();
}

// 1F1(a; b; x) for a = 0, -1, -2, ...
inline double kummer_terminating(double a, double b, double x) {
  int n;
  if (!detail::is_nonpositive_integer(a, n)) throw Unsupported("kummer_terminating: a must be a nonpositive integer");
  detail::check_lower(b, n, "kummer_terminating");
  detail::Sum s;
  double term = 1.0;
  s.add(term);
  for (int k = 0; k < n; ++k) {
    term *= (-n + k) / ((b + k) * (k + 1.0)) * x;
    s.add(term);
  }
  return s.value();
}

// Second evaluation paths: Gauss contiguous relations stepping a = 0, -1, -2, ...
inline double hyp2f1_contiguous(int n, double b, double c, double x) {
  if (n < 0) throw ContractViolation("hyp2f1_contiguous: n must be non-negative");
  double f_prev = 1.0, f = 1.0 - b * x / c;  // a = 0, a = -1
  if (n == 0) return f_prev;
  for (int k = 1; k < n; ++k) {
    double a = -k;
    double next = (-(2 * a - c + (b - a) * x) * f - a * (x - 1.0) * f_prev) / (c - a);
    f_prev = f;
    f = next;
  }
  return f;
}

inline double kummer_contiguous(int n, double b, double x) {
  if (n < 0) throw ContractViolation("kummer_contiguous: n must be non-negative");
  double m_prev = 1.0, m = 1.0 - x / b;
  if (n == 0) return m_prev;
  for (int k = 1; k < n; ++k) {
    double a = -k;
    double next = (-(2 * a - b + x) * m + a * m_prev) / (b - a);
    m_prev = m;
    m = next;
  }
  return m;
}

// Generalized Laguerre L_n^(beta)(x) by the three-term recurrence.
inline double laguerre(int n, double beta, double x) {
  if (n < 0) throw ContractViolation("laguerre: n must be non-negative");
  double l0 = 1.0;
  if (n == 0) return l0;
  double l1 = 1.0 + beta - x;
  for (int k = 1; k < n; ++k) {
    double l2 = ((2.0 * k + 1.0 + beta - x) * l1 - (k + beta) * l0) / (k + 1.0);
    l0 = l1;
    l1 = l2;
  }
  if (!std::isfinite(l1)) throw NumericalError("laguerre: overflow");
  return l1;
}

// Explicit sum L_n^(beta)(x) = sum_j (-1)^j binom(n+beta, n-j) x^j / j!.
inline double laguerre_series(int n, double beta, double x) {
  if (n < 0) throw ContractViolation("laguerre_series: n must be non-negative");
  // binom(n+beta, n) = prod_{i=1..n} (beta + i) / i
  double binom = 1.0;
  for (int i = 1; i <= n; ++i) binom *= (beta + i) / i;
  detail::Sum s;
  double term = binom;
  s.add(term);
  for (int j = 0; j < n; ++j) {
    // binom(n+beta, n-j-1) = binom(n+beta, n-j) * (n-j) / (beta + j + 1)
    term *= -(n - j) / ((beta + j + 1.0) * (j + 1.0)) * x;
    s.add(term);
  }
  return s.value();
}

// Ascending series for J_alpha(x), alpha not a negative integer.
inline double bessel_j_series(double alpha, double x) {
  if (x == 0.0) return alpha == 0.0 ? 1.0 : (alpha > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
  double half = 0.5 * x;
  double lead = std::pow(half, alpha) / std::tgamma(alpha + 1.0);
  detail::Sum s;
  double term = 1.0;
  s.add(term);
  for (int m = 1; m < 300; ++m) {
    term *= -half * half / (m * (alpha + m));
    s.add(term);
    if (std::abs(term) < 1e-18 * std::abs(s.value()) && m > half) break;
  }
  return lead * s.value();
}

// Miller backward recurrence normalized by (x/2)^nu = sum_k (nu+2k) Gamma(nu+k)/k! J_{nu+2k}(x), 0 <= nu < 1;
// orders below nu continue the recurrence downward (neutral region for |order| < x).
inline double bessel_j_miller(double alpha, double x) {
  if (!(x > 0.0)) throw ContractViolation("bessel_j_miller: x must be positive");
  double nu = alpha - std::floor(alpha);
  int top = int(std::floor(alpha));  // alpha = nu + top
  int N = int(std::max(alpha, 0.0) + x + 40.0 + 12.0 * std::sqrt(x));
  N += N % 2;
  std::vector<double> J(N + 2, 0.0);  // J[k] ~ J_{nu+k}
  J[N + 1] = 0.0;
  J[N] = 1e-300;
  for (int k = N; k >= 1; --k) {
    J[k - 1] = 2.0 * (nu + k) / x * J[k] - J[k + 1];
    if (std::abs(J[k - 1]) > 1e250) {
      for (int m = k - 1; m <= N + 1; ++m) J[m] *= 1e-250;
    }
  }
  detail::Sum norm;
  norm.add(std::tgamma(nu + 1.0) * J[0]);
  double g = std::tgamma(nu + 1.0);  // Gamma(nu + k) / k! at k = 1
  for (int k = 1; 2 * k <= N; ++k) {
    if (k > 1) g *= (nu + k - 1.0) / k;
    norm.add((nu + 2.0 * k) * g * J[2 * k]);
  }
  double scale = std::pow(0.5 * x, nu) / norm.value();
  if (top >= 0) return J[top] * scale;
  double jp = J[1] * scale, j0 = J[0] * scale;
  double order = nu;
  for (int k = 0; k > top; --k) {
    double jm = 2.0 * order / x * j0 - jp;
    jp = j0;
    j0 = jm;
    order -= 1.0;
  }
  return j0;
}

// J_alpha(x), x >= 0. Series for x <= 12, Miller recurrence beyond; J_{-m} = (-1)^m J_m for integer m.
inline double bessel_j(double alpha, double x) {
  if (x < 0.0 || !std::isfinite(x)) throw DomainError("bessel_j: x must be finite and non-negative");
  double r = std::round(alpha);
  if (alpha < 0.0 && std::abs(alpha - r) < 1e-14) {
    int m = int(-r);
    double v = bessel_j(double(m), x);
    return m % 2 ? -v : v;
  }
  if (x <= 12.0) return bessel_j_series(alpha, x);
  return bessel_j_miller(alpha, x);
}

struct KResult {
  double value = 0.0;
  bool underflow = false;  // exact zero because e^{-x} underflows
};

namespace detail {

// Contour angle: shifting t -> s + i theta turns K_{i nu}(x) into
// e^{-nu theta} int_0^inf e^{-x cos(theta) cosh s} cos(nu s - x sin(theta) sinh s) ds,
// which removes the e^{-pi nu / 2} cancellation when sin(theta) = nu / x (capped below pi/2).
inline double k_contour_angle(double nu, double x, double fraction = 1.0) {
  if (nu == 0.0) return 0.0;
  double th = std::asin(std::min(std::abs(nu) / x, 1.0));
  return fraction * std::min(th, 0.5 * std::numbers::pi - 0.2);
}

template <class Rule>
KResult k_imag_on_contour(double nu, double x, double theta, Rule&& rule) {
  KResult res;
  nu = std::abs(nu);
  double ct = std::cos(theta), st = std::sin(theta);
  double log_scale = -x * ct - nu * theta;
  // e^{-x cos(theta) (cosh s - 1)} < 1e-19 beyond smax
  double smax = std::acosh(1.0 + 44.0 / (x * ct));
  double v = rule([&](double s) { return std::exp(-x * ct * (std::cosh(s) - 1.0)) * std::cos(nu * s - x * st * std::sinh(s)); },
                  smax);
  if (log_scale < -745.0) {
    res.underflow = true;
    return res;
  }
  res.value = v * std::exp(log_scale);
  if (res.value == 0.0 && v != 0.0) res.underflow = true;
  return res;
}

}  // namespace detail

// K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt, trapezoidal rule on the steepest-descent contour.
// The integrand is analytic in a strip and decays double-exponentially, so the rule converges geometrically.
inline KResult bessel_k_imag_ex(double nu, double x, double step = 0.01) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("bessel_k_imag: x must be positive");
  return detail::k_imag_on_contour(nu, x, detail::k_contour_angle(nu, x), [&](auto&& g, double smax) {
    detail::Sum s;
    s.add(0.5 * g(0.0));
    int m = int(std::ceil(smax / step));
    for (int k = 1; k <= m; ++k) s.add(g(k * step));
    return step * s.value();
  });
}

inline double bessel_k_imag(double nu, double x) { return bessel_k_imag_ex(nu, x).value; }

// Composite Gauss-Legendre rule (8 nodes per panel).
template <class F>
double integrate(F&& f, double a, double b, int panels = 64) {
  static const double xs[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
  static const double ws[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  detail::Sum s;
  double hw = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * hw, half = 0.5 * hw;
    for (int i = 0; i < 4; ++i) {
      s.add(ws[i] * half * f(mid - half * xs[i]));
      s.add(ws[i] * half * f(mid + half * xs[i]));
    }
  }
  return s.value();
}

// Second path for K_{i nu}: Gauss-Legendre on a different contour.
inline double bessel_k_imag_gl(double nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k_imag: x must be positive");
  double theta = detail::k_contour_angle(nu, x, 0.85);
  return detail::k_imag_on_contour(nu, x, theta, [&](auto&& g, double smax) {
           int panels = std::max(64, int(std::ceil(smax * (8.0 + std::abs(nu) + 40.0 * std::tan(theta)))));
           return integrate(g, 0.0, smax, panels);
         }).value;
}

// K_0 from its ascending series (x <= 2) for cross-checks.
inline double bessel_k0_series(double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k0_series: x must be positive");
  const double q = 0.25 * x * x;
  detail::Sum i0, tail;
  double term = 1.0, harmonic = 0.0;
  i0.add(term);
  for (int k = 1; k < 200; ++k) {
    term *= q / (double(k) * k);
    harmonic += 1.0 / k;
    i0.add(term);
    tail.add(term * harmonic);
    if (term < 1e-20) break;
  }
  return -(std::log(0.5 * x) + std::numbers::egamma) * i0.value() + tail.value();
}

}  // namespace pdm::specfun
