#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pdm/specfun.hpp"

namespace pdm::selfcheck {

struct SuiteResult {
  std::string name;
  int count = 0;
  double worst = 0.0;
  double tol = 0.0;
  bool pass() const { return count > 0 && worst <= tol; }
};

// Relative residual of a x^2 y'' + b x y' + c y = 0 style equation: |sum| / max |term|, 6th-order differences.
inline double ode_residual(const std::function<double(double)>& y, double x, double p2, double p1,
                           const std::function<double(double, double)>& c0, double h) {
  double f[7];
  for (int j = -3; j <= 3; ++j) f[j + 3] = y(x + j * h);
  double d1 = (-f[0] + 9 * f[1] - 45 * f[2] + 45 * f[4] - 9 * f[5] + f[6]) / (60.0 * h);
  double d2 = (2 * f[0] - 27 * f[1] + 270 * f[2] - 490 * f[3] + 270 * f[4] - 27 * f[5] + 2 * f[6]) / (180.0 * h * h);
  double t2 = p2 * d2, t1 = p1 * d1, t0 = c0(x, f[3]);
  double scale = std::max({std::abs(t2), std::abs(t1), std::abs(t0)});
  return scale > 0.0 ? std::abs(t2 + t1 + t0) / scale : 0.0;
}

inline double rel_diff(double a, double b, double floor = 0.0) {
  double s = std::max({std::abs(a), std::abs(b), floor});
  return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

// Both paths agree to `tol` relative; K_{i nu} is compared against its oscillation envelope near zeros.
inline std::vector<SuiteResult> dual_path(std::uint64_t seed = 11, double tol = 1e-9) {
  using namespace specfun;
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SuiteResult h{"hyp2f1 series vs contiguous", 0, 0, tol}, k{"kummer series vs contiguous", 0, 0, tol},
      l{"laguerre recurrence vs explicit sum", 0, 0, tol}, j{"bessel_j series vs Miller", 0, 0, tol},
      ki{"bessel_k_imag trapezoid vs Gauss-Legendre", 0, 0, tol}, k0{"bessel_k_imag(0) vs K0 series", 0, 0, tol};
  for (int t = 0; t < 200; ++t) {
    int n = int(U(rng) * 12);
    double b = 0.5 + 4 * U(rng), c = 0.5 + 4 * U(rng), x = -1 + 2 * U(rng);
    h.worst = std::max(h.worst, rel_diff(hyp2f1_terminating(-n, b, c, x), hyp2f1_contiguous(n, b, c, x), 1.0));
    ++h.count;
    double xk = 6 * U(rng);
    k.worst = std::max(k.worst, rel_diff(kummer_terminating(-n, b, xk), kummer_contiguous(n, b, xk), 1.0));
    ++k.count;
    double beta = -0.5 + 5 * U(rng);
    l.worst = std::max(l.worst, rel_diff(laguerre(n, beta, xk), laguerre_series(n, beta, xk), 1.0));
    ++l.count;
    double alpha = 4 * U(rng), xj = 2 + 10 * U(rng);
    // a fraction of the envelope sqrt(2/(pi x)) keeps zeros of J from inflating the relative error
    j.worst = std::max(j.worst, rel_diff(bessel_j_series(alpha, xj), bessel_j_miller(alpha, xj), 0.1 * std::sqrt(2.0 / (pi * xj))));
    ++j.count;
    double nu = 5 * U(rng), xi = 0.2 + 10 * U(rng);
    double env = std::exp(-0.5 * pi * nu - xi);
    ki.worst = std::max(ki.worst, rel_diff(bessel_k_imag(nu, xi), bessel_k_imag_gl(nu, xi), 1e-3 * env));
    ++ki.count;
    double x0 = 0.05 + 1.9 * U(rng);
    k0.worst = std::max(k0.worst, rel_diff(bessel_k_imag(0.0, x0), bessel_k0_series(x0)));
    ++k0.count;
  }
  return {h, k, l, j, ki, k0};
}

// Each evaluator satisfies its defining ODE to `tol`, relative to the largest term. Steps balance
// truncation against the round-off of the evaluators (the J series near x = 12 carries ~1e-12).
inline std::vector<SuiteResult> ode_suites(std::uint64_t seed = 12, double tol = 1e-6, int points = 100) {
  using namespace specfun;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  SuiteResult h{"hyp2f1 hypergeometric equation", 0, 0, tol}, k{"kummer confluent equation", 0, 0, tol},
      l{"laguerre equation", 0, 0, tol}, j{"bessel_j Bessel equation", 0, 0, tol}, ki{"bessel_k_imag modified Bessel equation", 0, 0, tol};
  for (int t = 0; t < points; ++t) {
    int n = 1 + int(U(rng) * 8);
    double a = -n, b = 0.5 + 3 * U(rng), c = 0.5 + 3 * U(rng), x = 0.1 + 0.8 * U(rng);
    auto f = [&](double s) { return hyp2f1_terminating(a, b, c, s); };
    h.worst = std::max(h.worst, ode_residual(f, x, x * (1 - x), c - (a + b + 1) * x, [&](double, double y) { return -a * b * y; }, 1e-3));
    ++h.count;
    double xk = 0.2 + 5 * U(rng);
    auto m = [&](double s) { return kummer_terminating(a, b, s); };
    k.worst = std::max(k.worst, ode_residual(m, xk, xk, b - xk, [&](double, double y) { return -a * y; }, 1e-3));
    ++k.count;
    double beta = 4 * U(rng);
    auto L = [&](double s) { return laguerre(n, beta, s); };
    l.worst = std::max(l.worst, ode_residual(L, xk, xk, beta + 1 - xk, [&](double, double y) { return n * y; }, 1e-3));
    ++l.count;
    double alpha = 4 * U(rng), xj = 0.5 + 20 * U(rng);
    auto J = [&](double s) { return bessel_j(alpha, s); };
    j.worst = std::max(j.worst, ode_residual(J, xj, xj * xj, xj, [&](double s, double y) { return (s * s - alpha * alpha) * y; }, 1e-2 * std::max(1.0, xj / 4)));
    ++j.count;
    double nu = 0.1 + 5 * U(rng), xi = 0.2 + 10 * U(rng);
    auto K = [&](double s) { return bessel_k_imag(nu, s); };
    ki.worst = std::max(ki.worst, ode_residual(K, xi, xi * xi, xi, [&](double s, double y) { return -(s * s - nu * nu) * y; }, 2e-3 * std::max(1.0, xi / 4)));
    ++ki.count;
  }
  return {h, k, l, j, ki};
}

}  // namespace pdm::selfcheck
