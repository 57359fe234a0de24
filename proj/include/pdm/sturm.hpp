#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pdm/error.hpp"
#include "pdm/parallel.hpp"
#include "pdm/sl_problem.hpp"

namespace pdm {

// Symmetric tridiagonal (optionally cyclic) standard form C = W^{-1/2} A W^{-1/2}.
// Dirichlet: interior nodes x_i = lo + i h, i = 1..n, h = (hi - lo)/(n + 1).
// Periodic: nodes x_i = lo + i h, i = 0..n-1, h = (hi - lo)/n, with the corner coupling.
struct Discretization {
  int n = 0;
  double lo = 0, hi = 0, h = 0;
  bool periodic = false;
  std::vector<double> x;        // node coordinates
  std::vector<double> weight;   // w at nodes
  std::vector<double> adiag;    // generalized A: diagonal
  std::vector<double> aoff;     // generalized A: off-diagonal (i, i+1); periodic adds (n-1, 0) as last entry
  std::vector<double> diag;     // standard form C
  std::vector<double> off;
  double corner = 0.0;          // C(n-1, 0) for periodic grids
  double norm_bound = 0.0;      // Gershgorin bound on |C|
  double kinetic_bound = 0.0;   // max of 2 (p_lo + p_hi) / (h^2 w): round-off scale independent of q
};

struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> vectors;  // w-orthonormal with quadrature weight h
  std::vector<double> residuals;             // |(A - lambda W) u| / |u|
  std::vector<double> convergence;           // |R_m - R_{m-1}| of the last Richardson pair (0 if not refined)
  std::vector<double> observed_order;        // log2 of successive difference ratios (NaN if unavailable)
  std::vector<std::string> labels;
  std::vector<double> x;                     // nodes of the finest grid
  bool extrapolated = false;
  int n = 0;
  double h = 0.0;
  double window_a = 0.0, window_b = 0.0;
};

inline Discretization discretize_interval(const SLProblem& pr, int n, double lo, double hi) {
  if (n < 64) throw ContractViolation("discretize: n must be at least 64");
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw ContractViolation("discretize: truncated domain must be finite");
  Discretization d;
  d.n = n;
  d.lo = lo;
  d.hi = hi;
  d.periodic = pr.periodic();
  d.h = d.periodic ? (hi - lo) / n : (hi - lo) / (n + 1);
  const double h = d.h;
  d.x.resize(n);
  for (int i = 0; i < n; ++i) d.x[i] = d.periodic ? lo + i * h : lo + (i + 1) * h;
  // Faces: face k sits between node k-1 and node k; n+1 faces.
  std::vector<double> pf(n + 1), qn(n);
  d.weight.resize(n);
  parallel_for(size_t(n) + 1, [&](size_t b, size_t e) {
    for (size_t k = b; k < e; ++k) {
      double xf = d.periodic ? lo + (double(k) - 0.5) * h : lo + (double(k) + 0.5) * h;
      if (d.periodic && k == 0) xf = hi - 0.5 * h;
      pf[k] = pr.eval_p(xf);
      if (!(pf[k] > 0.0)) throw DomainError(pr.label + ": p is not positive at face " + std::to_string(xf));
      if (k < size_t(n)) {
        qn[k] = pr.eval_q(d.x[k]);
        d.weight[k] = pr.eval_w(d.x[k]);
        if (!(d.weight[k] > 0.0)) throw DomainError(pr.label + ": w is not positive at node " + std::to_string(d.x[k]));
      }
    }
  }, 256);
  const double h2 = h * h;
  d.adiag.resize(n);
  d.aoff.assign(d.periodic ? n : n - 1, 0.0);
  for (int i = 0; i < n; ++i) {
    double p_lo = pf[i], p_hi = pf[i + 1];
    if (d.periodic && i == n - 1) p_hi = pf[0];
    d.adiag[i] = (p_lo + p_hi) / h2 + qn[i];
    if (i < n - 1) d.aoff[i] = -p_hi / h2;
  }
  if (d.periodic) d.aoff[n - 1] = -pf[0] / h2;
  d.diag.resize(n);
  d.off.resize(n - 1);
  for (int i = 0; i < n; ++i) d.diag[i] = d.adiag[i] / d.weight[i];
  for (int i = 0; i < n - 1; ++i) d.off[i] = d.aoff[i] / std::sqrt(d.weight[i] * d.weight[i + 1]);
  if (d.periodic) d.corner = d.aoff[n - 1] / std::sqrt(d.weight[n - 1] * d.weight[0]);
  double bound = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = std::abs(d.diag[i]);
    if (i > 0) r += std::abs(d.off[i - 1]);
    if (i < n - 1) r += std::abs(d.off[i]);
    if (d.periodic && (i == 0 || i == n - 1)) r += std::abs(d.corner);
    bound = std::max(bound, r);
  }
  d.norm_bound = bound;
  for (int i = 0; i < n; ++i) d.kinetic_bound = std::max(d.kinetic_bound, 2.0 * (d.adiag[i] - qn[i]) / d.weight[i]);
  return d;
}

inline std::pair<double, double> working_interval(const SLProblem& pr) {
  return {pr.a_infinite ? pr.window_a : pr.a, pr.b_infinite ? pr.window_b : pr.b};
}

inline Discretization discretize(const SLProblem& pr, int n) {
  auto [lo, hi] = working_interval(pr);
  return discretize_interval(pr, n, lo, hi);
}

namespace detail {

// Number of eigenvalues of C strictly below x (Sylvester inertia of C - x I).
inline int sturm_count(const Discretization& d, double x) {
  const int n = d.n;
  const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, d.norm_bound * d.norm_bound);
  auto guard = [&](double q) { return std::abs(q) < pivmin ? -pivmin : q; };
  int count = 0;
  if (!d.periodic) {
    double q = guard(d.diag[0] - x);
    count += q < 0;
    for (int i = 1; i < n; ++i) {
      q = guard(d.diag[i] - x - d.off[i - 1] * d.off[i - 1] / q);
      count += q < 0;
    }
    return count;
  }
  // Cyclic: eliminate rows 0..n-2 carrying a spike into the last column.
  double last = d.diag[n - 1] - x;
  double a = d.diag[0] - x;
  double spike = d.corner;
  for (int i = 0; i < n - 2; ++i) {
    double D = guard(a);
    count += D < 0;
    double b = d.off[i];
    a = d.diag[i + 1] - x - b * b / D;
    last -= spike * spike / D;
    spike = -b * spike / D;
  }
  double D = guard(a);
  count += D < 0;
  double c = d.off[n - 2] + spike;
  last = guard(last - c * c / D);
  count += last < 0;
  return count;
}

// Solves (C - mu I) y = rhs for tridiagonal C by Gaussian elimination with partial pivoting.
inline std::vector<double> tridiag_solve(const std::vector<double>& diag, const std::vector<double>& off, double mu,
                                         std::vector<double> rhs) {
  const int n = int(diag.size());
  std::vector<double> dl(off), du(off), d(n), du2(std::max(n - 2, 0), 0.0);
  for (int i = 0; i < n; ++i) d[i] = diag[i] - mu;
  std::vector<int> swapped(n, 0);
  for (int i = 0; i < n - 1; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = 1e-300;
      double f = dl[i] / d[i];
      dl[i] = f;
      d[i + 1] -= f * du[i];
    } else {
      double f = d[i] / dl[i];
      d[i] = dl[i];
      dl[i] = f;
      double tmp = du[i];
      du[i] = d[i + 1];
      d[i + 1] = tmp - f * d[i + 1];
      if (i < n - 2) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du[i + 1];
      }
      swapped[i] = 1;
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
  for (int i = 0; i < n - 1; ++i) {
    if (swapped[i]) std::swap(rhs[i], rhs[i + 1]);
    rhs[i + 1] -= dl[i] * rhs[i];
  }
  rhs[n - 1] /= d[n - 1];
  if (n > 1) rhs[n - 2] = (rhs[n - 2] - du[n - 2] * rhs[n - 1]) / d[n - 2];
  for (int i = n - 3; i >= 0; --i) rhs[i] = (rhs[i] - du[i] * rhs[i + 1] - du2[i] * rhs[i + 2]) / d[i];
  return rhs;
}

// Cyclic solve through Sherman-Morrison on top of the pivoted tridiagonal solver.
inline std::vector<double> solve_shifted(const Discretization& d, double mu, const std::vector<double>& rhs) {
  if (!d.periodic) return tridiag_solve(d.diag, d.off, mu, rhs);
  const int n = d.n;
  double gamma = -(d.diag[0] - mu);
  if (gamma == 0.0) gamma = 1.0;
  std::vector<double> diag(d.diag);
  diag[0] -= gamma;
  diag[n - 1] -= d.corner * d.corner / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = d.corner;
  auto y = tridiag_solve(diag, d.off, mu, rhs);
  auto z = tridiag_solve(diag, d.off, mu, u);
  double vy = y[0] + d.corner / gamma * y[n - 1];
  double vz = z[0] + d.corner / gamma * z[n - 1];
  double denom = 1.0 + vz;
  if (denom == 0.0) denom = 1e-300;
  for (int i = 0; i < n; ++i) y[i] -= vy / denom * z[i];
  return y;
}

inline std::vector<double> apply_standard(const Discretization& d, const std::vector<double>& y) {
  const int n = d.n;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double s = d.diag[i] * y[i];
    if (i > 0) s += d.off[i - 1] * y[i - 1];
    if (i < n - 1) s += d.off[i] * y[i + 1];
    out[i] = s;
  }
  if (d.periodic) {
    out[0] += d.corner * y[n - 1];
    out[n - 1] += d.corner * y[0];
  }
  return out;
}

inline std::vector<double> apply_generalized(const Discretization& d, const std::vector<double>& u) {
  const int n = d.n;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    double s = d.adiag[i] * u[i];
    if (i > 0) s += d.aoff[i - 1] * u[i - 1];
    if (i < n - 1) s += d.aoff[i] * u[i + 1];
    out[i] = s;
  }
  if (d.periodic) {
    out[0] += d.aoff[n - 1] * u[n - 1];
    out[n - 1] += d.aoff[n - 1] * u[0];
  }
  return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double bisect(const Discretization& d, int j) {
  double lo = -d.norm_bound - 1.0, hi = d.norm_bound + 1.0;
  const double abs_tol = 4.0 * std::numeric_limits<double>::epsilon() * d.kinetic_bound;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (sturm_count(d, mid) > j) hi = mid;
    else lo = mid;
    if (hi - lo <= std::max(1e-13 * std::max(std::abs(lo), std::abs(hi)), abs_tol)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline int sturm_count(const Discretization& d, double x) { return detail::sturm_count(d, x); }

inline EigenResult eigen_lowest(const Discretization& d, int k) {
  if (k < 0) throw ContractViolation("eigen_lowest: k must be non-negative");
  if (k > d.n / 4) throw ContractViolation("eigen_lowest: k must not exceed n/4");
  EigenResult res;
  res.n = d.n;
  res.h = d.h;
  res.x = d.x;
  res.window_a = d.lo;
  res.window_b = d.hi;
  const int n = d.n;
  std::mt19937_64 rng(0x5eed + n);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::vector<double>> ys;
  for (int j = 0; j < k; ++j) {
    double lam = detail::bisect(d, j);
    double scale = std::max(std::abs(lam), 1.0);
    double mu = lam + 1e-10 * scale * (j % 2 ? 1 : -1) * 1e-3;
    std::vector<double> y(n);
    for (auto& v : y) v = uni(rng);
    bool converged = false;
    double resid = 0.0;
    for (int sweep = 0; sweep < 50; ++sweep) {
      y = detail::solve_shifted(d, mu, y);
      for (size_t m = 0; m < ys.size(); ++m)
        if (std::abs(res.eigenvalues[m] - lam) < 1e-6 * scale) {
          double c = detail::dot(ys[m], y);
          for (int i = 0; i < n; ++i) y[i] -= c * ys[m][i];
        }
      double nrm = std::sqrt(detail::dot(y, y));
      if (!(nrm > 0.0) || !std::isfinite(nrm)) throw NumericalError("inverse iteration produced a degenerate vector");
      for (auto& v : y) v /= nrm;
      auto Cy = detail::apply_standard(d, y);
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) r2 += (Cy[i] - lam * y[i]) * (Cy[i] - lam * y[i]);
      resid = std::sqrt(r2);
      if (resid <= 1e-11 * std::max(d.kinetic_bound, std::abs(lam)) && sweep >= 1) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("inverse iteration did not converge after 50 sweeps");
    size_t imax = 0;
    for (int i = 0; i < n; ++i)
      if (std::abs(y[i]) > std::abs(y[imax])) imax = i;
    if (y[imax] < 0)
      for (auto& v : y) v = -v;
    ys.push_back(y);
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i) u[i] = y[i] / std::sqrt(d.weight[i] * d.h);
    auto Au = detail::apply_generalized(d, u);
    double rn = 0.0;
    for (int i = 0; i < n; ++i) rn += std::pow(Au[i] - lam * d.weight[i] * u[i], 2);
    res.eigenvalues.push_back(lam);
    res.residuals.push_back(std::sqrt(rn / detail::dot(u, u)));
    res.vectors.push_back(std::move(u));
    res.convergence.push_back(0.0);
    res.observed_order.push_back(std::numeric_limits<double>::quiet_NaN());
    res.labels.push_back("k=" + std::to_string(j));
  }
  return res;
}

struct RayleighResult {
  double value = 0.0;
  double residual = 0.0;
};

inline RayleighResult rayleigh(const Discretization& d, const std::vector<double>& u) {
  if (int(u.size()) != d.n) throw ContractViolation("rayleigh: sample size does not match the grid");
  double den = 0.0;
  for (int i = 0; i < d.n; ++i) den += d.weight[i] * u[i] * u[i];
  if (!(den > 0.0)) throw DomainError("rayleigh: zero norm");
  auto Au = detail::apply_generalized(d, u);
  RayleighResult r;
  r.value = detail::dot(u, Au) / den;
  double rn = 0.0;
  for (int i = 0; i < d.n; ++i) rn += std::pow(Au[i] - r.value * d.weight[i] * u[i], 2);
  r.residual = std::sqrt(rn / detail::dot(u, u));
  return r;
}

struct RefineOptions {
  int n0 = 0;            // interior points of the coarsest grid; 0 picks from h0 or 128
  double h0 = 0.0;       // target coarse spacing for windowed problems
  int max_n = 1 << 17;
  bool adapt_window = true;
  double window_tol = 1e-8;
  int max_window_steps = 12;
};

namespace detail {

// Romberg tableau over grids with halving h: column s removes the h^(2s) error term.
inline EigenResult refine_fixed(const SLProblem& pr, int k, double tol, int n0, int max_n, double lo, double hi) {
  constexpr int kStages = 2;
  std::vector<std::vector<double>> lam;
  std::vector<std::vector<std::vector<double>>> tab;  // tab[level][stage][j]
  EigenResult last;
  int n = n0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int level = 0;; ++level) {
    Discretization d = discretize_interval(pr, n, lo, hi);
    last = eigen_lowest(d, k);
    lam.push_back(last.eigenvalues);
    tab.push_back({last.eigenvalues});
    for (int s = 1; s <= std::min(level, kStages); ++s) {
      std::vector<double> r(k);
      double f = std::pow(4.0, s) - 1.0;
      for (int j = 0; j < k; ++j) r[j] = tab[level][s - 1][j] + (tab[level][s - 1][j] - tab[level - 1][s - 1][j]) / f;
      tab[level].push_back(r);
    }
    if (level >= 3) {
      double noise = 200.0 * eps * d.kinetic_bound;
      for (int j = 0; j < k; ++j) {
        double d1 = std::abs(lam[level - 1][j] - lam[level - 2][j]);
        double d2 = std::abs(lam[level][j] - lam[level - 1][j]);
        if (d2 > 0.9 * d1 && d2 > noise)
          throw NumericalError(pr.label + ": non-monotone convergence of level " + std::to_string(j) +
                               " (possible mishandled singular endpoint)");
      }
    }
    if (level >= 2) {
      const auto& r1 = tab[level].back();
      const auto& r0 = tab[level - 1].back();
      double worst = 0.0;
      for (int j = 0; j < k; ++j) worst = std::max(worst, std::abs(r1[j] - r0[j]) / std::max(1.0, std::abs(r1[j])));
      if (worst < tol) {
        last.extrapolated = true;
        for (int j = 0; j < k; ++j) {
          last.eigenvalues[j] = r1[j];
          last.convergence[j] = std::abs(r1[j] - r0[j]);
          double d1 = lam[level - 1][j] - lam[level - 2][j];
          double d2 = lam[level][j] - lam[level - 1][j];
          last.observed_order[j] = (d1 != 0.0 && d2 != 0.0) ? std::log2(std::abs(d1 / d2)) : std::numeric_limits<double>::quiet_NaN();
        }
        return last;
      }
    }
    int next = pr.periodic() ? 2 * n : 2 * n + 1;
    if (next > max_n)
      throw NumericalError(pr.label + ": Richardson sequence did not reach tolerance by n=" + std::to_string(n));
    n = next;
  }
}

}  // namespace detail

// Richardson-accelerated solve; for infinite domains the truncation window grows until the lowest
// k extrapolated eigenvalues move by less than opts.window_tol.
inline EigenResult refine(const SLProblem& pr, int k, double target_tol, RefineOptions opts = {}) {
  if (target_tol < 1e-10) throw ContractViolation("refine: target_tol must be at least 1e-10");
  if (k == 0) return EigenResult{};
  auto [lo, hi] = working_interval(pr);
  int n0 = opts.n0 > 0 ? opts.n0 : 128;
  double h0 = opts.h0 > 0 ? opts.h0 : (hi - lo) / (n0 + 1);
  if (opts.h0 > 0) n0 = std::max(64, int(std::ceil((hi - lo) / h0)) - 1);
  n0 = std::max(n0, 4 * k);
  EigenResult cur = detail::refine_fixed(pr, k, target_tol, n0, opts.max_n, lo, hi);
  if (!pr.infinite() || !opts.adapt_window) return cur;
  for (int step = 0; step < opts.max_window_steps; ++step) {
    double width = hi - lo;
    if (pr.a_infinite) lo -= 0.25 * width;
    if (pr.b_infinite) hi += 0.25 * width;
    int n = std::max(n0, int(std::ceil((hi - lo) / h0)) - 1);
    EigenResult next = detail::refine_fixed(pr, k, target_tol, n, opts.max_n * 4, lo, hi);
    double moved = 0.0;
    for (int j = 0; j < k; ++j) moved = std::max(moved, std::abs(next.eigenvalues[j] - cur.eigenvalues[j]));
    cur = std::move(next);
    if (moved < opts.window_tol) return cur;
  }
  throw NumericalError(pr.label + ": truncation window did not stabilise");
}

}  // namespace pdm
