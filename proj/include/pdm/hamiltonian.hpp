#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "pdm/catalog.hpp"
#include "pdm/error.hpp"
#include "pdm/expr.hpp"
#include "pdm/parallel.hpp"

namespace pdm {

// Cell-centered tensor grid: node i on axis a sits at lo[a] + (i + 1/2) h[a].
class Grid3 {
 public:
  Grid3(std::array<double, 3> lo, std::array<double, 3> hi, std::array<int, 3> n) : lo_(lo), hi_(hi), n_(n) {
    for (int a = 0; a < 3; ++a) {
      if (n[a] < 16) throw ContractViolation("Grid3 needs at least 16 points per axis");
      if (!(hi[a] > lo[a])) throw ContractViolation("Grid3 box must satisfy lo < hi");
      h_[a] = (hi[a] - lo[a]) / n[a];
    }
  }
  Grid3(const Box& box, int n) : Grid3(box.lo, box.hi, {n, n, n}) {}

  const std::array<double, 3>& lo() const { return lo_; }
  const std::array<double, 3>& hi() const { return hi_; }
  int n(int a) const { return n_[a]; }
  double h(int a) const { return h_[a]; }
  double x(int a, int i) const { return lo_[a] + (i + 0.5) * h_[a]; }
  double face(int a, int k) const { return lo_[a] + k * h_[a]; }
  size_t size() const { return size_t(n_[0]) * n_[1] * n_[2]; }
  size_t index(int i, int j, int k) const { return (size_t(i) * n_[1] + j) * n_[2] + k; }
  size_t stride(int a) const { return a == 0 ? size_t(n_[1]) * n_[2] : a == 1 ? size_t(n_[2]) : 1; }
  double cell_volume() const { return h_[0] * h_[1] * h_[2]; }

  std::array<int, 3> unpack(size_t idx) const {
    int k = int(idx % n_[2]);
    size_t rest = idx / n_[2];
    return {int(rest / n_[1]), int(rest % n_[1]), k};
  }

  Point point(size_t idx, double t = 0.0) const {
    auto [i, j, k] = unpack(idx);
    return {x(0, i), x(1, j), x(2, k), t, 0.0};
  }

  bool operator==(const Grid3& o) const { return lo_ == o.lo_ && hi_ == o.hi_ && n_ == o.n_; }

 private:
  std::array<double, 3> lo_, hi_, h_{};
  std::array<int, 3> n_;
};

struct GridField {
  Grid3 grid;
  std::vector<cplx> v;

  explicit GridField(const Grid3& g) : grid(g), v(g.size(), cplx(0.0)) {}

  static GridField sample(const Grid3& g, const std::function<cplx(double, double, double)>& fn) {
    GridField out(g);
    parallel_for(g.size(), [&](size_t b, size_t e) {
      for (size_t idx = b; idx < e; ++idx) {
        Point p = g.point(idx);
        out.v[idx] = fn(p.x1, p.x2, p.x3);
      }
    });
    return out;
  }

  // Zeroes the given number of outermost node layers on every face.
  void clear_border(int layers) {
    for (size_t idx = 0; idx < v.size(); ++idx) {
      auto ijk = grid.unpack(idx);
      for (int a = 0; a < 3; ++a)
        if (ijk[a] < layers || ijk[a] >= grid.n(a) - layers) {
          v[idx] = 0.0;
          break;
        }
    }
  }

  bool interior_supported(int layers = 2) const {
    for (size_t idx = 0; idx < v.size(); ++idx) {
      auto ijk = grid.unpack(idx);
      for (int a = 0; a < 3; ++a)
        if ((ijk[a] < layers || ijk[a] >= grid.n(a) - layers) && v[idx] != cplx(0.0)) return false;
    }
    return true;
  }

  GridField& operator+=(const GridField& o) {
    check(o);
    for (size_t k = 0; k < v.size(); ++k) v[k] += o.v[k];
    return *this;
  }
  GridField& operator-=(const GridField& o) {
    check(o);
    for (size_t k = 0; k < v.size(); ++k) v[k] -= o.v[k];
    return *this;
  }
  GridField& operator*=(cplx s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  void check(const GridField& o) const {
    if (!(grid == o.grid)) throw ContractViolation("grid mismatch");
  }
};

inline GridField operator+(GridField a, const GridField& b) { return a += b; }
inline GridField operator-(GridField a, const GridField& b) { return a -= b; }
inline GridField operator*(cplx s, GridField a) { return a *= s; }

inline cplx inner_product(const Grid3& grid, const GridField& u, const GridField& v) {
  if (!(u.grid == grid) || !(v.grid == grid)) throw ContractViolation("inner_product: grid mismatch");
  cplx s = 0.0;
  for (size_t k = 0; k < u.v.size(); ++k) s += std::conj(u.v[k]) * v.v[k];
  return s * grid.cell_volume();
}

inline double norm(const GridField& u) { return std::sqrt(inner_product(u.grid, u, u).real()); }

// Norm restricted to nodes at least `margin` layers away from every face.
inline double interior_norm(const GridField& u, int margin) {
  double s = 0.0;
  const Grid3& g = u.grid;
  for (int i = margin; i < g.n(0) - margin; ++i)
    for (int j = margin; j < g.n(1) - margin; ++j)
      for (int k = margin; k < g.n(2) - margin; ++k) s += std::norm(u.v[g.index(i, j, k)]);
  return std::sqrt(s * g.cell_volume());
}

// Samples an expression on the nodes at time t; non-finite values are a domain error.
inline std::vector<cplx> sample_nodes(const Grid3& g, const Expr& e, double t = 0.0,
                                      const ParameterSet* ps = nullptr) {
  std::vector<cplx> out(g.size());
  if (e.is_constant()) {
    std::fill(out.begin(), out.end(), e.constant_value());
    return out;
  }
  parallel_for(g.size(), [&](size_t b, size_t end) {
    for (size_t idx = b; idx < end; ++idx) {
      cplx v = e.eval(g.point(idx, t), ps);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        Point p = g.point(idx, t);
        throw DomainError("coefficient '" + e.str() + "' is not finite at (" + std::to_string(p.x1) + ", " +
                          std::to_string(p.x2) + ", " + std::to_string(p.x3) + ")");
      }
      out[idx] = v;
    }
  });
  return out;
}

namespace stencil {

// Central-difference weights for offsets 1..R (first derivative is antisymmetric, second symmetric).
inline std::vector<double> first(int order) {
  switch (order) {
    case 2: return {0.5};
    case 4: return {2.0 / 3.0, -1.0 / 12.0};
    case 6: return {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
    case 8: return {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  }
  throw ContractViolation("stencil order must be 2, 4, 6 or 8");
}

inline std::pair<double, std::vector<double>> second(int order) {
  switch (order) {
    case 2: return {-2.0, {1.0}};
    case 4: return {-5.0 / 2.0, {4.0 / 3.0, -1.0 / 12.0}};
    case 6: return {-49.0 / 18.0, {3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0}};
    case 8: return {-205.0 / 72.0, {8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0}};
  }
  throw ContractViolation("stencil order must be 2, 4, 6 or 8");
}

// d/dx_a of u with zero extension outside the grid.
inline void first_derivative(const Grid3& g, const std::vector<cplx>& u, int a, int order, std::vector<cplx>& out) {
  auto w = first(order);
  const int R = int(w.size());
  const size_t s = g.stride(a);
  const int n = g.n(a);
  const double inv = 1.0 / g.h(a);
  out.assign(u.size(), cplx(0.0));
  parallel_for(u.size(), [&](size_t b, size_t e) {
    for (size_t idx = b; idx < e; ++idx) {
      int i = g.unpack(idx)[a];
      cplx acc = 0.0;
      for (int m = 1; m <= R; ++m) {
        cplx up = i + m < n ? u[idx + m * s] : cplx(0.0);
        cplx dn = i - m >= 0 ? u[idx - m * s] : cplx(0.0);
        acc += w[m - 1] * (up - dn);
      }
      out[idx] = acc * inv;
    }
  });
}

inline void second_derivative(const Grid3& g, const std::vector<cplx>& u, int a, int order, std::vector<cplx>& out) {
  auto [w0, w] = second(order);
  const int R = int(w.size());
  const size_t s = g.stride(a);
  const int n = g.n(a);
  const double inv = 1.0 / (g.h(a) * g.h(a));
  out.assign(u.size(), cplx(0.0));
  parallel_for(u.size(), [&](size_t b, size_t e) {
    for (size_t idx = b; idx < e; ++idx) {
      int i = g.unpack(idx)[a];
      cplx acc = w0 * u[idx];
      for (int m = 1; m <= R; ++m) {
        cplx up = i + m < n ? u[idx + m * s] : cplx(0.0);
        cplx dn = i - m >= 0 ? u[idx - m * s] : cplx(0.0);
        acc += w[m - 1] * (up + dn);
      }
      out[idx] = acc * inv;
    }
  });
}

}  // namespace stencil

// V = v_hat + (alpha+gamma)/4 * Lap f + alpha*gamma * |grad f|^2 / (2 f).
class EffectivePotential {
 public:
  EffectivePotential(const Expr& v_hat, const Expr& f, double alpha, double gamma) : f_(f) {
    Expr lap = Expr(0.0), grad2 = Expr(0.0);
    for (int a = 0; a < 3; ++a) {
      Expr fa = f.diff(static_cast<Var>(a));
      lap = lap + fa.diff(static_cast<Var>(a));
      grad2 = grad2 + fa * fa;
    }
    expr_ = v_hat + Expr(0.25 * (alpha + gamma)) * lap + Expr(alpha * gamma) * grad2 / (Expr(2.0) * f);
  }

  const Expr& expr() const { return expr_; }

  cplx operator()(const Point& p, const ParameterSet* ps = nullptr) const {
    cplx fv = f_.eval(p, ps);
    if (!(fv.real() > 0.0) || fv.imag() != 0.0) throw DomainError("effective_potential: f <= 0 at evaluation point");
    return expr_.eval(p, ps);
  }

 private:
  Expr f_;
  Expr expr_;
};

inline EffectivePotential effective_potential(const Expr& v_hat, const Expr& f, double alpha, double gamma) {
  return EffectivePotential(v_hat, f, alpha, gamma);
}

enum class HamiltonianScheme {
  divergence2,  // symmetric flux form with face-centered f
  central       // -1/2 (f Lap psi + grad f . grad psi) + V psi with analytic grad f, high-order stencils
};

// H = 1/2 p_a f p_a + V on a fixed grid; coefficient arrays are sampled once.
class HamiltonianOp {
 public:
  HamiltonianOp(const Expr& f, const Expr& V, const Grid3& grid, HamiltonianScheme scheme = HamiltonianScheme::divergence2,
                int order = 8)
      : grid_(grid), scheme_(scheme), order_(order) {
    if (f.has_params() || V.has_params()) throw ContractViolation("HamiltonianOp: bind parameters first");
    V_ = sample_nodes(grid, V);
    if (scheme == HamiltonianScheme::divergence2) {
      for (int a = 0; a < 3; ++a) {
        std::array<int, 3> dims{grid.n(0), grid.n(1), grid.n(2)};
        dims[a] += 1;
        faces_[a].resize(size_t(dims[0]) * dims[1] * dims[2]);
        auto& F = faces_[a];
        parallel_for(F.size(), [&](size_t b, size_t e) {
          for (size_t idx = b; idx < e; ++idx) {
            int k = int(idx % dims[2]);
            size_t rest = idx / dims[2];
            int j = int(rest % dims[1]), i = int(rest / dims[1]);
            std::array<int, 3> ijk{i, j, k};
            double c[3];
            for (int d = 0; d < 3; ++d) c[d] = d == a ? grid.face(d, ijk[d]) : grid.x(d, ijk[d]);
            double v = f.eval_real({c[0], c[1], c[2], 0.0, 0.0});
            if (!std::isfinite(v)) throw DomainError("inverse mass is not finite at a face");
            F[idx] = v;
          }
        });
      }
    } else {
      stencil::first(order);
      f_ = sample_nodes(grid, f);
      for (int a = 0; a < 3; ++a) df_[a] = sample_nodes(grid, f.diff(static_cast<Var>(a)));
    }
  }

  HamiltonianOp(const SystemSpec& spec, const ParameterSet& ps, const Grid3& grid,
                HamiltonianScheme scheme = HamiltonianScheme::divergence2, int order = 8)
      : HamiltonianOp(spec.inverse_mass.bind(ps), spec.potential.bind(ps), grid, scheme, order) {}

  const Grid3& grid() const { return grid_; }

  GridField apply(const GridField& psi) const {
    if (!(psi.grid == grid_)) throw ContractViolation("apply_hamiltonian: grid mismatch");
    if (!psi.interior_supported(2)) throw ContractViolation("apply_hamiltonian: field must vanish on the two outermost layers");
    return scheme_ == HamiltonianScheme::divergence2 ? apply_divergence(psi) : apply_central(psi);
  }

 private:
  Grid3 grid_;
  HamiltonianScheme scheme_;
  int order_;
  std::vector<cplx> V_;
  std::array<std::vector<double>, 3> faces_;
  std::vector<cplx> f_;
  std::array<std::vector<cplx>, 3> df_;

  GridField apply_divergence(const GridField& psi) const {
    GridField out(grid_);
    const auto& u = psi.v;
    parallel_for(u.size(), [&](size_t b, size_t e) {
      for (size_t idx = b; idx < e; ++idx) {
        auto ijk = grid_.unpack(idx);
        cplx acc = 0.0;
        for (int a = 0; a < 3; ++a) {
          std::array<int, 3> dims{grid_.n(0), grid_.n(1), grid_.n(2)};
          dims[a] += 1;
          std::array<int, 3> lo = ijk, hi = ijk;
          hi[a] += 1;
          double f_lo = faces_[a][(size_t(lo[0]) * dims[1] + lo[1]) * dims[2] + lo[2]];
          double f_hi = faces_[a][(size_t(hi[0]) * dims[1] + hi[1]) * dims[2] + hi[2]];
          size_t s = grid_.stride(a);
          cplx up = ijk[a] + 1 < grid_.n(a) ? u[idx + s] : cplx(0.0);
          cplx dn = ijk[a] - 1 >= 0 ? u[idx - s] : cplx(0.0);
          acc += (f_hi * (up - u[idx]) - f_lo * (u[idx] - dn)) / (grid_.h(a) * grid_.h(a));
        }
        out.v[idx] = -0.5 * acc + V_[idx] * u[idx];
      }
    });
    return out;
  }

  GridField apply_central(const GridField& psi) const {
    GridField out(grid_);
    std::vector<cplx> d1, d2;
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] = V_[k] * psi.v[k];
    for (int a = 0; a < 3; ++a) {
      stencil::first_derivative(grid_, psi.v, a, order_, d1);
      stencil::second_derivative(grid_, psi.v, a, order_, d2);
      for (size_t k = 0; k < out.v.size(); ++k) out.v[k] -= 0.5 * (f_[k] * d2[k] + df_[a][k] * d1[k]);
    }
    return out;
  }
};

inline GridField apply_hamiltonian(const SystemSpec& spec, const ParameterSet& params, const Grid3& grid,
                                   const GridField& psi) {
  return HamiltonianOp(spec, params, grid).apply(psi);
}

// First-order generator with coefficients frozen at time t.
class GeneratorOp {
 public:
  GeneratorOp(const GeneratorSpec& g, const Grid3& grid, double t, int order = 8) : grid_(grid), order_(order) {
    stencil::first(order);
    for (int a = 0; a < 3; ++a) {
      if (g.c[a].has_params() || g.c_0.has_params() || g.c_t.has_params())
        throw ContractViolation("GeneratorOp: bind parameters first");
      active_[a] = !g.c[a].is_zero();
      if (active_[a]) c_[a] = sample_nodes(grid, g.c[a], t);
    }
    c0_ = sample_nodes(grid, g.c_0, t);
    has_ct_ = !g.c_t.is_zero();
    if (has_ct_) ct_ = sample_nodes(grid, g.c_t, t);
  }

  bool has_time_derivative() const { return has_ct_; }

  // (c_a d_a + c_0) psi + c_t dt_psi. dt_psi is required when the generator contains d/dt.
  GridField apply(const GridField& psi, const GridField* dt_psi = nullptr) const {
    if (!(psi.grid == grid_)) throw ContractViolation("apply_generator: grid mismatch");
    if (!psi.interior_supported(2)) throw ContractViolation("apply_generator: field must vanish on the two outermost layers");
    GridField out(grid_);
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] = c0_[k] * psi.v[k];
    std::vector<cplx> d;
    for (int a = 0; a < 3; ++a) {
      if (!active_[a]) continue;
      stencil::first_derivative(grid_, psi.v, a, order_, d);
      for (size_t k = 0; k < out.v.size(); ++k) out.v[k] += c_[a][k] * d[k];
    }
    if (has_ct_) {
      if (!dt_psi) throw ContractViolation("apply_generator: generator contains d/dt; supply the time-derivative field");
      dt_psi->check(psi);
      for (size_t k = 0; k < out.v.size(); ++k) out.v[k] += ct_[k] * dt_psi->v[k];
    }
    return out;
  }

 private:
  Grid3 grid_;
  int order_;
  std::array<std::vector<cplx>, 3> c_;
  std::array<bool, 3> active_{};
  std::vector<cplx> c0_, ct_;
  bool has_ct_ = false;
};

inline GridField apply_generator(const GeneratorSpec& g, const Grid3& grid, const GridField& psi, double t,
                                 const GridField* dt_psi = nullptr, int order = 8) {
  return GeneratorOp(g, grid, t, order).apply(psi, dt_psi);
}

}  // namespace pdm
