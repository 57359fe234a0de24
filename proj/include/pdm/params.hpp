#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "pdm/error.hpp"

namespace pdm {

using cplx = std::complex<double>;

// Table parameters. lambda and omega may be purely imaginary; the others are real.
struct ParameterSet {
  std::optional<double> kappa;
  std::optional<cplx> lambda;
  std::optional<cplx> omega;
  std::optional<double> nu;
  std::optional<double> mu;
  std::optional<double> sigma;

  static constexpr std::array<std::string_view, 6> names{"kappa", "lambda", "omega", "nu", "mu", "sigma"};

  static bool known(std::string_view name) {
    for (auto n : names)
      if (n == name) return true;
    return false;
  }

  bool is_set(std::string_view name) const { return get(name).has_value(); }

  std::optional<cplx> get(std::string_view name) const {
    if (name == "kappa") return kappa ? std::optional<cplx>(*kappa) : std::nullopt;
    if (name == "lambda") return lambda;
    if (name == "omega") return omega;
    if (name == "nu") return nu ? std::optional<cplx>(*nu) : std::nullopt;
    if (name == "mu") return mu ? std::optional<cplx>(*mu) : std::nullopt;
    if (name == "sigma") return sigma ? std::optional<cplx>(*sigma) : std::nullopt;
    throw DomainError("unknown parameter '" + std::string(name) + "'");
  }

  double real(std::string_view name) const {
    auto v = get(name);
    if (!v) throw DomainError("parameter '" + std::string(name) + "' is not set");
    return v->real();
  }

  // Real parameters reject a nonzero imaginary part; lambda/omega accept real or purely imaginary values.
  void set(std::string_view name, cplx v) {
    bool real_only = !(name == "lambda" || name == "omega");
    if (real_only && v.imag() != 0.0)
      throw DomainError("parameter '" + std::string(name) + "' must be real");
    if (!real_only && v.real() != 0.0 && v.imag() != 0.0)
      throw DomainError("parameter '" + std::string(name) + "' must be real or purely imaginary");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("parameter '" + std::string(name) + "' must be finite");
    if (name == "kappa") kappa = v.real();
    else if (name == "lambda") lambda = v;
    else if (name == "omega") omega = v;
    else if (name == "nu") nu = v.real();
    else if (name == "mu") mu = v.real();
    else if (name == "sigma") sigma = v.real();
    else throw DomainError("unknown parameter '" + std::string(name) + "'");
  }

  bool operator==(const ParameterSet&) const = default;
};

}  // namespace pdm
