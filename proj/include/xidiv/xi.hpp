#pragma once

#include <optional>
#include <string_view>

#include "xidiv/numerics.hpp"

namespace xidiv {

enum class XiRoute { direct, integral_eq1, psi_transform };

std::string_view to_string(XiRoute route);

struct XiEvaluation {
  Complex s;  // argument of xi actually represented (1/2 + i z or 1/2 - z)
  Complex value;
  XiRoute route = XiRoute::direct;
  std::optional<double> residual_vs_direct;
  // psi_transform only: residual against xi(1/2 + z), the reflected reading
  // of Xi(iz). Equal to residual_vs_direct up to the functional equation.
  std::optional<double> residual_vs_reflected;
};

/// Gamma(s) via the g = 7, 9-term Lanczos approximation, with reflection for
/// Re s < 1/2. Throws PoleError at nonpositive integers.
Complex gamma_fn(Complex s);

/// zeta(s) by Euler-Maclaurin summation with Bernoulli corrections through
/// B_20. Valid for Re s > -1 and |Im s| up to a few hundred. PoleError at 1.
Complex zeta(Complex s, const NumericConfig& cfg);

/// (s - 1) zeta(s), finite at s = 1 where it equals 1.
Complex zeta_times_pole_factor(Complex s, const NumericConfig& cfg);

/// xi(s) = s (s-1) pi^{-s/2} Gamma(s/2) zeta(s) / 2, evaluated as
/// Gamma(1 + s/2) * ((s-1) zeta(s)) * pi^{-s/2}, which is finite at s = 0, 1.
Complex xi_direct(Complex s, const NumericConfig& cfg);

/// Xi(z) = xi(1/2 + i z) by the direct route.
Complex Xi_direct(Complex z, const NumericConfig& cfg);

/// Xi(z) = 1/2 - (z^2 + 1/4) int_1^inf psi(x) x^{-3/4} cos(z log(x) / 2) dx,
/// integrated after x = e^u. Requires |Im z| < 1/2.
XiEvaluation xi_eq1(Complex z, const NumericConfig& cfg);

/// Xi(z) by the integral route without the cross-route residual.
Complex xi_eq1_value(Complex z, const NumericConfig& cfg);

/// Xi(iz) = (z^2 - 1/4)/2 * int_R e^{z u / 2} Psi(u) du for |Re z| < 1/2, as
/// two half-line integrals. The residual is measured against xi(1/2 - z).
XiEvaluation xi_psi_transform(Complex z, const NumericConfig& cfg);

}  // namespace xidiv
