#include "xidiv/xi.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "xidiv/errors.hpp"
#include "xidiv/theta.hpp"

namespace xidiv {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// B_{2k} / (2k)! for k = 1..10.
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0};

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && std::floor(s.real()) == s.real();
}

Complex gamma_lanczos(Complex s) {
  // Valid for Re s >= 1/2.
  s -= 1.0;
  Complex series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) series += kLanczos[i] / (s + double(i));
  const Complex t = s + kLanczosG + 0.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, s + 0.5) * std::exp(-t) * series;
}

// Number of directly summed terms. Grows with |Im s| so the Euler-Maclaurin
// remainder, roughly (|s| + 20)^21 / (2 pi N)^21, stays below 1e-15.
int euler_maclaurin_terms(Complex s) { return 30 + static_cast<int>(std::ceil(std::abs(s.imag()))); }

// Returns (s - 1) zeta(s) without forming the pole term separately.
Complex zeta_pole_product(Complex s) {
  const int n = euler_maclaurin_terms(s);
  const Complex sm1 = s - 1.0;
  CompensatedSum<Complex> head;
  for (int k = 1; k < n; ++k) head.add(std::exp(-s * std::log(double(k))));
  const double log_n = std::log(double(n));
  const Complex n_pow = std::exp(-s * log_n);  // N^{-s}
  CompensatedSum<Complex> tail;
  tail.add(0.5 * n_pow);
  // Correction terms B_{2k}/(2k)! * s (s+1) ... (s+2k-2) * N^{-s-2k+1}.
  Complex rising = s;
  Complex power = n_pow / double(n);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    tail.add(kBernoulliOverFactorial[k] * rising * power);
    rising *= (s + double(2 * k + 1)) * (s + double(2 * k + 2));
    power /= double(n) * double(n);
  }
  // (s-1) * [head + tail] + N^{1-s}
  return sm1 * (head.value() + tail.value()) + n_pow * double(n);
}

}  // namespace

std::string_view to_string(XiRoute route) {
  switch (route) {
    case XiRoute::direct:
      return "direct";
    case XiRoute::integral_eq1:
      return "eq1";
    case XiRoute::psi_transform:
      return "psi_transform";
  }
  return "unknown";
}

Complex gamma_fn(Complex s) {
  if (is_nonpositive_integer(s)) {
    throw PoleError("gamma: pole at s = " + std::to_string(s.real()));
  }
  if (s.real() < 0.5) {
    // Gamma(s) Gamma(1 - s) = pi / sin(pi s)
    return kPi / (std::sin(kPi * s) * gamma_lanczos(1.0 - s));
  }
  return gamma_lanczos(s);
}

Complex zeta_times_pole_factor(Complex s, const NumericConfig& /*cfg*/) {
  if (!(s.real() > -1.0)) {
    throw DomainError("zeta: Euler-Maclaurin continuation implemented for Re s > -1");
  }
  if (s == Complex(1.0, 0.0)) return 1.0;
  return zeta_pole_product(s);
}

Complex zeta(Complex s, const NumericConfig& cfg) {
  if (s == Complex(1.0, 0.0)) throw PoleError("zeta: pole at s = 1");
  return zeta_times_pole_factor(s, cfg) / (s - 1.0);
}

Complex xi_direct(Complex s, const NumericConfig& cfg) {
  if (s.real() < -0.5) {
    // Use xi(s) = xi(1 - s) to stay inside the zeta continuation domain.
    return xi_direct(1.0 - s, cfg);
  }
  // s Gamma(s/2) / 2 = Gamma(1 + s/2)
  const Complex gamma_part = gamma_fn(1.0 + 0.5 * s);
  const Complex zeta_part = zeta_times_pole_factor(s, cfg);
  const Complex pi_part = std::exp(-0.5 * s * std::log(kPi));
  const Complex value = gamma_part * zeta_part * pi_part;
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw EvaluationError("xi_direct: non-finite value");
  }
  return value;
}

Complex Xi_direct(Complex z, const NumericConfig& cfg) {
  return xi_direct(0.5 + Complex(0.0, 1.0) * z, cfg);
}

Complex xi_eq1_value(Complex z, const NumericConfig& cfg) {
  if (!(std::abs(z.imag()) < 0.5)) {
    throw DomainError("xi_eq1: requires |Im z| < 1/2");
  }
  // int_1^inf psi(x) x^{-3/4} cos(z log x / 2) dx with x = e^u.
  const bool real_arg = z.imag() == 0.0;
  const double zr = z.real();
  const QuadResult q = integrate_half_line(
      [&](double u) -> Complex {
        const double theta = psi_kernel_theta_part(u, cfg);
        if (theta == 0.0) return 0.0;
        if (real_arg) return theta * std::cos(0.5 * zr * u);
        return theta * std::cos(0.5 * z * u);
      },
      1.0, cfg);
  return 0.5 - (z * z + 0.25) * q.value;
}

XiEvaluation xi_eq1(Complex z, const NumericConfig& cfg) {
  XiEvaluation ev;
  ev.route = XiRoute::integral_eq1;
  ev.s = 0.5 + Complex(0.0, 1.0) * z;
  ev.value = xi_eq1_value(z, cfg);
  ev.residual_vs_direct = std::abs(ev.value - xi_direct(ev.s, cfg));
  return ev;
}

XiEvaluation xi_psi_transform(Complex z, const NumericConfig& cfg) {
  if (!(std::abs(z.real()) < 0.5)) {
    throw DomainError("xi_psi_transform: requires |Re z| < 1/2");
  }
  // int_R e^{zu/2} Psi(u) du = int_0^inf (e^{zu/2} + e^{-zu/2}) Psi(u) du
  const QuadResult plus = psi_kernel_half_transform(0.5 * z, cfg);
  const QuadResult minus = psi_kernel_half_transform(-0.5 * z, cfg);
  XiEvaluation ev;
  ev.route = XiRoute::psi_transform;
  ev.s = 0.5 - z;
  ev.value = 0.5 * (z * z - 0.25) * (plus.value + minus.value);
  ev.residual_vs_direct = std::abs(ev.value - xi_direct(0.5 - z, cfg));
  ev.residual_vs_reflected = std::abs(ev.value - xi_direct(0.5 + z, cfg));
  return ev;
}

}  // namespace xidiv
