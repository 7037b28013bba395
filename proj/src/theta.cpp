#include "xidiv/theta.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xidiv/errors.hpp"

namespace xidiv {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTerms = 1'000'000;
// exp(u) overflows binary64 beyond 700 ln 2.
constexpr double kMaxKernelArgument = 700.0 * std::numbers::ln2;

double tail_bound_from(int n, double x) {
  // Bound on sum_{m >= n} exp(-pi m^2 x).
  const double first = std::exp(-kPi * double(n) * n * x);
  return first / (-std::expm1(-kPi * (2.0 * n + 1.0) * x));
}

void require_positive(double x, const char* who) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ArgumentError(std::string(who) + ": x must be finite and > 0, got " +
                        std::to_string(x));
  }
}

template <typename T>
T psi_sum(T x, int n_terms) {
  // Ascending order; terms decrease, so the compensated sum adds the
  // largest term first.
  CompensatedSum<T> acc;
  const T pi_x = std::numbers::pi_v<T> * x;
  for (int n = 1; n <= n_terms; ++n) acc.add(std::exp(-pi_x * T(n) * T(n)));
  return acc.value();
}

}  // namespace

ThetaTruncation theta_truncation(double x, const NumericConfig& cfg) {
  require_positive(x, "psi");
  int n = 1;
  while (tail_bound_from(n, x) > cfg.abs_tol) {
    if (++n > kMaxTerms) throw EvaluationError("psi: truncation budget exceeded");
  }
  // Keep adding terms while they are visible at binary64 resolution.
  const double lead = std::exp(-kPi * x);
  while (n < kMaxTerms) {
    const double next = std::exp(-kPi * double(n + 1) * (n + 1) * x);
    if (next <= lead * 1e-18 || next == 0.0) break;
    ++n;
  }
  ThetaTruncation t;
  t.n_terms = n;
  t.tail_bound = tail_bound_from(n + 1, x);
  return t;
}

double psi_terms(double x, int n_terms) {
  require_positive(x, "psi");
  return psi_sum<double>(x, n_terms);
}

double psi(double x, const NumericConfig& cfg) {
  return psi_sum<double>(x, theta_truncation(x, cfg).n_terms);
}

double theta_functional_residual(double x, const NumericConfig& cfg) {
  require_positive(x, "theta_functional_residual");
  const double lhs = 2.0 * psi(x, cfg) + 1.0;
  const double rhs = (2.0 * psi(1.0 / x, cfg) + 1.0) / std::sqrt(x);
  return std::abs(lhs - rhs);
}

double psi_kernel_theta_part(double u, const NumericConfig& cfg) {
  if (!(u >= 0.0)) throw ArgumentError("psi_kernel_theta_part: u must be >= 0");
  if (u > kMaxKernelArgument) throw RangeError("psi_kernel: |u| too large, e^u overflows");
  const double x = std::exp(u);
  // psi(x) < 2 exp(-pi x) underflows long before e^{u/4} can overflow.
  if (kPi * x > 745.0) return 0.0;
  return psi(x, cfg) * std::exp(0.25 * u);
}

double psi_kernel(double u, const NumericConfig& cfg) {
  if (!std::isfinite(u)) throw ArgumentError("psi_kernel: u must be finite");
  const double a = std::abs(u);
  if (a > kMaxKernelArgument) throw RangeError("psi_kernel: |u| too large, e^u overflows");
  return psi_kernel_theta_part(a, cfg) - 0.5 * std::exp(-0.25 * a);
}

double psi_kernel_series_form(double u, const NumericConfig& cfg) {
  if (!(u >= 0.0) || !std::isfinite(u)) {
    throw ArgumentError("psi_kernel_series_form: u must be finite and >= 0");
  }
  const double x = std::exp(-u);
  const int n = theta_truncation(x, cfg).n_terms;
  using Wide = long double;
  const Wide wu = u;
  const Wide theta = psi_sum<Wide>(std::exp(-wu), n);
  const Wide value = std::exp(-wu / 4) * theta - std::exp(wu / 4) / 2;
  return static_cast<double>(value);
}

double psi_kernel_series_residual(double u, const NumericConfig& cfg) {
  if (!(u >= 0.0)) throw ArgumentError("psi_kernel_series_residual: u must be >= 0");
  return std::abs(psi_kernel(u, cfg) - psi_kernel_series_form(u, cfg));
}

QuadResult psi_kernel_half_transform(Complex a, const NumericConfig& cfg) {
  if (!(a.real() < 0.25)) {
    throw DomainError("Psi half-line transform diverges for Re a >= 1/4 (Re a = " +
                      std::to_string(a.real()) + ")");
  }
  QuadResult q = integrate_half_line(
      [&](double u) { return std::exp(a * u) * psi_kernel_theta_part(u, cfg); }, 1.0, cfg);
  q.value += -0.5 / (0.25 - a);
  return q;
}

}  // namespace xidiv
