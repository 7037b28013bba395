#pragma once

#include "xidiv/numerics.hpp"

namespace xidiv {

/// Number of summed terms of psi(x) and a bound on the omitted tail.
struct ThetaTruncation {
  int n_terms = 0;
  double tail_bound = 0.0;
};

/// Truncation for psi(x): the smallest N whose geometric tail bound
/// exp(-pi N^2 x) / (1 - exp(-pi (2N+1) x)) is below cfg.abs_tol, extended
/// until further terms are below binary64 resolution of the partial sum.
ThetaTruncation theta_truncation(double x, const NumericConfig& cfg);

/// psi(x) = sum_{n>=1} exp(-pi n^2 x), x > 0.
double psi(double x, const NumericConfig& cfg);

/// psi(x) with exactly n_terms terms (no adaptive truncation).
double psi_terms(double x, int n_terms);

/// |2 psi(x) + 1 - x^{-1/2} (2 psi(1/x) + 1)|.
double theta_functional_residual(double x, const NumericConfig& cfg);

/// Psi(u) = psi(e^u) e^{u/4} - e^{-u/4} / 2, even in u. Negative u is
/// evaluated through Psi(-u). Throws RangeError for |u| beyond ~485.
double psi_kernel(double u, const NumericConfig& cfg);

/// The theta part psi(e^u) e^{u/4} of Psi for u >= 0. Decays like
/// exp(-pi e^u), so its transforms need no asymptotic treatment.
double psi_kernel_theta_part(double u, const NumericConfig& cfg);

/// Second representation e^{-u/4} psi(e^{-u}) - e^{u/4}/2 (equal to Psi(-u)),
/// summed in extended precision because its two terms cancel for large u.
double psi_kernel_series_form(double u, const NumericConfig& cfg);

/// |Psi(u) - series form(u)| for u >= 0.
double psi_kernel_series_residual(double u, const NumericConfig& cfg);

/// int_0^inf e^{a u} Psi(u) du for Re a < 1/4. The theta part goes through
/// integrate_half_line; the elementary part -e^{-u/4}/2 integrates to
/// -1/(2 (1/4 - a)) exactly.
QuadResult psi_kernel_half_transform(Complex a, const NumericConfig& cfg);

}  // namespace xidiv
