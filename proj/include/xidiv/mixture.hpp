#pragma once

#include <optional>
#include <vector>

#include "xidiv/numerics.hpp"

namespace xidiv {

/// J_n(lambda) = n (sqrt(lambda) - (n-1)/n) on [((n-1)/n)^2, 1], zero elsewhere.
struct TriangleWeight {
  int n = 1;
  double support_lo = 0.0;
  double support_hi = 1.0;

  static TriangleWeight for_index(int n);
  double operator()(double lambda) const;
};

double triangle_weight(int n, double lambda);

/// a_{n,k} = int lambda^k / k! J_n(lambda) d lambda >= 0, in closed form. The
/// alternating moment in the density is (-1)^k a_{n,k}.
double alternating_moment(int n, int k);

/// g_n(x) = x^{-2} sum_{k=0}^{floor(x-1)} (-1)^k a_{n,k}. On each [m, m+1),
/// m >= 1, x^2 g_n(x) is the constant partial sum through k = m-1; the
/// density vanishes on (0, 1) and is right-continuous at the integers.
class PiecewiseDensity {
 public:
  explicit PiecewiseDensity(int n);

  int n() const { return n_; }
  double operator()(double x) const;
  /// x^2 g_n(x) on [m, m+1) for m >= 1; zero for m <= 0.
  double piece_constant(long m) const;
  /// lim_{x -> inf} x^2 g_n(x) = int e^{-lambda} J_n(lambda) d lambda.
  double limit_constant() const { return partial_.back(); }
  /// Index beyond which piece_constant is constant at binary64 resolution.
  long saturation_piece() const { return static_cast<long>(partial_.size()); }

 private:
  int n_;
  std::vector<double> partial_;  // partial_[j] = sum_{k<=j} (-1)^k a_{n,k}
};

double g_density(int n, double x);

struct MixtureAtom {
  int channel = 2;  // r: 2 = Gamma(2) channel, 1 = exponential channel
  double rate = 0.0;
  double weight = 0.0;
  int n = 1;
};

struct ChannelMass {
  int n = 1;
  double exponential_mass = 0.0;  // r = 1, sum of weights (<= 0)
  double gamma2_mass = 0.0;       // r = 2, sum of weights (>= 0)
};

/// Two-channel signed measure G(r, x) discretized by the midpoint rule:
/// r = 2 weight pi n^2 g_n(x) dx, r = 1 weight -pi n^2 log(pi n^2) x g_n(x) dx.
struct SignedMixtureMeasure {
  int n_max = 0;
  double grid_step = 0.0;
  double x_max = 0.0;
  std::vector<MixtureAtom> atoms;
  std::vector<ChannelMass> per_n;
  // Richardson estimate |M(h) - M(2h)| / 3 on the channel totals.
  double discretization_error = 0.0;

  double min_rate() const;
  double total_mass(int channel) const;
};

SignedMixtureMeasure build_signed_measure(int n_max, double grid_step = 0.01,
                                          double x_max = 60.0);

/// int_0^inf e^{(s + sigma/2) u} Psi(u) du; requires Re s + sigma/2 < 1/4.
Complex lhs_half_transform(Complex s, double sigma, const NumericConfig& cfg);

enum class LowerLimit { log_pi_n2, zero };

struct WrittenSeries {
  Complex value;
  std::vector<Complex> terms;
  double truncation_estimate = 0.0;  // +inf when the terms do not visibly decay
};

/// sum_{n<=n_max} (pi n^2)^a int_{L_n}^inf (x / (a - x))^2 g_n(x) dx with
/// a = s + sigma/2 - 1/4 and L_n = log(pi n^2) (or 0). Each integral is
/// exact: on [m, m+1) the integrand is c_m / (a - x)^2.
WrittenSeries rhs_as_written(Complex s, double sigma, int n_max, const NumericConfig& cfg,
                             LowerLimit limit = LowerLimit::log_pi_n2);

/// sum over atoms of weight * (x / (x + (1/4 - sigma/2 - s)))^r.
Complex rhs_mixture_form(Complex s, double sigma, const SignedMixtureMeasure& measure);
Complex rhs_mixture_form(Complex s, double sigma, int n_max, const NumericConfig& cfg);

struct HalfIdentityReport {
  Complex s;
  double sigma = 0.0;
  int n_max = 0;
  bool negative_half = false;
  Complex lhs;
  Complex rhs_as_written;
  Complex rhs_mixture_form;
  double residual_written = 0.0;
  double residual_mixture = 0.0;
  double truncation_estimate = 0.0;
  double discretization_error = 0.0;
  std::optional<Complex> rhs_written_zero_limit;
};

/// Both sides of the positive-half mixture identity; never asserts equality.
HalfIdentityReport half_identity_report(Complex s, double sigma, int n_max,
                                        const NumericConfig& cfg,
                                        bool with_zero_limit = false);

/// The (1/4 + sigma/2 + s) analogue: int_0^inf e^{-(s + sigma/2) u} Psi(u) du
/// against the mixture with denominator x + (1/4 + sigma/2 + s).
HalfIdentityReport negative_half_transform(Complex s, double sigma, int n_max,
                                           const NumericConfig& cfg,
                                           bool with_zero_limit = false);

/// sum_{k=0}^{k_max} (-1)^k a_{n,k} e^{-(k+1) u}: the lambda-integral
/// int e^{-u - lambda e^{-u}} J_n(lambda) d lambda expanded in k.
double lambda_series_form(int n, double u, int k_max);

/// int_{n-1}^{n} (exp(-(v/n)^2 e^{-u}) - exp(-e^{-u})) dv, the same quantity
/// before the swap of the v and lambda integrals.
double v_integral_form(int n, double u);

}  // namespace xidiv
