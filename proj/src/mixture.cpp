#include "xidiv/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "xidiv/errors.hpp"
#include "xidiv/theta.hpp"

namespace xidiv {

namespace {

constexpr double kPi = std::numbers::pi;
// 1/k! underflows binary64 past k = 170; later moments are exactly zero.
constexpr int kMomentCount = 180;

void require_index(int n) {
  if (n < 1) throw ArgumentError("mixture: n must be >= 1, got " + std::to_string(n));
}

double lower_support(int n) {
  const double r = double(n - 1) / n;
  return r * r;
}

// 1 - lo^p for lo in [0, 1).
double one_minus_power(double lo, double p) {
  if (lo == 0.0) return 1.0;
  return -std::expm1(p * std::log(lo));
}

}  // namespace

TriangleWeight TriangleWeight::for_index(int n) {
  require_index(n);
  return TriangleWeight{n, lower_support(n), 1.0};
}

double TriangleWeight::operator()(double lambda) const {
  if (lambda < support_lo || lambda > support_hi) return 0.0;
  return n * std::sqrt(lambda) - (n - 1);
}

double triangle_weight(int n, double lambda) {
  if (lambda < 0.0) throw ArgumentError("triangle_weight: lambda must be >= 0");
  return TriangleWeight::for_index(n)(lambda);
}

double alternating_moment(int n, int k) {
  require_index(n);
  if (k < 0) throw ArgumentError("alternating_moment: k must be >= 0");
  const double lo = lower_support(n);
  // int_lo^1 lambda^k (n sqrt(lambda) - (n-1)) d lambda
  const double sqrt_part = n * one_minus_power(lo, k + 1.5) / (k + 1.5);
  const double flat_part = (n - 1) * one_minus_power(lo, k + 1.0) / (k + 1.0);
  return (sqrt_part - flat_part) * std::exp(-std::lgamma(k + 1.0));
}

PiecewiseDensity::PiecewiseDensity(int n) : n_(n) {
  require_index(n);
  partial_.reserve(kMomentCount);
  CompensatedSum<double> acc;
  for (int k = 0; k < kMomentCount; ++k) {
    const double a = alternating_moment(n, k);
    acc.add(k % 2 == 0 ? a : -a);
    partial_.push_back(acc.value());
  }
}

double PiecewiseDensity::piece_constant(long m) const {
  if (m <= 0) return 0.0;
  const auto j = static_cast<std::size_t>(std::min<long>(m - 1, long(partial_.size()) - 1));
  return partial_[j];
}

double PiecewiseDensity::operator()(double x) const {
  if (!(x > 0.0)) throw ArgumentError("g_density: x must be > 0");
  if (x < 1.0) return 0.0;
  const double fl = std::floor(x);
  const long m = fl > 1e9 ? 1'000'000'000L : static_cast<long>(fl);
  return piece_constant(m) / (x * x);
}

double g_density(int n, double x) { return PiecewiseDensity(n)(x); }

double SignedMixtureMeasure::min_rate() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& a : atoms) lo = std::min(lo, a.rate);
  return lo;
}

double SignedMixtureMeasure::total_mass(int channel) const {
  CompensatedSum<double> acc;
  for (const auto& m : per_n) acc.add(channel == 1 ? m.exponential_mass : m.gamma2_mass);
  return acc.value();
}

namespace {

struct ChannelTotals {
  double exponential = 0.0;
  double gamma2 = 0.0;
};

ChannelTotals midpoint_totals(const PiecewiseDensity& g, double step, double x_max,
                              std::vector<MixtureAtom>* atoms) {
  const int n = g.n();
  const double pn2 = kPi * double(n) * n;
  const double log_pn2 = std::log(pn2);
  const auto cells = static_cast<long>(std::llround(x_max / step));
  CompensatedSum<double> exp_acc;
  CompensatedSum<double> gam_acc;
  for (long j = 0; j < cells; ++j) {
    const double x = (static_cast<double>(j) + 0.5) * step;
    const double density = g(x);
    if (density == 0.0) continue;
    const double w2 = pn2 * density * step;
    const double w1 = -pn2 * log_pn2 * x * density * step;
    gam_acc.add(w2);
    exp_acc.add(w1);
    if (atoms != nullptr) {
      atoms->push_back({2, x, w2, n});
      atoms->push_back({1, x, w1, n});
    }
  }
  return {exp_acc.value(), gam_acc.value()};
}

}  // namespace

SignedMixtureMeasure build_signed_measure(int n_max, double grid_step, double x_max) {
  require_index(n_max);
  if (!(grid_step > 0.0) || !(x_max > 1.0)) {
    throw ArgumentError("build_signed_measure: need grid_step > 0 and x_max > 1");
  }
  SignedMixtureMeasure m;
  m.n_max = n_max;
  m.grid_step = grid_step;
  m.x_max = x_max;
  double coarse_exp = 0.0;
  double coarse_gam = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const PiecewiseDensity g(n);
    const ChannelTotals fine = midpoint_totals(g, grid_step, x_max, &m.atoms);
    const ChannelTotals coarse = midpoint_totals(g, 2.0 * grid_step, x_max, nullptr);
    m.per_n.push_back({n, fine.exponential, fine.gamma2});
    coarse_exp += coarse.exponential;
    coarse_gam += coarse.gamma2;
  }
  m.discretization_error = std::max(std::abs(m.total_mass(1) - coarse_exp),
                                    std::abs(m.total_mass(2) - coarse_gam)) /
                           3.0;
  return m;
}

Complex lhs_half_transform(Complex s, double sigma, const NumericConfig& cfg) {
  const Complex a = s + 0.5 * sigma;
  if (!(a.real() < 0.25)) {
    throw DomainError("lhs_half_transform: requires Re s + sigma/2 < 1/4");
  }
  return psi_kernel_half_transform(a, cfg).value;
}

WrittenSeries rhs_as_written(Complex s, double sigma, int n_max, const NumericConfig& cfg,
                             LowerLimit limit) {
  require_index(n_max);
  cfg.validate();
  const Complex a = s + 0.5 * sigma - 0.25;
  WrittenSeries out;
  CompensatedSum<Complex> total;
  for (int n = 1; n <= n_max; ++n) {
    const double log_pn2 = std::log(kPi * double(n) * n);
    // g_n vanishes below 1, so the effective lower limit is at least 1.
    const double lower = std::max(1.0, limit == LowerLimit::log_pi_n2 ? log_pn2 : 0.0);
    const double distance =
        a.real() >= lower ? std::abs(a.imag()) : std::abs(a - Complex(lower, 0.0));
    if (distance < 1e-12) {
      throw SingularityError("rhs_as_written: pole of (x/(a-x))^2 on the path at n = " +
                             std::to_string(n) + ", x = " + std::to_string(a.real()));
    }
    const PiecewiseDensity g(n);
    // int_p^q c / (a - x)^2 dx = c (1/(a - q) - 1/(a - p))
    CompensatedSum<Complex> integral;
    const long last = g.saturation_piece();
    double p = lower;
    for (long m = static_cast<long>(std::floor(lower)); m < last; ++m) {
      const double q = double(m + 1);
      if (q <= p) continue;
      const double c = g.piece_constant(m);
      integral.add(c * (1.0 / (a - q) - 1.0 / (a - p)));
      p = q;
    }
    integral.add(g.limit_constant() / (p - a));
    const Complex term = std::exp(a * log_pn2) * integral.value();
    out.terms.push_back(term);
    total.add(term);
  }
  out.value = total.value();

  // Tail of the n-series from a power law fitted to the last two terms.
  const double last_abs = std::abs(out.terms.back());
  if (n_max < 2) {
    out.truncation_estimate = std::numeric_limits<double>::infinity();
  } else {
    const double prev_abs = std::abs(out.terms[n_max - 2]);
    const double p = std::log(prev_abs / last_abs) / std::log(double(n_max) / (n_max - 1));
    out.truncation_estimate = (p > 1.05 && std::isfinite(p))
                                  ? 2.0 * last_abs * n_max / (p - 1.0)
                                  : std::numeric_limits<double>::infinity();
  }
  return out;
}

Complex rhs_mixture_form(Complex s, double sigma, const SignedMixtureMeasure& measure) {
  const Complex shift = 0.25 - 0.5 * sigma - s;
  const double min_rate = measure.min_rate();
  if (!(shift.real() > -min_rate)) {
    throw DomainError("rhs_mixture_form: requires 1/4 - sigma/2 - Re s > -min_rate");
  }
  CompensatedSum<Complex> acc;
  for (const auto& atom : measure.atoms) {
    const Complex denom = atom.rate + shift;
    if (std::abs(denom) < 1e-12 * std::max(1.0, atom.rate)) {
      throw SingularityError("rhs_mixture_form: vanishing denominator at x = " +
                             std::to_string(atom.rate) + ", n = " + std::to_string(atom.n));
    }
    const Complex ratio = atom.rate / denom;
    acc.add(atom.weight * (atom.channel == 2 ? ratio * ratio : ratio));
  }
  return acc.value();
}

Complex rhs_mixture_form(Complex s, double sigma, int n_max, const NumericConfig& /*cfg*/) {
  return rhs_mixture_form(s, sigma, build_signed_measure(n_max));
}

namespace {

HalfIdentityReport build_report(Complex s, double sigma, int n_max, const NumericConfig& cfg,
                                bool with_zero_limit) {
  if (!(std::abs(sigma) < 0.5)) throw DomainError("half identity: requires |sigma| < 1/2");
  HalfIdentityReport r;
  r.s = s;
  r.sigma = sigma;
  r.n_max = n_max;
  r.lhs = lhs_half_transform(s, sigma, cfg);
  const WrittenSeries written = rhs_as_written(s, sigma, n_max, cfg);
  r.rhs_as_written = written.value;
  r.truncation_estimate = written.truncation_estimate;
  const SignedMixtureMeasure measure = build_signed_measure(n_max);
  r.rhs_mixture_form = rhs_mixture_form(s, sigma, measure);
  r.discretization_error = measure.discretization_error;
  r.residual_written = std::abs(r.lhs - r.rhs_as_written);
  r.residual_mixture = std::abs(r.lhs - r.rhs_mixture_form);
  if (with_zero_limit) {
    r.rhs_written_zero_limit = rhs_as_written(s, sigma, n_max, cfg, LowerLimit::zero).value;
  }
  return r;
}

}  // namespace

HalfIdentityReport half_identity_report(Complex s, double sigma, int n_max,
                                        const NumericConfig& cfg, bool with_zero_limit) {
  return build_report(s, sigma, n_max, cfg, with_zero_limit);
}

HalfIdentityReport negative_half_transform(Complex s, double sigma, int n_max,
                                           const NumericConfig& cfg, bool with_zero_limit) {
  // e^{-(s + sigma/2) u} and x + (1/4 + sigma/2 + s) are the positive half
  // at (-s, -sigma).
  HalfIdentityReport r = build_report(-s, -sigma, n_max, cfg, with_zero_limit);
  r.s = s;
  r.sigma = sigma;
  r.negative_half = true;
  return r;
}

double lambda_series_form(int n, double u, int k_max) {
  require_index(n);
  CompensatedSum<double> acc;
  for (int k = 0; k <= k_max; ++k) {
    const double term = alternating_moment(n, k) * std::exp(-(k + 1.0) * u);
    acc.add(k % 2 == 0 ? term : -term);
  }
  return acc.value();
}

double v_integral_form(int n, double u) {
  require_index(n);
  const double e = std::exp(-u);
  const double nn = double(n) * n;
  return integrate_real_interval(
      [&](double v) { return std::exp(-(v * v / nn) * e) - std::exp(-e); }, n - 1.0, double(n),
      4);
}

}  // namespace xidiv
