#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace xidiv {

using Complex = std::complex<double>;

/// Tolerances, truncation budgets and quadrature limits shared by every
/// evaluation. Defaults are tuned for binary64 at desk scale (|t| <= 60).
struct NumericConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  double quad_upper_cut = 40.0;  // U: half-line integrals are cut at [0, U]
  int quad_nodes = 400;          // composite panels on [0, U], 16 nodes each
  int cm_order = 8;
  double cm_step = 0.05;
  int n_max = 16;           // default truncation of the sum over n
  double scan_step = 0.05;  // default sign-change scan step along t

  /// Throws ArgumentError when an invariant is violated.
  void validate() const;
  double cm_slack() const { return 10.0 * abs_tol; }
};

struct QuadResult {
  Complex value;
  double error_estimate = 0.0;
  int nodes_used = 0;
  double tail_bound = 0.0;
};

struct CMReport {
  int order_tested = 0;
  std::vector<double> grid;
  int violation_count = 0;
  double max_violation = 0.0;
  bool passed = true;
};

struct Root {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

// Neumaier-compensated accumulator; summation order is the call order.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  CompensatedSum& operator+=(T x) {
    add(x);
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{};
  T comp_{};
};

template <typename T>
class CompensatedSum<std::complex<T>> {
 public:
  void add(std::complex<T> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  CompensatedSum& operator+=(std::complex<T> x) {
    add(x);
    return *this;
  }
  std::complex<T> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<T> re_;
  CompensatedSum<T> im_;
};

/// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre16();

/// Composite 16-point Gauss-Legendre over [a, b] with `panels` equal panels.
Complex integrate_interval(const std::function<Complex(double)>& f, double a, double b,
                           int panels);
double integrate_real_interval(const std::function<double(double)>& f, double a, double b,
                          int panels);

/// Integral over [0, inf) of a function with |f(u)| <= C exp(-decay_rate u)
/// beyond cfg.quad_upper_cut. Composite Gauss-Legendre on [0, U] at
/// quad_nodes and 2*quad_nodes panels; the finer value is returned and the
/// difference is the error estimate. The tail bound is |f(U)| / decay_rate.
QuadResult integrate_half_line(const std::function<Complex(double)>& f, double decay_rate,
                               const NumericConfig& cfg);

/// Finite-difference complete-monotonicity census: for every grid point s and
/// every k in [0, cm_order], requires (-1)^k Delta_h^k f(s) >= -cm_slack.
CMReport cm_test(const std::function<double(double)>& f, std::span<const double> grid,
                 const NumericConfig& cfg);

/// Sign-change scan of f over [t_lo, t_hi] with the given step, each change
/// refined by bisection to a bracket narrower than cfg.abs_tol. Roots closer
/// together than `step` can be missed. Grid samples are evaluated on
/// `threads` workers (0 = hardware concurrency); the result does not depend
/// on the thread count.
std::vector<Root> find_roots_bracketed(const std::function<double(double)>& f, double t_lo,
                                       double t_hi, double step, const NumericConfig& cfg,
                                       unsigned threads = 1);

/// Evaluates f at every point, splitting the work across threads. Output
/// order matches input order.
std::vector<double> parallel_map(const std::function<double(double)>& f,
                                 std::span<const double> points, unsigned threads);

/// Points lo, lo + step, ... (computed as lo + i*step) up to hi inclusive;
/// hi is appended when the last multiple falls short of it by more than
/// step * 1e-9.
std::vector<double> uniform_grid(double lo, double hi, double step);

}  // namespace xidiv
