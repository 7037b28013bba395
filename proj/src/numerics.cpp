#include "xidiv/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "xidiv/errors.hpp"

namespace xidiv {

void NumericConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ArgumentError(std::string("invalid NumericConfig: ") + what);
  };
  require(abs_tol > 0.0 && std::isfinite(abs_tol), "abs_tol must be > 0");
  require(rel_tol > 0.0 && std::isfinite(rel_tol), "rel_tol must be > 0");
  require(quad_upper_cut > 0.0 && std::isfinite(quad_upper_cut), "quad_upper_cut must be > 0");
  require(quad_nodes >= 1, "quad_nodes must be >= 1");
  require(cm_order >= 1, "cm_order must be >= 1");
  require(cm_step > 0.0 && std::isfinite(cm_step), "cm_step must be > 0");
  require(n_max >= 1, "n_max must be >= 1");
  require(scan_step > 0.0 && std::isfinite(scan_step), "scan_step must be > 0");
}

namespace {

GaussLegendreRule build_gauss_legendre(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

template <typename T>
T composite_gl(const std::function<T(double)>& f, double a, double b, int panels) {
  const auto& rule = gauss_legendre16();
  const double width = (b - a) / panels;
  CompensatedSum<T> acc;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      T v = f(mid + 0.5 * width * rule.nodes[i]);
      if (!std::isfinite(std::abs(v))) {
        throw EvaluationError("non-finite integrand sample at u = " +
                              std::to_string(mid + 0.5 * width * rule.nodes[i]));
      }
      acc.add(v * (0.5 * width * rule.weights[i]));
    }
  }
  return acc.value();
}

}  // namespace

const GaussLegendreRule& gauss_legendre16() {
  static const GaussLegendreRule rule = build_gauss_legendre(16);
  return rule;
}

Complex integrate_interval(const std::function<Complex(double)>& f, double a, double b,
                           int panels) {
  if (panels < 1) throw ArgumentError("integrate_interval: panels must be >= 1");
  return composite_gl<Complex>(f, a, b, panels);
}

double integrate_real_interval(const std::function<double(double)>& f, double a, double b,
                          int panels) {
  if (panels < 1) throw ArgumentError("integrate_real_interval: panels must be >= 1");
  return composite_gl<double>(f, a, b, panels);
}

QuadResult integrate_half_line(const std::function<Complex(double)>& f, double decay_rate,
                               const NumericConfig& cfg) {
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    throw ArgumentError("integrate_half_line: decay_rate must be > 0");
  }
  cfg.validate();
  const double cut = cfg.quad_upper_cut;
  const Complex coarse = composite_gl<Complex>(f, 0.0, cut, cfg.quad_nodes);
  const Complex fine = composite_gl<Complex>(f, 0.0, cut, 2 * cfg.quad_nodes);
  const Complex at_cut = f(cut);
  if (!std::isfinite(std::abs(at_cut))) {
    throw EvaluationError("integrate_half_line: non-finite integrand at the cut point");
  }
  QuadResult out;
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse);
  out.nodes_used = 16 * 3 * cfg.quad_nodes + 1;
  out.tail_bound = std::abs(at_cut) / decay_rate;
  return out;
}

CMReport cm_test(const std::function<double(double)>& f, std::span<const double> grid,
                 const NumericConfig& cfg) {
  cfg.validate();
  const int order = cfg.cm_order;
  const double h = cfg.cm_step;
  const double slack = cfg.cm_slack();
  CMReport report;
  report.order_tested = order;
  report.grid.assign(grid.begin(), grid.end());
  for (double s : grid) {
    if (!(s > order * h)) {
      throw ArgumentError("cm_test: grid point " + std::to_string(s) +
                          " must exceed cm_order * cm_step");
    }
  }
  std::vector<double> diff(order + 1);
  for (double s : grid) {
    for (int j = 0; j <= order; ++j) {
      diff[j] = f(s + j * h);
      if (!std::isfinite(diff[j])) {
        throw EvaluationError("cm_test: non-finite sample at s = " + std::to_string(s + j * h));
      }
    }
    // After the k-th pass diff[0] holds Delta_h^k f(s).
    for (int k = 0; k <= order; ++k) {
      if (k > 0) {
        for (int j = 0; j + k <= order; ++j) diff[j] = diff[j + 1] - diff[j];
      }
      const double signed_diff = (k % 2 == 0) ? diff[0] : -diff[0];
      const double breach = -signed_diff;
      if (breach > 0.0) report.max_violation = std::max(report.max_violation, breach);
      if (signed_diff < -slack) ++report.violation_count;
    }
  }
  report.passed = report.violation_count == 0;
  return report;
}

std::vector<double> uniform_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo <= hi)) throw ArgumentError("uniform_grid: need lo <= hi and step > 0");
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  std::vector<double> points;
  points.reserve(count + 2);
  for (long i = 0; i <= count; ++i) points.push_back(lo + static_cast<double>(i) * step);
  if (hi - points.back() > step * 1e-9) points.push_back(hi);
  return points;
}

std::vector<double> parallel_map(const std::function<double(double)>& f,
                                 std::span<const double> points, unsigned threads) {
  std::vector<double> out(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, points.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) out[i] = f(points[i]);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (points.size() + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(points.size(), begin + chunk);
        for (std::size_t i = begin; i < end; ++i) out[i] = f(points[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::vector<Root> find_roots_bracketed(const std::function<double(double)>& f, double t_lo,
                                       double t_hi, double step, const NumericConfig& cfg,
                                       unsigned threads) {
  if (!(t_lo < t_hi)) throw ArgumentError("find_roots_bracketed: need t_lo < t_hi");
  if (!(step > 0.0)) throw ArgumentError("find_roots_bracketed: step must be > 0");
  cfg.validate();
  const std::vector<double> grid = uniform_grid(t_lo, t_hi, step);
  const std::vector<double> values = parallel_map(f, grid, threads);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw EvaluationError("find_roots_bracketed: non-finite value at t = " +
                            std::to_string(grid[i]));
    }
  }

  std::vector<std::pair<double, double>> brackets;
  std::vector<Root> exact;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] == 0.0) {
      exact.push_back({grid[i], grid[i], grid[i]});
    } else if (i + 1 < grid.size() && values[i + 1] != 0.0 &&
               std::signbit(values[i]) != std::signbit(values[i + 1])) {
      brackets.emplace_back(grid[i], grid[i + 1]);
    }
  }

  auto refine = [&](double lo, double hi) {
    double f_lo = f(lo);
    for (int iter = 0; iter < 200 && hi - lo >= cfg.abs_tol; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double f_mid = f(mid);
      if (!std::isfinite(f_mid)) {
        throw EvaluationError("find_roots_bracketed: non-finite value at t = " +
                              std::to_string(mid));
      }
      if (f_mid == 0.0) return Root{mid, mid, mid};
      if (std::signbit(f_mid) == std::signbit(f_lo)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    return Root{0.5 * (lo + hi), lo, hi};
  };

  // Brackets are refined independently; results are written by index.
  std::vector<double> index(brackets.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = static_cast<double>(i);
  std::vector<Root> refined(brackets.size());
  parallel_map(
      [&](double k) {
        const auto i = static_cast<std::size_t>(k);
        refined[i] = refine(brackets[i].first, brackets[i].second);
        return 0.0;
      },
      index, threads);

  std::vector<Root> roots = std::move(refined);
  roots.insert(roots.end(), exact.begin(), exact.end());
  std::sort(roots.begin(), roots.end(),
            [](const Root& a, const Root& b) { return a.root < b.root; });
  return roots;
}

}  // namespace xidiv
