#include "xidiv/scanner.hpp"

#include <cmath>
#include <string>

#include "xidiv/errors.hpp"

namespace xidiv {

double xi_on_line(double t, XiRoute route, const NumericConfig& cfg) {
  switch (route) {
    case XiRoute::direct:
      return Xi_direct(Complex(t, 0.0), cfg).real();
    case XiRoute::integral_eq1:
      return xi_eq1_value(Complex(t, 0.0), cfg).real();
    case XiRoute::psi_transform:
      break;
  }
  throw ArgumentError("xi_on_line: the psi_transform route does not reach the critical line");
}

namespace {

void check_line_range(double t_lo, double t_hi, double step) {
  if (!(t_lo >= 0.0) || !(t_lo < t_hi) || !(step > 0.0) || !std::isfinite(t_hi)) {
    throw ArgumentError("scan_critical_line: need 0 <= t_lo < t_hi and step > 0");
  }
}

}  // namespace

ZeroList scan_critical_line(double t_lo, double t_hi, double step, const NumericConfig& cfg,
                            XiRoute route, unsigned threads) {
  check_line_range(t_lo, t_hi, step);
  auto f = [&](double t) { return xi_on_line(t, route, cfg); };
  ZeroList out;
  out.range_lo = t_lo;
  out.range_hi = t_hi;
  out.scan_step = step;
  for (const Root& r : find_roots_bracketed(f, t_lo, t_hi, step, cfg, threads)) {
    out.zeros.push_back({r.root, r.width(), route});
  }
  return out;
}

std::vector<std::pair<double, double>> sample_critical_line(double t_lo, double t_hi,
                                                            double step,
                                                            const NumericConfig& cfg,
                                                            XiRoute route, unsigned threads) {
  check_line_range(t_lo, t_hi, step);
  const std::vector<double> grid = uniform_grid(t_lo, t_hi, step);
  const std::vector<double> values =
      parallel_map([&](double t) { return xi_on_line(t, route, cfg); }, grid, threads);
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out.emplace_back(grid[i], values[i]);
  return out;
}

StripCensus strip_census(std::span<const double> sigmas, std::span<const double> ts,
                         const NumericConfig& cfg, bool keep_nodes, unsigned threads) {
  if (sigmas.empty() || ts.empty()) throw ArgumentError("strip_census: empty grid");
  for (double s : sigmas) {
    if (!(s > 0.0 && s < 1.0)) throw ArgumentError("strip_census: sigma must lie in (0, 1)");
  }
  // One flat index per node; the row-major order fixes the argmin tie-break.
  std::vector<double> flat(sigmas.size() * ts.size());
  for (std::size_t i = 0; i < flat.size(); ++i) flat[i] = static_cast<double>(i);
  const std::vector<double> magnitudes = parallel_map(
      [&](double k) {
        const auto idx = static_cast<std::size_t>(k);
        const double sg = sigmas[idx / ts.size()];
        const double t = ts[idx % ts.size()];
        return std::abs(xi_direct(Complex(sg, t), cfg));
      },
      flat, threads);

  StripCensus out;
  out.sigma_grid.assign(sigmas.begin(), sigmas.end());
  out.t_grid.assign(ts.begin(), ts.end());
  out.cell_count = static_cast<long>(flat.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    if (magnitudes[i] < magnitudes[best]) best = i;
    if (keep_nodes) {
      out.nodes.push_back({sigmas[i / ts.size()], ts[i % ts.size()], magnitudes[i]});
    }
  }
  out.min_abs_xi = magnitudes[best];
  out.argmin_sigma = sigmas[best / ts.size()];
  out.argmin_t = ts[best % ts.size()];
  return out;
}

StripCensus scan_strip(double sigma_lo, double sigma_hi, double t_lo, double t_hi,
                       double d_sigma, double d_t, const NumericConfig& cfg, bool keep_nodes,
                       unsigned threads) {
  if (!(0.5 < sigma_lo && sigma_lo < sigma_hi && sigma_hi < 1.0)) {
    throw ArgumentError("scan_strip: need 1/2 < sigma_lo < sigma_hi < 1");
  }
  if (!(d_sigma > 0.0) || !(d_t > 0.0) || !(t_lo <= t_hi)) {
    throw ArgumentError("scan_strip: empty grid");
  }
  const std::vector<double> sigmas = uniform_grid(sigma_lo, sigma_hi, d_sigma);
  const std::vector<double> ts = uniform_grid(t_lo, t_hi, d_t);
  return strip_census(sigmas, ts, cfg, keep_nodes, threads);
}

std::pair<int, int> zero_count_vs_eq1(double t_hi, const NumericConfig& cfg) {
  if (!(t_hi > 0.0) || t_hi > 60.0) {
    throw ArgumentError("zero_count_vs_eq1: t_hi must lie in (0, 60]");
  }
  const auto direct = scan_critical_line(0.0, t_hi, cfg.scan_step, cfg, XiRoute::direct);
  const auto eq1 = scan_critical_line(0.0, t_hi, cfg.scan_step, cfg, XiRoute::integral_eq1);
  return {static_cast<int>(direct.zeros.size()), static_cast<int>(eq1.zeros.size())};
}

}  // namespace xidiv
