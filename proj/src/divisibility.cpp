#include "xidiv/divisibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xidiv/errors.hpp"
#include "xidiv/scanner.hpp"
#include "xidiv/theta.hpp"
#include "xidiv/xi.hpp"

namespace xidiv {

PhiEvaluation phi_sigma(Complex s, double sigma, const NumericConfig& cfg) {
  const Complex w = s + 0.5 * sigma;
  if (!(std::abs(w.real()) < 0.25)) {
    throw DomainError("phi_sigma: requires |Re s + sigma/2| < 1/4");
  }
  const double normalizer = xi_direct(Complex(sigma, 0.0), cfg).real();
  if (!(std::abs(normalizer) > 100.0 * cfg.abs_tol)) {
    throw EvaluationError("phi_sigma: xi(sigma) vanishes");
  }
  const QuadResult plus = psi_kernel_half_transform(w, cfg);
  const QuadResult minus = psi_kernel_half_transform(-w, cfg);
  PhiEvaluation ev;
  ev.sigma = sigma;
  ev.s = s;
  ev.normalizer = normalizer;
  ev.value = (plus.value + minus.value) / normalizer;
  return ev;
}

ZeroCorrespondence phi_zero_correspondence(double sigma, double tau_lo, double tau_hi,
                                           const NumericConfig& cfg) {
  if (!(std::abs(sigma) < 0.5)) throw DomainError("phi_zero_correspondence: |sigma| < 1/2");
  ZeroCorrespondence out;
  out.sigma = sigma;
  out.tau_lo = tau_lo;
  out.tau_hi = tau_hi;
  if (!(tau_lo < tau_hi)) return out;

  auto phi_on_line = [&](double tau) {
    return phi_sigma(Complex(-0.5 * sigma, tau), sigma, cfg).value.real();
  };
  // Half the t-step so the tau scan resolves zeros as finely as the Xi scan.
  for (const Root& r : find_roots_bracketed(phi_on_line, tau_lo, tau_hi, 0.5 * cfg.scan_step,
                                            cfg, 0)) {
    out.phi_roots.push_back(r.root);
  }
  const ZeroList xi_zeros =
      scan_critical_line(2.0 * tau_lo, 2.0 * tau_hi, cfg.scan_step, cfg, XiRoute::direct);
  for (const auto& z : xi_zeros.zeros) out.xi_zeros.push_back(z.t);

  std::vector<double> ratios;
  for (double tau : out.phi_roots) {
    if (out.xi_zeros.empty() || tau == 0.0) continue;
    const auto nearest = std::min_element(
        out.xi_zeros.begin(), out.xi_zeros.end(),
        [&](double a, double b) { return std::abs(a - 2 * tau) < std::abs(b - 2 * tau); });
    ZeroPair p;
    p.tau = tau;
    p.xi_zero = *nearest;
    p.ratio = *nearest / tau;
    p.mismatch = std::abs(*nearest - 2.0 * tau);
    out.pairs.push_back(p);
    ratios.push_back(p.ratio);
  }
  if (!ratios.empty()) {
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    out.observed_scale =
        ratios.size() % 2 == 1 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
  }
  return out;
}

DiscreteMixture::DiscreteMixture(std::vector<MixtureScale> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ArgumentError("DiscreteMixture: no atoms");
  CompensatedSum<double> total;
  for (const auto& a : atoms_) {
    if (!std::isfinite(a.scale) || !std::isfinite(a.weight) || a.scale < 0.0 || a.weight < 0.0) {
      throw ArgumentError("DiscreteMixture: scales and weights must be finite and >= 0");
    }
    total.add(a.weight);
  }
  const double sum = total.value();
  if (!(sum > 0.0)) throw ArgumentError("DiscreteMixture: total weight must be > 0");
  for (auto& a : atoms_) a.weight /= sum;
}

double kristiansen_lt(const DiscreteMixture& mix, double s) {
  if (!(s >= 0.0)) throw ArgumentError("kristiansen_lt: s must be >= 0");
  CompensatedSum<double> acc;
  for (const auto& a : mix.atoms()) {
    const double d = 1.0 + s * a.scale;
    acc.add(a.weight / (d * d));
  }
  return acc.value();
}

namespace {

std::function<double(double)> neg_log_derivative(const std::function<double(double)>& f,
                                                 double h) {
  return [f, h](double s) {
    const double hi = f(s + h);
    const double lo = f(s - h);
    if (!(hi > 0.0) || !(lo > 0.0)) {
      throw DomainError("id_criterion_check: f must be positive, got f <= 0 near s = " +
                        std::to_string(s));
    }
    return -(std::log(hi) - std::log(lo)) / (2.0 * h);
  };
}

}  // namespace

CMReport id_criterion_check(const std::function<double(double)>& f,
                            std::span<const double> grid, const NumericConfig& cfg) {
  cfg.validate();
  return cm_test(neg_log_derivative(f, cfg.cm_step), grid, cfg);
}

GGCDiagnostics ggc_diagnostics(double sigma, std::span<const double> s_grid,
                               const NumericConfig& cfg) {
  cfg.validate();
  if (s_grid.empty()) throw ArgumentError("ggc_diagnostics: empty grid");
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    if (!(s_grid[i] > 0.0) || (i > 0 && !(s_grid[i] > s_grid[i - 1]))) {
      throw ArgumentError("ggc_diagnostics: grid must be positive and strictly increasing");
    }
  }
  // phi_sigma(r) converges for |r + sigma/2| < 1/4, so s = r^2 must stay
  // below (1/4 - sigma/2)^2.
  const double edge = 0.25 - 0.5 * sigma;
  if (!(edge > 0.0)) throw DomainError("ggc_diagnostics: no admissible s for this sigma");
  const double s_limit = edge * edge;
  const int order = cfg.cm_order;
  const double room = s_limit - s_grid.back();
  if (!(room > 0.0)) throw DomainError("ggc_diagnostics: grid leaves the convergence region");
  double h = std::min({cfg.cm_step, s_grid.front() / (order + 1.0), room / (order + 2.0)});

  GGCDiagnostics out;
  out.sigma = sigma;
  out.s_grid.assign(s_grid.begin(), s_grid.end());
  out.step_used = h;

  const double phi0 = phi_sigma(0.0, sigma, cfg).value.real();
  const double near_zero = 100.0 * cfg.abs_tol;
  auto phi_at = [&](double s) { return phi_sigma(std::sqrt(s), sigma, cfg).value.real(); };
  auto ratio = [&](double s) { return phi0 / phi_at(s); };

  for (double s : s_grid) out.ratio_values.push_back(ratio(s));
  out.monotone_decreasing = std::is_sorted(out.ratio_values.rbegin(), out.ratio_values.rend());
  out.monotone_increasing = std::is_sorted(out.ratio_values.begin(), out.ratio_values.end());

  // Drop grid points whose stencils touch a near-zero phi.
  std::vector<double> kept;
  for (double s : s_grid) {
    bool ok = true;
    for (int j = -1; j <= order + 1 && ok; ++j) {
      const double p = s + j * h;
      if (p > 0.0 && std::abs(phi_at(p)) < near_zero) ok = false;
    }
    if (ok) {
      kept.push_back(s);
    } else {
      out.flagged.push_back(s);
    }
  }

  NumericConfig local = cfg;
  local.cm_step = h;
  if (!kept.empty()) {
    out.cm_report = cm_test(ratio, kept, local);
    try {
      out.log_ratio_cm_report = id_criterion_check(ratio, kept, local);
    } catch (const DomainError&) {
      // The ratio changed sign inside a stencil: phi crossed zero there.
      out.log_ratio_cm_report.order_tested = order;
      out.log_ratio_cm_report.grid = kept;
      out.log_ratio_cm_report.max_violation = std::numeric_limits<double>::infinity();
      out.log_ratio_cm_report.passed = false;
    }
  } else {
    out.cm_report.order_tested = order;
    out.log_ratio_cm_report.order_tested = order;
  }

  const double dh = std::min(0.01, 0.5 * (0.25 - 0.5 * std::abs(sigma)));
  const double dphi = (phi_sigma(dh, sigma, cfg).value.real() -
                       phi_sigma(-dh, sigma, cfg).value.real()) /
                      (2.0 * dh);
  out.drift = dphi / phi0;
  return out;
}

}  // namespace xidiv
