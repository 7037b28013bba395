#include "xidiv/pipeline.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>

#include "xidiv/divisibility.hpp"
#include "xidiv/errors.hpp"
#include "xidiv/io.hpp"
#include "xidiv/mixture.hpp"
#include "xidiv/scanner.hpp"
#include "xidiv/theta.hpp"
#include "xidiv/xi.hpp"

namespace xidiv {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 10> kStepNames = {"S1", "S2", "S3", "S4", "S5",
                                                          "S6", "S7", "S8", "S9", "S10"};

constexpr std::array<std::string_view, 10> kDescriptions = {
    "Riemann integral representation of Xi(t) against the direct xi(1/2 + it)",
    "Psi evenness: direct form against the series form e^{-u/4} psi(e^{-u}) - e^{u/4}/2",
    "Xi(iz) as (z^2 - 1/4)/2 times the two-sided e^{zu/2} transform of Psi, against xi(1/2 - z)",
    "Psi as e^{-u/4} sum_n int_{n-1}^{n} (e^{-pi n^2 e^{-u}} - e^{-pi v^2 e^{-u}}) dv",
    "phi_sigma(s) xi(sigma) ((2s + sigma)^2 - 1/4)/2 against Xi(i(2s + sigma)) = xi(1/2 - 2s - sigma)",
    "Positive-half transform against the printed series and the signed mixture form "
    "(measured only)",
    "Sign census of the two-channel measure G(r, x): total exponential-channel mass "
    "(measured only)",
    "Gamma(2)-mixture Laplace transforms: complete monotonicity and -(log f)' complete "
    "monotonicity",
    "phi_sigma(0)/phi_sigma(sqrt(s)) ratio diagnostics (measured only; GGC membership is not "
    "certified)",
    "Census of |xi(sigma + it)| off the critical line (evidence at finitely many nodes, not a "
    "proof)"};

// Floors of the per-step tolerances; the tolerance used is
// max(floor, cfg.abs_tol).
double tolerance_floor(StepId id) {
  switch (id) {
    case StepId::S1:
      return 1e-8;
    case StepId::S2:
      return 1e-8;
    case StepId::S3:
      return 1e-7;
    case StepId::S4:
      return 1e-10;
    case StepId::S5:
      return 1e-7;
    default:
      return 0.0;
  }
}

bool is_toleranced(StepId id) {
  switch (id) {
    case StepId::S1:
    case StepId::S2:
    case StepId::S3:
    case StepId::S4:
    case StepId::S5:
    case StepId::S8:
      return true;
    default:
      return false;
  }
}

// Tracks the worst |lhs - rhs| over a set of comparisons.
struct WorstPair {
  Complex lhs;
  Complex rhs;
  double residual = -1.0;
  double scale = 0.0;
  json where;

  void offer(Complex l, Complex r, json at) {
    const double res = std::abs(l - r);
    scale = std::max({scale, std::abs(l), std::abs(r)});
    if (res > residual) {
      residual = res;
      lhs = l;
      rhs = r;
      where = std::move(at);
    }
  }
};

void fill_from(StepReport& rep, const WorstPair& w) {
  rep.lhs = w.lhs;
  rep.rhs = w.rhs;
  rep.abs_residual = std::max(0.0, w.residual);
  rep.rel_residual = w.scale > 0.0 ? rep.abs_residual / w.scale : 0.0;
  rep.details["worst_at"] = w.where;
}

std::vector<double> grid_from(const json& p, const char* lo, const char* hi, const char* step) {
  return uniform_grid(p.at(lo).get<double>(), p.at(hi).get<double>(), p.at(step).get<double>());
}

Complex complex_param(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return complex_from_json(j);
}

void step_s1(StepReport& rep, const json& p, const NumericConfig& cfg) {
  WorstPair w;
  for (double t : grid_from(p, "t_lo", "t_hi", "t_step")) {
    const XiEvaluation ev = xi_eq1(Complex(t, 0.0), cfg);
    w.offer(ev.value, xi_direct(ev.s, cfg), json{{"t", t}});
  }
  fill_from(rep, w);
}

void step_s2(StepReport& rep, const json& p, const NumericConfig& cfg) {
  WorstPair w;
  double theta_worst = 0.0;
  for (double u : grid_from(p, "u_lo", "u_hi", "u_step")) {
    w.offer(psi_kernel(u, cfg), psi_kernel_series_form(u, cfg), json{{"u", u}});
    theta_worst = std::max(theta_worst, theta_functional_residual(std::exp(u), cfg));
  }
  fill_from(rep, w);
  rep.details["theta_functional_max_residual"] = theta_worst;
}

void step_s3(StepReport& rep, const json& p, const NumericConfig& cfg) {
  WorstPair w;
  double reflected_worst = 0.0;
  for (const auto& zj : p.at("z")) {
    const Complex z = complex_param(zj);
    const XiEvaluation ev = xi_psi_transform(z, cfg);
    w.offer(ev.value, xi_direct(0.5 - z, cfg), json{{"z", complex_json(z)}});
    reflected_worst = std::max(reflected_worst, ev.residual_vs_reflected.value_or(0.0));
  }
  fill_from(rep, w);
  rep.details["max_residual_vs_xi_half_plus_z"] = reflected_worst;
}

void step_s4(StepReport& rep, const json& p, const NumericConfig& cfg) {
  WorstPair w;
  double v_integral_worst = 0.0;
  for (double u : grid_from(p, "u_lo", "u_hi", "u_step")) {
    const double e = std::exp(-u);
    // Both integrand terms are below 1e-20 once pi (n-1)^2 e^{-u} > 46.
    const int n_terms = 2 + static_cast<int>(std::ceil(std::sqrt(50.0 / (std::numbers::pi * e))));
    CompensatedSum<double> series;
    CompensatedSum<double> gauss;
    for (int n = 1; n <= n_terms; ++n) {
      const double pn2 = std::numbers::pi * n * n * e;
      const double piece = integrate_real_interval(
          [&](double v) { return std::exp(-std::numbers::pi * v * v * e); }, n - 1.0, double(n),
          2);
      gauss.add(piece);
      series.add(std::exp(-pn2) - piece);
    }
    w.offer(psi_kernel(u, cfg), std::exp(-0.25 * u) * series.value(), json{{"u", u}});
    v_integral_worst = std::max(v_integral_worst, std::abs(gauss.value() - 0.5 * std::exp(0.5 * u)));
  }
  fill_from(rep, w);
  rep.details["gaussian_v_integral_max_residual"] = v_integral_worst;
  rep.abs_residual = std::max(rep.abs_residual, v_integral_worst);
}

void step_s5(StepReport& rep, const json& p, const NumericConfig& cfg) {
  WorstPair w;
  double reflected_worst = 0.0;
  auto check = [&](Complex s, double sigma) {
    const PhiEvaluation phi = phi_sigma(s, sigma, cfg);
    const Complex z = 2.0 * s + sigma;
    const Complex lhs = phi.value * phi.normalizer * 0.5 * (z * z - 0.25);
    w.offer(lhs, xi_direct(0.5 - z, cfg), json{{"s", complex_json(s)}, {"sigma", sigma}});
    reflected_worst = std::max(reflected_worst, std::abs(lhs - xi_direct(0.5 + z, cfg)));
  };
  for (const auto& sj : p.at("s")) {
    for (const auto& sg : p.at("sigma")) check(complex_param(sj), sg.get<double>());
  }
  for (const auto& extra : p.at("extra")) {
    check(complex_param(extra.at("s")), extra.at("sigma").get<double>());
  }
  fill_from(rep, w);
  rep.details["max_residual_vs_xi_half_plus_z"] = reflected_worst;
  rep.details["argument_mapping"] = "phi_sigma(s) is proportional to Xi(i(2s + sigma))";
}

void step_s6(StepReport& rep, const json& p, const NumericConfig& cfg) {
  const Complex s = complex_param(p.at("s"));
  const double sigma = p.at("sigma").get<double>();
  const int n_max = p.at("n_max").get<int>();
  const HalfIdentityReport r = half_identity_report(s, sigma, n_max, cfg, true);
  rep.lhs = r.lhs;
  rep.rhs = r.rhs_as_written;
  rep.abs_residual = r.residual_written;
  rep.rel_residual = r.residual_written / std::max(std::abs(r.lhs), std::abs(r.rhs_as_written));
  rep.details["positive_half"] = r;
  rep.details["negative_half"] = negative_half_transform(s, sigma, n_max, cfg, true);

  json curve = json::array();
  for (const auto& nj : p.at("refinement_n_max")) {
    const int n = nj.get<int>();
    const WrittenSeries ws = rhs_as_written(s, sigma, n, cfg);
    curve.push_back({{"n_max", n},
                     {"rhs_as_written", complex_json(ws.value)},
                     {"residual_written", std::abs(r.lhs - ws.value)},
                     {"truncation_estimate", number_json(ws.truncation_estimate)}});
  }
  rep.details["refinement"] = curve;

  // The lambda-integral swap, in both orientations of the integrand.
  double swap_worst = 0.0;
  double printed_worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (double u : uniform_grid(0.5, 5.0, 0.5)) {
      const double series = lambda_series_form(n, u, 40);
      const double integral = v_integral_form(n, u);
      swap_worst = std::max(swap_worst, std::abs(series - integral));
      printed_worst = std::max(printed_worst, std::abs(series + integral));
    }
  }
  rep.details["lambda_swap_max_residual"] = swap_worst;
  rep.details["lambda_swap_printed_orientation_max_residual"] = printed_worst;
}

void step_s7(StepReport& rep, const json& p, const NumericConfig& /*cfg*/) {
  const int n_max = p.at("n_max").get<int>();
  const SignedMixtureMeasure m =
      build_signed_measure(n_max, p.at("grid_step").get<double>(), p.at("x_max").get<double>());
  const double negative = m.total_mass(1);
  rep.lhs = negative;
  rep.rhs = 0.0;
  rep.abs_residual = std::abs(negative);
  rep.rel_residual = 1.0;
  json per_n = json::array();
  bool all_negative = true;
  for (const auto& c : m.per_n) {
    per_n.push_back({{"n", c.n},
                     {"exponential_mass", c.exponential_mass},
                     {"gamma2_mass", c.gamma2_mass}});
    all_negative = all_negative && c.exponential_mass < 0.0;
  }
  long negative_atoms = 0;
  for (const auto& a : m.atoms) negative_atoms += a.weight < 0.0 ? 1 : 0;
  rep.details["per_n"] = per_n;
  rep.details["exponential_channel_total"] = negative;
  rep.details["gamma2_channel_total"] = m.total_mass(2);
  rep.details["every_n_negative"] = all_negative;
  rep.details["negative_atoms"] = negative_atoms;
  rep.details["atom_count"] = m.atoms.size();
  rep.details["discretization_error"] = m.discretization_error;
}

// Deterministic mixtures: 53-bit uniforms from mt19937_64 (whose output
// sequence is fixed by the standard, unlike the distributions).
std::vector<DiscreteMixture> sampled_mixtures(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<DiscreteMixture> out;
  for (int i = 0; i < count; ++i) {
    const int atoms = 1 + static_cast<int>(uniform() * 6.0);
    std::vector<MixtureScale> scales;
    for (int a = 0; a < atoms; ++a) scales.push_back({5.0 * uniform(), 0.05 + uniform()});
    out.emplace_back(std::move(scales));
  }
  return out;
}

void step_s8(StepReport& rep, const json& p, const NumericConfig& cfg) {
  std::vector<double> grid = p.at("grid").get<std::vector<double>>();
  std::vector<DiscreteMixture> fixtures;
  fixtures.emplace_back(std::vector<MixtureScale>{{0.5, 1.0}, {1.0, 1.0}, {2.0, 1.0}});
  fixtures.emplace_back(std::vector<MixtureScale>{{1.0, 1.0}});
  for (auto& m : sampled_mixtures(p.at("seed").get<std::uint64_t>(), p.at("random_count").get<int>())) {
    fixtures.push_back(std::move(m));
  }
  int violations = 0;
  double worst = 0.0;
  int passed = 0;
  for (const auto& mix : fixtures) {
    auto lt = [&](double s) { return kristiansen_lt(mix, s); };
    const CMReport cm = cm_test(lt, grid, cfg);
    const CMReport id = id_criterion_check(lt, grid, cfg);
    violations += cm.violation_count + id.violation_count;
    worst = std::max({worst, cm.max_violation, id.max_violation});
    passed += (cm.passed && id.passed) ? 1 : 0;
  }
  // Control: 1/(1+s^2) is not completely monotone.
  NumericConfig control = cfg;
  control.cm_order = 4;
  const std::vector<double> control_grid = uniform_grid(0.25, 2.0, 0.25);
  const CMReport rejected =
      cm_test([](double s) { return 1.0 / (1.0 + s * s); }, control_grid, control);

  rep.lhs = double(violations);
  rep.rhs = 0.0;
  rep.abs_residual = worst;
  rep.rel_residual = worst;
  rep.details["fixtures"] = fixtures.size();
  rep.details["fixtures_passed"] = passed;
  rep.details["violations"] = violations;
  rep.details["control_non_cm_rejected"] = !rejected.passed;
  rep.details["control_report"] = rejected;
}

void step_s9(StepReport& rep, const json& p, const NumericConfig& cfg) {
  const double sigma = p.at("sigma").get<double>();
  const std::vector<double> grid = p.at("s_grid").get<std::vector<double>>();
  const GGCDiagnostics d = ggc_diagnostics(sigma, grid, cfg);
  rep.lhs = d.ratio_values.back();
  rep.rhs = 1.0;  // R(0)
  rep.abs_residual = std::abs(rep.lhs - rep.rhs);
  rep.rel_residual = rep.abs_residual;
  rep.details["diagnostics"] = d;
}

void step_s10(StepReport& rep, const json& p, const NumericConfig& cfg) {
  const StripCensus c =
      scan_strip(p.at("sigma_lo").get<double>(), p.at("sigma_hi").get<double>(),
                 p.at("t_lo").get<double>(), p.at("t_hi").get<double>(),
                 p.at("d_sigma").get<double>(), p.at("d_t").get<double>(), cfg);
  rep.lhs = c.min_abs_xi;
  rep.rhs = 0.0;
  rep.abs_residual = c.min_abs_xi;
  rep.rel_residual = 1.0;
  rep.details["census"] = c;
  rep.details["note"] = "evidence at finitely many grid nodes, not a proof of nonvanishing";
}

}  // namespace

std::string_view to_string(StepId id) { return kStepNames[static_cast<int>(id) - 1]; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::measured_only:
      return "measured_only";
  }
  return "unknown";
}

std::optional<StepId> parse_step_id(std::string_view text) {
  for (std::size_t i = 0; i < kStepNames.size(); ++i) {
    if (kStepNames[i] == text) return static_cast<StepId>(i + 1);
  }
  return std::nullopt;
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (Verdict v : {Verdict::pass, Verdict::fail, Verdict::measured_only}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

std::vector<StepId> all_steps() {
  std::vector<StepId> out;
  for (int i = 1; i <= 10; ++i) out.push_back(static_cast<StepId>(i));
  return out;
}

json default_params(StepId id, const NumericConfig& cfg) {
  switch (id) {
    case StepId::S1:
      return {{"t_lo", 0.0}, {"t_hi", 30.0}, {"t_step", 0.25}};
    case StepId::S2:
      return {{"u_lo", 0.0}, {"u_hi", 5.0}, {"u_step", 0.25}};
    case StepId::S3:
      return {{"z",
               {0.0, 0.1, -0.1, 0.25, -0.25, 0.4, -0.4, complex_json({0.1, 3.0}),
                complex_json({-0.3, 5.0}), complex_json({0.35, -2.0})}}};
    case StepId::S4:
      return {{"u_lo", 0.0}, {"u_hi", 3.0}, {"u_step", 0.5}};
    case StepId::S5:
      return {{"s", {-0.1, -0.05, 0.0, 0.05, 0.1}},
              {"sigma", {-0.2, -0.1, 0.0, 0.1, 0.2}},
              {"extra",
               {{{"s", complex_json({0.05, 2.0})}, {"sigma", 0.1}},
                {{"s", complex_json({-0.05, 7.0})}, {"sigma", 0.0}}}}};
    case StepId::S6:
      return {{"s", 0.05}, {"sigma", 0.1}, {"n_max", cfg.n_max}, {"refinement_n_max", {4, 8, 16, 32}}};
    case StepId::S7:
      return {{"n_max", cfg.n_max}, {"grid_step", 0.01}, {"x_max", 60.0}};
    case StepId::S8:
      return {{"grid", {0.5, 0.75, 1.0, 1.5, 2.0, 3.0}}, {"seed", 20240601}, {"random_count", 8}};
    case StepId::S9:
      return {{"sigma", 0.0}, {"s_grid", {0.001, 0.0015, 0.002, 0.0025}}};
    case StepId::S10:
      return {{"sigma_lo", 0.6}, {"sigma_hi", 0.9}, {"t_lo", 0.0},
              {"t_hi", 30.0},    {"d_sigma", 0.05}, {"d_t", 0.25}};
  }
  return json::object();
}

StepReport run_step(StepId id, const json& params, const NumericConfig& cfg, bool record_timing) {
  StepReport rep;
  rep.step_id = id;
  rep.description = std::string(kDescriptions[static_cast<int>(id) - 1]);
  rep.inputs = default_params(id, cfg);
  if (params.is_object()) rep.inputs.update(params);
  if (is_toleranced(id)) {
    rep.tolerance_used =
        id == StepId::S8 ? cfg.cm_slack() : std::max(tolerance_floor(id), cfg.abs_tol);
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    cfg.validate();
    switch (id) {
      case StepId::S1: step_s1(rep, rep.inputs, cfg); break;
      case StepId::S2: step_s2(rep, rep.inputs, cfg); break;
      case StepId::S3: step_s3(rep, rep.inputs, cfg); break;
      case StepId::S4: step_s4(rep, rep.inputs, cfg); break;
      case StepId::S5: step_s5(rep, rep.inputs, cfg); break;
      case StepId::S6: step_s6(rep, rep.inputs, cfg); break;
      case StepId::S7: step_s7(rep, rep.inputs, cfg); break;
      case StepId::S8: step_s8(rep, rep.inputs, cfg); break;
      case StepId::S9: step_s9(rep, rep.inputs, cfg); break;
      case StepId::S10: step_s10(rep, rep.inputs, cfg); break;
    }
    if (rep.tolerance_used) {
      const bool ok = std::isfinite(rep.abs_residual) && rep.abs_residual <= *rep.tolerance_used;
      rep.verdict = ok ? Verdict::pass : Verdict::fail;
    } else {
      rep.verdict = Verdict::measured_only;
    }
  } catch (const std::exception& e) {
    rep.error = e.what();
    rep.lhs = rep.rhs = 0.0;
    rep.abs_residual = std::numeric_limits<double>::infinity();
    rep.rel_residual = std::numeric_limits<double>::infinity();
    rep.verdict = rep.tolerance_used ? Verdict::fail : Verdict::measured_only;
  }
  if (record_timing) {
    rep.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return rep;
}

std::vector<StepReport> run_all(const NumericConfig& cfg, bool record_timing) {
  std::vector<StepReport> out;
  for (StepId id : all_steps()) out.push_back(run_step(id, json::object(), cfg, record_timing));
  return out;
}

bool any_failed(std::span<const StepReport> reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const StepReport& r) { return r.failed(); });
}

}  // namespace xidiv
