// xidiv command-line tool: eval, verify, scan, idcheck.
//
// Exit codes: 0 success, 1 verification failure, 2 argument/parse/domain
// error, 3 evaluation error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "xidiv/divisibility.hpp"
#include "xidiv/errors.hpp"
#include "xidiv/io.hpp"
#include "xidiv/mixture.hpp"
#include "xidiv/pipeline.hpp"
#include "xidiv/scanner.hpp"
#include "xidiv/theta.hpp"
#include "xidiv/xi.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace xidiv;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitArgument = 2;
constexpr int kExitEvaluation = 3;

constexpr double kNoEstimate = std::numeric_limits<double>::quiet_NaN();

struct Common {
  std::string config_path;
  NumericConfig cfg;

  void load() {
    if (!config_path.empty()) cfg = load_config(config_path);
  }
};

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ArgumentError("cannot write " + path.string());
  out << text;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json manifest_json(const std::string& command, const NumericConfig& cfg, const std::string& started,
                   const std::vector<std::string>& outputs) {
  return json{{"command", command},
              {"config", cfg},
              {"started_at", started},
              {"finished_at", utc_now()},
              {"artifact_version", XIDIV_VERSION},
              {"outputs", outputs}};
}

// ---- eval -------------------------------------------------------------

struct EvalArgs {
  std::string function;
  double s = 0.5, s_im = 0.0;
  double t = 0.0, t_im = 0.0;
  double x = 1.0, u = 0.0, lambda = 1.0, sigma = 0.0;
  int n = 1;
  std::string route = "direct";
  bool as_json = false;
  bool as_csv = false;
};

struct EvalOutput {
  Complex value;
  double error_estimate = kNoEstimate;
  json args = json::object();
};

XiRoute parse_route(const std::string& name) {
  if (name == "direct") return XiRoute::direct;
  if (name == "eq1") return XiRoute::integral_eq1;
  if (name == "psi_transform" || name == "psi") return XiRoute::psi_transform;
  throw ArgumentError("unknown route '" + name + "' (direct, eq1, psi_transform)");
}

EvalOutput evaluate(const EvalArgs& a, const NumericConfig& cfg) {
  EvalOutput out;
  const std::string& f = a.function;
  if (f == "psi") {
    out.args = {{"x", a.x}};
    out.value = psi(a.x, cfg);
    out.error_estimate = theta_truncation(a.x, cfg).tail_bound;
  } else if (f == "Psi") {
    out.args = {{"u", a.u}};
    out.value = psi_kernel(a.u, cfg);
    out.error_estimate = psi_kernel_series_residual(std::abs(a.u), cfg);
  } else if (f == "zeta") {
    const Complex s{a.s, a.s_im};
    out.args = {{"s", complex_json(s)}};
    out.value = zeta(s, cfg);
  } else if (f == "xi") {
    const Complex s{a.s, a.s_im};
    out.args = {{"s", complex_json(s)}, {"route", a.route}};
    const XiRoute route = parse_route(a.route);
    if (route == XiRoute::direct) {
      out.value = xi_direct(s, cfg);
      out.error_estimate = std::abs(out.value - xi_direct(1.0 - s, cfg));
    } else {
      // xi(s) = Xi(z) with s = 1/2 + i z; the transform route takes w with xi(1/2 - w).
      const XiEvaluation e = route == XiRoute::integral_eq1
                                 ? xi_eq1((s - 0.5) / Complex{0.0, 1.0}, cfg)
                                 : xi_psi_transform(0.5 - s, cfg);
      out.value = e.value;
      out.error_estimate = e.residual_vs_direct.value_or(kNoEstimate);
    }
  } else if (f == "Xi") {
    const Complex z{a.t, a.t_im};
    out.args = {{"t", complex_json(z)}, {"route", a.route}};
    const XiRoute route = parse_route(a.route);
    if (route == XiRoute::direct) {
      out.value = Xi_direct(z, cfg);
    } else {
      const XiEvaluation e = route == XiRoute::integral_eq1
                                 ? xi_eq1(z, cfg)
                                 : xi_psi_transform(z / Complex{0.0, 1.0}, cfg);
      out.value = e.value;
      out.error_estimate = e.residual_vs_direct.value_or(kNoEstimate);
    }
  } else if (f == "phi") {
    const Complex s{a.s, a.s_im};
    out.args = {{"s", complex_json(s)}, {"sigma", a.sigma}};
    const PhiEvaluation p = phi_sigma(s, a.sigma, cfg);
    out.value = p.value;
  } else if (f == "g_n") {
    out.args = {{"n", a.n}, {"x", a.x}};
    out.value = g_density(a.n, a.x);
    out.error_estimate = 0.0;
  } else if (f == "J_n") {
    out.args = {{"n", a.n}, {"lambda", a.lambda}};
    out.value = triangle_weight(a.n, a.lambda);
    out.error_estimate = 0.0;
  } else {
    throw ArgumentError("unknown function '" + f + "'");
  }
  return out;
}

int run_eval(const EvalArgs& a, const NumericConfig& cfg) {
  const EvalOutput out = evaluate(a, cfg);
  if (a.as_json) {
    json j{{"function", a.function},
           {"args", out.args},
           {"value", complex_json(out.value)},
           {"error_estimate", number_json(out.error_estimate)}};
    std::cout << dump_json(j);
  } else if (a.as_csv) {
    std::cout << "function,re,im,error_estimate\n"
              << a.function << ',' << format_number(out.value.real()) << ','
              << format_number(out.value.imag()) << ','
              << (std::isnan(out.error_estimate) ? std::string{} : format_number(out.error_estimate))
              << '\n';
  } else {
    std::cout << format_number(out.value.real());
    if (out.value.imag() != 0.0) std::cout << ' ' << format_number(out.value.imag()) << 'i';
    std::cout << '\n';
    if (!std::isnan(out.error_estimate)) {
      std::cout << "error_estimate " << format_number(out.error_estimate) << '\n';
    }
  }
  return kExitOk;
}

// ---- verify -----------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> steps;
  bool all = false;
  std::string out_dir = "reports";
  bool timing = false;
  bool manifest = false;
};

int run_verify(const VerifyArgs& a, const Common& common, const std::string& command_line) {
  const std::string started = utc_now();
  std::vector<StepId> ids;
  if (a.all) {
    ids = all_steps();
  } else {
    if (a.steps.empty()) throw ArgumentError("verify: give --steps or --all");
    for (const std::string& s : a.steps) {
      const auto id = parse_step_id(s);
      if (!id) throw ArgumentError("verify: unknown step id '" + s + "'");
      if (std::find(ids.begin(), ids.end(), *id) == ids.end()) ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
  }

  std::vector<StepReport> reports;
  if (a.all) {
    reports = run_all(common.cfg, a.timing);
  } else {
    for (StepId id : ids) reports.push_back(run_step(id, json::object(), common.cfg, a.timing));
  }

  const fs::path dir(a.out_dir);
  std::vector<std::string> outputs;
  json summary_steps = json::array();
  for (const StepReport& r : reports) {
    const fs::path file = dir / (std::string(to_string(r.step_id)) + ".json");
    write_file(file, dump_json(json(r)));
    outputs.push_back(file.string());
    json entry{{"step_id", to_string(r.step_id)},
               {"verdict", to_string(r.verdict)},
               {"abs_residual", number_json(r.abs_residual)}};
    if (r.tolerance_used) entry["tolerance_used"] = *r.tolerance_used;
    if (r.error) entry["error"] = *r.error;
    summary_steps.push_back(entry);
    std::cerr << to_string(r.step_id) << ' ' << to_string(r.verdict) << '\n';
  }
  const bool failed = any_failed(reports);
  json summary{{"config", common.cfg}, {"steps", summary_steps}, {"any_failed", failed}};
  const fs::path summary_file = dir / "summary.json";
  write_file(summary_file, dump_json(summary));
  outputs.push_back(summary_file.string());
  if (a.manifest) {
    write_file(dir / "manifest.json",
               dump_json(manifest_json(command_line, common.cfg, started, outputs)));
  }
  return failed ? kExitVerification : kExitOk;
}

// ---- scan -------------------------------------------------------------

struct ScanArgs {
  std::vector<double> line;
  std::vector<double> strip;
  std::optional<double> step;
  double sigma_step = 0.05;
  std::string out_csv;
  std::string out_json;
  std::string route = "direct";
  unsigned threads = 0;
};

void emit_json(const std::string& path, const json& j) {
  if (path.empty()) {
    std::cout << dump_json(j);
  } else {
    write_file(path, dump_json(j));
  }
}

int run_scan(const ScanArgs& a, const NumericConfig& cfg) {
  if (a.line.empty() == a.strip.empty()) throw ArgumentError("scan: give exactly one of --line or --strip");
  if (!a.line.empty()) {
    const double step = a.step.value_or(cfg.scan_step);
    const XiRoute route = parse_route(a.route);
    const ZeroList zeros = scan_critical_line(a.line[0], a.line[1], step, cfg, route, a.threads);
    if (!a.out_csv.empty()) {
      std::ostringstream csv;
      csv << "t,Xi\n";
      for (const auto& [t, v] : sample_critical_line(a.line[0], a.line[1], step, cfg, route, a.threads)) {
        csv << format_number(t) << ',' << format_number(v) << '\n';
      }
      write_file(a.out_csv, csv.str());
    }
    emit_json(a.out_json, json(zeros));
    return kExitOk;
  }
  const double step = a.step.value_or(0.25);
  const bool keep = !a.out_csv.empty();
  const StripCensus census =
      scan_strip(a.strip[0], a.strip[1], a.strip[2], a.strip[3], a.sigma_step, step, cfg, keep, a.threads);
  if (keep) {
    std::ostringstream csv;
    csv << "sigma,t,abs_xi\n";
    for (const StripNode& node : census.nodes) {
      csv << format_number(node.sigma) << ',' << format_number(node.t) << ','
          << format_number(node.abs_xi) << '\n';
    }
    write_file(a.out_csv, csv.str());
  }
  json j = census;
  j["note"] = "evidence at finitely many grid nodes, not a proof of nonvanishing";
  emit_json(a.out_json, j);
  return kExitOk;
}

// ---- idcheck ----------------------------------------------------------

struct IdcheckArgs {
  std::string source;
  std::string file;
  double sigma = 0.0;
  std::optional<int> order;
  std::vector<double> grid;
  std::string out_json;
};

int run_idcheck(const IdcheckArgs& a, NumericConfig cfg) {
  if (a.order) {
    cfg.cm_order = *a.order;
    cfg.validate();
  }
  if (a.source == "kristiansen") {
    if (a.file.empty()) throw ArgumentError("idcheck: kristiansen source needs a mixture file");
    std::ifstream in(a.file);
    if (!in) throw ArgumentError("idcheck: cannot open " + a.file);
    const DiscreteMixture mix = read_mixture_csv(in);
    const std::vector<double> grid =
        a.grid.empty() ? std::vector<double>{0.5, 0.75, 1.0, 1.5, 2.0, 3.0} : a.grid;
    auto lt = [&mix](double s) { return kristiansen_lt(mix, s); };
    const CMReport cm = cm_test(lt, grid, cfg);
    const CMReport id = id_criterion_check(lt, grid, cfg);
    const bool passed = cm.passed && id.passed;
    json j{{"source", "kristiansen"},
           {"file", a.file},
           {"atoms", mix.atoms().size()},
           {"cm_report", cm},
           {"id_report", id},
           {"verdict", passed ? "pass" : "fail"}};
    emit_json(a.out_json, j);
    return passed ? kExitOk : kExitVerification;
  }
  if (a.source == "phi") {
    const std::vector<double> grid =
        a.grid.empty() ? std::vector<double>{0.001, 0.0015, 0.002, 0.0025} : a.grid;
    const GGCDiagnostics d = ggc_diagnostics(a.sigma, grid, cfg);
    json j{{"source", "phi"}, {"diagnostics", d}, {"verdict", "measured_only"}};
    emit_json(a.out_json, j);
    return kExitOk;
  }
  throw ArgumentError("idcheck: unknown source '" + a.source + "' (kristiansen, phi)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"xidiv: numerical checks around the Riemann xi function and infinite divisibility"};
  app.set_version_flag("--version", std::string(XIDIV_VERSION));
  app.require_subcommand(1);

  Common common;
  app.add_option("--config", common.config_path, "key = value config file")->check(CLI::ExistingFile);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "evaluate a single function value");
  eval->add_option("function", ev.function, "psi, Psi, zeta, xi, Xi, phi, g_n, J_n")
      ->required()
      ->check(CLI::IsMember({"psi", "Psi", "zeta", "xi", "Xi", "phi", "g_n", "J_n"}));
  eval->add_option("--s", ev.s, "real part of s");
  eval->add_option("--s-im", ev.s_im, "imaginary part of s");
  eval->add_option("--t", ev.t, "real part of the Xi argument");
  eval->add_option("--t-im", ev.t_im, "imaginary part of the Xi argument");
  eval->add_option("--x", ev.x);
  eval->add_option("--u", ev.u);
  eval->add_option("--lambda", ev.lambda);
  eval->add_option("--sigma", ev.sigma);
  eval->add_option("--n", ev.n);
  eval->add_option("--route", ev.route, "direct, eq1, psi_transform");
  auto* json_flag = eval->add_flag("--json", ev.as_json);
  eval->add_flag("--csv", ev.as_csv)->excludes(json_flag);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run verification steps S1..S10");
  auto* steps_opt = verify->add_option("--steps", va.steps, "comma-separated step ids")->delimiter(',');
  verify->add_flag("--all", va.all)->excludes(steps_opt);
  verify->add_option("--out", va.out_dir, "report directory");
  verify->add_flag("--timing", va.timing, "record runtime_ms (reports stop being byte-reproducible)");
  verify->add_flag("--manifest", va.manifest, "write manifest.json with timestamps");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "zero scan on the critical line or |xi| census in a strip");
  auto* line_opt = scan->add_option("--line", sa.line, "t_lo t_hi")->expected(2);
  scan->add_option("--strip", sa.strip, "sigma_lo sigma_hi t_lo t_hi")->expected(4)->excludes(line_opt);
  scan->add_option("--step", sa.step, "t step");
  scan->add_option("--sigma-step", sa.sigma_step, "sigma step of the strip census");
  scan->add_option("--out", sa.out_csv, "CSV output file");
  scan->add_option("--json", sa.out_json, "JSON output file (default: standard output)");
  scan->add_option("--route", sa.route, "direct, eq1, psi_transform");
  scan->add_option("--threads", sa.threads, "worker threads, 0 = hardware");

  IdcheckArgs ia;
  auto* idcheck = app.add_subcommand("idcheck", "complete-monotonicity / infinite-divisibility diagnostics");
  idcheck->add_option("--source", ia.source, "kristiansen or phi")->required();
  idcheck->add_option("file", ia.file, "mixture CSV (x,weight) for the kristiansen source");
  idcheck->add_option("--sigma", ia.sigma);
  idcheck->add_option("--order", ia.order, "highest difference order");
  idcheck->add_option("--grid", ia.grid, "comma-separated s grid")->delimiter(',');
  idcheck->add_option("--json", ia.out_json, "JSON output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitArgument;
  }

  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);

  try {
    common.load();
    if (*eval) return run_eval(ev, common.cfg);
    if (*verify) return run_verify(va, common, command_line);
    if (*scan) return run_scan(sa, common.cfg);
    if (*idcheck) return run_idcheck(ia, common.cfg);
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const Error& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return kExitEvaluation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitArgument;
  } catch (const std::exception& e) {
    std::cerr << "evaluation error: " << e.what() << '\n';
    return kExitEvaluation;
  }
  return kExitArgument;
}
