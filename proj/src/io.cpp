#include "xidiv/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "xidiv/errors.hpp"

namespace xidiv {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view key) {
  const std::string owned(text);
  char* end = nullptr;
  const double v = std::strtod(owned.c_str(), &end);
  if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(v)) {
    throw ArgumentError("config: bad number for " + std::string(key) + ": '" + owned + "'");
  }
  return v;
}

int parse_int(std::string_view text, std::string_view key) {
  int v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ArgumentError("config: bad integer for " + std::string(key) + ": '" +
                        std::string(text) + "'");
  }
  return v;
}

}  // namespace

NumericConfig parse_config(std::string_view text) {
  NumericConfig cfg;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ArgumentError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "abs_tol") {
      cfg.abs_tol = parse_double(value, key);
    } else if (key == "rel_tol") {
      cfg.rel_tol = parse_double(value, key);
    } else if (key == "quad_upper_cut") {
      cfg.quad_upper_cut = parse_double(value, key);
    } else if (key == "quad_nodes") {
      cfg.quad_nodes = parse_int(value, key);
    } else if (key == "cm_order") {
      cfg.cm_order = parse_int(value, key);
    } else if (key == "cm_step") {
      cfg.cm_step = parse_double(value, key);
    } else if (key == "n_max") {
      cfg.n_max = parse_int(value, key);
    } else if (key == "scan_step") {
      cfg.scan_step = parse_double(value, key);
    } else {
      throw ArgumentError("config: unknown key '" + std::string(key) + "'");
    }
  }
  cfg.validate();
  return cfg;
}

NumericConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_config(const NumericConfig& cfg) {
  std::ostringstream out;
  out << "abs_tol = " << format_number(cfg.abs_tol) << '\n'
      << "rel_tol = " << format_number(cfg.rel_tol) << '\n'
      << "quad_upper_cut = " << format_number(cfg.quad_upper_cut) << '\n'
      << "quad_nodes = " << cfg.quad_nodes << '\n'
      << "cm_order = " << cfg.cm_order << '\n'
      << "cm_step = " << format_number(cfg.cm_step) << '\n'
      << "n_max = " << cfg.n_max << '\n'
      << "scan_step = " << format_number(cfg.scan_step) << '\n';
  return out.str();
}

DiscreteMixture read_mixture_csv(std::istream& in) {
  std::vector<MixtureScale> atoms;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ArgumentError("mixture csv: line " + std::to_string(line_no) + " needs 'x,weight'");
    }
    const std::string x_text(trim(line.substr(0, comma)));
    const std::string w_text(trim(line.substr(comma + 1)));
    char* x_end = nullptr;
    char* w_end = nullptr;
    const double x = std::strtod(x_text.c_str(), &x_end);
    const double w = std::strtod(w_text.c_str(), &w_end);
    const bool numeric = !x_text.empty() && !w_text.empty() &&
                         x_end == x_text.c_str() + x_text.size() &&
                         w_end == w_text.c_str() + w_text.size();
    if (!numeric) {
      if (atoms.empty() && line_no == 1) continue;  // header
      throw ArgumentError("mixture csv: line " + std::to_string(line_no) + " is not numeric");
    }
    atoms.push_back({x, w});
  }
  return DiscreteMixture(std::move(atoms));
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

json complex_json(Complex z) { return json{{"re", number_json(z.real())}, {"im", number_json(z.imag())}}; }

Complex complex_from_json(const json& j) {
  return {number_from_json(j.at("re")), number_from_json(j.at("im"))};
}

json number_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

double number_from_json(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  return j.get<double>();
}

void to_json(json& j, const NumericConfig& cfg) {
  j = json{{"abs_tol", cfg.abs_tol},         {"rel_tol", cfg.rel_tol},
           {"quad_upper_cut", cfg.quad_upper_cut}, {"quad_nodes", cfg.quad_nodes},
           {"cm_order", cfg.cm_order},       {"cm_step", cfg.cm_step},
           {"n_max", cfg.n_max},             {"scan_step", cfg.scan_step}};
}

void from_json(const json& j, NumericConfig& cfg) {
  cfg.abs_tol = j.at("abs_tol").get<double>();
  cfg.rel_tol = j.at("rel_tol").get<double>();
  cfg.quad_upper_cut = j.at("quad_upper_cut").get<double>();
  cfg.quad_nodes = j.at("quad_nodes").get<int>();
  cfg.cm_order = j.at("cm_order").get<int>();
  cfg.cm_step = j.at("cm_step").get<double>();
  cfg.n_max = j.at("n_max").get<int>();
  cfg.scan_step = j.at("scan_step").get<double>();
}

void to_json(json& j, const CMReport& r) {
  j = json{{"order_tested", r.order_tested},   {"grid", r.grid},
           {"violation_count", r.violation_count}, {"max_violation", number_json(r.max_violation)},
           {"passed", r.passed}};
}

void from_json(const json& j, CMReport& r) {
  r.order_tested = j.at("order_tested").get<int>();
  r.grid = j.at("grid").get<std::vector<double>>();
  r.violation_count = j.at("violation_count").get<int>();
  r.max_violation = number_from_json(j.at("max_violation"));
  r.passed = j.at("passed").get<bool>();
}

void to_json(json& j, const QuadResult& r) {
  j = json{{"value", complex_json(r.value)},
           {"error_estimate", number_json(r.error_estimate)},
           {"nodes_used", r.nodes_used},
           {"tail_bound", number_json(r.tail_bound)}};
}

namespace {

XiRoute route_from(const std::string& s) {
  for (XiRoute r : {XiRoute::direct, XiRoute::integral_eq1, XiRoute::psi_transform}) {
    if (to_string(r) == s) return r;
  }
  throw ArgumentError("unknown route '" + s + "'");
}

}  // namespace

void to_json(json& j, const ZeroList& z) {
  json zeros = json::array();
  for (const auto& e : z.zeros) {
    zeros.push_back({{"t", e.t}, {"bracket_width", e.bracket_width}, {"route", to_string(e.route)}});
  }
  j = json{{"zeros", zeros},
           {"range_scanned", {z.range_lo, z.range_hi}},
           {"scan_step", z.scan_step},
           {"count", z.zeros.size()}};
}

void from_json(const json& j, ZeroList& z) {
  z.zeros.clear();
  for (const auto& e : j.at("zeros")) {
    z.zeros.push_back({e.at("t").get<double>(), e.at("bracket_width").get<double>(),
                       route_from(e.at("route").get<std::string>())});
  }
  z.range_lo = j.at("range_scanned").at(0).get<double>();
  z.range_hi = j.at("range_scanned").at(1).get<double>();
  z.scan_step = j.at("scan_step").get<double>();
}

void to_json(json& j, const StripCensus& c) {
  j = json{{"sigma_grid", c.sigma_grid},
           {"t_grid", c.t_grid},
           {"min_abs_xi", c.min_abs_xi},
           {"argmin", {c.argmin_sigma, c.argmin_t}},
           {"cell_count", c.cell_count}};
}

void from_json(const json& j, StripCensus& c) {
  c.sigma_grid = j.at("sigma_grid").get<std::vector<double>>();
  c.t_grid = j.at("t_grid").get<std::vector<double>>();
  c.min_abs_xi = j.at("min_abs_xi").get<double>();
  c.argmin_sigma = j.at("argmin").at(0).get<double>();
  c.argmin_t = j.at("argmin").at(1).get<double>();
  c.cell_count = j.at("cell_count").get<long>();
  c.nodes.clear();
}

void to_json(json& j, const HalfIdentityReport& r) {
  j = json{{"s", complex_json(r.s)},
           {"sigma", r.sigma},
           {"n_max", r.n_max},
           {"negative_half", r.negative_half},
           {"lhs", complex_json(r.lhs)},
           {"rhs_as_written", complex_json(r.rhs_as_written)},
           {"rhs_mixture_form", complex_json(r.rhs_mixture_form)},
           {"residual_written", number_json(r.residual_written)},
           {"residual_mixture", number_json(r.residual_mixture)},
           {"truncation_estimate", number_json(r.truncation_estimate)},
           {"discretization_error", number_json(r.discretization_error)}};
  if (r.rhs_written_zero_limit) {
    j["rhs_written_zero_limit"] = complex_json(*r.rhs_written_zero_limit);
  }
}

void from_json(const json& j, HalfIdentityReport& r) {
  r.s = complex_from_json(j.at("s"));
  r.sigma = j.at("sigma").get<double>();
  r.n_max = j.at("n_max").get<int>();
  r.negative_half = j.at("negative_half").get<bool>();
  r.lhs = complex_from_json(j.at("lhs"));
  r.rhs_as_written = complex_from_json(j.at("rhs_as_written"));
  r.rhs_mixture_form = complex_from_json(j.at("rhs_mixture_form"));
  r.residual_written = number_from_json(j.at("residual_written"));
  r.residual_mixture = number_from_json(j.at("residual_mixture"));
  r.truncation_estimate = number_from_json(j.at("truncation_estimate"));
  r.discretization_error = number_from_json(j.at("discretization_error"));
  r.rhs_written_zero_limit.reset();
  if (j.contains("rhs_written_zero_limit")) {
    r.rhs_written_zero_limit = complex_from_json(j.at("rhs_written_zero_limit"));
  }
}

void to_json(json& j, const StepReport& r) {
  j = json{{"step_id", to_string(r.step_id)},
           {"description", r.description},
           {"inputs", r.inputs},
           {"lhs", complex_json(r.lhs)},
           {"rhs", complex_json(r.rhs)},
           {"abs_residual", number_json(r.abs_residual)},
           {"rel_residual", number_json(r.rel_residual)},
           {"verdict", to_string(r.verdict)},
           {"runtime_ms", r.runtime_ms},
           {"details", r.details}};
  if (r.tolerance_used) j["tolerance_used"] = *r.tolerance_used;
  if (r.error) j["error"] = *r.error;
}

void from_json(const json& j, StepReport& r) {
  const auto id = parse_step_id(j.at("step_id").get<std::string>());
  const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
  if (!id || !verdict) throw ArgumentError("step report: bad step_id or verdict");
  r.step_id = *id;
  r.description = j.at("description").get<std::string>();
  r.inputs = j.at("inputs");
  r.lhs = complex_from_json(j.at("lhs"));
  r.rhs = complex_from_json(j.at("rhs"));
  r.abs_residual = number_from_json(j.at("abs_residual"));
  r.rel_residual = number_from_json(j.at("rel_residual"));
  r.verdict = *verdict;
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  r.details = j.value("details", json::object());
  r.tolerance_used.reset();
  if (j.contains("tolerance_used")) r.tolerance_used = j.at("tolerance_used").get<double>();
  r.error.reset();
  if (j.contains("error")) r.error = j.at("error").get<std::string>();
}

void to_json(json& j, const GGCDiagnostics& d) {
  json ratios = json::array();
  for (double r : d.ratio_values) ratios.push_back(number_json(r));
  j = json{{"sigma", d.sigma},
           {"s_grid", d.s_grid},
           {"ratio_values", ratios},
           {"cm_report", d.cm_report},
           {"log_ratio_cm_report", d.log_ratio_cm_report},
           {"step_used", d.step_used},
           {"drift", number_json(d.drift)},
           {"flagged", d.flagged},
           {"monotone_decreasing", d.monotone_decreasing},
           {"monotone_increasing", d.monotone_increasing}};
}

void to_json(json& j, const ZeroCorrespondence& z) {
  json pairs = json::array();
  for (const auto& p : z.pairs) {
    pairs.push_back({{"tau", p.tau}, {"xi_zero", p.xi_zero}, {"ratio", p.ratio}, {"mismatch", p.mismatch}});
  }
  j = json{{"sigma", z.sigma},
           {"tau_range", {z.tau_lo, z.tau_hi}},
           {"phi_roots", z.phi_roots},
           {"xi_zeros", z.xi_zeros},
           {"pairs", pairs},
           {"observed_scale", z.observed_scale}};
}

void to_json(json& j, const PhiEvaluation& p) {
  j = json{{"sigma", p.sigma},
           {"s", complex_json(p.s)},
           {"value", complex_json(p.value)},
           {"normalizer", p.normalizer}};
}

}  // namespace xidiv
