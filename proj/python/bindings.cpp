#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>
#include <vector>

#include "xidiv/divisibility.hpp"
#include "xidiv/errors.hpp"
#include "xidiv/io.hpp"
#include "xidiv/mixture.hpp"
#include "xidiv/pipeline.hpp"
#include "xidiv/scanner.hpp"
#include "xidiv/theta.hpp"
#include "xidiv/xi.hpp"

namespace py = pybind11;
using namespace xidiv;

namespace {

// Reports cross the boundary as plain dicts, through the same JSON schema
// the CLI writes.
py::object to_python(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object& o) {
  if (o.is_none()) return nlohmann::json::object();
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

StepId step_from(const std::string& name) {
  const auto id = parse_step_id(name);
  if (!id) throw ArgumentError("unknown step id '" + name + "'");
  return *id;
}

XiRoute route_from(const std::string& name) {
  if (name == "direct") return XiRoute::direct;
  if (name == "eq1") return XiRoute::integral_eq1;
  if (name == "psi_transform") return XiRoute::psi_transform;
  throw ArgumentError("unknown route '" + name + "'");
}

py::dict xi_evaluation(const XiEvaluation& e) {
  py::dict d;
  d["value"] = e.value;
  d["route"] = std::string(to_string(e.route));
  d["residual_vs_direct"] = e.residual_vs_direct;
  d["residual_vs_reflected"] = e.residual_vs_reflected;
  return d;
}

DiscreteMixture mixture_from(const std::vector<std::pair<double, double>>& atoms) {
  std::vector<MixtureScale> scales;
  for (auto [x, w] : atoms) scales.push_back({x, w});
  return DiscreteMixture(std::move(scales));
}

}  // namespace

PYBIND11_MODULE(_xidiv, m) {
  m.doc() = "Numerical checks around the Riemann xi function and infinite divisibility";
  m.attr("__version__") = XIDIV_VERSION;

  // Registered base first: translators run newest first, so subclasses win.
  auto& error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", error.ptr());
  py::register_exception<RangeError>(m, "RangeError", error.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", error.ptr());

  py::class_<NumericConfig>(m, "NumericConfig")
      .def(py::init<>())
      .def_readwrite("abs_tol", &NumericConfig::abs_tol)
      .def_readwrite("rel_tol", &NumericConfig::rel_tol)
      .def_readwrite("quad_upper_cut", &NumericConfig::quad_upper_cut)
      .def_readwrite("quad_nodes", &NumericConfig::quad_nodes)
      .def_readwrite("cm_order", &NumericConfig::cm_order)
      .def_readwrite("cm_step", &NumericConfig::cm_step)
      .def_readwrite("n_max", &NumericConfig::n_max)
      .def_readwrite("scan_step", &NumericConfig::scan_step)
      .def("validate", &NumericConfig::validate)
      .def("to_dict", [](const NumericConfig& c) { return to_python(nlohmann::json(c)); })
      .def("__repr__", [](const NumericConfig& c) { return "NumericConfig(" + nlohmann::json(c).dump() + ")"; });

  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", &load_config, py::arg("path"));

  const NumericConfig defaults;

  // theta kernel
  m.def("psi", &psi, py::arg("x"), py::arg("cfg") = defaults);
  m.def("psi_kernel", &psi_kernel, py::arg("u"), py::arg("cfg") = defaults);
  m.def("theta_functional_residual", &theta_functional_residual, py::arg("x"), py::arg("cfg") = defaults);
  m.def("psi_kernel_series_residual", &psi_kernel_series_residual, py::arg("u"),
        py::arg("cfg") = defaults);

  // xi core
  m.def("gamma", &gamma_fn, py::arg("s"));
  m.def("zeta", &zeta, py::arg("s"), py::arg("cfg") = defaults);
  m.def("xi", &xi_direct, py::arg("s"), py::arg("cfg") = defaults);
  m.def("Xi", &Xi_direct, py::arg("z"), py::arg("cfg") = defaults);
  m.def("xi_eq1", [](Complex z, const NumericConfig& cfg) { return xi_evaluation(xi_eq1(z, cfg)); },
        py::arg("z"), py::arg("cfg") = defaults);
  m.def("xi_psi_transform",
        [](Complex z, const NumericConfig& cfg) { return xi_evaluation(xi_psi_transform(z, cfg)); },
        py::arg("z"), py::arg("cfg") = defaults);

  // mixture decomposition
  m.def("triangle_weight", &triangle_weight, py::arg("n"), py::arg("lam"));
  m.def("alternating_moment", &alternating_moment, py::arg("n"), py::arg("k"));
  m.def("g_density", &g_density, py::arg("n"), py::arg("x"));
  m.def("lhs_half_transform", &lhs_half_transform, py::arg("s"), py::arg("sigma"),
        py::arg("cfg") = defaults);
  m.def(
      "rhs_as_written",
      [](Complex s, double sigma, int n_max, const NumericConfig& cfg, bool zero_limit) {
        return rhs_as_written(s, sigma, n_max, cfg, zero_limit ? LowerLimit::zero : LowerLimit::log_pi_n2)
            .value;
      },
      py::arg("s"), py::arg("sigma"), py::arg("n_max"), py::arg("cfg") = defaults,
      py::arg("zero_limit") = false);
  m.def(
      "half_identity_report",
      [](Complex s, double sigma, int n_max, const NumericConfig& cfg, bool negative) {
        return to_python(nlohmann::json(negative ? negative_half_transform(s, sigma, n_max, cfg, true)
                                                 : half_identity_report(s, sigma, n_max, cfg, true)));
      },
      py::arg("s"), py::arg("sigma"), py::arg("n_max"), py::arg("cfg") = defaults,
      py::arg("negative_half") = false);
  m.def(
      "channel_masses",
      [](int n_max) {
        std::vector<std::pair<double, double>> out;
        for (const ChannelMass& c : build_signed_measure(n_max).per_n) {
          out.emplace_back(c.exponential_mass, c.gamma2_mass);
        }
        return out;
      },
      py::arg("n_max"), "(exponential, Gamma(2)) channel totals for n = 1..n_max");

  // divisibility lab
  m.def("phi_sigma", [](Complex s, double sigma, const NumericConfig& cfg) { return phi_sigma(s, sigma, cfg).value; },
        py::arg("s"), py::arg("sigma"), py::arg("cfg") = defaults);
  m.def(
      "kristiansen_lt",
      [](const std::vector<std::pair<double, double>>& atoms, double s) {
        return kristiansen_lt(mixture_from(atoms), s);
      },
      py::arg("atoms"), py::arg("s"), "atoms: list of (x, weight)");
  m.def(
      "cm_test",
      [](const std::function<double(double)>& f, const std::vector<double>& grid, const NumericConfig& cfg) {
        return to_python(nlohmann::json(cm_test(f, grid, cfg)));
      },
      py::arg("f"), py::arg("grid"), py::arg("cfg") = defaults);
  m.def(
      "id_criterion_check",
      [](const std::function<double(double)>& f, const std::vector<double>& grid, const NumericConfig& cfg) {
        return to_python(nlohmann::json(id_criterion_check(f, grid, cfg)));
      },
      py::arg("f"), py::arg("grid"), py::arg("cfg") = defaults);
  m.def(
      "ggc_diagnostics",
      [](double sigma, const std::vector<double>& grid, const NumericConfig& cfg) {
        return to_python(nlohmann::json(ggc_diagnostics(sigma, grid, cfg)));
      },
      py::arg("sigma"), py::arg("s_grid"), py::arg("cfg") = defaults);

  // strip scanner
  m.def(
      "scan_critical_line",
      [](double t_lo, double t_hi, double step, const NumericConfig& cfg, const std::string& route) {
        const XiRoute r = route_from(route);
        ZeroList z;
        {
          py::gil_scoped_release release;
          z = scan_critical_line(t_lo, t_hi, step, cfg, r);
        }
        return to_python(nlohmann::json(z));
      },
      py::arg("t_lo"), py::arg("t_hi"), py::arg("step") = 0.05, py::arg("cfg") = defaults,
      py::arg("route") = "direct");
  m.def(
      "scan_strip",
      [](double sigma_lo, double sigma_hi, double t_lo, double t_hi, double d_sigma, double d_t,
         const NumericConfig& cfg) {
        StripCensus c;
        {
          py::gil_scoped_release release;
          c = scan_strip(sigma_lo, sigma_hi, t_lo, t_hi, d_sigma, d_t, cfg);
        }
        return to_python(nlohmann::json(c));
      },
      py::arg("sigma_lo"), py::arg("sigma_hi"), py::arg("t_lo"), py::arg("t_hi"),
      py::arg("d_sigma") = 0.05, py::arg("d_t") = 0.25, py::arg("cfg") = defaults);

  // verification pipeline
  m.def(
      "run_step",
      [](const std::string& step, const py::object& params, const NumericConfig& cfg) {
        return to_python(nlohmann::json(run_step(step_from(step), from_python(params), cfg)));
      },
      py::arg("step"), py::arg("params") = py::none(), py::arg("cfg") = defaults);
  m.def(
      "run_all",
      [](const NumericConfig& cfg) {
        py::list out;
        for (const StepReport& r : run_all(cfg)) out.append(to_python(nlohmann::json(r)));
        return out;
      },
      py::arg("cfg") = defaults);
}
