#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "levar/classical.hpp"
#include "levar/distribution.hpp"
#include "levar/error.hpp"
#include "levar/io.hpp"
#include "levar/lambda.hpp"
#include "levar/lambda_risk.hpp"
#include "levar/robust.hpp"
#include "levar/verify.hpp"

namespace py = pybind11;
using namespace levar;

namespace {

BaseMeasureFamily family(const std::string& measure, double p) {
  if (measure == "var") return BaseMeasureFamily::var();
  if (measure == "es") return BaseMeasureFamily::es();
  if (measure == "evar") return BaseMeasureFamily::evar(p);
  throw InputError("measure must be 'var', 'es' or 'evar'");
}

py::object optional_interval(const std::optional<std::pair<double, double>>& t) {
  if (!t) return py::none();
  return py::make_tuple(t->first, t->second);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lambda-lifted entropic risk measures on finite distributions";

  auto base = py::register_exception<Error>(m, "LevarError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());

  py::class_<DiscreteDistribution>(m, "Distribution")
      .def(py::init([](const std::vector<double>& values, const std::vector<double>& probs) {
             return make_distribution(values, probs);
           }),
           py::arg("values"), py::arg("probs") = std::vector<double>{})
      .def_static("point_mass", &DiscreteDistribution::point_mass)
      .def_static("from_csv", &parse_scenarios, py::arg("path"), py::arg("normalize") = false)
      .def_property_readonly("values", &DiscreteDistribution::values)
      .def_property_readonly("probs", &DiscreteDistribution::probs)
      .def_property_readonly("atoms",
                             [](const DiscreteDistribution& d) {
                               std::vector<std::pair<double, double>> out;
                               for (const auto& a : d.atoms()) out.emplace_back(a.value, a.prob);
                               return out;
                             })
      .def("mean", &DiscreteDistribution::mean)
      .def("variance", &DiscreteDistribution::variance)
      .def("essinf", &DiscreteDistribution::essinf)
      .def("esssup", &DiscreteDistribution::esssup)
      .def("affine", &DiscreteDistribution::affine, py::arg("scale"), py::arg("shift"))
      .def("__len__", &DiscreteDistribution::size)
      .def("__eq__", [](const DiscreteDistribution& a, const DiscreteDistribution& b) { return a == b; })
      .def("__repr__", [](const DiscreteDistribution& d) {
        return "Distribution(" + describe_distribution(d) + ")";
      });

  m.def("quantile", &quantile, py::arg("dist"), py::arg("alpha"));
  m.def("expected_shortfall", &expected_shortfall, py::arg("dist"), py::arg("alpha"));
  m.def("partial_moment", &partial_moment, py::arg("dist"), py::arg("t"), py::arg("p"));
  m.def("wasserstein_distance", &wasserstein_distance, py::arg("a"), py::arg("b"), py::arg("k"));
  m.def("mix", &mix, py::arg("a"), py::arg("b"), py::arg("weight"));

  py::class_<LambdaFunction>(m, "LambdaFunction")
      .def_static("constant", &LambdaFunction::constant, py::arg("level"))
      .def_static(
          "step",
          [](std::vector<double> x, std::vector<double> l, const std::string& continuity) {
            if (continuity != "left" && continuity != "right") {
              throw InputError("continuity must be 'left' or 'right'");
            }
            return LambdaFunction::step(std::move(x), std::move(l),
                                        continuity == "left" ? Continuity::Left : Continuity::Right);
          },
          py::arg("thresholds"), py::arg("levels"), py::arg("continuity") = "right")
      .def_static("piecewise_linear", &LambdaFunction::piecewise_linear, py::arg("points"))
      .def_static("from_json", &parse_lambda_spec, py::arg("spec"))
      .def("__call__", &LambdaFunction::eval)
      .def("left_limit", &LambdaFunction::left_limit)
      .def("right_limit", &LambdaFunction::right_limit)
      .def("tail_limits", &LambdaFunction::tail_limits)
      .def("superlevel_sup", &LambdaFunction::superlevel_sup)
      .def("describe", &LambdaFunction::describe)
      .def("__repr__", [](const LambdaFunction& l) { return "LambdaFunction(" + l.describe() + ")"; });

  py::class_<EvarSolution>(m, "EvarSolution")
      .def_readonly("value", &EvarSolution::value)
      .def_readonly("t_lo", &EvarSolution::t_lo)
      .def_readonly("t_hi", &EvarSolution::t_hi)
      .def_readonly("t_star", &EvarSolution::t_star)
      .def_readonly("iterations", &EvarSolution::iterations)
      .def_readonly("achieved_tol", &EvarSolution::achieved_tol);

  m.def("evar", [](const DiscreteDistribution& d, double p, double a) { return evar(d, p, a); },
        py::arg("dist"), py::arg("p"), py::arg("alpha"));
  m.def("evar_objective", &evar_objective, py::arg("dist"), py::arg("p"), py::arg("alpha"),
        py::arg("t"));
  m.def(
      "renyi_entropy",
      [](const std::vector<double>& q, const std::vector<double>& p, double order) {
        return renyi_entropy(q, p, order);
      },
      py::arg("q_weights"), py::arg("p_weights"), py::arg("q"));
  m.def("evar_dual_oracle", &evar_dual_oracle, py::arg("dist"), py::arg("p"), py::arg("alpha"),
        py::arg("resolution"));

  py::class_<LambdaRiskResult>(m, "LambdaRiskResult")
      .def_readonly("value", &LambdaRiskResult::value)
      .def_readonly("x_star", &LambdaRiskResult::x_star)
      .def_property_readonly("t_interval",
                             [](const LambdaRiskResult& r) { return optional_interval(r.t_interval); })
      .def_readonly("t_star", &LambdaRiskResult::t_star)
      .def_readonly("attained", &LambdaRiskResult::attained)
      .def_readonly("iterations", &LambdaRiskResult::iterations)
      .def_readonly("achieved_tol", &LambdaRiskResult::achieved_tol);

  m.def(
      "lambda_lift",
      [](const DiscreteDistribution& d, const LambdaFunction& l, const std::string& measure,
         double p) { return lambda_lift(d, family(measure, p), l); },
      py::arg("dist"), py::arg("lam"), py::arg("measure") = "evar", py::arg("p") = 1.0);
  m.def(
      "lambda_lift_inf",
      [](const DiscreteDistribution& d, const LambdaFunction& l, const std::string& measure,
         double p) { return lambda_lift_inf(d, family(measure, p), l); },
      py::arg("dist"), py::arg("lam"), py::arg("measure") = "evar", py::arg("p") = 1.0);
  m.def(
      "sandwich_check",
      [](const DiscreteDistribution& d, double p, const LambdaFunction& l, double x, double tol) {
        return sandwich_check(d, p, l, x, tol);
      },
      py::arg("dist"), py::arg("p"), py::arg("lam"), py::arg("x"), py::arg("tol"));
  m.def("t_lambda", &t_lambda, py::arg("dist"), py::arg("p"), py::arg("lam"), py::arg("t"),
        py::arg("x"));
  m.def(
      "extended_ru",
      [](const DiscreteDistribution& d, double p, const LambdaFunction& l) {
        return extended_ru(d, p, l);
      },
      py::arg("dist"), py::arg("p"), py::arg("lam"));
  m.def("lambda_evar_dual_oracle", &lambda_evar_dual_oracle, py::arg("dist"), py::arg("p"),
        py::arg("lam"), py::arg("resolution"));
  m.def(
      "homogeneous_form_value",
      [](const DiscreteDistribution& d, double p, double a1, double a2, double a3) {
        return homogeneous_form_value(d, p, a1, a2, a3);
      },
      py::arg("dist"), py::arg("p"), py::arg("alpha1"), py::arg("alpha2"), py::arg("alpha3"));

  py::class_<RobustResult>(m, "RobustResult")
      .def_readonly("value", &RobustResult::value)
      .def_readonly("x_star", &RobustResult::x_star)
      .def_readonly("nominal", &RobustResult::nominal)
      .def_readonly("inflation", &RobustResult::inflation)
      .def_readonly("iterations", &RobustResult::iterations)
      .def_readonly("achieved_tol", &RobustResult::achieved_tol);

  m.def(
      "worst_case_wasserstein",
      [](const DiscreteDistribution& d, double p, const LambdaFunction& l, double delta) {
        return worst_case_wasserstein(d, p, l, delta);
      },
      py::arg("dist"), py::arg("p"), py::arg("lam"), py::arg("delta"));
  m.def(
      "worst_case_mean_variance",
      [](double mean, double std_bound, const LambdaFunction& l, const std::string& measure) {
        return worst_case_mean_variance({mean, std_bound}, l, parse_mean_variance_measure(measure));
      },
      py::arg("mean"), py::arg("std_bound"), py::arg("lam"), py::arg("measure") = "es");

  m.def(
      "run_campaign",
      [](std::uint64_t seed, int cases, int max_support, std::vector<double> p_grid) {
        CampaignConfig cfg;
        cfg.seed = seed;
        cfg.cases = cases;
        cfg.max_support = max_support;
        cfg.p_grid = std::move(p_grid);
        return run_campaign(cfg).to_json();
      },
      py::arg("seed") = 1, py::arg("cases") = 200, py::arg("max_support") = 20,
      py::arg("p_grid") = std::vector<double>{1.0, 2.0, 3.0},
      "Runs the property campaign and returns the JSON report as a string.");
}
