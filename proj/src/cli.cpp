#include "levar/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "format.hpp"
#include "levar/classical.hpp"
#include "levar/error.hpp"
#include "levar/io.hpp"
#include "levar/lambda_risk.hpp"
#include "levar/robust.hpp"
#include "levar/verify.hpp"

namespace levar {

namespace {

using detail::json_number;

struct Common {
  std::string file;
  std::string lambda;
  std::string expect;
  std::string output;
  bool normalize = false;
  double p = 1.0;
  EvarOptions inner;
  CrossingOptions crossing;

  LiftOptions lift() const { return {crossing, inner}; }
};

void add_tolerances(CLI::App* app, Common& c) {
  app->add_option("--rel-tol", c.inner.rel_tol, "Golden-section width, relative to 1 + range")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--slope-tol", c.inner.slope_tol, "Slope tolerance for minimizer endpoints")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--max-iter", c.inner.max_iter, "Golden-section iteration cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--crossing-tol", c.crossing.width_tol, "Crossing bisection relative width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_option("--crossing-max-iter", c.crossing.max_iter, "Crossing bisection iteration cap")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
}

void add_file(CLI::App* app, Common& c) {
  app->add_option("FILE", c.file, "Scenario CSV (value[,probability])")->required();
  app->add_flag("--normalize", c.normalize, "Rescale probabilities that do not sum to 1");
}

void add_outputs(CLI::App* app, Common& c) {
  app->add_option("--expect", c.expect, "Earlier report; fail with exit code 3 unless reproduced");
  app->add_option("-o,--output", c.output, "Write the result to this file instead of stdout");
}

BaseMeasureFamily family_from(const std::string& name, double p) {
  if (name == "var") return BaseMeasureFamily::var();
  if (name == "es") return BaseMeasureFamily::es();
  return BaseMeasureFamily::evar(p);
}

std::string params(std::initializer_list<std::pair<const char*, double>> kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += std::string(",\"") + k + "\":" + json_number(v);
  return out;
}

// Emits the report and applies --expect.
int finish(const Report& r, const Common& c, std::ostream& out, std::ostream& err) {
  const auto text = r.to_json() + "\n";
  if (c.output.empty()) {
    out << text;
  } else {
    std::ofstream f(c.output);
    if (!f) throw InputError("cannot write '" + c.output + "'");
    f << text;
  }
  if (c.expect.empty()) return kExitOk;
  const auto ev = parse_report_value(read_file(c.expect));
  const double tol = std::max(ev.achieved_tol, r.achieved_tol) + 1e-15 * (1.0 + std::abs(ev.value));
  if (std::abs(r.value - ev.value) <= tol) return kExitOk;
  err << "error: value " << json_number(r.value) << " differs from expected "
      << json_number(ev.value) << " by more than " << json_number(tol) << "\n";
  return kExitMismatch;
}

Report lift_report(const LambdaRiskResult& res, const std::string& measure) {
  Report r;
  r.measure = measure;
  r.value = res.value;
  r.x_star = res.x_star;
  r.t_interval = res.t_interval;
  r.t_star = res.t_star;
  r.attained = res.attained;
  r.iterations = res.iterations;
  r.achieved_tol = res.achieved_tol;
  return r;
}

std::tuple<double, double, int> parse_grid(const std::string& g) {
  double lo, hi;
  long n;
  char tail;
  if (std::sscanf(g.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &n, &tail) != 3) {
    throw InputError("sweep: grid must look like LO:HI:N");
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw InputError("sweep: need LO < HI");
  if (n < 1 || n > 100000000) throw InputError("sweep: N must lie in [1, 1e8]");
  return {lo, hi, static_cast<int>(n)};
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') throw InputError("'" + item + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw InputError("empty list");
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lambda-lifted entropic risk measures on scenario data", "levar"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common c;

  // evar
  double alpha = 0.0;
  auto* evar_cmd = app.add_subcommand("evar", "EVaR of order p at a fixed level");
  evar_cmd->add_option("--p", c.p, "Order p >= 1")->required();
  evar_cmd->add_option("--alpha", alpha, "Confidence level in [0,1]")->required();
  add_file(evar_cmd, c);
  add_tolerances(evar_cmd, c);
  add_outputs(evar_cmd, c);

  // lambda
  std::string measure = "evar";
  auto* lambda_cmd = app.add_subcommand("lambda", "Lambda-VaR, Lambda-ES or Lambda-EVaR");
  lambda_cmd->add_option("--measure", measure, "Base family")
      ->check(CLI::IsMember({"var", "es", "evar"}))
      ->capture_default_str();
  lambda_cmd->add_option("--p", c.p, "Order p >= 1 (evar only)")->capture_default_str();
  lambda_cmd->add_option("--lambda", c.lambda, "Level function: JSON file or inline JSON")->required();
  add_file(lambda_cmd, c);
  add_tolerances(lambda_cmd, c);
  add_outputs(lambda_cmd, c);

  // ru
  auto* ru_cmd = app.add_subcommand("ru", "Joint (t, x) minimization; needs right-continuous Lambda");
  ru_cmd->add_option("--p", c.p, "Order p >= 1")->required();
  ru_cmd->add_option("--lambda", c.lambda, "Level function: JSON file or inline JSON")->required();
  add_file(ru_cmd, c);
  add_tolerances(ru_cmd, c);
  add_outputs(ru_cmd, c);

  // robust
  auto* robust_cmd = app.add_subcommand("robust", "Worst-case values under ambiguity");
  robust_cmd->require_subcommand(1);
  double delta = 0.0;
  auto* wass_cmd = robust_cmd->add_subcommand("wasserstein", "Order-p Wasserstein ball of radius delta");
  wass_cmd->add_option("--p", c.p, "Order p >= 1")->required();
  wass_cmd->add_option("--delta", delta, "Radius >= 0")->required();
  wass_cmd->add_option("--lambda", c.lambda, "Level function: JSON file or inline JSON")->required();
  add_file(wass_cmd, c);
  add_tolerances(wass_cmd, c);
  add_outputs(wass_cmd, c);

  double mean = 0.0, stdev = 0.0;
  std::string mv_measure = "es";
  auto* mv_cmd = robust_cmd->add_subcommand("meanvar", "Known mean, bounded standard deviation");
  mv_cmd->add_option("--mean", mean, "Mean m")->required();
  mv_cmd->add_option("--std", stdev, "Standard deviation bound v >= 0")->required();
  mv_cmd->add_option("--lambda", c.lambda, "Level function: JSON file or inline JSON")->required();
  mv_cmd->add_option("--measure", mv_measure, "Label of the lifted measure")
      ->check(CLI::IsMember({"var", "es", "evar2"}))
      ->capture_default_str();
  mv_cmd->add_option("--crossing-tol", c.crossing.width_tol, "Crossing bisection relative width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_outputs(mv_cmd, c);

  // sweep
  std::string grid;
  auto* sweep_cmd = app.add_subcommand("sweep", "CSV of x, g(x), min(g,x), max(g,x) on a grid");
  sweep_cmd->add_option("--lambda", c.lambda, "Level function: JSON file or inline JSON")->required();
  sweep_cmd->add_option("--p", c.p, "Order p >= 1")->capture_default_str();
  sweep_cmd->add_option("--measure", measure, "Base family")
      ->check(CLI::IsMember({"var", "es", "evar"}))
      ->capture_default_str();
  sweep_cmd->add_option("--grid", grid, "LO:HI:N, giving N+1 equally spaced points")->required();
  sweep_cmd->add_option("-o,--output", c.output, "Write the CSV to this file instead of stdout");
  add_file(sweep_cmd, c);
  add_tolerances(sweep_cmd, c);

  // check
  CampaignConfig cfg;
  std::string p_grid = "1,2,3";
  std::vector<std::string> tol_overrides;
  auto* check_cmd = app.add_subcommand("check", "Seeded randomized property campaign");
  check_cmd->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  check_cmd->add_option("--cases", cfg.cases, "Cases per property")->capture_default_str();
  check_cmd->add_option("--max-support", cfg.max_support, "Largest support size")->capture_default_str();
  check_cmd->add_option("--p-grid", p_grid, "Comma-separated orders p")->capture_default_str();
  check_cmd->add_option("--tol", tol_overrides, "Tolerance override NAME=VALUE (repeatable)");
  check_cmd->add_option("-o,--output", c.output, "Write the report to this file instead of stdout");

  std::vector<std::string> argv_store{"levar"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*evar_cmd) {
      const auto d = parse_scenarios(c.file, c.normalize);
      const auto s = evar(d, c.p, alpha, c.inner);
      Report r;
      r.measure = "evar";
      r.p = c.p;
      r.value = s.value;
      r.t_interval = std::make_pair(s.t_lo, s.t_hi);
      r.t_star = s.t_star;
      r.iterations = s.iterations;
      r.achieved_tol = s.achieved_tol;
      r.inputs = "{\"command\":\"evar\"" + params({{"p", c.p}, {"alpha", alpha}}) +
                 ",\"atoms\":" + describe_distribution(d) + "}";
      return finish(r, c, out, err);
    }
    if (*lambda_cmd) {
      const auto d = parse_scenarios(c.file, c.normalize);
      const auto l = parse_lambda_spec(c.lambda);
      const auto fam = family_from(measure, c.p);
      auto r = lift_report(lambda_lift(d, fam, l, c.lift()), "lambda-" + measure);
      if (measure == "es") r.p = 1.0;
      if (measure == "evar") r.p = c.p;
      r.inputs = "{\"command\":\"lambda\",\"measure\":\"" + measure + "\"" + params({{"p", c.p}}) +
                 ",\"lambda\":" + l.describe() + ",\"atoms\":" + describe_distribution(d) + "}";
      return finish(r, c, out, err);
    }
    if (*ru_cmd) {
      const auto d = parse_scenarios(c.file, c.normalize);
      const auto l = parse_lambda_spec(c.lambda);
      auto r = lift_report(extended_ru(d, c.p, l, c.lift()), "ru");
      r.p = c.p;
      r.inputs = "{\"command\":\"ru\"" + params({{"p", c.p}}) + ",\"lambda\":" + l.describe() +
                 ",\"atoms\":" + describe_distribution(d) + "}";
      return finish(r, c, out, err);
    }
    if (*wass_cmd) {
      const auto d = parse_scenarios(c.file, c.normalize);
      const auto l = parse_lambda_spec(c.lambda);
      const auto res = worst_case_wasserstein(d, c.p, l, delta, c.lift());
      Report r;
      r.measure = "wasserstein";
      r.p = c.p;
      r.value = res.value;
      r.x_star = res.x_star;
      r.iterations = res.iterations;
      r.achieved_tol = res.achieved_tol;
      r.extra = {{"delta", delta}, {"nominal", res.nominal}, {"inflation", res.inflation}};
      r.inputs = "{\"command\":\"robust wasserstein\"" + params({{"p", c.p}, {"delta", delta}}) +
                 ",\"lambda\":" + l.describe() + ",\"atoms\":" + describe_distribution(d) + "}";
      return finish(r, c, out, err);
    }
    if (*mv_cmd) {
      const auto l = parse_lambda_spec(c.lambda);
      const auto m = parse_mean_variance_measure(mv_measure);
      const auto res = worst_case_mean_variance({mean, stdev}, l, m, c.crossing);
      Report r;
      r.measure = "meanvar-" + to_string(m);
      if (m == MeanVarianceMeasure::Evar2) r.p = 2.0;
      r.value = res.value;
      r.x_star = res.x_star;
      r.iterations = res.iterations;
      r.achieved_tol = res.achieved_tol;
      r.extra = {{"mean", mean}, {"std", stdev}, {"nominal", res.nominal}, {"inflation", res.inflation}};
      r.inputs = "{\"command\":\"robust meanvar\",\"measure\":\"" + to_string(m) + "\"" +
                 params({{"mean", mean}, {"std", stdev}}) + ",\"lambda\":" + l.describe() + "}";
      return finish(r, c, out, err);
    }
    if (*sweep_cmd) {
      const auto d = parse_scenarios(c.file, c.normalize);
      const auto l = parse_lambda_spec(c.lambda);
      const auto [lo, hi, n] = parse_grid(grid);
      const auto rows = sweep(d, family_from(measure, c.p), l, lo, hi, n, c.inner);
      std::ofstream file;
      if (!c.output.empty()) {
        file.open(c.output);
        if (!file) throw InputError("cannot write '" + c.output + "'");
      }
      std::ostream& o = c.output.empty() ? out : file;
      o << "x,g,min,max\n";
      char buf[128];
      for (const auto& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", row.x, row.g, row.lower, row.upper);
        o << buf;
      }
      return kExitOk;
    }
    if (*check_cmd) {
      cfg.p_grid = parse_list(p_grid);
      for (const auto& t : tol_overrides) {
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw InputError("--tol expects NAME=VALUE, got '" + t + "'");
        cfg.tolerances[t.substr(0, eq)] = parse_list(t.substr(eq + 1)).front();
      }
      const auto report = run_campaign(cfg);
      const auto text = report.to_json() + "\n";
      if (c.output.empty()) {
        out << text;
      } else {
        std::ofstream f(c.output);
        if (!f) throw InputError("cannot write '" + c.output + "'");
        f << text;
      }
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitUsage;
}

}  // namespace levar
