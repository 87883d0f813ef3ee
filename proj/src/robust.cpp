#include "levar/robust.hpp"

#include <algorithm>
#include <cmath>

#include "levar/error.hpp"

namespace levar {

namespace {

void require_below_one(const LambdaFunction& lambda, const char* who) {
  if (!(lambda.max_level() < 1.0)) {
    throw DomainError(std::string(who) + ": the level function must stay below 1");
  }
}

}  // namespace

RobustResult worst_case_wasserstein(const DiscreteDistribution& d, double p,
                                    const LambdaFunction& lambda, double delta,
                                    const LiftOptions& opts) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("worst_case_wasserstein: radius must be finite and >= 0");
  }
  require_below_one(lambda, "worst_case_wasserstein");
  const auto fam = BaseMeasureFamily::evar(p);
  auto phi = [&](double a) {
    return fam.at(d, a, opts.inner) + delta * std::pow(1.0 - a, -1.0 / p);
  };
  // g is largest where Λ is largest, at -inf.
  const double hi = d.esssup() + delta * std::pow(1.0 - lambda.max_level(), -1.0 / p) + 1.0;
  const auto cr =
      solve_crossing(phi, lambda, d.essinf() - 1.0, hi, CrossingForm::Sup, opts.crossing);

  RobustResult r;
  r.value = r.x_star = cr.x_star;
  r.nominal = delta == 0.0 ? r.value : lambda_lift(d, fam, lambda, opts).value;
  r.inflation = r.value - r.nominal;
  r.iterations = cr.iterations;
  r.achieved_tol = std::max(cr.width, 1e-12 * (1.0 + std::abs(r.value)));
  return r;
}

MeanVarianceMeasure parse_mean_variance_measure(const std::string& name) {
  if (name == "var") return MeanVarianceMeasure::Var;
  if (name == "es") return MeanVarianceMeasure::Es;
  if (name == "evar2") return MeanVarianceMeasure::Evar2;
  throw InputError("unknown mean-variance measure '" + name + "' (expected var, es or evar2)");
}

std::string to_string(MeanVarianceMeasure m) {
  switch (m) {
    case MeanVarianceMeasure::Var:
      return "var";
    case MeanVarianceMeasure::Es:
      return "es";
    case MeanVarianceMeasure::Evar2:
      break;
  }
  return "evar2";
}

RobustResult worst_case_mean_variance(const MomentSet& ms, const LambdaFunction& lambda,
                                      MeanVarianceMeasure /*measure*/,
                                      const CrossingOptions& opts) {
  if (!std::isfinite(ms.mean) || !(ms.std_bound >= 0.0) || !std::isfinite(ms.std_bound)) {
    throw DomainError("worst_case_mean_variance: need a finite mean and a finite bound v >= 0");
  }
  require_below_one(lambda, "worst_case_mean_variance");
  const double m = ms.mean, v = ms.std_bound;
  auto phi = [&](double a) { return m + v * std::sqrt(a / (1.0 - a)); };
  const double top = lambda.max_level();
  const auto cr = solve_crossing(phi, lambda, m - 1.0, m + v * std::sqrt(top / (1.0 - top)) + 1.0,
                                 CrossingForm::Sup, opts);
  RobustResult r;
  r.value = r.x_star = cr.x_star;
  r.nominal = m;
  r.inflation = r.value - m;
  r.iterations = cr.iterations;
  r.achieved_tol = std::max(cr.width, 1e-15 * (1.0 + std::abs(r.value)));
  return r;
}

}  // namespace levar
