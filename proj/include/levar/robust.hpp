#pragma once

#include <string>

#include "levar/distribution.hpp"
#include "levar/lambda.hpp"
#include "levar/lambda_risk.hpp"

namespace levar {

struct RobustResult {
  double value = 0.0;
  double x_star = 0.0;
  /// Value without ambiguity: delta = 0, or the point mass at the mean.
  double nominal = 0.0;
  /// value - nominal.
  double inflation = 0.0;
  int iterations = 0;
  double achieved_tol = 0.0;
};

/// sup_x min(EVaR^p_{Λ(x)}(X) + delta·(1-Λ(x))^{-1/p}, x): the worst case of
/// Λ-EVaR over the order-p Wasserstein ball of radius delta around X.
/// Λ must stay below 1.
RobustResult worst_case_wasserstein(const DiscreteDistribution& d, double p,
                                    const LambdaFunction& lambda, double delta,
                                    const LiftOptions& opts = {});

enum class MeanVarianceMeasure { Var, Es, Evar2 };

MeanVarianceMeasure parse_mean_variance_measure(const std::string& name);
std::string to_string(MeanVarianceMeasure m);

/// sup_x min(m + v·sqrt(Λ(x)/(1-Λ(x))), x): the worst case over all laws with
/// mean m and standard deviation at most v. The value is the same for Λ-VaR,
/// Λ-ES and Λ-EVaR of order 2; `measure` only labels the result.
RobustResult worst_case_mean_variance(const MomentSet& ms, const LambdaFunction& lambda,
                                      MeanVarianceMeasure measure = MeanVarianceMeasure::Es,
                                      const CrossingOptions& opts = {});

}  // namespace levar
