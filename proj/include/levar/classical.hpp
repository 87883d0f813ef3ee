#pragma once

#include <limits>
#include <span>

#include "levar/distribution.hpp"

namespace levar {

/// EVaR of order p at one level, with the minimizer interval of the
/// primal objective. Infinite endpoints mean the minimum is approached only
/// as t -> -inf.
struct EvarSolution {
  double value = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  /// The minimizer the solver settled on; lies in [t_lo, t_hi].
  double t_star = 0.0;
  int iterations = 0;
  double achieved_tol = 0.0;
};

/// Entropy cap of the dual problem: q = p/(p-1) and log(1/(1-alpha)).
struct EntropyBudget {
  double q;
  double bound;

  static EntropyBudget from(double p, double alpha);
};

struct EvarOptions {
  /// Golden-section stops once the bracket is narrower than rel_tol·(1+range).
  double rel_tol = 1e-10;
  int max_iter = 200;
  /// Minimizer endpoints are where the one-sided slope of the objective
  /// crosses ±slope_tol.
  double slope_tol = 1e-9;
  int max_doublings = 60;
};

/// t + (1/(1-alpha))^{1/p} · (E[(X-t)_+^p])^{1/p}.
double evar_objective(const DiscreteDistribution& d, double p, double alpha, double t);

/// EVaR^p_alpha with minimizer interval.
EvarSolution evar(const DiscreteDistribution& d, double p, double alpha,
                  const EvarOptions& opts = {});

/// EVaR^p_alpha value only; skips the interval recovery.
double evar_value(const DiscreteDistribution& d, double p, double alpha,
                  const EvarOptions& opts = {});

/// Rényi entropy H_q(dQ/dP) for discrete measures on a common support.
/// q may be +inf. Returns +inf when Q is not absolutely continuous w.r.t. P.
double renyi_entropy(std::span<const double> q_weights, std::span<const double> p_weights,
                     double q);

/// Grid search over the probability simplex (step 1/resolution) for
/// sup E_Q[X] subject to H_q(Q|P) <= log(1/(1-alpha)). A lower bound on
/// EVaR that tightens with resolution. Support size at most 4.
double evar_dual_oracle(const DiscreteDistribution& d, double p, double alpha,
                        int resolution);

}  // namespace levar
