#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levar/classical.hpp"
#include "levar/distribution.hpp"
#include "levar/lambda.hpp"

namespace levar {

/// A family of risk measures indexed by a confidence level, increasing in
/// the level: VaR, ES, or EVaR of order p.
class BaseMeasureFamily {
 public:
  enum class Kind { Var, Es, Evar };

  static BaseMeasureFamily var() { return {Kind::Var, 1.0}; }
  static BaseMeasureFamily es() { return {Kind::Es, 1.0}; }
  static BaseMeasureFamily evar(double p);

  Kind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  std::string name() const;

  /// rho_alpha(d).
  double at(const DiscreteDistribution& d, double alpha,
            const EvarOptions& opts = {}) const;

 private:
  BaseMeasureFamily(Kind k, double p) : kind_(k), p_(p) {}
  Kind kind_;
  double p_;
};

struct CrossingOptions {
  /// Bisection stops once hi - lo <= width_tol · (1 + |lo| + |hi|), or when
  /// the midpoint is no longer representable.
  double width_tol = 1e-15;
  int max_iter = 200;
};

struct LiftOptions {
  CrossingOptions crossing;
  EvarOptions inner;
};

struct LambdaRiskResult {
  double value = 0.0;
  double x_star = 0.0;
  /// Minimizer interval of the inner EVaR problem at level Λ(x_star);
  /// absent for Λ-VaR.
  std::optional<std::pair<double, double>> t_interval;
  /// Inner minimizer chosen by the extended Rockafellar-Uryasev solve.
  std::optional<double> t_star;
  bool attained = false;
  int iterations = 0;
  double achieved_tol = 0.0;
};

/// Result of the generic crossing solver.
struct CrossingResult {
  double x_star;
  int iterations;
  double width;
  bool at_jump;
};

enum class CrossingForm {
  Sup,  // sup{x : g(x) >= x}
  Inf,  // inf{x : g(x) <= x}
};

/// Solves for the crossing of x ↦ g(x) = phi(Λ(x)) with the identity, where
/// phi is increasing in the level, so g is decreasing. Requires
/// g(lo) > lo and g(hi) < hi. At a jump of Λ the crossing snaps to the jump
/// location when the sandwich condition holds there.
CrossingResult solve_crossing(const std::function<double(double)>& phi,
                              const LambdaFunction& lambda, double lo, double hi,
                              CrossingForm form, const CrossingOptions& opts = {});

/// rho_Λ(X) = sup_x min(rho_{Λ(x)}(X), x).
LambdaRiskResult lambda_lift(const DiscreteDistribution& d, const BaseMeasureFamily& family,
                             const LambdaFunction& lambda, const LiftOptions& opts = {});

/// inf_x max(rho_{Λ(x)}(X), x).
double lambda_lift_inf(const DiscreteDistribution& d, const BaseMeasureFamily& family,
                       const LambdaFunction& lambda, const LiftOptions& opts = {});

/// EVaR^p_{Λ(x+)}(X) <= x <= EVaR^p_{Λ(x-)}(X), each side within tol.
bool sandwich_check(const DiscreteDistribution& d, double p, const LambdaFunction& lambda,
                    double x, double tol, const EvarOptions& opts = {});

/// T_Λ(t, x) = max(t + (1/(1-Λ(x)))^{1/p} ||(X-t)_+||_p, x), with 0/0 = 0
/// and c/0 = inf for c > 0.
double t_lambda(const DiscreteDistribution& d, double p, const LambdaFunction& lambda,
                double t, double x);

/// Joint minimization of T_Λ over (t, x). Λ must be right-continuous.
LambdaRiskResult extended_ru(const DiscreteDistribution& d, double p,
                             const LambdaFunction& lambda, const LiftOptions& opts = {});

/// Grid search over the simplex of sup_Q min(E_Q[X], a(Q)) with
/// a(Q) = sup{x : Λ(x) >= 1 - exp(-H_q(Q|P))}. Support size at most 3.
double lambda_evar_dual_oracle(const DiscreteDistribution& d, double p,
                               const LambdaFunction& lambda, int resolution);

struct SweepRow {
  double x;
  double g;      // rho_{Λ(x)}(X)
  double lower;  // min(g, x)
  double upper;  // max(g, x)
};

/// g(x) = rho_{Λ(x)}(X) on n + 1 equally spaced points from lo to hi.
/// Inner values are memoized by level.
std::vector<SweepRow> sweep(const DiscreteDistribution& d, const BaseMeasureFamily& family,
                            const LambdaFunction& lambda, double lo, double hi, int n,
                            const EvarOptions& opts = {});

/// max{min(EVaR_a1, 0), min(EVaR_a2, 0), EVaR_a3} for Λ equal to a1 on
/// (-inf, 0), a2 at 0 and a3 on (0, inf).
double homogeneous_form_value(const DiscreteDistribution& d, double p, double alpha1,
                              double alpha2, double alpha3, const EvarOptions& opts = {});

}  // namespace levar
