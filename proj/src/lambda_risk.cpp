#include "levar/lambda_risk.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "golden.hpp"
#include "levar/detail/simplex.hpp"
#include "levar/error.hpp"

namespace levar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_order(double p, const char* who) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError(std::string(who) + ": order p must be finite and >= 1");
  }
}

// Floor on the reported accuracy; covers rounding inside the inner solves.
double noise_floor(double x) { return 1e-12 * (1.0 + std::abs(x)); }

}  // namespace

BaseMeasureFamily BaseMeasureFamily::evar(double p) {
  check_order(p, "evar family");
  return {Kind::Evar, p};
}

std::string BaseMeasureFamily::name() const {
  switch (kind_) {
    case Kind::Var:
      return "var";
    case Kind::Es:
      return "es";
    case Kind::Evar:
      break;
  }
  return "evar";
}

double BaseMeasureFamily::at(const DiscreteDistribution& d, double alpha,
                             const EvarOptions& opts) const {
  switch (kind_) {
    case Kind::Var:
      return quantile(d, alpha);
    case Kind::Es:
      return expected_shortfall(d, alpha);
    case Kind::Evar:
      break;
  }
  if (alpha == 1.0) return d.esssup();
  return evar_value(d, p_, alpha, opts);
}

CrossingResult solve_crossing(const std::function<double(double)>& phi,
                              const LambdaFunction& lambda, double lo, double hi,
                              CrossingForm form, const CrossingOptions& opts) {
  std::map<double, double> memo;
  auto at_level = [&](double a) {
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    const double v = phi(a);
    memo.emplace(a, v);
    return v;
  };
  auto g = [&](double x) { return at_level(lambda(x)); };
  // True strictly left of the crossing.
  auto left_side = [&](double x) {
    const double gx = g(x);
    return form == CrossingForm::Sup ? gx >= x : gx > x;
  };

  if (!(lo < hi)) throw SolverError("crossing: empty bracket");
  if (!left_side(lo) || left_side(hi)) {
    throw SolverError("crossing: bracket does not enclose the crossing");
  }
  int it = 0;
  while (it < opts.max_iter) {
    if (hi - lo <= opts.width_tol * (1.0 + std::abs(lo) + std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ++it;
    (left_side(mid) ? lo : hi) = mid;
  }
  const double w = hi - lo;
  const double mid = 0.5 * (lo + hi);

  bool snapped = false;
  double best = 0.0;
  for (double k : lambda.jump_points()) {
    if (k < lo - w || k > hi + w) continue;
    const double eps = 1e-12 * (1.0 + std::abs(k));
    if (at_level(lambda.right_limit(k)) <= k + eps && k <= at_level(lambda.left_limit(k)) + eps) {
      if (!snapped || std::abs(k - mid) < std::abs(best - mid)) best = k;
      snapped = true;
    }
  }
  if (snapped) return {best, it, w, true};
  return {std::clamp(g(mid), lo, hi), it, w, false};
}

LambdaRiskResult lambda_lift(const DiscreteDistribution& d, const BaseMeasureFamily& family,
                             const LambdaFunction& lambda, const LiftOptions& opts) {
  auto phi = [&](double a) { return family.at(d, a, opts.inner); };
  const auto cr = solve_crossing(phi, lambda, d.essinf() - 1.0, d.esssup() + 1.0,
                                 CrossingForm::Sup, opts.crossing);
  LambdaRiskResult r;
  r.value = r.x_star = cr.x_star;
  r.attained = lambda.is_left_continuous();
  r.iterations = cr.iterations;
  r.achieved_tol = std::max(cr.width, noise_floor(cr.x_star));
  if (family.kind() != BaseMeasureFamily::Kind::Var) {
    const double level = lambda(cr.x_star);
    const auto sol = evar(d, family.p(), level, opts.inner);
    r.t_interval = std::make_pair(sol.t_lo, sol.t_hi);
  }
  return r;
}

double lambda_lift_inf(const DiscreteDistribution& d, const BaseMeasureFamily& family,
                       const LambdaFunction& lambda, const LiftOptions& opts) {
  auto phi = [&](double a) { return family.at(d, a, opts.inner); };
  return solve_crossing(phi, lambda, d.essinf() - 1.0, d.esssup() + 1.0, CrossingForm::Inf,
                        opts.crossing)
      .x_star;
}

bool sandwich_check(const DiscreteDistribution& d, double p, const LambdaFunction& lambda,
                    double x, double tol, const EvarOptions& opts) {
  const auto fam = BaseMeasureFamily::evar(p);
  const double upper = fam.at(d, lambda.right_limit(x), opts);
  const double lower = fam.at(d, lambda.left_limit(x), opts);
  return upper <= x + tol && x <= lower + tol;
}

namespace {

// t + (m_p / (1 - level))^{1/p} with 0/0 = 0 and c/0 = inf.
double ru_inner(const DiscreteDistribution& d, double p, double level, double t) {
  const double m = partial_moment(d, t, p);
  const double tail = 1.0 - level;
  if (tail == 0.0) return m == 0.0 ? t : kInf;
  if (p == 1.0) return t + m / tail;
  return t + std::pow(m / tail, 1.0 / p);
}

}  // namespace

double t_lambda(const DiscreteDistribution& d, double p, const LambdaFunction& lambda,
                double t, double x) {
  check_order(p, "t_lambda");
  if (!std::isfinite(t) || !std::isfinite(x)) throw DomainError("t_lambda: t and x must be finite");
  return std::max(ru_inner(d, p, lambda(x), t), x);
}

LambdaRiskResult extended_ru(const DiscreteDistribution& d, double p,
                             const LambdaFunction& lambda, const LiftOptions& opts) {
  check_order(p, "extended_ru");
  if (!lambda.is_right_continuous()) {
    throw DomainError("extended_ru: the level function must be right-continuous");
  }
  const double range = d.range();
  const auto kinks = d.values();

  // min over t of T_Λ(t, x), memoized by level.
  std::map<double, double> memo;
  auto inner_min = [&](double x) {
    const double level = lambda(x);
    auto it = memo.find(level);
    double g;
    if (it != memo.end()) {
      g = it->second;
    } else {
      if (level == 1.0 || d.size() == 1) {
        g = d.esssup();
      } else if (level == 0.0 && p > 1.0) {
        g = d.mean();
      } else {
        auto f = [&](double t) { return ru_inner(d, p, level, t); };
        double lo = d.essinf() - range;
        double w = std::max(range, 1.0);
        double flo = f(lo);
        for (int k = 0; k < opts.inner.max_doublings; ++k) {
          const double next = lo - w;
          const double fnext = f(next);
          lo = next;
          w *= 2.0;
          if (!(fnext < flo)) break;
          flo = fnext;
        }
        g = detail::golden_minimize(f, lo, d.esssup(), opts.inner.rel_tol * (1.0 + range),
                                    opts.inner.max_iter, kinks)
                .fx;
      }
      memo.emplace(level, g);
    }
    return std::max(g, x);
  };

  // {x : min_t T(t, x) <= x} is [x*, inf) for right-continuous Λ.
  double lo = d.essinf() - 1.0, hi = d.esssup() + 1.0;
  int iters = 0;
  while (iters < opts.crossing.max_iter) {
    if (hi - lo <= opts.crossing.width_tol * (1.0 + std::abs(lo) + std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ++iters;
    (inner_min(mid) > mid ? lo : hi) = mid;
  }
  double x_star = hi;
  for (double k : lambda.jump_points()) {
    if (k > lo && k <= hi && inner_min(k) <= k) {
      x_star = k;
      break;
    }
  }

  const double level = lambda(x_star);
  LambdaRiskResult r;
  r.x_star = x_star;
  r.attained = true;
  r.iterations = iters;
  if (level == 1.0) {
    const double top = d.esssup();
    r.t_interval = std::make_pair(top, top);
    r.t_star = top;
  } else {
    const auto sol = evar(d, p, level, opts.inner);
    r.t_interval = std::make_pair(sol.t_lo, sol.t_hi);
    r.t_star = sol.t_star;
  }
  r.value = std::isfinite(*r.t_star) ? std::max(ru_inner(d, p, level, *r.t_star), x_star)
                                     : std::max(d.mean(), x_star);
  r.achieved_tol =
      std::max({hi - lo, std::abs(r.value - x_star), noise_floor(x_star)});

  const auto lift = lambda_lift(d, BaseMeasureFamily::evar(p), lambda, opts);
  if (std::abs(lift.value - x_star) > 1e-6 * (1.0 + std::abs(lift.value))) {
    throw SolverError("extended_ru: crossing disagrees with the lifted value");
  }
  return r;
}

double lambda_evar_dual_oracle(const DiscreteDistribution& d, double p,
                               const LambdaFunction& lambda, int resolution) {
  if (d.size() > 3) throw DomainError("lambda_evar_dual_oracle: support larger than 3");
  if (resolution < 200) throw DomainError("lambda_evar_dual_oracle: resolution must be >= 200");
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("lambda_evar_dual_oracle: p must be > 1");
  const double q = p / (p - 1.0);
  const auto x = d.values();
  const auto pw = d.probs();

  // Q = P has zero entropy, so its cap is sup{x : Λ(x) >= 0} = +inf.
  double best = d.mean();
  detail::for_each_simplex_point(x.size(), resolution, [&](const std::vector<double>& qw) {
    double eq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) eq += qw[i] * x[i];
    if (eq <= best) return;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (qw[i] > 0.0 && pw[i] == 0.0) return;
    }
    const double h = renyi_entropy(qw, pw, q);
    if (std::isinf(h)) return;
    // Small slack keeps boundary measures such as Q = δ_max feasible.
    const double c = std::max(0.0, -std::expm1(-h) - 1e-13);
    const double a = lambda.superlevel_sup(c);
    best = std::max(best, std::min(eq, a));
  });
  return best;
}

std::vector<SweepRow> sweep(const DiscreteDistribution& d, const BaseMeasureFamily& family,
                            const LambdaFunction& lambda, double lo, double hi, int n,
                            const EvarOptions& opts) {
  if (n < 1) throw InputError("sweep: need at least one interval");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InputError("sweep: need finite bounds with lo < hi");
  }
  std::map<double, double> memo;
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(n) + 1);
  const double h = (hi - lo) / n;
  for (int i = 0; i <= n; ++i) {
    const double x = i == n ? hi : lo + i * h;
    const double level = lambda(x);
    auto it = memo.find(level);
    if (it == memo.end()) it = memo.emplace(level, family.at(d, level, opts)).first;
    const double g = it->second;
    rows.push_back({x, g, std::min(g, x), std::max(g, x)});
  }
  return rows;
}

double homogeneous_form_value(const DiscreteDistribution& d, double p, double alpha1,
                              double alpha2, double alpha3, const EvarOptions& opts) {
  if (!(alpha1 <= 1.0 && alpha1 >= alpha2 && alpha2 >= alpha3 && alpha3 >= 0.0)) {
    throw DomainError("homogeneous_form_value: need 1 >= alpha1 >= alpha2 >= alpha3 >= 0");
  }
  const auto fam = BaseMeasureFamily::evar(p);
  const double e1 = fam.at(d, alpha1, opts);
  const double e2 = fam.at(d, alpha2, opts);
  const double e3 = fam.at(d, alpha3, opts);
  return std::max({std::min(e1, 0.0), std::min(e2, 0.0), e3});
}

}  // namespace levar
