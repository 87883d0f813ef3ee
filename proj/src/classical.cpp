#include "levar/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "golden.hpp"
#include "levar/detail/simplex.hpp"
#include "levar/error.hpp"

namespace levar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_order(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("evar: order p must be finite and >= 1, got " + std::to_string(p));
  }
}

void check_level(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError("evar: level must lie in [0,1], got " + std::to_string(alpha));
  }
}

double powp(double e, double p) {
  if (p == 1.0) return e;
  if (p == 2.0) return e * e;
  return std::pow(e, p);
}

// Objective without argument checks; alpha in [0,1).
class Objective {
 public:
  Objective(const DiscreteDistribution& d, double p, double alpha)
      : atoms_(d.atoms()), p_(p), tail_(1.0 - alpha) {}

  double operator()(double t) const {
    double m = 0.0;
    for (const auto& a : atoms_) {
      const double e = a.value - t;
      if (e > 0.0) m += a.prob * powp(e, p_);
    }
    if (p_ == 1.0) return t + m / tail_;
    return t + std::pow(m / tail_, 1.0 / p_);
  }

  // One-sided derivatives. The objective is convex, so both are
  // non-decreasing in t.
  double right_slope(double t) const {
    if (p_ == 1.0) {
      double above = 0.0;
      for (const auto& a : atoms_) {
        if (a.value > t) above += a.prob;
      }
      return 1.0 - above / tail_;
    }
    return smooth_slope(t);
  }

  double left_slope(double t) const {
    if (p_ == 1.0) {
      double at_or_above = 0.0;
      for (const auto& a : atoms_) {
        if (a.value >= t) at_or_above += a.prob;
      }
      return 1.0 - at_or_above / tail_;
    }
    const double s = smooth_slope(t);
    if (s != 1.0) return s;
    // Nothing strictly above t: the limit from the left is driven by the
    // mass sitting at t.
    double at = 0.0;
    for (const auto& a : atoms_) {
      if (a.value == t) at += a.prob;
    }
    return at == 0.0 ? 1.0 : 1.0 - std::pow(at / tail_, 1.0 / p_);
  }

 private:
  double smooth_slope(double t) const {
    double mp = 0.0, mq = 0.0;
    for (const auto& a : atoms_) {
      const double e = a.value - t;
      if (e > 0.0) {
        const double ep1 = powp(e, p_ - 1.0);
        mq += a.prob * ep1;
        mp += a.prob * ep1 * e;
      }
    }
    if (mp == 0.0) return 1.0;
    // d/dt (m_p / tail)^{1/p} = -(m_{p-1}/tail) · (m_p/tail)^{1/p - 1}
    return 1.0 - (mq / tail_) * std::pow(mp / tail_, 1.0 / p_ - 1.0);
  }

  const std::vector<Atom>& atoms_;
  double p_;
  double tail_;
};

struct Minimum {
  double t;
  double value;
  double width;
  int iterations;
};

Minimum minimize_objective(const DiscreteDistribution& d, const Objective& f,
                           const EvarOptions& opts) {
  const double range = d.range();
  double lo = d.essinf() - range;
  const double hi = d.esssup();
  double w = range;
  double flo = f(lo);
  int doublings = 0;
  while (doublings < opts.max_doublings) {
    ++doublings;
    const double next = lo - w;
    const double fnext = f(next);
    lo = next;
    w *= 2.0;
    if (!(fnext < flo)) break;
    flo = fnext;
  }

  const auto kinks = d.values();
  const auto g = detail::golden_minimize(f, lo, hi, opts.rel_tol * (1.0 + range),
                                         opts.max_iter, kinks);
  return {g.x, g.fx, g.hi - g.lo, g.iterations + doublings};
}

// Boundary of a monotone predicate by bisection to machine precision.
// `good` satisfies pred, `bad` does not.
template <class Pred>
double bisect_boundary(Pred&& pred, double good, double bad, int max_iter = 200) {
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (good + bad);
    if (mid == good || mid == bad) break;
    (pred(mid) ? good : bad) = mid;
  }
  return good;
}

// Searches outward from `start` (stepping left) for a point where pred is
// false. Returns -inf if none is found.
template <class Pred>
double find_left_failure(Pred&& pred, double start, double step, int max_doublings) {
  for (int k = 0; k < max_doublings; ++k) {
    const double t = start - step;
    if (!pred(t)) return t;
    step *= 2.0;
  }
  return -kInf;
}

// Minimizer interval {t : f'(t-) <= 0 <= f'(t+)} with slope tolerance.
void recover_interval(const DiscreteDistribution& d, const Objective& f, double t_best,
                      const EvarOptions& opts, double& t_lo, double& t_hi) {
  const double eta = opts.slope_tol;
  const double step0 = std::max(d.range(), 1.0);
  auto lower_ok = [&](double t) { return f.right_slope(t) >= -eta; };
  auto upper_ok = [&](double t) { return f.left_slope(t) <= eta; };

  const double lo_good = lower_ok(t_best) ? t_best : d.esssup();
  const double lo_bad = find_left_failure(lower_ok, std::min(lo_good, d.essinf()), step0,
                                          opts.max_doublings);
  t_lo = std::isinf(lo_bad) ? -kInf : bisect_boundary(lower_ok, lo_good, lo_bad);

  double hi_good;
  if (upper_ok(t_best)) {
    hi_good = t_best;
  } else if (!std::isinf(lo_bad)) {
    hi_good = lo_bad;
  } else {
    hi_good = -kInf;
    double step = step0;
    for (int k = 0; k < opts.max_doublings; ++k) {
      const double t = t_best - step;
      if (upper_ok(t)) {
        hi_good = t;
        break;
      }
      step *= 2.0;
    }
  }
  if (std::isinf(hi_good)) {
    t_hi = -kInf;
  } else {
    const double hi_bad = d.esssup() + step0;
    t_hi = bisect_boundary(upper_ok, hi_good, hi_bad);
  }
  if (t_hi < t_lo) t_lo = t_hi = t_best;

  // A minimizer interval with positive length always has atoms as its finite
  // endpoints: f is piecewise linear for p = 1, and for p > 1 it is flat only
  // where a single atom lies above t. Slope tolerances leave endpoint errors
  // of order eta^{1/(p-1)}, so finite endpoints are snapped to atoms that
  // pass a near-exact optimality test.
  constexpr double kStrict = 1e-12;
  const double margin = 1e-9 * (1.0 + d.range());
  double first = kInf, last = -kInf;
  for (const auto& a : d.atoms()) {
    if (a.value < t_lo - margin || a.value > t_hi + margin) continue;
    if (f.left_slope(a.value) <= kStrict && f.right_slope(a.value) >= -kStrict) {
      first = std::min(first, a.value);
      last = std::max(last, a.value);
    }
  }
  if (std::isfinite(first)) {
    if (std::isfinite(t_lo)) t_lo = first;
    if (std::isfinite(t_hi)) t_hi = last;
  }
}

}  // namespace

EntropyBudget EntropyBudget::from(double p, double alpha) {
  check_order(p);
  if (!(alpha >= 0.0 && alpha < 1.0)) throw DomainError("entropy budget: level must lie in [0,1)");
  const double q = p == 1.0 ? kInf : p / (p - 1.0);
  return {q, -std::log1p(-alpha)};
}

double evar_objective(const DiscreteDistribution& d, double p, double alpha, double t) {
  check_order(p);
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw DomainError("evar_objective: level must lie in [0,1)");
  }
  if (!std::isfinite(t)) throw DomainError("evar_objective: t must be finite");
  return Objective(d, p, alpha)(t);
}

double evar_value(const DiscreteDistribution& d, double p, double alpha,
                  const EvarOptions& opts) {
  check_order(p);
  check_level(alpha);
  if (alpha == 1.0 || d.size() == 1) return d.esssup();
  if (alpha == 0.0 && p > 1.0) return d.mean();
  const Objective f(d, p, alpha);
  return minimize_objective(d, f, opts).value;
}

EvarSolution evar(const DiscreteDistribution& d, double p, double alpha,
                  const EvarOptions& opts) {
  check_order(p);
  check_level(alpha);
  const double top = d.esssup();
  if (alpha == 1.0) return {top, top, top, top, 0, 0.0};
  if (d.size() == 1) return {top, alpha == 0.0 ? -kInf : top, top, top, 0, 0.0};

  const Objective f(d, p, alpha);
  EvarSolution sol;
  double t_best;
  double width;
  if (alpha == 0.0 && p > 1.0) {
    // The infimum E[X] is approached only as t -> -inf.
    sol.value = d.mean();
    t_best = d.essinf();
    width = 0.0;
  } else {
    const auto m = minimize_objective(d, f, opts);
    sol.value = m.value;
    sol.iterations = m.iterations;
    t_best = m.t;
    width = m.width;
  }

  recover_interval(d, f, t_best, opts, sol.t_lo, sol.t_hi);
  if (alpha == 0.0 && p > 1.0) {
    sol.t_lo = -kInf;
    sol.t_star = -kInf;
  } else {
    sol.t_star = std::clamp(t_best, sol.t_lo, sol.t_hi);
  }

  double excess = 0.0;
  for (double t : {sol.t_lo, sol.t_hi}) {
    if (std::isfinite(t)) excess = std::max(excess, f(t) - sol.value);
  }
  sol.achieved_tol = std::max(width, excess);
  return sol;
}

namespace {

// Unchecked Rényi entropy; the caller guarantees valid probability vectors.
double renyi_unchecked(std::span<const double> qw, std::span<const double> pw, double q) {
  const std::size_t n = qw.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (qw[i] > 0.0 && pw[i] == 0.0) return kInf;
  }
  if (q == 1.0) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (qw[i] > 0.0) s += qw[i] * std::log(qw[i] / pw[i]);
    }
    return s;
  }
  if (std::isinf(q)) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (qw[i] > 0.0) m = std::max(m, qw[i] / pw[i]);
    }
    return std::log(m);
  }
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pw[i] > 0.0 && qw[i] > 0.0) s += pw[i] * powp(qw[i] / pw[i], q);
  }
  return std::log(s) / (q - 1.0);
}

void check_probability_vector(std::span<const double> w, const char* what) {
  double s = 0.0;
  for (double x : w) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw InputError(std::string("renyi_entropy: ") + what + " has a negative entry");
    }
    s += x;
  }
  if (std::abs(s - 1.0) > 1e-9) {
    throw InputError(std::string("renyi_entropy: ") + what + " does not sum to 1");
  }
}

}  // namespace

double renyi_entropy(std::span<const double> q_weights, std::span<const double> p_weights,
                     double q) {
  if (q_weights.size() != p_weights.size() || q_weights.empty()) {
    throw InputError("renyi_entropy: weight vectors differ in length");
  }
  if (!(q >= 1.0)) throw DomainError("renyi_entropy: order q must be >= 1");
  check_probability_vector(q_weights, "Q");
  check_probability_vector(p_weights, "P");
  return renyi_unchecked(q_weights, p_weights, q);
}

double evar_dual_oracle(const DiscreteDistribution& d, double p, double alpha,
                        int resolution) {
  if (d.size() > 4) throw DomainError("evar_dual_oracle: support larger than 4");
  if (resolution < 100) throw DomainError("evar_dual_oracle: resolution must be >= 100");
  if (!(p > 1.0)) throw DomainError("evar_dual_oracle: p must be > 1");
  const auto budget = EntropyBudget::from(p, alpha);
  const double cap = budget.bound * (1.0 + 1e-14) + 1e-15;

  const auto x = d.values();
  const auto pw = d.probs();
  double best = d.mean();  // Q = P is always feasible
  detail::for_each_simplex_point(x.size(), resolution, [&](const std::vector<double>& qw) {
    double eq = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) eq += qw[i] * x[i];
    if (eq <= best) return;
    if (renyi_unchecked(qw, pw, budget.q) <= cap) best = eq;
  });
  return best;
}

}  // namespace levar
