#include "levar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "format.hpp"
#include "levar/classical.hpp"
#include "levar/error.hpp"
#include "levar/lambda_risk.hpp"
#include "levar/robust.hpp"

namespace levar {

DiscreteDistribution random_distribution(Rng& rng, int max_support) {
  const int n = rng.integer(1, std::max(1, max_support));
  std::vector<double> v(n), w(n);
  // A quarter of the laws use a coarse lattice so that ties and atoms at
  // Λ knots show up.
  const bool lattice = rng.integer(0, 3) == 0;
  for (int i = 0; i < n; ++i) {
    v[i] = rng.uniform(-10.0, 10.0);
    if (lattice) v[i] = std::round(v[i] * 2.0) / 2.0;
    w[i] = rng.uniform(0.05, 1.0);
  }
  return make_distribution(v, w);
}

LambdaFunction random_lambda(Rng& rng, bool below_one) {
  const double cap = below_one ? 0.95 : 1.0;
  const int kind = rng.integer(0, 3);
  if (kind <= 1) {
    const int n = rng.integer(1, 3);
    std::vector<double> x(n), l(n + 1);
    for (auto& t : x) t = rng.uniform(-10.0, 10.0);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    l.resize(x.size() + 1);
    for (auto& a : l) a = rng.uniform(0.0, cap);
    std::sort(l.begin(), l.end(), std::greater<>());
    if (!below_one && rng.integer(0, 4) == 0) l.front() = 1.0;
    return LambdaFunction::step(x, l, kind == 0 ? Continuity::Left : Continuity::Right);
  }
  if (kind == 2) {
    const int n = rng.integer(2, 4);
    std::vector<double> x(n), l(n);
    for (auto& t : x) t = rng.uniform(-10.0, 10.0);
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    l.resize(x.size());
    for (auto& a : l) a = rng.uniform(0.0, cap);
    std::sort(l.begin(), l.end(), std::greater<>());
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < x.size(); ++i) pts.emplace_back(x[i], l[i]);
    return LambdaFunction::piecewise_linear(pts);
  }
  return LambdaFunction::constant(rng.uniform(0.0, cap));
}

namespace {

using detail::json_number;

std::string json_dist(const DiscreteDistribution& d) {
  std::string out = "[";
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) out += ',';
    out += '[' + json_number(d.atoms()[i].value) + ',' + json_number(d.atoms()[i].prob) + ']';
  }
  return out + ']';
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

// Per-case state handed to each property.
struct Case {
  Rng rng;
  const CampaignConfig& cfg;
  std::string payload;  // comma-separated JSON members
  bool skip = false;

  void note(const std::string& key, const std::string& json) {
    if (!payload.empty()) payload += ',';
    payload += json_string(key) + ':' + json;
  }
  void note(const std::string& key, double x) { note(key, json_number(x)); }
  void note(const std::string& key, const DiscreteDistribution& d) { note(key, json_dist(d)); }
  void note(const std::string& key, const LambdaFunction& l) { note(key, l.describe()); }

  DiscreteDistribution dist(const std::string& key) {
    auto d = random_distribution(rng, cfg.max_support);
    note(key, d);
    return d;
  }
  LambdaFunction lambda(const std::string& key, bool below_one = false) {
    auto l = random_lambda(rng, below_one);
    note(key, l);
    return l;
  }
  double p() {
    const double v = rng.pick(cfg.p_grid);
    note("p", v);
    return v;
  }
  /// Random scenario table with columns X and Y.
  ScenarioTable table(int n_min = 1) {
    const int n = rng.integer(n_min, std::max(n_min, cfg.max_support));
    std::vector<double> w(n), x(n), y(n);
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      w[i] = rng.uniform(0.05, 1.0);
      s += w[i];
      x[i] = rng.uniform(-10.0, 10.0);
      y[i] = rng.uniform(-10.0, 10.0);
    }
    for (auto& a : w) a /= s;
    std::string js = "{\"weights\":[";
    for (int i = 0; i < n; ++i) js += (i ? "," : "") + json_number(w[i]);
    js += "],\"X\":[";
    for (int i = 0; i < n; ++i) js += (i ? "," : "") + json_number(x[i]);
    js += "],\"Y\":[";
    for (int i = 0; i < n; ++i) js += (i ? "," : "") + json_number(y[i]);
    note("table", js + "]}");
    return ScenarioTable(w, {{"X", x}, {"Y", y}});
  }
};

// Returns the excess of the checked quantity over its allowed bound; the case
// passes when the excess is at most the property tolerance. Must-fail
// properties return the observed margin instead.
using Check = std::function<double(Case&)>;

struct Property {
  std::string name;
  double tolerance;
  Check check;
  bool must_fail = false;
};

double lift(const DiscreteDistribution& d, double p, const LambdaFunction& l) {
  return lambda_lift(d, BaseMeasureFamily::evar(p), l).value;
}

double lift_es(const DiscreteDistribution& d, const LambdaFunction& l) {
  return lambda_lift(d, BaseMeasureFamily::es(), l).value;
}

BaseMeasureFamily random_family(Case& c) {
  switch (c.rng.integer(0, 2)) {
    case 0:
      c.note("family", "\"var\"");
      return BaseMeasureFamily::var();
    case 1:
      c.note("family", "\"es\"");
      return BaseMeasureFamily::es();
    default:
      break;
  }
  const double p = c.p();
  c.note("family", "\"evar\"");
  return BaseMeasureFamily::evar(p);
}

// Counterexample Λ; rescaled to follow an affine change of units.
LambdaFunction counterexample_lambda(double s, double b) {
  return LambdaFunction::step({1.5}, {0.6, 0.2}, Continuity::Left).rescaled_argument(s, b);
}

std::vector<Property> make_properties() {
  std::vector<Property> ps;
  auto add = [&](std::string name, double tol, Check f, bool must_fail = false) {
    ps.push_back({std::move(name), tol, std::move(f), must_fail});
  };

  // Distribution algebra.
  add("quantile_monotone", 0.0, [](Case& c) {
    const auto d = c.dist("X");
    double prev = quantile(d, 0.0), worst = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 50; ++k) {
      const double q = quantile(d, k / 50.0);
      worst = std::max(worst, prev - q);
      prev = q;
    }
    return worst;
  });
  add("es_dominates_var", 1e-12, [](Case& c) {
    const auto d = c.dist("X");
    double worst = -1.0, prev = expected_shortfall(d, 0.0);
    for (int k = 0; k <= 50; ++k) {
      const double a = k / 50.0;
      const double es = expected_shortfall(d, a);
      worst = std::max({worst, quantile(d, a) - es, prev - es});
      prev = es;
    }
    return worst;
  });
  add("partial_moment_shape", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p();
    const double h = 0.05;
    auto f = [&](double t) { return std::pow(partial_moment(d, t, p), 1.0 / p); };
    double worst = -1.0;
    for (double t = -12.0; t <= 12.0; t += 0.37) {
      const double a = f(t - h), b = f(t), e = f(t + h);
      worst = std::max({worst, e - b, 2.0 * b - a - e});
    }
    return worst;
  });
  add("wasserstein_triangle", 1e-9, [](Case& c) {
    const auto a = c.dist("A"), b = c.dist("B"), e = c.dist("C");
    const double k = c.rng.coin() ? 1.0 : 2.0;
    c.note("k", k);
    return wasserstein_distance(a, e, k) - wasserstein_distance(a, b, k) -
           wasserstein_distance(b, e, k);
  });

  // Level functions.
  add("lambda_shape", 0.0, [](Case& c) {
    const auto l = c.lambda("lambda");
    std::vector<double> xs;
    for (int i = 0; i < 40; ++i) xs.push_back(c.rng.uniform(-12.0, 12.0));
    for (double k : l.jump_points()) xs.push_back(k);
    std::sort(xs.begin(), xs.end());
    double worst = -1.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double v = l(xs[i]);
      worst = std::max({worst, v - l.left_limit(xs[i]), l.right_limit(xs[i]) - v});
      if (i) worst = std::max(worst, v - l(xs[i - 1]));
    }
    double prev = l.superlevel_sup(0.0);
    for (int k = 1; k <= 20; ++k) {
      const double s = l.superlevel_sup(k / 20.0);
      if (s > prev) worst = std::max(worst, 1.0);
      prev = s;
    }
    return worst;
  });

  // Fixed-level EVaR.
  add("es_reduction", 0.0, [](Case& c) {
    const auto d = c.dist("X");
    double worst = -1.0;
    for (double a : {0.0, 0.1, 0.5, 0.9, 0.99, c.rng.uniform()}) {
      const double es = expected_shortfall(d, a);
      worst = std::max(worst, std::abs(evar_value(d, 1.0, a) - es) - 1e-8 * (1.0 + std::abs(es)));
    }
    return worst;
  });
  add("evar_bounds_monotone", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p();
    double a1 = c.rng.uniform(), a2 = c.rng.uniform();
    if (a1 > a2) std::swap(a1, a2);
    c.note("levels", "[" + json_number(a1) + "," + json_number(a2) + "]");
    const double e1 = evar_value(d, p, a1), e2 = evar_value(d, p, a2);
    return std::max({e1 - e2, d.mean() - e1, e2 - d.esssup()});
  });
  add("evar_translation_scaling", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p();
    const double a = c.rng.uniform(), m = c.rng.uniform(-5.0, 5.0), s = c.rng.uniform(0.0, 3.0);
    c.note("alpha", a);
    c.note("shift", m);
    c.note("scale", s);
    const double v = evar_value(d, p, a);
    return std::max(std::abs(evar_value(d.affine(1.0, m), p, a) - v - m),
                    std::abs(evar_value(d.affine(s, 0.0), p, a) - s * v));
  });
  add("evar_subadditive", 1e-8, [](Case& c) {
    const auto t = c.table();
    const double p = c.p(), a = c.rng.uniform();
    c.note("alpha", a);
    return evar_value(t.combine({{"X", 1.0}, {"Y", 1.0}}), p, a) -
           evar_value(t.column("X"), p, a) - evar_value(t.column("Y"), p, a);
  });
  add("evar_objective_convex", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p(), a = c.rng.uniform(0.0, 0.999);
    c.note("alpha", a);
    const double h = 0.01;
    double worst = -1.0;
    for (int k = 0; k < 30; ++k) {
      const double t = c.rng.uniform(-15.0, 12.0);
      const double f0 = evar_objective(d, p, a, t - h), f1 = evar_objective(d, p, a, t),
                   f2 = evar_objective(d, p, a, t + h);
      worst = std::max(worst, (2.0 * f1 - f0 - f2) / (1.0 + std::abs(f1)));
    }
    return worst;
  });
  add("evar_weak_duality", 1e-12, [](Case& c) {
    std::vector<double> big;
    for (double p : c.cfg.p_grid) {
      if (p > 1.0) big.push_back(p);
    }
    if (big.empty()) {
      c.skip = true;
      return 0.0;
    }
    Rng& r = c.rng;
    const int n = r.integer(2, 3);
    std::vector<double> v(n), w(n);
    for (int i = 0; i < n; ++i) {
      v[i] = r.uniform(-10.0, 10.0);
      w[i] = r.uniform(0.05, 1.0);
    }
    const auto d = make_distribution(v, w);
    c.note("X", d);
    const double p = r.pick(big), a = r.uniform(0.0, 0.95);
    c.note("p", p);
    c.note("alpha", a);
    const double primal = evar_value(d, p, a);
    return (evar_dual_oracle(d, p, a, 100) - primal) / (1.0 + std::abs(primal));
  });

  // Λ lifts.
  add("lift_sup_equals_inf", 0.0, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const auto fam = random_family(c);
    const auto r = lambda_lift(d, fam, l);
    return std::abs(r.value - lambda_lift_inf(d, fam, l)) - 2.0 * r.achieved_tol;
  });
  add("lift_sandwich", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const double p = c.p();
    const auto fam = BaseMeasureFamily::evar(p);
    const double x = lambda_lift(d, fam, l).x_star;
    return std::max(fam.at(d, l.right_limit(x)) - x, x - fam.at(d, l.left_limit(x)));
  });
  add("lift_bounds", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const double v = lift(d, c.p(), l);
    return std::max(d.mean() - v, v - d.esssup());
  });
  add("ru_agreement", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    auto l = c.lambda("lambda");
    if (!l.is_right_continuous()) {
      const auto& s = std::get<StepLambda>(l.variant());
      l = LambdaFunction::step(s.thresholds, s.levels, Continuity::Right);
    }
    const double p = c.p();
    const auto ru = extended_ru(d, p, l);
    const double v = lift(d, p, l);
    double excess = std::max(std::abs(ru.value - v), std::abs(ru.x_star - ru.value));
    const auto [lo, hi] = *ru.t_interval;
    const double t = *ru.t_star;
    if (std::isfinite(t) && (t < lo || t > hi)) excess = std::max(excess, 1.0);
    return excess;
  });
  add("ordering_chain", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const double p = c.p();
    const double v = lambda_lift(d, BaseMeasureFamily::var(), l).value;
    const double e = lift_es(d, l);
    const double r = lift(d, p, l);
    return std::max(v - e, e - r);
  });
  add("axiom_lambda_monotone", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const double p = c.p(), u = c.rng.uniform();
    c.note("factor", u);
    return lift(d, p, l.scaled(u)) - lift(d, p, l);
  });
  add("axiom_monotone", 1e-8, [](Case& c) {
    const auto t = c.table();
    const auto l = c.lambda("lambda");
    const double p = c.p();
    auto x = t.columns().at("X");
    auto y = x;
    for (double& v : y) v += std::abs(c.rng.uniform(-2.0, 2.0));
    const ScenarioTable u(t.weights(), {{"X", x}, {"Y", y}});
    return lift(u.column("X"), p, l) - lift(u.column("Y"), p, l);
  });
  add("axiom_quasi_convex", 1e-8, [](Case& c) {
    const auto t = c.table();
    const auto l = c.lambda("lambda");
    const double p = c.p();
    const double bound = std::max(lift(t.column("X"), p, l), lift(t.column("Y"), p, l));
    double worst = -1.0;
    for (double g : {0.25, 0.5, 0.75, c.rng.uniform()}) {
      worst = std::max(worst, lift(t.combine({{"X", g}, {"Y", 1.0 - g}}), p, l) - bound);
    }
    return worst;
  });
  add("axiom_normalized", 1e-12, [](Case& c) {
    const double m = c.rng.uniform(-10.0, 10.0);
    c.note("point", m);
    const auto l = c.lambda("lambda");
    const auto fam = random_family(c);
    return std::abs(lambda_lift(DiscreteDistribution::point_mass(m), fam, l).value - m) /
           (1.0 + std::abs(m));
  });
  add("axiom_cash_subadditive", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const double p = c.p(), m = c.rng.uniform(0.0, 5.0);
    c.note("cash", m);
    return lift(d.affine(1.0, m), p, l) - lift(d, p, l) - m;
  });
  add("axiom_icx_consistent", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda");
    const double p = c.p();
    // Independent symmetric noise plus a non-negative shift dominates X.
    const double s = c.rng.uniform(0.0, 2.0), m = c.rng.uniform(0.0, 1.0);
    c.note("spread", s);
    c.note("shift", m);
    const auto e = mix(d.affine(1.0, m - s), d.affine(1.0, m + s), 0.5);
    if (!icx_leq(d, e, p + 1.0)) {
      c.skip = true;
      return 0.0;
    }
    return lift(d, p, l) - lift(e, p, l);
  });
  add("axiom_mixture_quasi_concave", 1e-8, [](Case& c) {
    const auto f = c.dist("F"), g = c.dist("G");
    const auto l = c.lambda("lambda");
    const double p = c.p(), w = c.rng.uniform();
    c.note("weight", w);
    return std::min(lift(f, p, l), lift(g, p, l)) - lift(mix(f, g, w), p, l);
  });
  add("lp_continuity_smoke", 0.0, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda", true);
    const auto fam = random_family(c);
    const double base = lambda_lift(d, fam, l).value;
    double worst = -1.0;
    for (double eps : {1e-3, 1e-4}) {
      std::vector<double> v = d.values();
      for (double& x : v) x += c.rng.coin() ? eps : -eps;
      const auto e = make_distribution(v, d.probs());
      worst = std::max(worst, std::abs(lambda_lift(e, fam, l).value - base) - 10.0 * eps);
    }
    return worst;
  });

  // Positive homogeneity structure.
  add("homogeneous_form", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p();
    double a[3] = {c.rng.uniform(), c.rng.uniform(), c.rng.uniform()};
    std::sort(a, a + 3, std::greater<>());
    c.note("levels", "[" + json_number(a[0]) + "," + json_number(a[1]) + "," +
                         json_number(a[2]) + "]");
    const auto l = LambdaFunction::step({0.0}, {a[0], a[2]}, Continuity::Right);
    return std::abs(lift(d, p, l) - homogeneous_form_value(d, p, a[0], a[1], a[2]));
  });
  add("positive_homogeneity", 1e-7, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p();
    double a[2] = {c.rng.uniform(), c.rng.uniform()};
    if (a[0] < a[1]) std::swap(a[0], a[1]);
    const auto l = LambdaFunction::step({0.0}, {a[0], a[1]}, Continuity::Right);
    c.note("lambda", l);
    const double v = lift(d, p, l);
    double worst = -1.0;
    for (double s : {0.5, 2.0, 10.0}) worst = std::max(worst, std::abs(lift(d.affine(s, 0.0), p, l) - s * v));
    return worst;
  });

  // Robust worst cases.
  add("wasserstein_zero_radius", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda", true);
    const double p = c.p();
    return std::abs(worst_case_wasserstein(d, p, l, 0.0).value - lift(d, p, l));
  });
  add("wasserstein_monotone_radius", 1e-9, [](Case& c) {
    const auto d = c.dist("X");
    const auto l = c.lambda("lambda", true);
    const double p = c.p();
    double prev = worst_case_wasserstein(d, p, l, 0.0).value, worst = -1.0;
    for (double delta : {0.1, 0.5, 1.0, 2.0}) {
      const double v = worst_case_wasserstein(d, p, l, delta).value;
      worst = std::max(worst, prev - v);
      prev = v;
    }
    return worst;
  });
  add("wasserstein_constant_level", 1e-8, [](Case& c) {
    const auto d = c.dist("X");
    const double p = c.p(), a = c.rng.uniform(0.0, 0.95), delta = c.rng.uniform(0.0, 3.0);
    c.note("alpha", a);
    c.note("delta", delta);
    const double expect = evar_value(d, p, a) + delta * std::pow(1.0 - a, -1.0 / p);
    return std::abs(worst_case_wasserstein(d, p, LambdaFunction::constant(a), delta).value - expect);
  });
  add("meanvar_constant_level", 0.0, [](Case& c) {
    const double m = c.rng.uniform(-5.0, 5.0), v = c.rng.uniform(0.0, 3.0),
                 a = c.rng.uniform(0.0, 0.95);
    c.note("mean", m);
    c.note("std", v);
    c.note("alpha", a);
    const double expect = m + v * std::sqrt(a / (1.0 - a));
    const double got = worst_case_mean_variance({m, v}, LambdaFunction::constant(a)).value;
    return std::abs(got - expect) - 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(expect));
  });
  add("meanvar_monotone", 1e-12, [](Case& c) {
    const auto l = c.lambda("lambda", true);
    const double m = c.rng.uniform(-5.0, 5.0), v = c.rng.uniform(0.0, 3.0),
                 k = c.rng.uniform(-3.0, 3.0);
    c.note("mean", m);
    c.note("std", v);
    const double base = worst_case_mean_variance({m, v}, l).value;
    const double wider = worst_case_mean_variance({m, v + 0.5}, l).value;
    const double moved =
        worst_case_mean_variance({m + k, v}, l.rescaled_argument(1.0, k)).value;
    return std::max(base - wider, std::abs(moved - base - k) - 1e-12 * (1.0 + std::abs(base)));
  });
  add("meanvar_dominates_two_point", 1e-8, [](Case& c) {
    const auto l = c.lambda("lambda", true);
    const double m = c.rng.uniform(-5.0, 5.0), v = c.rng.uniform(0.0, 3.0);
    const double s = v * c.rng.uniform(), pi = c.rng.uniform(0.05, 0.95);
    const double hi = m + s * std::sqrt((1.0 - pi) / pi), lo = m - s * std::sqrt(pi / (1.0 - pi));
    const auto d = make_distribution(std::vector<double>{lo, hi}, std::vector<double>{1.0 - pi, pi});
    c.note("mean", m);
    c.note("std", v);
    c.note("X", d);
    const double bound = worst_case_mean_variance({m, v}, l).value;
    const double worst = std::max({lambda_lift(d, BaseMeasureFamily::var(), l).value,
                                   lift_es(d, l), lift(d, 2.0, l)});
    return worst - bound;
  });

  // Fixed counterexamples, moved by a random affine change of units.
  auto units = [](Case& c) {
    const double s = c.rng.uniform(1.0, 5.0), b = c.rng.uniform(-5.0, 5.0);
    c.note("scale", s);
    c.note("shift", b);
    return std::make_pair(s, b);
  };
  add(
      "must_fail_cash_additivity", 0.1,
      [units](Case& c) {
        const auto [s, b] = units(c);
        const auto l = counterexample_lambda(s, b);
        const auto x = make_distribution(std::vector<double>{0.0, 1.0},
                                         std::vector<double>{0.6, 0.4})
                           .affine(s, b);
        const double margin = lift_es(x, l) + s - lift_es(x.affine(1.0, s), l);
        // The construction gives exactly 0.5·s; anything else is a bug.
        return std::abs(margin - 0.5 * s) <= 1e-9 * s ? margin : -1.0;
      },
      true);
  add(
      "must_fail_convexity", 0.1,
      [units](Case& c) {
        const auto [s, b] = units(c);
        const auto l = counterexample_lambda(s, b);
        const ScenarioTable t({0.6, 0.4}, {{"X", {b, 2.0 * s + b}}, {"Y", {b, b}}});
        const double z = lift_es(t.combine({{"X", 0.5}, {"Y", 0.5}}), l);
        return z - 0.5 * (lift_es(t.column("X"), l) + lift_es(t.column("Y"), l));
      },
      true);
  add(
      "must_fail_mixture_concavity", 0.1,
      [units](Case& c) {
        const auto [s, b] = units(c);
        const auto l = counterexample_lambda(s, b);
        constexpr double K = 10.0, g = 0.4;
        const auto x = make_distribution(std::vector<double>{-K, 1.0}, std::vector<double>{0.6, 0.4})
                           .affine(s, b);
        const auto y = make_distribution(std::vector<double>{-K, 3.0}, std::vector<double>{0.2, 0.8})
                           .affine(s, b);
        return g * lift_es(x, l) + (1.0 - g) * lift_es(y, l) - lift_es(mix(x, y, g), l);
      },
      true);
  return ps;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::size_t kMaxPayloads = 5;

}  // namespace

std::vector<std::string> property_names() {
  std::vector<std::string> out;
  for (const auto& p : make_properties()) out.push_back(p.name);
  return out;
}

int CampaignReport::total_failed() const {
  int n = 0;
  for (const auto& p : properties) n += p.failed;
  return n;
}

const PropertyStats* CampaignReport::find(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::string CampaignReport::to_json() const {
  std::string out = "{\"seed\":" + std::to_string(config.seed) +
                    ",\"cases\":" + std::to_string(config.cases) +
                    ",\"max_support\":" + std::to_string(config.max_support) + ",\"p_grid\":[";
  for (std::size_t i = 0; i < config.p_grid.size(); ++i) {
    out += (i ? "," : "") + json_number(config.p_grid[i]);
  }
  int passed = 0, failed = 0, skipped = 0;
  for (const auto& p : properties) {
    passed += p.passed;
    failed += p.failed;
    skipped += p.skipped;
  }
  out += "],\"summary\":{\"properties\":" + std::to_string(properties.size()) +
         ",\"passed\":" + std::to_string(passed) + ",\"failed\":" + std::to_string(failed) +
         ",\"skipped\":" + std::to_string(skipped) + "},\"properties\":[";
  for (std::size_t i = 0; i < properties.size(); ++i) {
    const auto& p = properties[i];
    if (i) out += ',';
    out += "{\"name\":" + json_string(p.name) +
           ",\"must_fail\":" + (p.must_fail ? "true" : "false") +
           ",\"tolerance\":" + json_number(p.tolerance) + ",\"passed\":" + std::to_string(p.passed) +
           ",\"failed\":" + std::to_string(p.failed) + ",\"skipped\":" + std::to_string(p.skipped) +
           (p.must_fail ? ",\"min_margin\":" : ",\"worst_violation\":") + json_number(p.worst) +
           ",\"failures\":[";
    for (std::size_t k = 0; k < p.failures.size(); ++k) out += (k ? "," : "") + p.failures[k];
    out += "]}";
  }
  return out + "]}";
}

CampaignReport run_campaign(const CampaignConfig& cfg) {
  if (cfg.cases < 1) throw InputError("campaign: cases must be >= 1");
  if (cfg.max_support < 2) throw InputError("campaign: max_support must be >= 2");
  if (cfg.p_grid.empty()) throw InputError("campaign: p grid is empty");
  for (double p : cfg.p_grid) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("campaign: every p must be >= 1");
  }
  const auto props = make_properties();
  for (const auto& [name, tol] : cfg.tolerances) {
    if (std::none_of(props.begin(), props.end(), [&](const Property& p) { return p.name == name; })) {
      throw InputError("campaign: unknown property '" + name + "' in tolerance overrides");
    }
  }

  CampaignReport report;
  report.config = cfg;
  for (std::size_t pi = 0; pi < props.size(); ++pi) {
    const auto& prop = props[pi];
    PropertyStats st;
    st.name = prop.name;
    st.must_fail = prop.must_fail;
    auto it = cfg.tolerances.find(prop.name);
    st.tolerance = it != cfg.tolerances.end() ? it->second : prop.tolerance;
    st.worst = prop.must_fail ? std::numeric_limits<double>::infinity() : 0.0;

    for (int k = 0; k < cfg.cases; ++k) {
      Case c{Rng(splitmix(cfg.seed ^ splitmix((pi + 1) * 0x100000001ULL + k))), cfg, {}, false};
      double r = 0.0;
      std::string error;
      try {
        r = prop.check(c);
      } catch (const std::exception& e) {
        error = e.what();
      }
      if (c.skip && error.empty()) {
        ++st.skipped;
        continue;
      }
      bool ok;
      if (!error.empty()) {
        ok = false;
      } else if (prop.must_fail) {
        ok = r > st.tolerance;
        st.worst = std::min(st.worst, r);
      } else {
        ok = r <= st.tolerance;
        st.worst = std::max(st.worst, r);
      }
      if (ok) {
        ++st.passed;
        continue;
      }
      ++st.failed;
      if (st.failures.size() < kMaxPayloads) {
        std::string f = "{\"case\":" + std::to_string(k) + ",";
        f += error.empty() ? "\"result\":" + json_number(r) : "\"error\":" + json_string(error);
        st.failures.push_back(f + ",\"inputs\":{" + c.payload + "}}");
      }
    }
    if (prop.must_fail && std::isinf(st.worst)) st.worst = 0.0;
    report.properties.push_back(std::move(st));
  }
  return report;
}

}  // namespace levar
