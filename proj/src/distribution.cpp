#include "levar/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "levar/error.hpp"

namespace levar {

namespace {

void check_level(double alpha, const char* what) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainError(std::string(what) + ": level must lie in [0,1], got " +
                      std::to_string(alpha));
  }
}

}  // namespace

DiscreteDistribution DiscreteDistribution::make(std::span<const double> values,
                                                std::span<const double> probs) {
  if (values.empty()) throw InputError("distribution: no atoms");
  if (!probs.empty() && probs.size() != values.size()) {
    throw InputError("distribution: values and probabilities differ in length");
  }

  std::vector<Atom> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) throw InputError("distribution: non-finite value");
    const double w = probs.empty() ? 1.0 : probs[i];
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw InputError("distribution: probabilities must be positive and finite");
    }
    atoms.push_back({v, w});
  }

  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.value < b.value; });

  std::vector<Atom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().value == a.value) {
      merged.back().prob += a.prob;
    } else {
      merged.push_back(a);
    }
  }

  double total = 0.0;
  for (const auto& a : merged) total += a.prob;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw InputError("distribution: probabilities sum to zero");
  }
  if (total != 1.0) {
    for (auto& a : merged) a.prob /= total;
  }
  return DiscreteDistribution(std::move(merged));
}

DiscreteDistribution DiscreteDistribution::point_mass(double value) {
  const double v[] = {value};
  return make(v);
}

double DiscreteDistribution::mean() const noexcept {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.prob * a.value;
  return m;
}

double DiscreteDistribution::variance() const noexcept {
  const double m = mean();
  double s = 0.0;
  for (const auto& a : atoms_) s += a.prob * (a.value - m) * (a.value - m);
  return s;
}

std::vector<double> DiscreteDistribution::values() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.value);
  return out;
}

std::vector<double> DiscreteDistribution::probs() const {
  std::vector<double> out;
  out.reserve(atoms_.size());
  for (const auto& a : atoms_) out.push_back(a.prob);
  return out;
}

DiscreteDistribution DiscreteDistribution::affine(double scale, double shift) const {
  std::vector<double> v;
  v.reserve(atoms_.size());
  for (const auto& a : atoms_) v.push_back(scale * a.value + shift);
  const auto p = probs();
  return make(v, p);
}

double quantile(const DiscreteDistribution& d, double alpha) {
  check_level(alpha, "quantile");
  const auto& atoms = d.atoms();
  if (alpha == 0.0) return atoms.front().value;
  if (alpha == 1.0) return atoms.back().value;
  double cum = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    cum += atoms[i].prob;
    if (cum >= alpha) return atoms[i].value;
  }
  return atoms.back().value;
}

double expected_shortfall(const DiscreteDistribution& d, double alpha) {
  check_level(alpha, "expected_shortfall");
  const auto& atoms = d.atoms();
  if (alpha == 1.0) return atoms.back().value;
  if (alpha == 0.0) return d.mean();

  // Walk down from the top atom, consuming the upper tail mass 1 - alpha.
  const double tail = 1.0 - alpha;
  double remaining = tail;
  double acc = 0.0;
  for (auto it = atoms.rbegin(); it != atoms.rend() && remaining > 0.0; ++it) {
    const double take = std::min(it->prob, remaining);
    acc += take * it->value;
    remaining -= take;
  }
  // Rounding in the probabilities can leave a sliver of mass unassigned.
  if (remaining > 0.0) acc += remaining * atoms.front().value;
  return acc / tail;
}

double partial_moment(const DiscreteDistribution& d, double t, double p) {
  if (!(p >= 1.0)) throw DomainError("partial_moment: p must be >= 1");
  double s = 0.0;
  for (const auto& a : d.atoms()) {
    const double e = a.value - t;
    if (e > 0.0) s += a.prob * (p == 1.0 ? e : std::pow(e, p));
  }
  return s;
}

double wasserstein_distance(const DiscreteDistribution& a,
                            const DiscreteDistribution& b, double k) {
  if (!(k >= 1.0)) throw DomainError("wasserstein_distance: order must be >= 1");
  const auto& xa = a.atoms();
  const auto& xb = b.atoms();

  // Cumulative breakpoints; the last one of each is pinned to exactly 1.
  auto cumulative = [](const std::vector<Atom>& atoms) {
    std::vector<double> c(atoms.size());
    double s = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      s += atoms[i].prob;
      c[i] = s;
    }
    c.back() = 1.0;
    return c;
  };
  const auto ca = cumulative(xa);
  const auto cb = cumulative(xb);

  std::size_t i = 0, j = 0;
  double prev = 0.0;
  double sum = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double next = std::min(ca[i], cb[j]);
    const double len = next - prev;
    if (len > 0.0) {
      const double gap = std::abs(xa[i].value - xb[j].value);
      sum += len * (k == 1.0 ? gap : std::pow(gap, k));
    }
    prev = next;
    const bool adv_a = ca[i] <= next;
    const bool adv_b = cb[j] <= next;
    if (adv_a) ++i;
    if (adv_b) ++j;
  }
  return k == 1.0 ? sum : std::pow(sum, 1.0 / k);
}

DiscreteDistribution mix(const DiscreteDistribution& a, const DiscreteDistribution& b,
                         double lambda) {
  check_level(lambda, "mix");
  std::vector<double> v, w;
  v.reserve(a.size() + b.size());
  w.reserve(a.size() + b.size());
  if (lambda > 0.0) {
    for (const auto& at : a.atoms()) {
      v.push_back(at.value);
      w.push_back(lambda * at.prob);
    }
  }
  if (lambda < 1.0) {
    for (const auto& at : b.atoms()) {
      v.push_back(at.value);
      w.push_back((1.0 - lambda) * at.prob);
    }
  }
  return DiscreteDistribution::make(v, w);
}

namespace {

// ||(X - x)_+||_r, or P(X > x) when r == 0.
double upper_norm(const DiscreteDistribution& d, double x, double r) {
  if (r == 0.0) {
    double s = 0.0;
    for (const auto& a : d.atoms()) {
      if (a.value > x) s += a.prob;
    }
    return s;
  }
  double s = 0.0;
  for (const auto& a : d.atoms()) {
    const double e = a.value - x;
    if (e > 0.0) s += a.prob * std::pow(e, r);
  }
  return std::pow(s, 1.0 / r);
}

}  // namespace

std::vector<double> icx_default_grid(const DiscreteDistribution& a,
                                     const DiscreteDistribution& b) {
  std::set<double> pts;
  for (const auto& at : a.atoms()) pts.insert(at.value);
  for (const auto& at : b.atoms()) pts.insert(at.value);
  std::vector<double> grid(pts.begin(), pts.end());
  const std::size_t n = grid.size();
  for (std::size_t i = 0; i + 1 < n; ++i) grid.push_back(0.5 * (grid[i] + grid[i + 1]));
  const double lo = *pts.begin();
  const double hi = *pts.rbegin();
  grid.push_back(lo - (hi - lo) - 1.0);
  std::sort(grid.begin(), grid.end());
  return grid;
}

bool icx_leq(const DiscreteDistribution& a, const DiscreteDistribution& b, double p,
             std::span<const double> grid) {
  if (!(p >= 1.0)) throw DomainError("icx_leq: p must be >= 1");
  std::vector<double> fallback;
  if (grid.empty()) {
    fallback = icx_default_grid(a, b);
    grid = fallback;
  }
  const double r = p - 1.0;
  for (double x : grid) {
    const double lhs = upper_norm(a, x, r);
    const double rhs = upper_norm(b, x, r);
    if (lhs > rhs + 1e-12 * (1.0 + std::abs(rhs))) return false;
  }
  return true;
}

ScenarioTable::ScenarioTable(std::vector<double> weights,
                             std::map<std::string, std::vector<double>> columns)
    : weights_(std::move(weights)), columns_(std::move(columns)) {
  if (weights_.empty()) throw InputError("scenario table: no scenarios");
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || !(w > 0.0)) {
      throw InputError("scenario table: weights must be positive");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InputError("scenario table: weights must sum to 1");
  }
  for (const auto& [name, col] : columns_) {
    if (col.size() != weights_.size()) {
      throw InputError("scenario table: column '" + name + "' has wrong length");
    }
    for (double v : col) {
      if (!std::isfinite(v)) {
        throw InputError("scenario table: non-finite value in '" + name + "'");
      }
    }
  }
}

DiscreteDistribution ScenarioTable::combine(
    const std::map<std::string, double>& weights) const {
  std::vector<double> total(weights_.size(), 0.0);
  for (const auto& [name, w] : weights) {
    auto it = columns_.find(name);
    if (it == columns_.end()) {
      throw InputError("scenario table: unknown column '" + name + "'");
    }
    for (std::size_t s = 0; s < total.size(); ++s) total[s] += w * it->second[s];
  }
  return DiscreteDistribution::make(total, weights_);
}

DiscreteDistribution ScenarioTable::column(const std::string& name) const {
  return combine({{name, 1.0}});
}

}  // namespace levar
