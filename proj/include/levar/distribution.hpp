#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace levar {

struct Atom {
  double value;
  double prob;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite-support law of a loss X. Atoms are sorted by value with exact
/// duplicates merged; probabilities are strictly positive and sum to one.
class DiscreteDistribution {
 public:
  /// Equal weights when `probs` is empty.
  static DiscreteDistribution make(std::span<const double> values,
                                   std::span<const double> probs = {});

  static DiscreteDistribution point_mass(double value);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double essinf() const noexcept { return atoms_.front().value; }
  double esssup() const noexcept { return atoms_.back().value; }
  double range() const noexcept { return esssup() - essinf(); }
  double mean() const noexcept;
  double variance() const noexcept;

  std::vector<double> values() const;
  std::vector<double> probs() const;

  /// Distribution of s·X + b (s may be any finite real).
  DiscreteDistribution affine(double scale, double shift) const;

  friend bool operator==(const DiscreteDistribution&,
                         const DiscreteDistribution&) = default;

 private:
  explicit DiscreteDistribution(std::vector<Atom> atoms)
      : atoms_(std::move(atoms)) {}

  std::vector<Atom> atoms_;
};

inline DiscreteDistribution make_distribution(std::span<const double> values,
                                              std::span<const double> probs = {}) {
  return DiscreteDistribution::make(values, probs);
}

/// Left quantile inf{x : P(X <= x) >= alpha}; alpha = 0 gives essinf.
double quantile(const DiscreteDistribution& d, double alpha);

/// (1/(1-alpha)) ∫_alpha^1 VaR_s ds evaluated exactly on the CDF partition.
double expected_shortfall(const DiscreteDistribution& d, double alpha);

/// E[(X - t)_+^p].
double partial_moment(const DiscreteDistribution& d, double t, double p);

/// Order-k Wasserstein distance via the quantile-function integral.
double wasserstein_distance(const DiscreteDistribution& a,
                            const DiscreteDistribution& b, double k);

/// Law lambda·F_a + (1 - lambda)·F_b.
DiscreteDistribution mix(const DiscreteDistribution& a,
                         const DiscreteDistribution& b, double lambda);

/// Grid check of ||(X-x)_+||_{p-1} <= ||(Y-x)_+||_{p-1}. This is a
/// necessary condition for the p-icx order, not a decision procedure.
/// For p - 1 = 0 the survival probability P(X > x) is compared.
bool icx_leq(const DiscreteDistribution& a, const DiscreteDistribution& b,
             double p, std::span<const double> grid = {});

/// Default threshold grid for icx_leq: union of supports, midpoints, and
/// one point left of both supports.
std::vector<double> icx_default_grid(const DiscreteDistribution& a,
                                     const DiscreteDistribution& b);

/// Several positions on one finite probability space.
class ScenarioTable {
 public:
  ScenarioTable(std::vector<double> weights,
                std::map<std::string, std::vector<double>> columns);

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::map<std::string, std::vector<double>>& columns() const noexcept {
    return columns_;
  }
  std::size_t scenarios() const noexcept { return weights_.size(); }

  /// Distribution of sum_c w_c · column_c. An empty portfolio is δ_0.
  DiscreteDistribution combine(const std::map<std::string, double>& weights) const;

  /// Distribution of a single column.
  DiscreteDistribution column(const std::string& name) const;

 private:
  std::vector<double> weights_;
  std::map<std::string, std::vector<double>> columns_;
};

/// Known mean m and standard-deviation bound v.
struct MomentSet {
  double mean = 0.0;
  double std_bound = 0.0;
};

}  // namespace levar
