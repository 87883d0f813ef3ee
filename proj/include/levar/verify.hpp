#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "levar/distribution.hpp"
#include "levar/lambda.hpp"

namespace levar {

/// Seeded generator with a fixed, platform-independent mapping to doubles.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  bool coin() { return (eng_() >> 63) != 0; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

/// Random law with 1..max_support atoms, values in [-10, 10].
DiscreteDistribution random_distribution(Rng& rng, int max_support);

/// Random Step or piecewise-linear Λ with knots in [-10, 10]. With
/// `below_one`, every level is at most 0.95.
LambdaFunction random_lambda(Rng& rng, bool below_one = false);

struct CampaignConfig {
  std::uint64_t seed = 1;
  int cases = 200;
  int max_support = 20;
  std::vector<double> p_grid{1.0, 2.0, 3.0};
  /// Per-property overrides of the violation tolerance, keyed by name.
  std::map<std::string, double> tolerances;
};

struct PropertyStats {
  std::string name;
  /// Must-fail properties pass when the expected violation is observed.
  bool must_fail = false;
  double tolerance = 0.0;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  /// Largest amount by which the checked inequality was exceeded; for
  /// must-fail properties, the smallest observed margin.
  double worst = 0.0;
  /// JSON payloads of the first few failing cases.
  std::vector<std::string> failures;
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<PropertyStats> properties;

  int total_failed() const;
  const PropertyStats* find(const std::string& name) const;
  /// Deterministic JSON rendering.
  std::string to_json() const;
};

/// Names of all registered properties, in report order.
std::vector<std::string> property_names();

/// Runs every registered property on `cases` random inputs.
CampaignReport run_campaign(const CampaignConfig& cfg);

}  // namespace levar
