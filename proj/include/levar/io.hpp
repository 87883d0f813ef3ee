#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "levar/distribution.hpp"
#include "levar/lambda.hpp"

namespace levar {

/// Parses scenario CSV text: a header `value` (equal weights) or
/// `value,probability`, then one row per scenario. Without `normalize` the
/// probabilities must sum to 1 within 1e-6. Zero-probability rows are dropped.
DiscreteDistribution parse_scenarios_text(const std::string& text, bool normalize = false);
DiscreteDistribution parse_scenarios(const std::string& path, bool normalize = false);

/// Parses a Λ specification, either inline JSON (leading '{') or a file path.
LambdaFunction parse_lambda_spec(const std::string& text_or_path);
LambdaFunction parse_lambda_json(const std::string& json);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(const std::string& data);

/// Output record shared by the CLI subcommands.
struct Report {
  std::string measure;
  std::optional<double> p;
  double value = 0.0;
  std::optional<double> x_star;
  std::optional<std::pair<double, double>> t_interval;
  std::optional<double> t_star;
  std::optional<bool> attained;
  int iterations = 0;
  double achieved_tol = 0.0;
  /// Extra numeric fields, emitted after the fixed ones in this order.
  std::vector<std::pair<std::string, double>> extra;
  /// Canonical description of the inputs; its hash is the digest.
  std::string inputs;

  std::string digest() const;
  std::string to_json() const;
};

/// The `value` and `achieved_tol` fields of a report produced by to_json.
struct ExpectedValue {
  double value;
  double achieved_tol;
};
ExpectedValue parse_report_value(const std::string& json);

/// Canonical JSON of a distribution's atoms.
std::string describe_distribution(const DiscreteDistribution& d);

}  // namespace levar
