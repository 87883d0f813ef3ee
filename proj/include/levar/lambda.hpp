#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace levar {

enum class Continuity { Left, Right };

struct ConstantLambda {
  double level;
};

/// Levels l_0 >= ... >= l_n on (-inf, x_1), (x_1, x_2), ..., (x_n, inf).
/// At a threshold x_i the value is l_{i-1} (left) or l_i (right).
struct StepLambda {
  std::vector<double> thresholds;
  std::vector<double> levels;
  Continuity continuity = Continuity::Right;
};

/// Linear interpolation through (x, level) points, constant beyond the ends.
struct PiecewiseLinearLambda {
  std::vector<std::pair<double, double>> points;
};

/// A decreasing level function Λ: R -> [0, 1] with exact one-sided limits.
class LambdaFunction {
 public:
  using Variant = std::variant<ConstantLambda, StepLambda, PiecewiseLinearLambda>;

  static LambdaFunction constant(double level);
  static LambdaFunction step(std::vector<double> thresholds, std::vector<double> levels,
                             Continuity continuity);
  static LambdaFunction piecewise_linear(std::vector<std::pair<double, double>> points);

  const Variant& variant() const noexcept { return v_; }

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double left_limit(double x) const;
  double right_limit(double x) const;

  /// (level at -inf, level at +inf).
  std::pair<double, double> tail_limits() const;

  /// sup Λ, which equals the level at -inf for a decreasing Λ.
  double max_level() const { return tail_limits().first; }

  /// sup{x : Λ(x) >= c}, with -inf for an empty set and +inf when Λ >= c
  /// everywhere.
  double superlevel_sup(double c) const;

  /// Points where Λ may jump (Step thresholds); empty otherwise.
  std::vector<double> jump_points() const;

  bool is_constant() const;
  bool is_left_continuous() const;
  bool is_right_continuous() const;

  /// Pointwise scaling of all levels by a factor in [0, 1].
  LambdaFunction scaled(double factor) const;

  /// Λ'(x) = Λ((x - shift) / scale) for scale > 0.
  LambdaFunction rescaled_argument(double scale, double shift) const;

  std::string describe() const;

 private:
  explicit LambdaFunction(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

}  // namespace levar
