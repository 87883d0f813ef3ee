#include "levar/lambda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "format.hpp"
#include "levar/error.hpp"

namespace levar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_unit(double level) {
  if (!(level >= 0.0 && level <= 1.0)) {
    throw InputError("lambda: level " + std::to_string(level) + " outside [0,1]");
  }
}

// Number of thresholds strictly below x / at or below x.
std::size_t count_below(const std::vector<double>& t, double x) {
  return static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), x) - t.begin());
}
std::size_t count_at_or_below(const std::vector<double>& t, double x) {
  return static_cast<std::size_t>(std::upper_bound(t.begin(), t.end(), x) - t.begin());
}

double interpolate(const PiecewiseLinearLambda& pl, double x) {
  const auto& pts = pl.points;
  if (x <= pts.front().first) return pts.front().second;
  if (x >= pts.back().first) return pts.back().second;
  auto it = std::upper_bound(pts.begin(), pts.end(), x,
                             [](double v, const auto& p) { return v < p.first; });
  const auto& [x1, l1] = *it;
  const auto& [x0, l0] = *(it - 1);
  const double w = (x - x0) / (x1 - x0);
  return l0 + w * (l1 - l0);
}

}  // namespace

LambdaFunction LambdaFunction::constant(double level) {
  check_unit(level);
  return LambdaFunction(ConstantLambda{level});
}

LambdaFunction LambdaFunction::step(std::vector<double> thresholds,
                                    std::vector<double> levels, Continuity continuity) {
  if (levels.size() != thresholds.size() + 1) {
    throw InputError("lambda step: need exactly one more level than thresholds");
  }
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (!std::isfinite(thresholds[i])) throw InputError("lambda step: non-finite threshold");
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw InputError("lambda step: thresholds must be strictly increasing");
    }
  }
  for (std::size_t i = 0; i < levels.size(); ++i) {
    check_unit(levels[i]);
    if (i > 0 && levels[i] > levels[i - 1]) {
      throw InputError("lambda step: levels must be non-increasing (level " +
                       std::to_string(i) + " exceeds its predecessor)");
    }
  }
  return LambdaFunction(StepLambda{std::move(thresholds), std::move(levels), continuity});
}

LambdaFunction LambdaFunction::piecewise_linear(
    std::vector<std::pair<double, double>> points) {
  if (points.empty()) throw InputError("lambda piecewise_linear: no points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i].first)) {
      throw InputError("lambda piecewise_linear: non-finite abscissa");
    }
    check_unit(points[i].second);
    if (i > 0) {
      if (!(points[i].first > points[i - 1].first)) {
        throw InputError("lambda piecewise_linear: abscissae must be strictly increasing");
      }
      if (points[i].second > points[i - 1].second) {
        throw InputError("lambda piecewise_linear: levels must be non-increasing (point " +
                         std::to_string(i) + " exceeds its predecessor)");
      }
    }
  }
  return LambdaFunction(PiecewiseLinearLambda{std::move(points)});
}

double LambdaFunction::eval(double x) const {
  return std::visit(
      overloaded{
          [](const ConstantLambda& c) { return c.level; },
          [x](const StepLambda& s) {
            const auto i = s.continuity == Continuity::Right
                               ? count_at_or_below(s.thresholds, x)
                               : count_below(s.thresholds, x);
            return s.levels[i];
          },
          [x](const PiecewiseLinearLambda& pl) { return interpolate(pl, x); },
      },
      v_);
}

double LambdaFunction::left_limit(double x) const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) {
    return s->levels[count_below(s->thresholds, x)];
  }
  return eval(x);
}

double LambdaFunction::right_limit(double x) const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) {
    return s->levels[count_at_or_below(s->thresholds, x)];
  }
  return eval(x);
}

std::pair<double, double> LambdaFunction::tail_limits() const {
  return std::visit(
      overloaded{
          [](const ConstantLambda& c) { return std::pair{c.level, c.level}; },
          [](const StepLambda& s) { return std::pair{s.levels.front(), s.levels.back()}; },
          [](const PiecewiseLinearLambda& pl) {
            return std::pair{pl.points.front().second, pl.points.back().second};
          },
      },
      v_);
}

double LambdaFunction::superlevel_sup(double c) const {
  if (!(c >= 0.0 && c <= 1.0)) throw DomainError("superlevel_sup: c outside [0,1]");
  const auto [top, bottom] = tail_limits();
  if (bottom >= c) return kInf;
  if (top < c) return -kInf;
  return std::visit(
      overloaded{
          [](const ConstantLambda&) -> double { return kInf; },  // unreachable
          [c](const StepLambda& s) -> double {
            // First piece whose level drops below c; its left threshold is the sup.
            for (std::size_t i = 1; i < s.levels.size(); ++i) {
              if (s.levels[i] < c) return s.thresholds[i - 1];
            }
            return kInf;
          },
          [c](const PiecewiseLinearLambda& pl) -> double {
            const auto& pts = pl.points;
            for (std::size_t k = 1; k < pts.size(); ++k) {
              if (pts[k].second < c) {
                const auto& [x0, l0] = pts[k - 1];
                const auto& [x1, l1] = pts[k];
                const double w = (l0 - c) / (l0 - l1);
                return x0 + w * (x1 - x0);
              }
            }
            return kInf;
          },
      },
      v_);
}

std::vector<double> LambdaFunction::jump_points() const {
  std::vector<double> out;
  if (const auto* s = std::get_if<StepLambda>(&v_)) {
    for (std::size_t i = 0; i < s->thresholds.size(); ++i) {
      if (s->levels[i] != s->levels[i + 1]) out.push_back(s->thresholds[i]);
    }
  }
  return out;
}

bool LambdaFunction::is_constant() const {
  const auto [a, b] = tail_limits();
  return a == b;
}

bool LambdaFunction::is_left_continuous() const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) {
    return s->continuity == Continuity::Left || jump_points().empty();
  }
  return true;
}

bool LambdaFunction::is_right_continuous() const {
  if (const auto* s = std::get_if<StepLambda>(&v_)) {
    return s->continuity == Continuity::Right || jump_points().empty();
  }
  return true;
}

LambdaFunction LambdaFunction::scaled(double factor) const {
  if (!(factor >= 0.0 && factor <= 1.0)) throw DomainError("lambda scaled: factor outside [0,1]");
  return std::visit(
      overloaded{
          [factor](const ConstantLambda& c) { return constant(c.level * factor); },
          [factor](const StepLambda& s) {
            auto lv = s.levels;
            for (auto& l : lv) l *= factor;
            return step(s.thresholds, std::move(lv), s.continuity);
          },
          [factor](const PiecewiseLinearLambda& pl) {
            auto pts = pl.points;
            for (auto& p : pts) p.second *= factor;
            return piecewise_linear(std::move(pts));
          },
      },
      v_);
}

LambdaFunction LambdaFunction::rescaled_argument(double scale, double shift) const {
  if (!(scale > 0.0)) throw DomainError("lambda rescaled_argument: scale must be positive");
  return std::visit(
      overloaded{
          [](const ConstantLambda& c) { return constant(c.level); },
          [=](const StepLambda& s) {
            auto th = s.thresholds;
            for (auto& t : th) t = scale * t + shift;
            return step(std::move(th), s.levels, s.continuity);
          },
          [=](const PiecewiseLinearLambda& pl) {
            auto pts = pl.points;
            for (auto& p : pts) p.first = scale * p.first + shift;
            return piecewise_linear(std::move(pts));
          },
      },
      v_);
}

std::string LambdaFunction::describe() const {
  using detail::json_number;
  return std::visit(
      overloaded{
          [](const ConstantLambda& c) {
            return std::string(R"({"type":"constant","level":)") + json_number(c.level) + "}";
          },
          [](const StepLambda& s) {
            std::string out = R"({"type":"step","continuity":")";
            out += s.continuity == Continuity::Left ? "left" : "right";
            out += R"(","thresholds":[)";
            for (std::size_t i = 0; i < s.thresholds.size(); ++i) {
              if (i) out += ',';
              out += json_number(s.thresholds[i]);
            }
            out += R"(],"levels":[)";
            for (std::size_t i = 0; i < s.levels.size(); ++i) {
              if (i) out += ',';
              out += json_number(s.levels[i]);
            }
            return out + "]}";
          },
          [](const PiecewiseLinearLambda& pl) {
            std::string out = R"({"type":"piecewise_linear","points":[)";
            for (std::size_t i = 0; i < pl.points.size(); ++i) {
              if (i) out += ',';
              out += '[' + json_number(pl.points[i].first) + ',' +
                     json_number(pl.points[i].second) + ']';
            }
            return out + "]}";
          },
      },
      v_);
}

}  // namespace levar
