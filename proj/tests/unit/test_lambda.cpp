#include <doctest.h>

#include <cmath>
#include <vector>

#include "levar/error.hpp"
#include "levar/lambda.hpp"
#include "levar/verify.hpp"

using namespace levar;

namespace {

LambdaFunction step36(Continuity c) { return LambdaFunction::step({3.6}, {0.75, 0.25}, c); }

}  // namespace

TEST_CASE("evaluation per variant") {
  CHECK(LambdaFunction::constant(0.95)(7) == 0.95);
  CHECK(step36(Continuity::Right)(3.6) == 0.25);
  CHECK(step36(Continuity::Left)(3.6) == 0.75);
  CHECK(step36(Continuity::Right)(3.0) == 0.75);
  CHECK(step36(Continuity::Left)(4.0) == 0.25);
  const auto pl = LambdaFunction::piecewise_linear({{0, 1}, {1, 0}});
  CHECK(pl(0.5) == doctest::Approx(0.5));
  CHECK(pl(-3) == 1);
  CHECK(pl(3) == 0);
}

TEST_CASE("one-sided limits") {
  for (auto c : {Continuity::Left, Continuity::Right}) {
    CHECK(step36(c).left_limit(3.6) == 0.75);
    CHECK(step36(c).right_limit(3.6) == 0.25);
  }
  const auto pl = LambdaFunction::piecewise_linear({{0, 1}, {1, 0}});
  CHECK(pl.left_limit(0.5) == doctest::Approx(0.5));
  CHECK(pl.right_limit(0.5) == doctest::Approx(0.5));
}

TEST_CASE("tail limits") {
  CHECK(LambdaFunction::constant(0.4).tail_limits() == std::pair{0.4, 0.4});
  CHECK(LambdaFunction::step({2}, {0.9, 0.5}, Continuity::Right).tail_limits() == std::pair{0.9, 0.5});
  CHECK(LambdaFunction::piecewise_linear({{0, 1}, {1, 0}}).tail_limits() == std::pair{1.0, 0.0});
}

TEST_CASE("superlevel suprema") {
  const auto s = step36(Continuity::Right);
  CHECK(s.superlevel_sup(0.5) == 3.6);
  CHECK(s.superlevel_sup(0.0) == INFINITY);
  CHECK(s.superlevel_sup(0.9) == -INFINITY);
  CHECK(s.superlevel_sup(0.25) == INFINITY);
  const auto pl = LambdaFunction::piecewise_linear({{0, 1}, {2, 0}});
  CHECK(pl.superlevel_sup(0.5) == doctest::Approx(1.0));
  CHECK(pl.superlevel_sup(1.0) == 0.0);
  CHECK_THROWS_AS(s.superlevel_sup(1.5), DomainError);
}

TEST_CASE("continuity classification") {
  CHECK(step36(Continuity::Left).is_left_continuous());
  CHECK_FALSE(step36(Continuity::Left).is_right_continuous());
  CHECK(step36(Continuity::Right).is_right_continuous());
  CHECK_FALSE(step36(Continuity::Right).is_left_continuous());
  const auto flat = LambdaFunction::step({1.0}, {0.5, 0.5}, Continuity::Left);
  CHECK(flat.is_right_continuous());
  CHECK(flat.jump_points().empty());
  CHECK(LambdaFunction::constant(0.3).is_constant());
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(LambdaFunction::constant(1.2), InputError);
  CHECK_THROWS_AS(LambdaFunction::step({1, 0}, {0.9, 0.5, 0.1}, Continuity::Right), InputError);
  CHECK_THROWS_AS(LambdaFunction::step({1}, {0.5, 0.9}, Continuity::Right), InputError);
  CHECK_THROWS_AS(LambdaFunction::step({1}, {0.5}, Continuity::Right), InputError);
  CHECK_THROWS_AS(LambdaFunction::piecewise_linear({}), InputError);
  CHECK_THROWS_AS(LambdaFunction::piecewise_linear({{0, 0.2}, {1, 0.5}}), InputError);
  CHECK_THROWS_AS(LambdaFunction::piecewise_linear({{1, 0.5}, {0, 0.2}}), InputError);
}

TEST_CASE("transforms") {
  const auto s = step36(Continuity::Right).scaled(0.5);
  CHECK(s(0) == doctest::Approx(0.375));
  const auto r = step36(Continuity::Right).rescaled_argument(2.0, 1.0);
  CHECK(r.jump_points() == std::vector<double>{8.2});
  CHECK(r(8.2) == 0.25);
  CHECK(r(8.1) == 0.75);
}

TEST_CASE("describe is canonical JSON") {
  CHECK(LambdaFunction::constant(0.5).describe() == R"({"type":"constant","level":0.5})");
  CHECK(step36(Continuity::Left).describe() ==
        R"({"type":"step","continuity":"left","thresholds":[3.6000000000000001],"levels":[0.75,0.25]})");
}

TEST_CASE("randomized shape invariants") {
  Rng rng(3);
  for (int k = 0; k < 300; ++k) {
    const auto l = random_lambda(rng);
    std::vector<double> xs;
    for (int i = 0; i < 50; ++i) xs.push_back(rng.uniform(-12, 12));
    for (double j : l.jump_points()) xs.push_back(j);
    std::sort(xs.begin(), xs.end());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double v = l(xs[i]);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      CHECK(l.left_limit(xs[i]) >= v);
      CHECK(v >= l.right_limit(xs[i]));
      if (i) CHECK(l(xs[i - 1]) >= v);
    }
    double prev = INFINITY;
    for (int i = 0; i <= 20; ++i) {
      const double s = l.superlevel_sup(i / 20.0);
      CHECK(s <= prev);
      prev = s;
      // Points below the superlevel supremum meet the level.
      if (std::isfinite(s)) CHECK(l.left_limit(s) >= i / 20.0 - 1e-12);
    }
  }
}
