#include <doctest.h>

#include <json.hpp>

#include "levar/error.hpp"
#include "levar/verify.hpp"

using namespace levar;

TEST_CASE("generator is deterministic") {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform() == b.uniform());
  Rng c(9);
  for (int i = 0; i < 1000; ++i) {
    const double u = c.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const int k = c.integer(-2, 3);
    CHECK(k >= -2);
    CHECK(k <= 3);
  }
}

TEST_CASE("random inputs respect their ranges") {
  Rng rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto d = random_distribution(rng, 6);
    CHECK(d.size() >= 1);
    CHECK(d.size() <= 6);
    CHECK(d.essinf() >= -10);
    CHECK(d.esssup() <= 10);
    const auto l = random_lambda(rng, true);
    CHECK(l.max_level() <= 0.95);
    for (double x = -12; x <= 12; x += 0.5) {
      CHECK(l(x) >= 0);
      CHECK(l(x + 0.5) <= l(x));
    }
  }
}

TEST_CASE("campaign passes and is reproducible") {
  CampaignConfig cfg;
  cfg.seed = 3;
  cfg.cases = 40;
  const auto r = run_campaign(cfg);
  CHECK(r.properties.size() == property_names().size());
  CHECK(r.total_failed() == 0);
  for (const auto& p : r.properties) {
    INFO(p.name);
    CHECK(p.failed == 0);
    CHECK(p.passed + p.skipped == cfg.cases);
  }
  CHECK(run_campaign(cfg).to_json() == r.to_json());

  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["seed"] == 3);
  CHECK(j["properties"].size() == r.properties.size());

  REQUIRE(r.find("must_fail_cash_additivity"));
  CHECK(r.find("must_fail_cash_additivity")->must_fail);
  CHECK(r.find("no_such_property") == nullptr);
}

TEST_CASE("tolerance overrides are honoured") {
  CampaignConfig cfg;
  cfg.cases = 5;
  cfg.tolerances["evar_bounds_monotone"] = 0.5;
  const auto r = run_campaign(cfg);
  CHECK(r.find("evar_bounds_monotone")->tolerance == 0.5);
  cfg.tolerances = {{"no_such_property", 1.0}};
  CHECK_THROWS_AS(run_campaign(cfg), InputError);
}

TEST_CASE("bad configurations") {
  CampaignConfig cfg;
  cfg.cases = 0;
  CHECK_THROWS_AS(run_campaign(cfg), InputError);
  cfg.cases = 5;
  cfg.max_support = 1;
  CHECK_THROWS_AS(run_campaign(cfg), InputError);
}
