#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "levar/error.hpp"
#include "levar/io.hpp"

using namespace levar;

static const std::string kData = LEVAR_TEST_DATA;

TEST_CASE("scenario CSV") {
  const auto d = parse_scenarios(kData + "/u4.csv");
  CHECK(d.size() == 4);
  CHECK(d.mean() == doctest::Approx(2.5));
  const auto t = parse_scenarios(kData + "/two_point.csv");
  CHECK(t.atoms()[0].prob == doctest::Approx(0.3));

  CHECK_THROWS_AS(parse_scenarios(kData + "/bad_sum.csv"), InputError);
  const auto n = parse_scenarios(kData + "/bad_sum.csv", true);
  CHECK(n.atoms()[0].prob == doctest::Approx(1.0 / 3));

  CHECK(parse_scenarios_text("value,probability\n5,0.5\n6,0\n7,0.5\n").size() == 2);
  CHECK(parse_scenarios_text("value\r\n1\r\n\r\n2\r\n").size() == 2);
  CHECK_THROWS_AS(parse_scenarios_text(""), InputError);
  CHECK_THROWS_AS(parse_scenarios_text("x\n1\n"), InputError);
  CHECK_THROWS_AS(parse_scenarios_text("value\n"), InputError);
  CHECK_THROWS_AS(parse_scenarios_text("value\nabc\n"), InputError);
  CHECK_THROWS_AS(parse_scenarios_text("value\ninf\n"), InputError);
  CHECK_THROWS_AS(parse_scenarios_text("value,probability\n1,-0.5\n2,1.5\n"), InputError);
  CHECK_THROWS_AS(parse_scenarios_text("value,probability\n1\n"), InputError);
  CHECK_THROWS_AS(parse_scenarios(kData + "/missing.csv"), InputError);
}

TEST_CASE("lambda specs") {
  const auto s = parse_lambda_spec(kData + "/step.json");
  CHECK(s(3.0) == 0.75);
  CHECK(s(3.6) == 0.25);
  CHECK(parse_lambda_spec(R"({"type":"constant","level":0.4})")(100) == 0.4);
  const auto pl = parse_lambda_spec(R"( {"type":"piecewise_linear","points":[[0,0.8],[2,0.2]]})");
  CHECK(pl(1) == doctest::Approx(0.5));
  const auto left = parse_lambda_json(R"({"type":"step","continuity":"left","thresholds":[1],"levels":[0.6,0.2]})");
  CHECK(left(1) == 0.6);

  CHECK_THROWS_AS(parse_lambda_json("{"), InputError);
  CHECK_THROWS_AS(parse_lambda_json("[1]"), InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"level":0.4})"), InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"type":"constant","level":0.4,"extra":1})"), InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"type":"constant"})"), InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"type":"constant","level":"x"})"), InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"type":"wave","level":0.4})"), InputError);
  CHECK_THROWS_AS(
      parse_lambda_json(R"({"type":"step","continuity":"up","thresholds":[1],"levels":[0.6,0.2]})"),
      InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"type":"piecewise_linear","points":[[0,0.8,1]]})"), InputError);
  CHECK_THROWS_AS(parse_lambda_json(R"({"type":"constant","level":1.5})"), InputError);
}

TEST_CASE("hash") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("report rendering") {
  Report r;
  r.measure = "evar";
  r.p = 2;
  r.value = 0.1;
  r.t_interval = std::make_pair(-INFINITY, 1.0);
  r.attained = true;
  r.iterations = 3;
  r.achieved_tol = 1e-12;
  r.extra = {{"delta", 0.5}};
  r.inputs = "abc";
  const auto text = r.to_json();
  const auto j = nlohmann::json::parse(text);
  CHECK(j["value"].get<double>() == 0.1);
  CHECK(j["x_star"].is_null());
  CHECK(j["t_interval"][0].is_null());
  CHECK(j["t_interval"][1] == 1.0);
  CHECK(j["attained"] == true);
  CHECK(j["delta"] == 0.5);
  CHECK(j["inputs_digest"] == r.digest());
  CHECK(text.find("0.10000000000000001") != std::string::npos);

  const auto ev = parse_report_value(text);
  CHECK(ev.value == 0.1);
  CHECK(ev.achieved_tol == 1e-12);
  CHECK_THROWS_AS(parse_report_value("{}"), InputError);
  CHECK_THROWS_AS(parse_report_value("nope"), InputError);
}

TEST_CASE("distribution description is canonical") {
  const double v[] = {2, 1, 2};
  CHECK(describe_distribution(make_distribution(v)) ==
        describe_distribution(make_distribution(std::vector<double>{1, 2, 2})));
}
