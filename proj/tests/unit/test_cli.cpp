#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "levar/cli.hpp"

using namespace levar;

namespace {

const std::string kData = LEVAR_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json parse(const Run& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST_CASE("evar subcommand") {
  const auto r = run({"evar", "--p", "1", "--alpha", "0.5", kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["value"] == 3.5);
  CHECK(j["t_interval"][0] == 2.0);
  CHECK(j["t_interval"][1] == 3.0);
  CHECK(j["measure"] == "evar");

  const auto t = run({"evar", "--p", "3", "--alpha", "0.3", kData + "/two_point.csv"});
  REQUIRE(t.code == 0);
  CHECK(parse(t)["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("lambda subcommand") {
  auto r = run({"lambda", "--measure", "es", "--lambda", kData + "/step.json", kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  auto j = parse(r);
  CHECK(j["value"].get<double>() == doctest::Approx(3.6).epsilon(1e-15));
  CHECK(j["attained"] == false);

  r = run({"lambda", "--measure", "var", "--lambda",
           R"({"type":"step","continuity":"right","thresholds":[2],"levels":[0.9,0.5]})",
           kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["value"].get<double>() == doctest::Approx(2.0));

  r = run({"lambda", "--p", "2", "--lambda", kData + "/const05.json", kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["p"] == 2.0);
}

TEST_CASE("ru subcommand") {
  auto r = run({"ru", "--p", "1", "--lambda", kData + "/step.json", kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["value"].get<double>() == doctest::Approx(3.6));
  CHECK(parse(r)["t_star"].is_number());
  r = run({"ru", "--p", "1", "--lambda",
           R"({"type":"step","continuity":"left","thresholds":[3.6],"levels":[0.75,0.25]})",
           kData + "/u4.csv"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("robust subcommands") {
  auto r = run({"robust", "meanvar", "--mean", "0", "--std", "1", "--lambda", kData + "/const05.json"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["value"] == 1.0);
  r = run({"robust", "meanvar", "--mean", "0", "--std", "1", "--lambda", kData + "/step_cantelli.json",
           "--measure", "evar2"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["value"].get<double>() == doctest::Approx(1.0));
  r = run({"robust", "wasserstein", "--p", "1", "--delta", "0", "--lambda", kData + "/const05.json",
           kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  CHECK(parse(r)["value"].get<double>() == doctest::Approx(3.5));
  r = run({"robust", "wasserstein", "--p", "1", "--delta", "0.1", "--lambda",
           R"({"type":"constant","level":1})", kData + "/u4.csv"});
  CHECK(r.code == 2);
  r = run({"robust", "meanvar", "--mean", "0", "--std", "-1", "--lambda", kData + "/const05.json"});
  CHECK(r.code == 2);
}

TEST_CASE("sweep subcommand") {
  const auto r = run({"sweep", "--measure", "es", "--lambda", kData + "/step.json", "--grid", "0:5:5",
                      kData + "/u4.csv"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,g,min,max");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 6);
  CHECK(run({"sweep", "--lambda", kData + "/step.json", "--grid", "0:5", kData + "/u4.csv"}).code == 1);
}

TEST_CASE("check subcommand") {
  const auto r = run({"check", "--seed", "2", "--cases", "10", "--p-grid", "1,2"});
  REQUIRE(r.code == 0);
  const auto j = parse(r);
  CHECK(j["summary"]["failed"] == 0);
  CHECK(run({"check", "--cases", "0"}).code == 1);
  CHECK(run({"check", "--tol", "bogus"}).code == 1);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"evar", "--alpha", "0.5", kData + "/u4.csv"}).code == 1);
  CHECK(run({"evar", "--p", "1", "--alpha", "0.5", kData + "/bad_sum.csv"}).code == 1);
  CHECK(run({"evar", "--p", "1", "--alpha", "0.5", "--normalize", kData + "/bad_sum.csv"}).code == 0);
  CHECK(run({"evar", "--p", "0.5", "--alpha", "0.5", kData + "/u4.csv"}).code == 2);
  CHECK(run({"evar", "--p", "1", "--alpha", "1.5", kData + "/u4.csv"}).code == 2);
  CHECK(run({"lambda", "--lambda", R"({"type":"constant","level":0.5,"x":1})", kData + "/u4.csv"}).code ==
        1);
}

TEST_CASE("expect and output file") {
  const std::string path = "levar_cli_test_report.json";
  auto r = run({"evar", "--p", "2", "--alpha", "0.7", kData + "/u4.csv", "-o", path});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  CHECK(run({"evar", "--p", "2", "--alpha", "0.7", kData + "/u4.csv", "--expect", path}).code == 0);
  CHECK(run({"evar", "--p", "2", "--alpha", "0.8", kData + "/u4.csv", "--expect", path}).code == 3);
  std::remove(path.c_str());
  CHECK(run({"evar", "--p", "1", "--alpha", "0.5", kData + "/u4.csv", "--expect",
             kData + "/u4_es05_report.json"})
            .code == 0);
  CHECK(run({"evar", "--p", "1", "--alpha", "0.5", kData + "/u4.csv", "--expect", "nope.json"}).code ==
        1);
}
