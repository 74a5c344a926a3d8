#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace metawhit::cli;
using nlohmann::json;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "metawhit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

json machine(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("machine");
  const auto r = invoke(args);
  REQUIRE_MESSAGE(r.status == 0, r.err);
  return json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("metawhit_test_" + name);
}

}  // namespace

TEST_CASE("element specs") {
  auto e = parse_elem_spec("1:3", 7);
  CHECK(e.valuation == 1);
  CHECK(e.unit == std::vector<std::uint32_t>{3});
  e = parse_elem_spec("-2:10", 7);
  CHECK(e.valuation == -2);
  CHECK(e.unit == std::vector<std::uint32_t>{3, 1});
  CHECK(to_string(parse_elem_spec("0:1,2", 5)) == "0:1,2");
  CHECK_THROWS_AS(parse_elem_spec("3", 7), std::invalid_argument);
  CHECK_THROWS_AS(parse_elem_spec("a:1", 7), std::invalid_argument);
  CHECK_THROWS_AS(parse_elem_spec("0:0", 7), std::invalid_argument);
  CHECK_THROWS_AS(parse_elem_spec("0:7,1", 7), std::invalid_argument);
}

TEST_CASE("config round trip") {
  AnalysisConfig cfg;
  cfg.p = 13;
  cfg.theta = "ramified_minus";
  cfg.psi_conductor = 1;
  cfg.psi_twist = parse_elem_spec("0:2", 13);
  cfg.c_list = {parse_elem_spec("1:1", 13), parse_elem_spec("0:2", 13)};
  cfg.pairs = "all";
  const auto j = config_to_json(cfg);
  const auto back = config_from_json(j);
  CHECK(config_to_json(back) == j);
  CHECK_THROWS_AS(config_from_json(json{{"bogus", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(json{{"p", "seven"}}), std::invalid_argument);
}

TEST_CASE("analyze examples") {
  auto doc = machine({"analyze", "--p", "7", "--n", "3", "--theta", "unramified", "--psi-conductor", "0", "--c",
                      "0:1"});
  auto conf = doc["configurations"][0];
  CHECK(conf["dims"]["plus"] == 2);
  CHECK(conf["dims"]["minus"] == 1);
  CHECK(conf["trace"]["display"] == "4/7");
  CHECK(conf["gl2_action"] == "fix");
  CHECK(doc["summary"]["pass"] == true);
  CHECK(conf["checks"].size() == 6);

  doc = machine({"analyze", "--c", "1:1"});
  conf = doc["configurations"][0];
  CHECK(conf["dims"]["plus"] == 1);
  CHECK(conf["dims"]["minus"] == 2);
  CHECK(conf["gl2_action"] == "swap");

  doc = machine({"analyze", "--p", "11", "--n", "5"});
  CHECK(doc["configurations"][0]["dims"]["plus"] == 3);
  CHECK(doc["configurations"][0]["dims"]["minus"] == 2);

  doc = machine({"analyze", "--pairs", "all", "--c", "0:1", "--c", "1:3"});
  CHECK(doc["configurations"].size() == 24);
}

TEST_CASE("exit statuses") {
  CHECK(invoke({"verify", "--p", "7"}).status == 0);
  CHECK(invoke({"verify", "--p", "13"}).status == 0);
  CHECK(invoke({"pairing"}).status == 0);
  CHECK(invoke({}).status == usage_error);
  CHECK(invoke({"analyze", "--p", "5"}).status == usage_error);
  CHECK(invoke({"analyze", "--n", "2"}).status == usage_error);
  CHECK(invoke({"analyze", "--p", "9", "--n", "2"}).status == usage_error);
  CHECK(invoke({"analyze", "--c", "oops"}).status == usage_error);
  CHECK(invoke({"analyze", "--pairs", "12"}).status == usage_error);
  CHECK(invoke({"analyze", "--format", "xml"}).status == usage_error);
  CHECK(invoke({"analyze", "--config", "/nonexistent/cfg.json"}).status == usage_error);
  CHECK(invoke({"--help"}).status == 0);

  const auto faulty = invoke({"verify", "--inject-fault", "gauss_sum", "--pairs", "standard"});
  CHECK(faulty.status == identity_violation);
  CHECK(faulty.err.find("epsilon_eq_1") != std::string::npos);
  CHECK(faulty.out.find("FAIL epsilon_eq_1") != std::string::npos);
}

TEST_CASE("reports are deterministic and round trip") {
  for (const char* cmd : {"analyze", "verify", "pairing"}) {
    const auto a = invoke({cmd, "--format", "machine"});
    const auto b = invoke({cmd, "--format", "machine"});
    CHECK(a.out == b.out);
    const auto parsed = nlohmann::ordered_json::parse(a.out);
    CHECK(parsed.dump(2) + "\n" == a.out);
    CHECK(parsed["format"] == "metawhit-report");
    CHECK(parsed["command"] == cmd);
    CHECK(invoke({cmd}).out == invoke({cmd}).out);
  }
}

TEST_CASE("config file and overrides") {
  const auto path = temp_file("cfg.json");
  {
    std::ofstream o(path);
    o << R"({"p": 13, "n": 3, "theta": "ramified_plus", "c": ["1:2"], "pairs": 0})";
  }
  auto doc = machine({"analyze", "--config", path.string()});
  CHECK(doc["datum"]["p"] == 13);
  CHECK(doc["config"]["theta"] == "ramified_plus");
  CHECK(doc["configurations"].size() == 1);
  CHECK(doc["configurations"][0]["c"] == "1:2");

  doc = machine({"analyze", "--config", path.string(), "--theta", "unramified", "--c", "0:1"});
  CHECK(doc["config"]["theta"] == "unramified");
  CHECK(doc["configurations"][0]["c"] == "0:1");

  {
    std::ofstream o(path);
    o << "{ not json";
  }
  CHECK(invoke({"analyze", "--config", path.string()}).status == usage_error);

  const auto out = temp_file("report.json");
  const auto r = invoke({"pairing", "--output", out.string(), "--format", "machine"});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream in(out);
  CHECK(json::parse(in)["summary"]["pairs"] == 12);
  std::filesystem::remove(path);
  std::filesystem::remove(out);
}

TEST_CASE("pairing report") {
  const auto doc = machine({"pairing"});
  CHECK(doc["maximal_isotropics"].size() == 4);
  CHECK(doc["pairs"].size() == 12);
  CHECK(doc["gram"].size() == 9);
  CHECK(doc["antisymmetric"] == true);
  CHECK(doc["gram_generators"][0][0] == 0);
  const unsigned off = doc["gram_generators"][0][1];
  CHECK((off + doc["gram_generators"][1][0].get<unsigned>()) % 3 == 0);
  CHECK(off != 0);
  int standard = 0;
  for (const auto& p : doc["pairs"]) standard += p["standard"].get<bool>();
  CHECK(standard == 1);
  const auto five = machine({"pairing", "--p", "11", "--n", "5"});
  CHECK(five["maximal_isotropics"].size() == 6);
  CHECK(five["pairs"].size() == 30);
}
