#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fairdiv/cli.hpp"
#include "fairdiv/fixtures.hpp"
#include "fairdiv/json_io.hpp"
#include "fairdiv/random_instances.hpp"

using namespace fairdiv;

namespace {

std::string fixture(const std::string& name) {
  return std::string(FAIRDIV_FIXTURES_DIR) + "/" + name + ".json";
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

Json result_of(const CliRun& run) {
  REQUIRE(!run.out.empty());
  return Json::parse(run.out);
}

// Writes content to a scratch file and returns its path.
std::string scratch_file(const std::string& stem, const std::string& content) {
  const auto path =
      std::filesystem::temp_directory_path() / ("fairdiv_test_" + stem + ".json");
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("instances round-trip through their JSON form") {
  Rng rng(0x524f554e);
  for (int round = 0; round < 60; ++round) {
    Instance inst;
    switch (round % 3) {
      case 0: inst = random_additive_instance(rng, rng.uniform(1, 4), rng.uniform(0, 8), 30); break;
      case 1: inst = random_table_instance(rng, rng.uniform(1, 3), rng.uniform(1, 4), 9); break;
      default:
        inst = random_single_minded_instance(rng, rng.uniform(1, 4), rng.uniform(1, 8), 12);
        break;
    }
    CHECK(instance_from_json(instance_to_json(inst)) == inst);
    const Allocation alloc =
        random_complete_allocation(rng, inst.num_agents(), inst.num_goods());
    CHECK(allocation_from_json(allocation_to_json(alloc, inst), inst) == alloc);
  }
}

TEST_CASE("fractional and decimal values survive the file format exactly") {
  const Json j = {
      {"agents", 1},
      {"goods", Json::array({"a", "b"})},
      {"valuations",
       Json::array({Json{{"type", "additive"},
                         {"values", Json{{"a", "0.1"}, {"b", "1/3"}}}}})},
  };
  const Instance inst = instance_from_json(j);
  CHECK(inst.value_of(0, good_bit(0)) == Value(1, 10));
  CHECK(inst.value_of(0, good_bit(1)) == Value(1, 3));
  CHECK(instance_from_json(instance_to_json(inst)) == inst);
}

TEST_CASE("instance parsing is strict") {
  const auto parse_text = [](const std::string& text) {
    return instance_from_json(Json::parse(text));
  };
  CHECK_THROWS_AS(parse_text(R"({"agents":1,"goods":["a"],"valuations":[
      {"type":"additive","values":{"a":1}}],"extra":1})"),
                  ParseError);
  CHECK_THROWS_AS(parse_text(R"({"agents":2,"goods":["a"],"valuations":[
      {"type":"additive","values":{"a":1}}]})"),
                  ParseError);  // agent count mismatch
  CHECK_THROWS_AS(parse_text(R"({"agents":1,"goods":["a"],"valuations":[
      {"type":"additive","values":{"z":1}}]})"),
                  ParseError);  // unknown label
  CHECK_THROWS_AS(parse_text(R"({"agents":1,"goods":["a"],"valuations":[
      {"type":"additive","values":{"a":0.5}}]})"),
                  ParseError);  // binary float
  CHECK_THROWS_AS(parse_text(R"({"agents":1,"goods":["a"],"valuations":[
      {"type":"magic","values":{}}]})"),
                  ParseError);
  CHECK_THROWS_AS(parse_text(R"({"agents":1,"goods":["a","b"],"valuations":[
      {"type":"table","base":{"a":1},"overrides":{"a,a":3}}]})"),
                  ParseError);  // repeated good in override key

  // An empty desired bundle parses; validation rejects it.
  const Instance empty_desire = parse_text(R"({"agents":1,"goods":["a"],"valuations":[
      {"type":"single_minded","bundle":[],"value":1}]})");
  CHECK(!validate_instance(empty_desire).valid());
}

TEST_CASE("allocation files must cover each agent and keep bundles disjoint") {
  const Instance inst = fixtures::mms_example();
  CHECK_THROWS_AS(allocation_from_json(Json::parse(R"({"allocation":[["a"]]})"), inst),
                  ParseError);
  CHECK_THROWS_AS(
      allocation_from_json(Json::parse(R"({"allocation":[["a","a"],["b","c"]]})"), inst),
      ParseError);
  const Allocation overlapping =
      allocation_from_json(Json::parse(R"({"allocation":[["a","b"],["b","c"]]})"), inst);
  CHECK(!is_complete(inst, overlapping));
}

TEST_CASE("shipped fixture files match the embedded instances") {
  for (const auto& [name, embedded] : fixtures::all()) {
    CAPTURE(name);
    const Instance parsed = load_instance_file(fixture(name));
    CHECK(parsed == embedded);
    CHECK(validate_instance(parsed).valid());
  }
}

TEST_CASE("allocate command prints the allocation and exits cleanly") {
  const auto run = cli({"allocate", "--instance", fixture("greedy_manipulable"),
                        "--mechanism", "greedy-rr", "--agent-order", "1,2"});
  CHECK(run.code == 0);
  const Json doc = result_of(run);
  CHECK(doc["result"]["allocation"] ==
        Json::array({Json::array({"a", "c", "d"}), Json::array({"b", "e"})}));
  CHECK(doc["result"]["bundle_values"] == Json::array({"26", "19"}));
  CHECK(doc["config"]["mechanism"] == "greedy-rr");

  const auto traced = cli({"allocate", "--instance", fixture("cycle_manipulable"),
                           "--mechanism", "envy-cycle", "--item-order", "d,a,b,c",
                           "--trace"});
  CHECK(traced.code == 0);
  const Json steps = result_of(traced)["result"]["trace"];
  REQUIRE(steps.size() == 4);
  CHECK(steps[0]["agent"] == 1);
  CHECK(steps[0]["goods"] == Json::array({"d"}));
  CHECK(steps[0]["envy"] == Json::array({Json::array({2, 1})}));
}

TEST_CASE("allocate runs serial dictatorship on single-minded files") {
  const auto run = cli({"allocate", "--instance", fixture("sd_disjoint"), "--mechanism", "sd",
                        "--trace"});
  CHECK(run.code == 0);
  const Json doc = result_of(run);
  CHECK(doc["result"]["allocation"] ==
        Json::array({Json::array({"a"}), Json::array({"b", "c"})}));
  CHECK(doc["result"]["trace"].back()["kind"] == "leftover");
}

TEST_CASE("allocate output is byte-identical across runs") {
  const std::vector<std::string> args = {"allocate", "--instance",
                                         fixture("efx_counterexample"), "--mechanism", "rsd"};
  CHECK(cli(args).out == cli(args).out);
}

TEST_CASE("check command exit codes distinguish holds, fails and bad input") {
  CHECK(cli({"check", "--instance", fixture("mms_example"), "--allocation",
             fixture("mms_example_alloc_ok"), "--criteria", "mms"})
            .code == 0);
  const auto failing = cli({"check", "--instance", fixture("mms_example"), "--allocation",
                            fixture("mms_example_alloc_violating"), "--criteria", "mms"});
  CHECK(failing.code == 1);
  CHECK(result_of(failing)["result"]["verdicts"][0]["witness"]["agent"] == 1);

  const std::string incomplete = scratch_file("incomplete", R"({"allocation":[["a"],[]]})");
  CHECK(cli({"check", "--instance", fixture("mms_example"), "--allocation", incomplete})
            .code == 2);
  CHECK(cli({"check", "--instance", fixture("mms_example"), "--allocation",
             "/definitely/missing.json"})
            .code == 2);
  CHECK(cli({"check", "--instance", fixture("mms_example"), "--allocation",
             fixture("mms_example_alloc_ok"), "--criteria", "bogus"})
            .code == 2);
}

TEST_CASE("default criteria list reports every verdict at once") {
  const auto run = cli({"check", "--instance", fixture("mms_example"), "--allocation",
                        fixture("mms_example_alloc_ok")});
  CHECK(run.code == 0);
  CHECK(result_of(run)["result"]["verdicts"].size() == 5);
}

TEST_CASE("mms command prints exact share strings") {
  const auto run = cli({"mms", "--instance", fixture("mms_example")});
  CHECK(run.code == 0);
  const Json shares = result_of(run)["result"]["shares"];
  REQUIRE(shares.size() == 2);
  CHECK(shares[0]["mu"] == "30");
  CHECK(shares[1]["mu"] == "30");

  const auto single = cli({"mms", "--instance", fixture("mms_example"), "--agent", "2"});
  CHECK(result_of(single)["result"]["shares"].size() == 1);

  const std::string solo = scratch_file("solo", R"({"agents":1,"goods":["a","b"],
      "valuations":[{"type":"additive","values":{"a":3,"b":4}}]})");
  const auto lone = cli({"mms", "--instance", solo});
  CHECK(result_of(lone)["result"]["shares"][0]["mu"] == "7");

  const auto minded = cli({"mms", "--instance", fixture("sd_nested")});
  const Json minded_doc = result_of(minded);
  CHECK(minded_doc["result"]["shares"][0]["mu"] == "0");
  CHECK(minded_doc["result"]["shares"][1]["mu"] == "0");
}

TEST_CASE("enumerate command lists the fair set with its cardinality") {
  const auto prop = cli({"enumerate", "--instance", fixture("prop_counterexample"),
                         "--criterion", "prop"});
  CHECK(prop.code == 0);
  CHECK(result_of(prop)["result"]["count"] == 2);

  const auto efx = cli({"enumerate", "--instance", fixture("efx_counterexample"),
                        "--criterion", "efx"});
  CHECK(result_of(efx)["result"]["count"] == 4);

  const std::string one_good = scratch_file("one_good", R"({"agents":2,"goods":["a"],
      "valuations":[{"type":"additive","values":{"a":5}},
                    {"type":"additive","values":{"a":5}}]})");
  const auto ef = cli({"enumerate", "--instance", one_good, "--criterion", "ef"});
  CHECK(result_of(ef)["result"]["count"] == 0);
}

TEST_CASE("mechanism restriction mismatches exit with code 3") {
  CHECK(cli({"allocate", "--instance", fixture("greedy_manipulable"), "--mechanism", "sd"})
            .code == 3);
  CHECK(cli({"allocate", "--instance", fixture("cycle_manipulable"), "--mechanism", "rsd"})
            .code == 3);
}

TEST_CASE("manipulate command reports witnesses and respects budgets") {
  const auto greedy = cli({"manipulate", "--instance", fixture("greedy_manipulable"),
                           "--mechanism", "greedy-rr", "--agent", "1", "--grid", "0:15:5"});
  CHECK(greedy.code == 1);
  const Json witness = result_of(greedy)["result"]["witness"];
  CHECK(witness["truthful_utility"] == "26");
  CHECK(Value::parse(witness["deviated_utility"].get<std::string>()) >= Value{28});

  const auto sd_run = cli({"manipulate", "--instance", fixture("sd_nested"), "--mechanism",
                           "sd", "--agent", "2", "--space", "single-minded"});
  CHECK(sd_run.code == 0);
  CHECK(result_of(sd_run)["result"]["manipulable"] == false);

  const auto quantified =
      cli({"manipulate", "--instance", fixture("cycle_additive"), "--mechanism",
           "envy-cycle", "--agent", "2", "--grid", "0:12:1", "--quantify-tie-breaks"});
  CHECK(quantified.code == 1);
  bool lifted_to_17 = false;
  const Json quantified_doc = result_of(quantified);
  for (const auto& entry : quantified_doc["result"]["per_config"]) {
    if (!entry["witness"].is_null() && entry["witness"]["deviated_utility"] == "17") {
      lifted_to_17 = true;
    }
  }
  CHECK(lifted_to_17);

  CHECK(cli({"manipulate", "--instance", fixture("greedy_manipulable"), "--mechanism",
             "greedy-rr", "--agent", "1", "--grid", "0:15:1", "--budget", "1000"})
            .code == 4);
  CHECK(cli({"manipulate", "--instance", fixture("greedy_manipulable"), "--mechanism",
             "greedy-rr", "--agent", "1"})
            .code == 2);  // neither --grid nor --space
}

TEST_CASE("repro command runs built-in cases and rejects unknown names") {
  const auto run = cli({"repro", "--case", "prop-table"});
  CHECK(run.code == 0);
  CHECK(result_of(run)["result"]["all_pass"] == true);
  CHECK(run.err.find("PASS") != std::string::npos);
  CHECK(cli({"repro", "--case", "nonsense"}).code == 2);
}

TEST_CASE("invalid instances are rejected with the violation summary") {
  const std::string negative = scratch_file("negative", R"({"agents":1,"goods":["a"],
      "valuations":[{"type":"additive","values":{"a":-3}}]})");
  const auto run = cli({"mms", "--instance", negative});
  CHECK(run.code == 2);
  CHECK(run.err.find("negative") != std::string::npos);

  const std::string sour = scratch_file("nonmonotone", R"({"agents":1,"goods":["a","b"],
      "valuations":[{"type":"table","base":{"a":5},"overrides":{"a,b":3}}]})");
  CHECK(cli({"mms", "--instance", sour}).code == 2);
}

TEST_CASE("capacity limits exit with code 4") {
  std::ostringstream big;
  big << R"({"agents":2,"goods":[)";
  for (int g = 0; g < 13; ++g) big << (g ? "," : "") << "\"g" << g << "\"";
  big << R"(],"valuations":[{"type":"additive","values":{}},)"
      << R"({"type":"additive","values":{}}]})";
  const std::string wide = scratch_file("wide", big.str());
  CHECK(cli({"mms", "--instance", wide}).code == 4);
  CHECK(cli({"enumerate", "--instance", wide, "--criterion", "prop"}).code == 4);
}
