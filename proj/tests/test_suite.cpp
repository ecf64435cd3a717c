#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>

#include <nlohmann/json.hpp>

#include "tracemono/suite.hpp"

using namespace tracemono;

TEST_CASE("config validation") {
  SuiteConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(run_suite(cfg), InvalidInput);
  cfg.trials = 1;
  cfg.dims = {};
  CHECK_THROWS_AS(run_suite(cfg), InvalidInput);
  cfg.dims = {1};
  CHECK_THROWS_AS(run_suite(cfg), InvalidInput);
  cfg.dims = {2};
  cfg.suites = {"no_such_suite"};
  CHECK_THROWS_AS(run_suite(cfg), InvalidInput);
  cfg.suites = {"L1M"};
  cfg.tol = -1.0;
  CHECK_THROWS_AS(run_suite(cfg), InvalidInput);
  cfg.tol = 1e-8;
  cfg.families = {"no_such_family"};
  CHECK_THROWS_AS(run_suite(cfg), InvalidInput);
}

TEST_CASE("family filter restricts the map generators") {
  SuiteConfig cfg;
  cfg.suites = {"L1M", "Ep2", "tracialB"};
  cfg.dims = {2, 3};
  cfg.trials = 12;
  cfg.families = {"depolarizing"};
  SuiteReport rep = run_suite(cfg);
  CHECK(rep.ok());
  for (const CheckSummary& s : rep.checks) {
    INFO(s.check_id);
    CHECK(s.trials == cfg.trials);
    CHECK(s.skips == 0);
  }

  // Disabling the channel family makes channel-only suites skip every trial.
  cfg.suites = {"DPI"};
  SuiteReport rep2 = run_suite(cfg);
  REQUIRE(rep2.checks.size() == 1);
  CHECK(rep2.checks[0].skips == cfg.trials);
  CHECK(rep2.ok());
}

TEST_CASE("reports are a pure function of the config") {
  SuiteConfig cfg;
  cfg.suites = {"all"};
  cfg.dims = {2, 3};
  cfg.trials = 4;
  cfg.seed = 99;
  std::string a = run_suite(cfg).to_json().dump();
  std::string b = run_suite(cfg).to_json().dump();
  CHECK(a == b);
  cfg.seed = 100;
  CHECK(run_suite(cfg).to_json().dump() != a);
}

TEST_CASE("full small run is clean and replayable") {
  SuiteConfig cfg;
  cfg.suites = {"all"};
  cfg.dims = {2, 3};
  cfg.trials = 5;
  cfg.seed = 7;
  SuiteReport rep = run_suite(cfg);
  CHECK(rep.ok());
  CHECK(rep.hypothesis_failures() == 0);
  CHECK(rep.expected_falsifications_missing == 0);

  // Every suite produced work.
  for (const CheckSummary& s : rep.checks) {
    INFO(s.check_id);
    CHECK(s.trials > 0);
    CHECK(s.failures == 0);
  }

  nlohmann::json replayed = replay_snapshot(rep.to_json(), cfg.tol);
  CHECK(replay_ok(replayed));
  CHECK(replayed["all_match"].get<bool>());
  CHECK(replayed["failures"].get<int>() == 0);
}

TEST_CASE("suite shorthands expand") {
  SuiteConfig cfg;
  cfg.suites = {"midpoint"};
  cfg.dims = {2};
  cfg.trials = 2;
  SuiteReport rep = run_suite(cfg);
  CHECK(rep.checks.size() == 6);
  cfg.suites = {"reductions"};
  SuiteReport rep2 = run_suite(cfg);
  CHECK(rep2.checks.size() == 6);  // identity + midpoint per corollary
}

TEST_CASE("expected falsifications are reported and do not fail the run") {
  SuiteConfig cfg;
  cfg.suites = {"schwarz_falsify:transpose2"};
  cfg.dims = {2};
  cfg.trials = 1;
  SuiteReport rep = run_suite(cfg);
  CHECK(rep.ok());
  CHECK(rep.falsifications.size() == 3);
  for (const auto& f : rep.falsifications)
    CHECK(f["verdict"]["verdict"] == "Falsified");
}

TEST_CASE("single-instance replay") {
  SuiteConfig cfg;
  cfg.suites = {"Ep1"};
  cfg.dims = {3};
  cfg.trials = 3;
  SuiteReport rep = run_suite(cfg);
  REQUIRE(rep.checks.size() == 1);
  REQUIRE(rep.checks[0].worst.has_value());
  nlohmann::json inst = rep.checks[0].worst->snapshot.to_json();
  nlohmann::json result = replay_snapshot(inst, cfg.tol);
  CHECK(result["mode"] == "instance");
  CHECK(replay_ok(result));
}

TEST_CASE("config json round trip") {
  SuiteConfig cfg;
  cfg.suites = {"L1M", "dual2"};
  cfg.dims = {2, 4};
  cfg.trials = 17;
  cfg.seed = 1234567890123ULL;
  cfg.tol = 1e-9;
  cfg.force = true;
  cfg.families = {"pinching", "channel"};
  SuiteConfig back = SuiteConfig::from_json(cfg.to_json());
  CHECK(back.families == cfg.families);
  CHECK(back.suites == cfg.suites);
  CHECK(back.dims == cfg.dims);
  CHECK(back.trials == cfg.trials);
  CHECK(back.seed == cfg.seed);
  CHECK(back.tol == cfg.tol);
  CHECK(back.force == cfg.force);
}

TEST_CASE("replay warns on a version mismatch") {
  SuiteConfig cfg;
  cfg.suites = {"reverse_holder"};
  cfg.dims = {2};
  cfg.trials = 2;
  nlohmann::json rep = run_suite(cfg).to_json();
  CHECK_FALSE(replay_snapshot(rep, cfg.tol).contains("version_warning"));
  rep["version"] = "0.0.1";
  nlohmann::json result = replay_snapshot(rep, cfg.tol);
  CHECK(result.contains("version_warning"));
  CHECK(replay_ok(result));  // a warning alone does not fail the replay
}

namespace {

// Minimal structural validator: checks required keys and primitive types
// against the shipped schema (objects and arrays are descended one level).
void check_required(const nlohmann::json& schema, const nlohmann::json& value) {
  if (!schema.contains("required")) return;
  for (const auto& key : schema.at("required")) {
    std::string k = key.get<std::string>();
    INFO("required key: " << k);
    REQUIRE(value.contains(k));
    const nlohmann::json& prop = schema.at("properties").at(k);
    const nlohmann::json& v = value.at(k);
    std::string type = prop.value("type", "");
    if (type == "string") CHECK(v.is_string());
    if (type == "boolean") CHECK(v.is_boolean());
    if (type == "integer") CHECK(v.is_number_integer());
    if (type == "number") CHECK(v.is_number());
    if (type == "object") CHECK(v.is_object());
    if (type == "array") {
      REQUIRE(v.is_array());
      if (prop.contains("items") && prop.at("items").value("type", "") == "object")
        for (const auto& item : v) check_required(prop.at("items"), item);
    }
    if (type == "object" && prop.contains("required")) check_required(prop, v);
  }
}

}  // namespace

TEST_CASE("reports conform to the shipped schema") {
  std::ifstream in(std::string(TRACEMONO_SOURCE_DIR) + "/docs/report.schema.json");
  REQUIRE(in);
  nlohmann::json schema;
  in >> schema;

  SuiteConfig cfg;
  cfg.suites = {"L1M", "dual2", "schwarz_falsify:transpose2"};
  cfg.dims = {2, 3};
  cfg.trials = 3;
  nlohmann::json rep = run_suite(cfg).to_json();
  check_required(schema, rep);
  CHECK(rep.at("version") == schema.at("properties").at("version").at("const"));
}

TEST_CASE("classify_map output") {
  nlohmann::json j = classify_map(transpose_map(2), 100, 1, 1e-9);
  CHECK(j["cp"]["verdict"] == "Falsified");
  CHECK(j["two_positive"]["verdict"] == "Falsified");
  CHECK(j["schwarz"]["verdict"] == "Falsified");
  CHECK(j["unital"].get<bool>());
  CHECK(j["trace_preserving"].get<bool>());

  Rng rng(3);
  nlohmann::json c = classify_map(gen_channel(2, 3, 2, rng), 100, 1, 1e-9);
  CHECK(c["cp"]["verdict"] == "Certified");
  CHECK(c["schwarz"]["verdict"] == "Certified");
}
