#ifndef TRACEMONO_SUITE_HPP
#define TRACEMONO_SUITE_HPP

#include <limits>

#include "tracemono/inequalities.hpp"

namespace tracemono {

struct SuiteConfig {
  std::vector<std::string> suites{"all"};
  std::vector<Index> dims{2, 3, 4};
  int trials = 100;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  bool force = false;
  // Map families the instance generators may draw from; empty means all.
  // Valid: pinching, depolarizing, mixed_unitary, completely_mixing,
  // embedding, channel_adjoint, channel.
  std::vector<std::string> families;

  nlohmann::json to_json() const;
  static SuiteConfig from_json(const nlohmann::json& j);
};

struct CheckSummary {
  std::string check_id;
  int trials = 0;
  int passes = 0;
  int failures = 0;              // hypothesis-satisfying failures
  int exploratory_failures = 0;  // failures under --force, outside hypotheses
  int skips = 0;                 // instances rejected before evaluation
  double worst_margin = std::numeric_limits<double>::infinity();
  std::optional<CheckOutcome> worst;

  nlohmann::json to_json() const;
};

// No timestamps anywhere: a report is a pure function of its config, so two
// runs with the same config are byte-identical.
struct SuiteReport {
  std::string version = "0.1.0";
  SuiteConfig config;
  std::vector<CheckSummary> checks;
  std::vector<nlohmann::json> falsifications;  // expected negative results
  int expected_falsifications_missing = 0;

  int hypothesis_failures() const;
  bool ok() const;
  nlohmann::json to_json() const;
};

// Every runnable suite id, in the order "all" expands to.
std::vector<std::string> all_suite_ids();

SuiteReport run_suite(const SuiteConfig& cfg);

// Re-evaluates a serialized snapshot: either a full report (each stored
// worst-case instance is recomputed and compared) or a single instance.
nlohmann::json replay_snapshot(const nlohmann::json& snapshot, double tol);
bool replay_ok(const nlohmann::json& replay_result);

// Classification front end: exact CP test, sampled 2-positivity and Schwarz
// tests, structural flags.
nlohmann::json classify_map(const SuperMap& phi, int trials, std::uint64_t seed,
                            double tol);

}  // namespace tracemono

#endif
