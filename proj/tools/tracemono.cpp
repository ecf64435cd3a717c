#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tracemono/suite.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tracemono::InvalidInput("cannot open '" + path + "'");
  nlohmann::json j;
  in >> j;
  return j;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw tracemono::InvalidInput("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tracemono;
  CLI::App app{"Numerical verification of trace-functional monotonicity "
               "inequalities under positive maps"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string suites_arg = "all";
  std::string dims_arg = "2,3,4";
  std::string out_path;
  std::string families_arg;
  CLI::App* run = app.add_subcommand("run", "Run randomized check suites");
  run->add_option("--suite", suites_arg, "Comma-separated suite ids, or 'all'");
  run->add_option("--dims", dims_arg, "Comma-separated base dimensions");
  run->add_option("--families", families_arg,
                  "Comma-separated map families to draw from (default: all)");
  run->add_option("--trials", cfg.trials, "Trials per suite");
  run->add_option("--seed", cfg.seed, "Master seed");
  run->add_option("--tol", cfg.tol, "Relative margin tolerance");
  run->add_option("--out", out_path, "Write the JSON report here");
  run->add_flag("--force", cfg.force,
                "Evaluate even when hypotheses fail; such results are "
                "exploratory and never affect the exit code");

  std::string replay_in;
  double replay_tol = 1e-8;
  CLI::App* replay = app.add_subcommand("replay", "Re-evaluate a stored snapshot");
  replay->add_option("--in", replay_in, "Report or instance JSON file")->required();
  replay->add_option("--tol", replay_tol, "Tolerance for single-instance replay");

  std::string map_path;
  int classify_trials = 200;
  std::uint64_t classify_seed = 1;
  double classify_tol = 1e-9;
  CLI::App* classify = app.add_subcommand("classify", "Positivity-class tests for one map");
  classify->add_option("--map", map_path, "Map JSON file (d_in, d_out, choi)")->required();
  classify->add_option("--trials", classify_trials, "Sampling trials per class");
  classify->add_option("--seed", classify_seed, "Sampling seed");
  classify->add_option("--tol", classify_tol, "Class tolerance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      cfg.suites.clear();
      for (const auto& piece : CLI::detail::split(suites_arg, ','))
        if (!piece.empty()) cfg.suites.push_back(piece);
      cfg.dims.clear();
      for (const auto& piece : CLI::detail::split(dims_arg, ','))
        if (!piece.empty()) cfg.dims.push_back(std::stol(piece));
      for (const auto& piece : CLI::detail::split(families_arg, ','))
        if (!piece.empty()) cfg.families.push_back(piece);
      SuiteReport report = run_suite(cfg);
      nlohmann::json j = report.to_json();
      if (!out_path.empty()) write_json(out_path, j);
      std::cout << j.dump(2) << "\n";
      return report.ok() ? 0 : 1;
    }
    if (*replay) {
      nlohmann::json result = replay_snapshot(load_json(replay_in), replay_tol);
      std::cout << result.dump(2) << "\n";
      return replay_ok(result) ? 0 : 1;
    }
    if (*classify) {
      SuperMap phi = SuperMap::from_json(load_json(map_path));
      std::cout << classify_map(phi, classify_trials, classify_seed, classify_tol).dump(2)
                << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
