// Batch driver for the bethelab verification engine.
//
//   bethelab <task> [--config file.json] [--out report.json]
//            [--seed n] [--backend exact|float]
//
// Tasks: check-rmatrix, check-rtt, check-identities, compare-bv,
//        check-morphisms, onshell, bench.
//
// The config file supplies task parameters (N, L, n, q, inhomogeneities,
// bethe_parameters, points, tolerance, ...); every field has a default.
// Rationals are written as "p/r" strings, complex values as [re, im] pairs.
// Exit status is 0 iff every check passed.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bethelab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"nested Bethe vector verification engine"};
  std::string task, config_path, out_path, backend, seed_str;
  app.add_option("task", task, "task to run (see --help-tasks in README)")->required();
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_path, "write the JSON report here (default: stdout)");
  app.add_option("--seed", seed_str, "random seed override");
  app.add_option("--backend", backend, "exact | float")
      ->check(CLI::IsMember({"exact", "float"}));
  CLI11_PARSE(app, argc, argv);

  try {
    bethelab::Json doc = bethelab::Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw bethelab::ConfigError("cannot open config '" + config_path + "'");
      in >> doc;
    }
    doc["task"] = task;
    if (!backend.empty()) doc["backend"] = backend;
    if (!seed_str.empty()) doc["seed"] = std::stoull(seed_str);
    if (!out_path.empty()) doc["out"] = out_path;

    bethelab::RunConfig cfg = bethelab::RunConfig::from_json(doc);
    bethelab::Report report = bethelab::run(cfg);

    for (const auto& check : report.checks)
      std::cerr << (check.pass ? "[pass] " : "[FAIL] ") << check.name
                << "  residual=" << check.residual
                << (check.error.empty() ? "" : "  error=" + check.error) << "\n";

    std::string rendered = report.to_json().dump(2);
    if (!cfg.out.empty()) {
      std::ofstream out(cfg.out);
      if (!out) throw bethelab::ConfigError("cannot write report to '" + cfg.out + "'");
      out << rendered << "\n";
    } else {
      std::cout << rendered << "\n";
    }
    return report.all_pass() ? 0 : 1;
  } catch (const bethelab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
