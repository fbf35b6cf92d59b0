// Scenario runner: evolves configured data, emits reports, fits series.
//
//   cymh run <config.json>            execute one scenario
//   cymh verify <dir>                 run every scenario config in a directory
//   cymh fit <series.csv> --window a,b   fit decay exponents per column
//
// Output lands under --out, or $CYMH_OUT, or ./out.  Exit codes: 0 pass,
// 1 check failures, 2 configuration error, 3 numerical abort.

#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "cymh/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"conformal Yang-Mills-Higgs scenario runner"};
  app.require_subcommand(1);

  std::string outroot;
  if (const char* env = std::getenv("CYMH_OUT")) outroot = env;
  if (outroot.empty()) outroot = "out";
  int threads = 1;
  app.add_option("--out", outroot, "output root directory");
  app.add_option("--threads", threads, "parallel scenarios in verify")
      ->check(CLI::PositiveNumber);

  // let --out / --threads appear on either side of the subcommand
  app.fallthrough();

  std::string config, suite, series;
  std::pair<double, double> window{0.0, 0.0};
  auto* run = app.add_subcommand("run", "run one scenario config");
  run->add_option("config", config, "scenario JSON file")->required();
  auto* verify = app.add_subcommand("verify", "run a directory of scenarios");
  verify->add_option("dir", suite, "directory of scenario JSON files")
      ->required();
  auto* fit = app.add_subcommand("fit", "fit decay exponents of a series");
  fit->add_option("series", series, "series CSV file")->required();
  fit->add_option("--window", window, "fit window a,b")->required()
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (run->parsed()) return cymh::run_scenario(config, outroot);
  if (verify->parsed()) return cymh::verify_all(suite, outroot, threads);
  return cymh::fit_series(series, window.first, window.second);
}
