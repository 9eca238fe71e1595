#include "ehrenfest/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ehrenfest/errors.hpp"
#include "ehrenfest/output.hpp"
#include "ehrenfest/run.hpp"
#include "ehrenfest/scenario.hpp"

namespace ehrenfest {

namespace {

int execute(Scenario scenario, bool no_quantum, const std::string& prefix, std::ostream& out,
            std::ostream& err) {
  if (no_quantum) scenario.quantum.enabled = false;
  const RunResult result = run_scenario(scenario);
  std::optional<ComparisonSummary> summary;
  if (result.record.has_quantum()) {
    try {
      const auto& d = result.diagnostics;
      summary = compare(result.record, scenario.params.mass(),
                        InitialAccelerations{d.accel_classical0, d.accel_quantum0.value_or(0.0)});
    } catch (const NoTurningPointError& e) {
      err << "note: " << e.what() << "; summary not written\n";
    }
  }
  emit(result.record, summary, prefix, scenario.name);
  out << "wrote " << prefix << ".csv" << (summary ? ", " + prefix + ".summary.json" : "") << ", "
      << prefix << ".svg\n";
  out << "max |det m - 1| = " << result.diagnostics.max_det_drift;
  if (result.record.has_quantum()) out << ", max |norm - 1| = " << result.diagnostics.max_norm_drift;
  out << '\n';
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classical, semiclassical and quantum phase-space paths of a 1-D coherent state"};
  app.require_subcommand(1);

  std::string config_path, prefix, preset_name, csv_path;
  bool no_quantum = false;
  bool print_config = false;
  double mass = 1.0;

  auto* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("--config", config_path, "Scenario file")->required();
  run->add_option("--out", prefix, "Output prefix")->required();
  run->add_flag("--no-quantum", no_quantum, "Skip the grid propagation");

  auto* pre = app.add_subcommand("preset", "Run a built-in scenario");
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  pre->add_option("name", preset_name, "One of: " + names)->required();
  auto* pre_out = pre->add_option("--out", prefix, "Output prefix");
  pre->add_flag("--no-quantum", no_quantum, "Skip the grid propagation");
  pre->add_flag("--print-config", print_config, "Print the scenario file and exit")
      ->excludes(pre_out);

  auto* cmp = app.add_subcommand("compare", "Summarize an existing CSV record");
  cmp->add_option("--csv", csv_path, "Record written by run or preset")->required();
  cmp->add_option("--mass", mass, "Particle mass used for the initial accelerations")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return execute(load_scenario(config_path), no_quantum, prefix, out, err);
    if (*pre) {
      Scenario scenario = preset(preset_name);
      if (print_config) {
        out << format_scenario(scenario);
        return kOk;
      }
      if (prefix.empty()) {
        err << "preset: --out is required\n";
        return kConfigError;
      }
      return execute(scenario, no_quantum, prefix, out, err);
    }
    std::ifstream file(csv_path);
    if (!file) throw IoError("cannot read '" + csv_path + "'");
    const PathRecord record = read_csv(file);
    if (!record.has_quantum()) {
      err << "compare: " << csv_path << " has no quantum columns\n";
      return kConfigError;
    }
    out << summary_json(compare(record, mass));
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace ehrenfest
