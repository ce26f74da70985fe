#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cmaxpp/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Interleaved planning and execution benchmark runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir, schedules_path, oracle_out;
  int workers = 1;

  CLI::App* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("--config", config_path, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--workers", workers, "Parallel seed workers");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run a config across a schedule grid");
  sweep->add_option("--config", config_path, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--schedules", schedules_path, "JSON schedule grid")
      ->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", out_dir, "Output directory")->required();
  sweep->add_option("--workers", workers, "Parallel seed workers");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Dump model and true-dynamics optimal values");
  oracle->add_option("--config", config_path, "JSON experiment config")
      ->required()
      ->check(CLI::ExistingFile);
  oracle->add_option("--out", oracle_out, "Output CSV file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    const cmaxpp::ExperimentConfig config =
        cmaxpp::load_experiment_config(config_path);
    if (run->parsed()) {
      const cmaxpp::RunOutput out =
          cmaxpp::run_config(config, out_dir, workers);
      for (const auto& [seed, error] : out.errors)
        std::cerr << "seed " << seed << " failed: " << error << '\n';
      std::cout << "wrote " << out.rows.size() << " rows to " << out_dir
                << '\n';
      return out.errors.empty() ? 0 : 1;
    }
    if (sweep->parsed()) {
      const auto grid = cmaxpp::load_schedule_grid(schedules_path);
      const auto outputs =
          cmaxpp::sweep_schedules(config, grid, out_dir, workers);
      bool failed = false;
      for (const auto& out : outputs)
        for (const auto& [seed, error] : out.errors) {
          std::cerr << "seed " << seed << " failed: " << error << '\n';
          failed = true;
        }
      std::cout << "wrote " << outputs.size() << " schedule runs to "
                << out_dir << '\n';
      return failed ? 1 : 0;
    }
    if (oracle->parsed()) {
      if (oracle_out.empty()) {
        cmaxpp::write_oracle_values(config, std::cout);
      } else {
        std::ofstream out(oracle_out, std::ios::binary);
        if (!out) {
          std::cerr << "cannot write " << oracle_out << '\n';
          return 1;
        }
        cmaxpp::write_oracle_values(config, out);
      }
      return 0;
    }
  } catch (const cmaxpp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
