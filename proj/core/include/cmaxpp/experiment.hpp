#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmaxpp/agent.hpp"
#include "cmaxpp/env.hpp"
#include "cmaxpp/envs/lattice.hpp"
#include "cmaxpp/envs/lift_grid.hpp"
#include "cmaxpp/schedule.hpp"

namespace cmaxpp {

/// Config rejection carrying the offending field's dotted path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct EnvSpec {
  std::string kind;  // grid_random | grid_bottleneck | grid_ascii | lift_grid | lattice
  int width = 15;
  int height = 15;
  double obstacle_density = 0.2;
  std::vector<std::string> ascii_rows;
  LiftGridConfig lift;
  LatticeConfig lattice;
  bool full_scale = false;
};

struct ScheduleSpec {
  std::string kind = "constant";  // constant | exponential | linear | time_decay | step | nav_default
  double alpha = 1.0;             // constant; "inf" accepted in configs
  double beta1 = 100.0;
  double rho = 0.97;
  int frequency = 5;
  int horizon = 200;
  std::string name;  // sweep label; defaults to kind
};

struct LargeSpec {
  std::string approximator = "tabular";  // tabular | linear
  int batch_size = 16;
  double eta = 0.001;
  int updates_v = 3;
  int updates_q = 5;
  double tau = 0.5;
  double delta = 3.0;
  double xi = 0.0;
  std::string metric = "manhattan";  // manhattan | euclidean | chebyshev
};

struct ExperimentConfig {
  int schema_version = 1;
  EnvSpec env;
  std::string agent_kind = "cmaxpp";  // cmax | cmaxpp | acmaxpp | qlearning | cmaxpp_large
  int expansion_budget = 10;
  double penalty = 0.0;  // <= 0 selects |S|
  std::string value_init = "model_optimal";  // zero | model_optimal
  ScheduleSpec schedule;
  LargeSpec large;
  int repetitions = 1;
  int step_cap = 500;
  bool abort_on_failure = true;
  bool trace = false;
  std::vector<std::uint64_t> seeds = {0};
};

ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);
std::vector<ScheduleSpec> load_schedule_grid(const std::string& path);

AlphaSchedule make_schedule(const ScheduleSpec& spec);
std::unique_ptr<Env> make_env(const EnvSpec& spec, std::uint64_t seed);
std::unique_ptr<Agent> make_agent(const ExperimentConfig& config,
                                  const Env& env, std::uint64_t seed);

/// Sub-seed derivation (splitmix64 of master + stream), so adding seeds or
/// streams never perturbs existing instances.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

struct ResultRow {
  std::uint64_t seed = 0;
  int repetition = 0;
  std::int64_t steps = 0;
  double cost = 0.0;
  bool success = false;
  std::int64_t cumulative_steps = 0;
  double wall_ms = 0.0;
};

struct SummaryRow {
  int repetition = 0;
  int attempted = 0;
  int succeeded = 0;
  double mean_steps = 0.0;
  double stderr_steps = 0.0;
  double mean_cost = 0.0;
  double stderr_cost = 0.0;
  double success_pct = 0.0;
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::vector<SummaryRow> summary;
  /// Per-seed error strings for seeds that failed outside the run protocol.
  std::vector<std::pair<std::uint64_t, std::string>> errors;
};

/// Mean and sample-std/sqrt(n) standard error over successful rows only.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

/// Runs every seed (possibly in parallel), writes results.csv, summary.csv,
/// manifest.json and optional trace logs under out_dir; rows are ordered by
/// the config's seed list regardless of completion order.
RunOutput run_config(const ExperimentConfig& config, const std::string& out_dir,
                     int workers = 1);

/// run_config once per schedule; writes each run under out_dir/<name> plus a
/// cumulative-steps comparison file sweep.csv.
std::vector<RunOutput> sweep_schedules(const ExperimentConfig& base,
                                       const std::vector<ScheduleSpec>& grid,
                                       const std::string& out_dir,
                                       int workers = 1);

/// Writes per-state model and true-dynamics optimal values as CSV.
void write_oracle_values(const ExperimentConfig& config, std::ostream& out);

std::string format_rows_csv(const std::vector<ResultRow>& rows);

}  // namespace cmaxpp
