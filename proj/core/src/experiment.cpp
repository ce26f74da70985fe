#include "cmaxpp/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cmaxpp/envs/grid_nav_ice.hpp"
#include "cmaxpp/oracle.hpp"

namespace cmaxpp {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

template <typename T>
T get_field(const json& j, const std::string& path, const char* name, T def) {
  if (!j.contains(name)) return def;
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + name, e.what());
  }
}

template <typename T>
T require_field(const json& j, const std::string& path, const char* name) {
  if (!j.contains(name)) throw ConfigError(path + name, "missing field");
  try {
    return j.at(name).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(path + name, e.what());
  }
}

double get_alpha_field(const json& j, const std::string& path) {
  if (!j.contains("alpha")) return 1.0;
  const json& a = j.at("alpha");
  if (a.is_string()) {
    const std::string s = a.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity")
      return std::numeric_limits<double>::infinity();
    throw ConfigError(path + "alpha", "expected a number or \"inf\"");
  }
  if (!a.is_number()) throw ConfigError(path + "alpha", "expected a number");
  return a.get<double>();
}

ScheduleSpec parse_schedule(const json& j, const std::string& path) {
  ScheduleSpec s;
  s.kind = get_field<std::string>(j, path, "kind", s.kind);
  s.alpha = get_alpha_field(j, path);
  s.beta1 = get_field<double>(j, path, "beta1", s.beta1);
  s.rho = get_field<double>(j, path, "rho", s.rho);
  s.frequency = get_field<int>(j, path, "frequency", s.frequency);
  s.horizon = get_field<int>(j, path, "horizon", s.horizon);
  s.name = get_field<std::string>(j, path, "name", s.kind);
  static const std::set<std::string> kinds = {
      "constant", "exponential", "linear", "time_decay", "step", "nav_default"};
  if (kinds.count(s.kind) == 0)
    throw ConfigError(path + "kind", "unknown schedule kind '" + s.kind + "'");
  return s;
}

SphereMetric parse_metric(const std::string& name, const std::string& path) {
  if (name == "manhattan") return SphereMetric::kManhattan;
  if (name == "euclidean") return SphereMetric::kEuclidean;
  if (name == "chebyshev") return SphereMetric::kChebyshev;
  throw ConfigError(path, "unknown metric '" + name + "'");
}

/// Owns the approximators the large agent trains against.
class OwnedLargeAgent final : public Agent {
 public:
  OwnedLargeAgent(const Env& env, std::unique_ptr<ValueApproximator> v,
                  std::unique_ptr<QApproximator> q, LargeAgentOptions opts)
      : Agent(env),
        v_(std::move(v)),
        q_(std::move(q)),
        inner_(env, *v_, *q_, opts) {}

  void begin_repetition(int repetition) override {
    inner_.begin_repetition(repetition);
  }
  StepResult step(StateId s) override { return inner_.step(s); }
  const char* name() const override { return inner_.name(); }

 private:
  std::unique_ptr<ValueApproximator> v_;
  std::unique_ptr<QApproximator> q_;
  LargeCmaxppAgent inner_;
};

struct SeedOutcome {
  std::vector<ResultRow> rows;
  std::string trace;
  std::string error;
};

SeedOutcome run_seed(const ExperimentConfig& config, std::uint64_t seed) {
  SeedOutcome out;
  try {
    const auto env = make_env(config.env, seed);
    const auto agent = make_agent(config, *env, seed);
    std::ostringstream trace;
    int current_rep = 0;
    StepObserver observer;
    if (config.trace) {
      observer = [&trace, &current_rep](const Agent&, int t, StateId s,
                                        const StepResult& r) {
        trace << "rep=" << current_rep << " t=" << t << " state=" << s
              << " action=" << r.action << " predicted=" << r.predicted
              << " next=" << r.next_state << " discrepant=" << r.discrepant
              << " source=" << static_cast<char>(r.source) << '\n';
      };
    }
    std::int64_t cumulative = 0;
    for (int rep = 1; rep <= config.repetitions; ++rep) {
      current_rep = rep;
      const auto t0 = std::chrono::steady_clock::now();
      const RepetitionRecord rec =
          run_repetition(*agent, config.step_cap, rep, observer);
      const auto t1 = std::chrono::steady_clock::now();
      cumulative += rec.steps;
      ResultRow row;
      row.seed = seed;
      row.repetition = rep;
      row.steps = rec.steps;
      row.cost = rec.total_cost;
      row.success = rec.success;
      row.cumulative_steps = cumulative;
      row.wall_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      out.rows.push_back(row);
      if (!rec.success && config.abort_on_failure) break;
    }
    out.trace = trace.str();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

std::vector<SummaryRow> summarize_full(const std::vector<ResultRow>& rows,
                                       int num_seeds, int repetitions) {
  std::vector<SummaryRow> summary;
  for (int rep = 1; rep <= repetitions; ++rep) {
    SummaryRow s;
    s.repetition = rep;
    std::vector<double> steps, costs;
    for (const auto& row : rows) {
      if (row.repetition != rep) continue;
      s.attempted += 1;
      if (!row.success) continue;
      steps.push_back(static_cast<double>(row.steps));
      costs.push_back(row.cost);
    }
    s.succeeded = static_cast<int>(steps.size());
    auto mean_stderr = [](const std::vector<double>& xs, double& mean,
                          double& se) {
      mean = 0.0;
      se = 0.0;
      if (xs.empty()) return;
      for (double x : xs) mean += x;
      mean /= static_cast<double>(xs.size());
      if (xs.size() < 2) return;
      double var = 0.0;
      for (double x : xs) var += (x - mean) * (x - mean);
      var /= static_cast<double>(xs.size() - 1);
      se = std::sqrt(var) / std::sqrt(static_cast<double>(xs.size()));
    };
    mean_stderr(steps, s.mean_steps, s.stderr_steps);
    mean_stderr(costs, s.mean_cost, s.stderr_cost);
    s.success_pct =
        num_seeds > 0 ? 100.0 * s.succeeded / static_cast<double>(num_seeds)
                      : 0.0;
    summary.push_back(s);
  }
  return summary;
}

std::string format_summary_csv(const std::vector<SummaryRow>& summary) {
  std::ostringstream out;
  out << "repetition,attempted,succeeded,mean_steps,stderr_steps,mean_cost,"
         "stderr_cost,success_pct\n";
  char buf[256];
  for (const auto& s : summary) {
    std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.6f,%.6f,%.6f,%.6f,%.2f\n",
                  s.repetition, s.attempted, s.succeeded, s.mean_steps,
                  s.stderr_steps, s.mean_cost, s.stderr_cost, s.success_pct);
    out << buf;
  }
  return out.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  ExperimentConfig c;
  c.schema_version = require_field<int>(j, "", "schema_version");
  if (c.schema_version != 1)
    throw ConfigError("schema_version", "unsupported schema version");

  if (!j.contains("env")) throw ConfigError("env", "missing field");
  const json& je = j.at("env");
  c.env.kind = require_field<std::string>(je, "env.", "kind");
  c.env.width = get_field<int>(je, "env.", "width", c.env.width);
  c.env.height = get_field<int>(je, "env.", "height", c.env.height);
  c.env.obstacle_density =
      get_field<double>(je, "env.", "obstacle_density", c.env.obstacle_density);
  c.env.ascii_rows = get_field<std::vector<std::string>>(je, "env.", "map",
                                                         c.env.ascii_rows);
  c.env.full_scale =
      get_field<bool>(je, "env.", "full_scale", c.env.full_scale);
  if (c.env.kind == "lift_grid") {
    LiftGridConfig& l = c.env.lift;
    l.width = get_field<int>(je, "env.", "width", l.width);
    l.height = get_field<int>(je, "env.", "height", l.height);
    l.band_lo = get_field<int>(je, "env.", "band_lo", l.band_lo);
    l.band_hi = get_field<int>(je, "env.", "band_hi", l.band_hi);
    l.strong_cols = get_field<std::vector<int>>(je, "env.", "strong_cols",
                                                l.strong_cols);
    l.start_col = get_field<int>(je, "env.", "start_col", l.start_col);
    l.goal_col = get_field<int>(je, "env.", "goal_col", l.goal_col);
  } else if (c.env.kind == "lattice") {
    LatticeConfig& l = c.env.lattice;
    if (c.env.full_scale) {
      l.size = 100;
      l.ring_inner = 28.0;
      l.ring_outer = 39.5;
      l.primitives.headings = 16;
    }
    l.size = get_field<int>(je, "env.", "size", l.size);
    l.ring_inner = get_field<double>(je, "env.", "ring_inner", l.ring_inner);
    l.ring_outer = get_field<double>(je, "env.", "ring_outer", l.ring_outer);
    l.track_cost = get_field<double>(je, "env.", "track_cost", l.track_cost);
    l.off_track_cost =
        get_field<double>(je, "env.", "off_track_cost", l.off_track_cost);
    l.num_random_patches =
        get_field<int>(je, "env.", "num_patches", 3);
    l.patch_radius =
        get_field<double>(je, "env.", "patch_radius", l.patch_radius);
    l.patch_pull = get_field<int>(je, "env.", "patch_pull", l.patch_pull);
  } else if (c.env.kind != "grid_random" && c.env.kind != "grid_bottleneck" &&
             c.env.kind != "grid_ascii") {
    throw ConfigError("env.kind", "unknown environment '" + c.env.kind + "'");
  }
  if (c.env.kind == "grid_ascii" && c.env.ascii_rows.empty())
    throw ConfigError("env.map", "grid_ascii requires a map");

  if (j.contains("agent")) {
    const json& ja = j.at("agent");
    c.agent_kind = get_field<std::string>(ja, "agent.", "kind", c.agent_kind);
    c.expansion_budget =
        get_field<int>(ja, "agent.", "expansion_budget", c.expansion_budget);
    c.penalty = get_field<double>(ja, "agent.", "penalty", c.penalty);
    c.value_init =
        get_field<std::string>(ja, "agent.", "value_init", c.value_init);
  }
  static const std::set<std::string> agents = {"cmax", "cmaxpp", "acmaxpp",
                                               "qlearning", "cmaxpp_large"};
  if (agents.count(c.agent_kind) == 0)
    throw ConfigError("agent.kind", "unknown agent '" + c.agent_kind + "'");
  if (c.expansion_budget < 1)
    throw ConfigError("agent.expansion_budget", "must be >= 1");
  if (c.value_init != "zero" && c.value_init != "model_optimal")
    throw ConfigError("agent.value_init", "expected zero or model_optimal");

  if (j.contains("schedule"))
    c.schedule = parse_schedule(j.at("schedule"), "schedule.");

  if (j.contains("large")) {
    const json& jl = j.at("large");
    LargeSpec& l = c.large;
    l.approximator =
        get_field<std::string>(jl, "large.", "approximator", l.approximator);
    l.batch_size = get_field<int>(jl, "large.", "batch_size", l.batch_size);
    l.eta = get_field<double>(jl, "large.", "eta", l.eta);
    l.updates_v = get_field<int>(jl, "large.", "updates_v", l.updates_v);
    l.updates_q = get_field<int>(jl, "large.", "updates_q", l.updates_q);
    l.tau = get_field<double>(jl, "large.", "tau", l.tau);
    l.delta = get_field<double>(jl, "large.", "delta", l.delta);
    l.xi = get_field<double>(jl, "large.", "xi", l.xi);
    l.metric = get_field<std::string>(jl, "large.", "metric", l.metric);
    if (l.approximator != "tabular" && l.approximator != "linear")
      throw ConfigError("large.approximator", "expected tabular or linear");
    if (l.batch_size < 1) throw ConfigError("large.batch_size", "must be >= 1");
    parse_metric(l.metric, "large.metric");
  }

  if (j.contains("run")) {
    const json& jr = j.at("run");
    c.repetitions = get_field<int>(jr, "run.", "repetitions", c.repetitions);
    c.step_cap = get_field<int>(jr, "run.", "step_cap", c.step_cap);
    c.abort_on_failure =
        get_field<bool>(jr, "run.", "abort_on_failure", c.abort_on_failure);
    c.trace = get_field<bool>(jr, "run.", "trace", c.trace);
    c.seeds =
        get_field<std::vector<std::uint64_t>>(jr, "run.", "seeds", c.seeds);
  }
  if (c.repetitions < 1) throw ConfigError("run.repetitions", "must be >= 1");
  if (c.step_cap < 1) throw ConfigError("run.step_cap", "must be >= 1");
  if (c.seeds.empty()) throw ConfigError("run.seeds", "must be non-empty");
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::vector<ScheduleSpec> load_schedule_grid(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open schedules file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!j.contains("schedules") || !j.at("schedules").is_array() ||
      j.at("schedules").empty())
    throw ConfigError("schedules", "must be a non-empty array");
  std::vector<ScheduleSpec> grid;
  std::set<std::string> names;
  int i = 0;
  for (const json& js : j.at("schedules")) {
    const std::string path_i = "schedules[" + std::to_string(i++) + "].";
    ScheduleSpec s = parse_schedule(js, path_i);
    if (!names.insert(s.name).second)
      throw ConfigError(path_i + "name", "duplicate schedule name");
    grid.push_back(s);
  }
  return grid;
}

AlphaSchedule make_schedule(const ScheduleSpec& spec) {
  if (spec.kind == "constant") return AlphaSchedule::constant(spec.alpha);
  if (spec.kind == "exponential")
    return AlphaSchedule::exponential(spec.beta1, spec.rho);
  if (spec.kind == "linear")
    return AlphaSchedule::linear(spec.beta1, spec.horizon);
  if (spec.kind == "time_decay") return AlphaSchedule::time_decay(spec.beta1);
  if (spec.kind == "step")
    return AlphaSchedule::step(spec.beta1, spec.frequency, spec.horizon);
  if (spec.kind == "nav_default") return AlphaSchedule::nav_default();
  throw ConfigError("schedule.kind", "unknown schedule kind '" + spec.kind +
                                         "'");
}

std::unique_ptr<Env> make_env(const EnvSpec& spec, std::uint64_t seed) {
  const std::uint64_t env_seed = derive_seed(seed, 0);
  if (spec.kind == "grid_random")
    return std::make_unique<GridNavIce>(GridNavIce::random_obstacles(
        spec.width, spec.height, spec.obstacle_density, env_seed));
  if (spec.kind == "grid_bottleneck")
    return std::make_unique<GridNavIce>(
        GridNavIce::bottleneck(spec.width, spec.height, env_seed));
  if (spec.kind == "grid_ascii")
    return std::make_unique<GridNavIce>(
        GridNavIce::from_ascii(spec.ascii_rows));
  if (spec.kind == "lift_grid") return std::make_unique<LiftGrid>(spec.lift);
  if (spec.kind == "lattice") {
    LatticeConfig c = spec.lattice;
    c.seed = env_seed;
    return std::make_unique<LatticeWorld>(std::move(c));
  }
  throw ConfigError("env.kind", "unknown environment '" + spec.kind + "'");
}

std::unique_ptr<Agent> make_agent(const ExperimentConfig& config,
                                  const Env& env, std::uint64_t seed) {
  TabularAgentOptions opts;
  opts.expansion_budget = config.expansion_budget;
  opts.penalty = config.penalty;
  opts.value_init = config.value_init == "zero" ? ValueInit::kZero
                                                : ValueInit::kModelOptimal;
  if (config.agent_kind == "cmax")
    return std::make_unique<CmaxAgent>(env, opts);
  if (config.agent_kind == "cmaxpp")
    return std::make_unique<CmaxppAgent>(env, opts);
  if (config.agent_kind == "acmaxpp")
    return std::make_unique<AcmaxppAgent>(env, make_schedule(config.schedule),
                                          opts);
  if (config.agent_kind == "qlearning")
    return std::make_unique<QLearningAgent>(env);
  if (config.agent_kind == "cmaxpp_large") {
    const Problem& p = env.problem();
    auto v0 = std::make_shared<std::vector<double>>(
        opts.value_init == ValueInit::kModelOptimal
            ? dijkstra_optimal_values(p)
            : std::vector<double>(p.num_states(), 0.0));
    HeuristicFn base_v = [v0](StateId s) { return (*v0)[s]; };
    auto base_q = [v0, &p](StateId s, ActionId a) {
      return p.cost(s, a) + (*v0)[p.model_step(s, a)];
    };

    std::unique_ptr<ValueApproximator> v;
    std::unique_ptr<QApproximator> q;
    if (config.large.approximator == "tabular") {
      v = std::make_unique<TabularValueApproximator>(p.num_states(), base_v);
      q = std::make_unique<TabularQApproximator>(p.num_states(),
                                                 p.num_actions(), base_q);
    } else {
      const int dims = env.coord_dims();
      const std::vector<int> goal = env.coords(p.goals().front());
      FeatureFn features = [&env, dims, goal](StateId s) {
        const std::vector<int> c = env.coords(s);
        std::vector<double> phi(1 + 2 * dims);
        phi[0] = 1.0;
        for (int i = 0; i < dims; ++i) {
          phi[1 + i] = c[i] / 100.0;
          phi[1 + dims + i] = (c[i] - goal[i]) / 100.0;
        }
        return phi;
      };
      v = std::make_unique<LinearValueApproximator>(1 + 2 * dims, features,
                                                    base_v);
      q = std::make_unique<LinearQApproximator>(p.num_actions(), 1 + 2 * dims,
                                                features, base_q);
    }

    LargeAgentOptions lopts;
    lopts.expansion_budget = config.expansion_budget;
    lopts.radius = config.large.delta;
    lopts.xi = config.large.xi;
    lopts.batch_size = config.large.batch_size;
    lopts.eta = config.large.eta;
    lopts.updates_v = config.large.updates_v;
    lopts.updates_q = config.large.updates_q;
    lopts.seed = derive_seed(seed, 1);
    lopts.metric = parse_metric(config.large.metric, "large.metric");
    return std::make_unique<OwnedLargeAgent>(env, std::move(v), std::move(q),
                                             lopts);
  }
  throw ConfigError("agent.kind", "unknown agent '" + config.agent_kind + "'");
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  std::set<std::uint64_t> seeds;
  int reps = 0;
  for (const auto& r : rows) {
    seeds.insert(r.seed);
    reps = std::max(reps, r.repetition);
  }
  return summarize_full(rows, static_cast<int>(seeds.size()), reps);
}

std::string format_rows_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "seed,repetition,steps,cost,success,cumulative_steps,wall_ms\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%d,%lld,%.6f,%d,%lld,%.3f\n",
                  static_cast<unsigned long long>(r.seed), r.repetition,
                  static_cast<long long>(r.steps), r.cost, r.success ? 1 : 0,
                  static_cast<long long>(r.cumulative_steps), r.wall_ms);
    out << buf;
  }
  return out.str();
}

RunOutput run_config(const ExperimentConfig& config, const std::string& out_dir,
                     int workers) {
  fs::create_directories(out_dir);
  std::vector<SeedOutcome> outcomes(config.seeds.size());
  if (workers > 1) {
    std::vector<std::future<SeedOutcome>> futures;
    futures.reserve(config.seeds.size());
    for (std::uint64_t seed : config.seeds)
      futures.push_back(std::async(std::launch::async, run_seed,
                                   std::cref(config), seed));
    for (std::size_t i = 0; i < futures.size(); ++i)
      outcomes[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < config.seeds.size(); ++i)
      outcomes[i] = run_seed(config, config.seeds[i]);
  }

  RunOutput out;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SeedOutcome& o = outcomes[i];
    out.rows.insert(out.rows.end(), o.rows.begin(), o.rows.end());
    if (!o.error.empty()) out.errors.emplace_back(config.seeds[i], o.error);
    if (config.trace && !o.trace.empty())
      write_file(fs::path(out_dir) /
                     ("trace_" + std::to_string(config.seeds[i]) + ".log"),
                 o.trace);
  }
  out.summary = summarize_full(out.rows, static_cast<int>(config.seeds.size()),
                               config.repetitions);

  write_file(fs::path(out_dir) / "results.csv", format_rows_csv(out.rows));
  write_file(fs::path(out_dir) / "summary.csv",
             format_summary_csv(out.summary));

  json manifest;
  manifest["schema_version"] = config.schema_version;
  manifest["env_kind"] = config.env.kind;
  manifest["agent_kind"] = config.agent_kind;
  manifest["expansion_budget"] = config.expansion_budget;
  manifest["repetitions"] = config.repetitions;
  manifest["step_cap"] = config.step_cap;
  manifest["schedule"] = config.schedule.kind;
  manifest["seeds"] = config.seeds;
  json errors = json::array();
  for (const auto& [seed, message] : out.errors)
    errors.push_back({{"seed", seed}, {"error", message}});
  manifest["errors"] = errors;
  manifest["files"] = {"results.csv", "summary.csv"};
  write_file(fs::path(out_dir) / "manifest.json", manifest.dump(2) + "\n");
  return out;
}

std::vector<RunOutput> sweep_schedules(const ExperimentConfig& base,
                                       const std::vector<ScheduleSpec>& grid,
                                       const std::string& out_dir,
                                       int workers) {
  if (grid.empty()) throw ConfigError("schedules", "must be non-empty");
  fs::create_directories(out_dir);
  std::vector<RunOutput> outputs;
  std::ostringstream sweep_csv;
  sweep_csv << "schedule,seed,repetition,steps,cumulative_steps\n";
  for (const ScheduleSpec& spec : grid) {
    ExperimentConfig config = base;
    config.schedule = spec;
    const std::string name = spec.name.empty() ? spec.kind : spec.name;
    RunOutput out =
        run_config(config, (fs::path(out_dir) / name).string(), workers);
    for (const auto& r : out.rows) {
      sweep_csv << name << ',' << r.seed << ',' << r.repetition << ','
                << r.steps << ',' << r.cumulative_steps << '\n';
    }
    outputs.push_back(std::move(out));
  }
  write_file(fs::path(out_dir) / "sweep.csv", sweep_csv.str());
  return outputs;
}

void write_oracle_values(const ExperimentConfig& config, std::ostream& out) {
  const auto env = make_env(config.env, config.seeds.front());
  const Problem& p = env->problem();
  const auto model_v = dijkstra_optimal_values(p);
  const auto true_v = dijkstra_optimal_values(
      p, [&env](StateId s, ActionId a) { return env->true_step(s, a); });
  out << "state,model_value,true_value\n";
  auto fmt = [](double v) -> std::string {
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
  };
  for (StateId s = 0; s < p.num_states(); ++s)
    out << s << ',' << fmt(model_v[s]) << ',' << fmt(true_v[s]) << '\n';
}

}  // namespace cmaxpp
