#include "cmaxpp/agent.hpp"

#include <cmath>
#include <iostream>
#include <limits>

#include "cmaxpp/oracle.hpp"

namespace cmaxpp {

namespace {

ValueStore make_initial_values(const Env& env, ValueInit init) {
  const Problem& p = env.problem();
  if (init == ValueInit::kModelOptimal)
    return ValueStore(p, dijkstra_optimal_values(p));
  return ValueStore(p);
}

double zero_q(StateId, ActionId) { return 0.0; }

}  // namespace

CmaxppAgent::CmaxppAgent(const Env& env, TabularAgentOptions opts)
    : Agent(env),
      opts_(opts),
      v_(make_initial_values(env, opts.value_init)),
      q_(env.problem().num_actions()) {}

StepResult CmaxppAgent::step(StateId s) {
  const Problem& p = env().problem();
  const SearchResult r =
      search(s, p, v_, q_, x_, opts_.expansion_budget);
  for (const auto& [state, value] : r.value_updates) v_.set(state, value);

  StepResult out;
  out.action = r.best_action;
  out.source = ActionSource::kCmaxpp;
  out.predicted = p.model_step(s, out.action);
  out.next_state = env().true_step(s, out.action);
  out.cost = p.cost(s, out.action);
  out.discrepant = out.next_state != out.predicted;
  if (out.discrepant) {
    x_.insert(s, out.action);
    q_.set(s, out.action, out.cost + v_.get(out.next_state));
  }
  return out;
}

CmaxAgent::CmaxAgent(const Env& env, TabularAgentOptions opts)
    : Agent(env),
      opts_(opts),
      v_(make_initial_values(env, opts.value_init)),
      penalized_(env.problem(), x_, opts.penalty),
      penalized_problem_(penalized_.as_problem()) {}

StepResult CmaxAgent::step(StateId s) {
  const SearchResult r = search(
      s, penalized_problem_, [this](StateId state) { return v_.get(state); },
      zero_q, EmptyIncorrectSet::instance(), opts_.expansion_budget);
  for (const auto& [state, value] : r.value_updates) v_.set(state, value);

  const Problem& p = env().problem();
  StepResult out;
  out.action = r.best_action;
  out.source = ActionSource::kCmax;
  out.predicted = p.model_step(s, out.action);
  out.next_state = env().true_step(s, out.action);
  out.cost = p.cost(s, out.action);
  out.discrepant = out.next_state != out.predicted;
  if (out.discrepant) x_.insert(s, out.action);
  return out;
}

AcmaxppAgent::AcmaxppAgent(const Env& env, AlphaSchedule schedule,
                           TabularAgentOptions opts)
    : Agent(env),
      opts_(opts),
      schedule_(schedule),
      alpha_(schedule.alpha(1)),
      v_(make_initial_values(env, opts.value_init)),
      v_pen_(make_initial_values(env, opts.value_init)),
      q_(env.problem().num_actions()),
      penalized_(env.problem(), x_, opts.penalty),
      penalized_problem_(penalized_.as_problem()) {}

void AcmaxppAgent::begin_repetition(int repetition) {
  alpha_ = schedule_.alpha(repetition);
}

StepResult AcmaxppAgent::step(StateId s) {
  const Problem& p = env().problem();
  const SearchResult plain =
      search(s, p, v_, q_, x_, opts_.expansion_budget);
  for (const auto& [state, value] : plain.value_updates) v_.set(state, value);

  const SearchResult pen = search(
      s, penalized_problem_,
      [this](StateId state) { return v_pen_.get(state); }, zero_q,
      EmptyIncorrectSet::instance(), opts_.expansion_budget);
  for (const auto& [state, value] : pen.value_updates)
    v_pen_.set(state, value);

  const bool use_cmax = prefers_penalized(v_pen_.get(s), v_.get(s), alpha_);

  StepResult out;
  out.action = use_cmax ? pen.best_action : plain.best_action;
  out.source = use_cmax ? ActionSource::kCmax : ActionSource::kCmaxpp;
  out.predicted = p.model_step(s, out.action);
  out.next_state = env().true_step(s, out.action);
  out.cost = p.cost(s, out.action);
  out.discrepant = out.next_state != out.predicted;
  if (out.discrepant) {
    // The penalized view shares x_, so the penalized model updates here too.
    x_.insert(s, out.action);
    q_.set(s, out.action, out.cost + v_.get(out.next_state));
  }
  return out;
}

QLearningAgent::QLearningAgent(const Env& env)
    : Agent(env), num_actions_(env.problem().num_actions()) {
  const Problem& p = env.problem();
  const std::vector<double> v0 = dijkstra_optimal_values(p);
  q_.resize(static_cast<std::size_t>(p.num_states()) * num_actions_);
  for (StateId s = 0; s < p.num_states(); ++s) {
    for (ActionId a = 0; a < num_actions_; ++a) {
      q_[index(s, a)] = p.cost(s, a) + v0[p.model_step(s, a)];
    }
  }
}

double QLearningAgent::min_q(StateId s) const {
  if (env().problem().is_goal(s)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (ActionId a = 0; a < num_actions_; ++a)
    best = std::min(best, q_[index(s, a)]);
  return best;
}

StepResult QLearningAgent::step(StateId s) {
  const Problem& p = env().problem();
  ActionId best = 0;
  for (ActionId a = 1; a < num_actions_; ++a) {
    if (q_[index(s, a)] < q_[index(s, best)]) best = a;
  }
  StepResult out;
  out.action = best;
  out.source = ActionSource::kQLearning;
  out.predicted = p.model_step(s, best);
  out.next_state = env().true_step(s, best);
  out.cost = p.cost(s, best);
  out.discrepant = out.next_state != out.predicted;
  q_[index(s, best)] = out.cost + min_q(out.next_state);
  return out;
}

double q_update(QApproximator& q, const ValueApproximator& v,
                const Problem& problem, const std::vector<Transition>& buffer,
                int batch_size, double eta, std::mt19937_64& rng) {
  if (buffer.empty()) {
    std::cerr << "q_update: empty transition buffer, skipping\n";
    return 0.0;
  }
  std::uniform_int_distribution<std::size_t> pick(0, buffer.size() - 1);
  QApproximator::TrainingSet ts;
  ts.reserve(static_cast<std::size_t>(batch_size));
  for (int i = 0; i < batch_size; ++i) {
    const Transition& tr = buffer[pick(rng)];
    const double next_v = problem.is_goal(tr.next) ? 0.0 : v.evaluate(tr.next);
    ts.emplace_back(tr.state, tr.action,
                    problem.cost(tr.state, tr.action) + next_v);
  }
  return q.fit(ts, eta);
}

double v_update(ValueApproximator& v, const QApproximator& q,
                const Problem& problem, const std::vector<StateId>& buffer,
                const IncorrectSetBase& incorrect, int batch_size, double eta,
                int expansion_budget, std::mt19937_64& rng) {
  if (buffer.empty()) {
    std::cerr << "v_update: empty state buffer, skipping\n";
    return 0.0;
  }
  std::uniform_int_distribution<std::size_t> pick(0, buffer.size() - 1);
  ValueApproximator::TrainingSet ts;
  for (int i = 0; i < batch_size; ++i) {
    const StateId s = buffer[pick(rng)];
    if (problem.is_goal(s)) continue;  // V fixed at 0 on goals
    try {
      const SearchResult r = search(
          s, problem, [&v](StateId state) { return v.evaluate(state); },
          [&q](StateId state, ActionId a) { return q.evaluate(state, a); },
          incorrect, expansion_budget);
      for (const auto& [state, value] : r.value_updates)
        ts.emplace_back(state, value);
    } catch (const UnsolvableModelError&) {
      continue;
    }
  }
  return v.fit(ts, eta);
}

LargeCmaxppAgent::LargeCmaxppAgent(const Env& env, ValueApproximator& v,
                                   QApproximator& q, LargeAgentOptions opts)
    : Agent(env),
      opts_(opts),
      v_(&v),
      q_(&q),
      x_(env.problem().num_actions(),
         [&env](StateId s) { return env.coords(s); }, opts.metric),
      rng_(opts.seed) {}

StepResult LargeCmaxppAgent::step(StateId s) {
  const Problem& p = env().problem();
  const SearchResult r = search(
      s, p, [this](StateId state) { return v_->evaluate(state); },
      [this](StateId state, ActionId a) { return q_->evaluate(state, a); },
      x_, opts_.expansion_budget);

  StepResult out;
  out.action = r.best_action;
  out.source = ActionSource::kCmaxpp;
  out.predicted = p.model_step(s, out.action);
  out.next_state = env().true_step(s, out.action);
  out.cost = p.cost(s, out.action);
  out.discrepant =
      is_discrepant(out.next_state, out.predicted, opts_.xi,
                    [this](StateId a, StateId b) { return env().metric(a, b); });
  if (out.discrepant) x_.insert(s, out.action, opts_.radius);

  d_s_.push_back(s);
  d_sa_.push_back({s, out.action, out.next_state});

  const int rounds = std::max(opts_.updates_q, opts_.updates_v);
  for (int u = 0; u < rounds; ++u) {
    if (u < opts_.updates_q)
      q_update(*q_, *v_, p, d_sa_, opts_.batch_size, opts_.eta, rng_);
    if (u < opts_.updates_v)
      v_update(*v_, *q_, p, d_s_, x_, opts_.batch_size, opts_.eta,
               opts_.expansion_budget, rng_);
  }
  return out;
}

RepetitionRecord run_repetition(Agent& agent, int step_cap, int repetition,
                                const StepObserver& observer) {
  if (step_cap < 1) throw std::invalid_argument("step cap must be >= 1");
  RepetitionRecord rec;
  rec.repetition = repetition;
  agent.begin_repetition(repetition);

  const Problem& p = agent.env().problem();
  StateId s = agent.env().start();
  if (p.is_goal(s)) {
    rec.success = true;
    return rec;
  }
  for (int t = 1; t <= step_cap; ++t) {
    StepResult sr;
    try {
      sr = agent.step(s);
    } catch (const UnsolvableModelError&) {
      break;  // recorded as failure
    }
    rec.steps += 1;
    rec.total_cost += sr.cost;
    rec.action_sources.push_back(sr.source);
    if (sr.discrepant)
      rec.events.push_back({t, s, sr.action, sr.predicted, sr.next_state});
    if (observer) observer(agent, t, s, sr);
    s = sr.next_state;
    if (p.is_goal(s)) {
      rec.success = true;
      break;
    }
  }
  return rec;
}

std::vector<RepetitionRecord> run_task(Agent& agent, int repetitions,
                                       int step_cap, bool abort_on_failure,
                                       const StepObserver& observer) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  std::vector<RepetitionRecord> records;
  for (int i = 1; i <= repetitions; ++i) {
    records.push_back(run_repetition(agent, step_cap, i, observer));
    if (!records.back().success && abort_on_failure) break;
  }
  return records;
}

}  // namespace cmaxpp
