#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "agentloop/agent.hpp"
#include "agentloop/beliefs.hpp"
#include "agentloop/errors.hpp"

namespace agentloop {

/// Shared environment state: a string-keyed map over the same value domain
/// as beliefs.
using EnvState = nlohmann::json;

/// One record per (step, agent) reasoning cycle. Percepts are shared with
/// the environment so identical percept sets cost one materialization.
struct TraceRecord {
  std::size_t step = 0;
  std::string agent_id;
  std::shared_ptr<const Percepts> percepts;
  std::vector<Action> actions;
  EnvState post_state;
  std::vector<ErrorRecord> errors;

  nlohmann::json to_json() const {
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& e : errors) errs.push_back(e.to_json());
    return nlohmann::json{{"step", step},
                          {"agentId", agent_id},
                          {"percepts", beliefs_to_json(percepts ? *percepts : Percepts{})},
                          {"actions", actions},
                          {"postState", post_state},
                          {"errors", errs}};
  }
};

/// The state parameter is taken by value: the environment moves its state
/// through the hook, so implementations may mutate and return it without
/// copying what they keep.
using StateUpdateFn =
    std::function<EnvState(const std::vector<Action>&, const std::string&, EnvState)>;
using StateFilterFn = std::function<Percepts(const EnvState&, const std::string&)>;
using SharedStateFilterFn =
    std::function<std::shared_ptr<const Percepts>(const EnvState&, const std::string&)>;
using RenderFn = std::function<void(const TraceRecord&)>;

/// Default percept projection: every top-level state entry becomes an
/// (unprioritized) percept.
inline Percepts identity_state_filter(const EnvState& state, const std::string& /*agent_id*/) {
  return beliefs_from_json(state);
}

enum class RunnerKind { Synchronous, MessageTriggered };

/// Hosts agents, owns the shared state, and schedules reasoning cycles.
/// All action semantics live in the update_state hook; the environment never
/// inspects action contents. State is replaced, never mutated in place.
class Environment {
 public:
  Environment(std::vector<std::shared_ptr<AgentBase>> agents, EnvState initial_state,
              StateUpdateFn update_state, RenderFn render = nullptr,
              StateFilterFn state_filter = nullptr,
              RunnerKind runner = RunnerKind::Synchronous)
      : agents_(std::move(agents)),
        state_(std::move(initial_state)),
        update_state_(std::move(update_state)),
        render_(render ? std::move(render) : [](const TraceRecord&) {}),
        runner_(runner) {
    StateFilterFn filter = state_filter ? std::move(state_filter) : identity_state_filter;
    state_filter_ = [filter = std::move(filter)](const EnvState& state,
                                                 const std::string& agent_id) {
      return std::make_shared<const Percepts>(filter(state, agent_id));
    };
    std::set<std::string> ids;
    for (const auto& agent : agents_) {
      if (!ids.insert(agent->id()).second) {
        throw DuplicateAgentId("duplicate agent id: " + agent->id());
      }
    }
  }

  const EnvState& state() const { return state_; }
  std::size_t step_count() const { return step_; }

  /// Installs a filter that hands out shared percepts, letting scenarios
  /// whose percepts repeat across agents reuse one materialization.
  void set_shared_state_filter(SharedStateFilterFn filter) {
    state_filter_ = std::move(filter);
  }

  RunnerKind runner() const { return runner_; }
  const std::vector<std::shared_ptr<AgentBase>>& agents() const { return agents_; }

  /// Runs one round-robin pass over all agents (synchronous runner only).
  std::vector<TraceRecord> step() {
    require_runner(RunnerKind::Synchronous, "env_step requires a synchronous runner");
    return cycle();
  }

  /// Runs `steps` round-robin passes (synchronous runner only).
  std::vector<TraceRecord> run(int steps) {
    require_runner(RunnerKind::Synchronous, "env_run requires a synchronous runner");
    if (steps <= 0) throw AgentError("env_run requires a positive step count");
    std::vector<TraceRecord> records;
    for (int i = 0; i < steps; ++i) {
      auto pass = cycle();
      records.insert(records.end(), std::make_move_iterator(pass.begin()),
                     std::make_move_iterator(pass.end()));
    }
    return records;
  }

  /// One pass under an external (message-driven) trigger.
  std::vector<TraceRecord> trigger_cycle() {
    require_runner(RunnerKind::MessageTriggered,
                   "trigger_cycle requires a message-triggered runner");
    return cycle();
  }

 private:
  void require_runner(RunnerKind expected, const char* msg) const {
    if (runner_ != expected) throw AgentError(msg);
  }

  std::vector<TraceRecord> cycle() {
    std::vector<TraceRecord> records;
    records.reserve(agents_.size());
    for (const auto& agent : agents_) {
      TraceRecord record;
      record.step = step_;
      record.agent_id = agent->id();
      record.percepts = state_filter_(state_, agent->id());
      NextResult result;
      try {
        result = agent->next(*record.percepts);
      } catch (const std::exception& e) {
        // A failing agent (e.g. a shadow whose channel dropped) is recorded
        // and the pass continues with the remaining agents.
        result.actions.clear();
        result.errors.push_back({"AgentCycleError", e.what(), std::nullopt});
      }
      record.actions = std::move(result.actions);
      record.errors = std::move(result.errors);
      try {
        // The first agent's update gets a copy so a failure keeps the
        // pre-cycle state; later updates get the state moved through.
        EnvState next = records.empty()
                            ? update_state_(record.actions, agent->id(), state_)
                            : update_state_(record.actions, agent->id(), std::move(state_));
        state_ = std::move(next);
      } catch (const std::exception& e) {
        if (!records.empty()) state_ = records.back().post_state;
        throw EnvUpdateError("state update failed at step " + std::to_string(step_) +
                             ", agent " + agent->id() + ": " + e.what());
      }
      record.post_state = state_;
      render_(record);
      records.push_back(std::move(record));
    }
    ++step_;
    return records;
  }

  std::vector<std::shared_ptr<AgentBase>> agents_;
  EnvState state_;
  StateUpdateFn update_state_;
  RenderFn render_;
  SharedStateFilterFn state_filter_;
  RunnerKind runner_;
  std::size_t step_ = 0;
};

}  // namespace agentloop
