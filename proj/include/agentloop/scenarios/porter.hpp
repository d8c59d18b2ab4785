#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "agentloop/agent.hpp"
#include "agentloop/environment.hpp"

namespace agentloop::porter {

/// Shared state of the porter world: the door, the requests issued this
/// step, and the actions executed last step.
inline EnvState initial_state() {
  return EnvState{{"door", {{"locked", true}}},
                  {"requests", nlohmann::json::array()},
                  {"executions", nlohmann::json::array()}};
}

inline BeliefBase initial_beliefs() {
  return merge_beliefs({make_belief("door", {{"locked", true}}),
                        make_belief("requests", nlohmann::json::array())});
}

inline bool has_request(const BeliefBase& beliefs, const std::string& token) {
  auto it = beliefs.find("requests");
  if (it == beliefs.end() || !it->second.value.is_array()) return false;
  const auto& requests = it->second.value;
  return std::find(requests.begin(), requests.end(), nlohmann::json(token)) != requests.end();
}

inline bool door_locked(const BeliefBase& beliefs) {
  auto it = beliefs.find("door");
  return it != beliefs.end() && it->second.value.value("locked", false);
}

/// Plan i: lock an unlocked door on request. Plan ii: unlock a locked door
/// on request.
inline std::vector<Plan> plans() {
  return {
      Plan{[](const BeliefBase& b) { return !door_locked(b) && has_request(b, "lock"); },
           [](const BeliefBase&) { return std::vector<Action>{"lock"}; }},
      Plan{[](const BeliefBase& b) { return door_locked(b) && has_request(b, "unlock"); },
           [](const BeliefBase&) { return std::vector<Action>{"unlock"}; }},
  };
}

/// Adopts the perceived door state, drops every queued request token that
/// appears in the executed actions, and appends the incoming requests.
inline BeliefBase revise(const BeliefBase& beliefs, const Percepts& percepts) {
  auto door = percepts.find("door");
  auto requests = percepts.find("requests");
  auto executions = percepts.find("executions");
  if (door == percepts.end() || requests == percepts.end() || executions == percepts.end()) {
    throw ReviseError("porter percepts require door, requests and executions");
  }
  nlohmann::json queued = nlohmann::json::array();
  auto held = beliefs.find("requests");
  if (held != beliefs.end() && held->second.value.is_array()) {
    for (const auto& token : held->second.value) {
      bool executed = std::find(executions->second.value.begin(),
                                executions->second.value.end(),
                                token) != executions->second.value.end();
      if (!executed) queued.push_back(token);
    }
  }
  for (const auto& token : requests->second.value) queued.push_back(token);
  return merge_beliefs({make_belief("door", door->second.value),
                        make_belief("requests", std::move(queued))});
}

inline std::shared_ptr<Agent> make_porter() {
  return std::make_shared<Agent>("porter", initial_beliefs(), plans(), revise);
}

inline EnvState apply_door_actions(const std::vector<Action>& actions, EnvState state) {
  for (const auto& action : actions) {
    if (action == "lock") state["door"]["locked"] = true;
    if (action == "unlock") state["door"]["locked"] = false;
  }
  state["executions"] = actions;
  return state;
}

/// Single-agent world: each step injects one pseudo-random request ("lock"
/// or "unlock", p=0.5 each), applies the porter's actions to the door, and
/// records the executions.
inline StateUpdateFn make_update_state(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const std::vector<Action>& actions, const std::string&,
               EnvState state) -> EnvState {
    EnvState next = apply_door_actions(actions, std::move(state));
    // std::bernoulli_distribution output is implementation-defined; a raw
    // engine bit keeps traces identical across platforms.
    next["requests"] = nlohmann::json::array({((*rng)() & 1ull) ? "lock" : "unlock"});
    return next;
  };
}

inline std::shared_ptr<Environment> make_environment(std::uint64_t seed,
                                                     RenderFn render = nullptr) {
  return std::make_shared<Environment>(
      std::vector<std::shared_ptr<AgentBase>>{make_porter()}, initial_state(),
      make_update_state(seed), std::move(render));
}

// --- Three-agent variant: paranoid and claustrophobe issue requests, the
// --- porter satisfies them.

inline std::shared_ptr<Agent> make_paranoid() {
  std::vector<Plan> p{
      Plan{[](const BeliefBase& b) { return !door_locked(b); },
           [](const BeliefBase&) { return std::vector<Action>{"lock"}; }}};
  return std::make_shared<Agent>("paranoid", initial_beliefs(), std::move(p), revise);
}

inline std::shared_ptr<Agent> make_claustrophobe() {
  std::vector<Plan> p{
      Plan{[](const BeliefBase& b) { return door_locked(b); },
           [](const BeliefBase&) { return std::vector<Action>{"unlock"}; }}};
  return std::make_shared<Agent>("claustrophobe", initial_beliefs(), std::move(p), revise);
}

/// Requests from the two requester agents accumulate in shared state until
/// the porter's turn; the porter applies door actions, records executions,
/// and the delivered requests are cleared.
inline EnvState mas_update_state(const std::vector<Action>& actions,
                                 const std::string& agent_id, EnvState state) {
  if (agent_id == "porter") {
    EnvState next = apply_door_actions(actions, std::move(state));
    next["requests"] = nlohmann::json::array();
    return next;
  }
  for (const auto& action : actions) {
    if (action == "lock" || action == "unlock") state["requests"].push_back(action);
  }
  return state;
}

/// All-local three-agent environment; registration order matches the
/// request-then-serve flow: paranoid, claustrophobe, porter.
inline std::shared_ptr<Environment> make_mas_environment(
    RenderFn render = nullptr, RunnerKind runner = RunnerKind::Synchronous,
    std::shared_ptr<AgentBase> claustrophobe = nullptr) {
  std::vector<std::shared_ptr<AgentBase>> agents{
      make_paranoid(), claustrophobe ? claustrophobe : make_claustrophobe(), make_porter()};
  return std::make_shared<Environment>(std::move(agents), initial_state(), mas_update_state,
                                       std::move(render), nullptr, runner);
}

}  // namespace agentloop::porter
