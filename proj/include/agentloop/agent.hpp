#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "agentloop/beliefs.hpp"
#include "agentloop/errors.hpp"
#include "agentloop/plan.hpp"

namespace agentloop {

/// Outcome of one reasoning cycle: the emitted actions plus any isolated
/// errors (failed plans, aborted revision) destined for the trace.
struct NextResult {
  std::vector<Action> actions;
  std::vector<ErrorRecord> errors;
};

/// Anything an environment can schedule: a local reasoning-loop agent or a
/// shadow agent standing in for a remote one.
class AgentBase {
 public:
  virtual ~AgentBase() = default;
  virtual const std::string& id() const = 0;
  virtual NextResult next(const Percepts& percepts) = 0;
};

using ReviseFn = std::function<BeliefBase(const BeliefBase&, const Percepts&)>;

/// A belief-plan reasoning-loop agent. One cycle revises the belief base
/// from the incoming percepts, then deliberates over the plan library.
class Agent : public AgentBase {
 public:
  Agent(std::string id, BeliefBase beliefs, std::vector<Plan> plans,
        ReviseFn revise = nullptr)
      : id_(std::move(id)),
        beliefs_(std::move(beliefs)),
        plans_(std::move(plans)),
        revise_(revise ? std::move(revise)
                       : [](const BeliefBase& b, const Percepts& p) {
                           return default_revise(b, p);
                         }) {}

  const std::string& id() const override { return id_; }
  const BeliefBase& beliefs() const { return beliefs_; }
  const std::vector<Plan>& plans() const { return plans_; }

  /// Runs one reasoning cycle. A failed revision aborts the cycle: beliefs
  /// keep their pre-cycle value and no actions are emitted.
  NextResult next(const Percepts& percepts) override {
    NextResult result;
    BeliefBase revised;
    try {
      revised = revise_(beliefs_, percepts);
    } catch (const std::exception& e) {
      result.errors.push_back({"ReviseError", e.what(), std::nullopt});
      return result;
    }
    beliefs_ = std::move(revised);
    result.actions = deliberate(beliefs_, plans_, &result.errors);
    return result;
  }

 private:
  std::string id_;
  BeliefBase beliefs_;
  std::vector<Plan> plans_;
  ReviseFn revise_;
};

}  // namespace agentloop
