#pragma once

#include <functional>
#include <iterator>
#include <utility>
#include <vector>

#include "agentloop/beliefs.hpp"
#include "agentloop/errors.hpp"

namespace agentloop {

/// A plan is a (head, body) pair: the head decides activation from the
/// current beliefs, the body produces actions. Both must leave the belief
/// base canonically unchanged.
struct Plan {
  std::function<bool(const BeliefBase&)> head;
  std::function<std::vector<Action>(const BeliefBase&)> body;
};

inline bool plan_active(const Plan& plan, const BeliefBase& beliefs,
                        std::size_t plan_index = 0) {
  try {
    return plan.head(beliefs);
  } catch (const std::exception& e) {
    throw PlanHeadError(plan_index, e.what());
  }
}

/// Runs the heads of all plans in registration order and executes the bodies
/// of active ones, concatenating their actions. A failing head or body is
/// isolated: it is recorded in `errors` (when given), contributes no actions,
/// and the remaining plans still run.
inline std::vector<Action> deliberate(const BeliefBase& beliefs,
                                      const std::vector<Plan>& plans,
                                      std::vector<ErrorRecord>* errors = nullptr) {
  std::vector<Action> actions;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    bool active = false;
    try {
      active = plan_active(plans[i], beliefs, i);
    } catch (const PlanHeadError& e) {
      if (errors) errors->push_back({"PlanHeadError", e.what(), i});
      continue;
    }
    if (!active) continue;
    try {
      auto produced = plans[i].body(beliefs);
      if (actions.empty()) {
        actions = std::move(produced);
      } else {
        actions.insert(actions.end(), std::make_move_iterator(produced.begin()),
                       std::make_move_iterator(produced.end()));
      }
    } catch (const std::exception& e) {
      if (errors) errors->push_back({"PlanBodyError", e.what(), i});
    }
  }
  return actions;
}

}  // namespace agentloop
