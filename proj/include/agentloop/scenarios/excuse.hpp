#pragma once

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "agentloop/agent.hpp"
#include "agentloop/environment.hpp"

namespace agentloop::excuse {

/// Pluggable text-generation port. Implementations must return or raise
/// within the configured timeout; the plan body converts failures into an
/// isolated plan error (no excuse that cycle).
struct TextGeneratorPort {
  std::function<std::string(const std::string& prompt)> generate;
  std::chrono::milliseconds timeout{10000};
};

inline BeliefBase initial_beliefs(const std::string& name = "Bart",
                                  const std::string& teacher_name = "Edna Krabappel") {
  return merge_beliefs({make_belief("rejectExps", nlohmann::json::array()),
                        make_belief("excuseAccepted", false),
                        make_belief("name", name),
                        make_belief("teacherName", teacher_name)});
}

/// Instantiates the excuse prompt with both names and one bullet line per
/// past rejection explanation.
inline std::string gen_prompt(const BeliefBase& beliefs) {
  const std::string name = beliefs.at("name").value.get<std::string>();
  const std::string teacher = beliefs.at("teacherName").value.get<std::string>();
  std::string bullets;
  for (const auto& exp : beliefs.at("rejectExps").value) {
    bullets += "• " + exp.get<std::string>() + "\n";
  }
  return "Can you write a charming yet convincing excuse for a student who forgot "
         "their homework? The names of teacher and student are " +
         teacher + ", and " + name + ", respectively (i.e., sign the excuse with " + name +
         ").\n\nConsider the following feedback received from past rejected excuses:\n\n" +
         bullets;
}

/// Single plan: while no excuse has been accepted, generate one from the
/// current beliefs and submit it as a text action.
inline Plan make_plan(TextGeneratorPort port) {
  return Plan{
      [](const BeliefBase& beliefs) {
        return !beliefs.at("excuseAccepted").value.get<bool>();
      },
      [port](const BeliefBase& beliefs) {
        return std::vector<Action>{port.generate(gen_prompt(beliefs))};
      }};
}

/// Adopts acceptance when perceived; otherwise appends the rejection
/// explanation if it is non-empty and novel.
inline BeliefBase revise(const BeliefBase& beliefs, const Percepts& percepts) {
  BeliefBase revised = beliefs;
  auto accepted = percepts.find("excuseAccepted");
  if (accepted != percepts.end() && accepted->second.value.is_boolean() &&
      accepted->second.value.get<bool>()) {
    revised["excuseAccepted"] = Belief{"excuseAccepted", true, std::nullopt};
    return revised;
  }
  auto reject = percepts.find("rejectExp");
  if (reject == percepts.end() || !reject->second.value.is_string()) return revised;
  const std::string exp = reject->second.value.get<std::string>();
  if (exp.empty()) return revised;
  nlohmann::json exps = revised.at("rejectExps").value;
  for (const auto& held : exps) {
    if (held == exp) return revised;
  }
  exps.push_back(exp);
  revised["rejectExps"] = Belief{"rejectExps", std::move(exps), std::nullopt};
  return revised;
}

inline constexpr std::size_t kMaxExcuseLength = 1200;

inline const char* kRejectNoTeacher = "The excuse does not address the teacher by name.";
inline const char* kRejectNoSignature = "The excuse is not signed with the student's name.";
inline const char* kRejectTooLong =
    "The excuse is too long; it must not exceed 1200 characters.";
inline const char* kRejectRepeated = "The excuse repeats an earlier rejected attempt verbatim.";

inline EnvState initial_state() {
  return EnvState{{"excuseAccepted", false},
                  {"rejectExp", ""},
                  {"rejectedExcuses", nlohmann::json::array()}};
}

/// Applies the acceptance rules in order; the first violated rule rejects
/// the excuse with its fixed explanation. A cycle with no excuse leaves the
/// acceptance flag untouched and clears the explanation.
inline StateUpdateFn make_update_state(const std::string& name,
                                       const std::string& teacher_name) {
  return [name, teacher_name](const std::vector<Action>& actions, const std::string&,
                              EnvState state) -> EnvState {
    if (actions.empty() || !actions.front().is_string()) {
      state["rejectExp"] = "";
      return state;
    }
    const std::string excuse = actions.front().get<std::string>();
    std::string reject_exp;
    if (excuse.find(teacher_name) == std::string::npos) {
      reject_exp = kRejectNoTeacher;
    } else if (excuse.find(name) == std::string::npos) {
      reject_exp = kRejectNoSignature;
    } else if (excuse.size() > kMaxExcuseLength) {
      reject_exp = kRejectTooLong;
    } else {
      for (const auto& previous : state["rejectedExcuses"]) {
        if (previous == excuse) {
          reject_exp = kRejectRepeated;
          break;
        }
      }
    }
    if (reject_exp.empty()) {
      state["excuseAccepted"] = true;
      state["rejectExp"] = "";
    } else {
      state["excuseAccepted"] = false;
      state["rejectExp"] = reject_exp;
      state["rejectedExcuses"].push_back(excuse);
    }
    return state;
  };
}

/// Deterministic generator stub. The first attempt rambles past the length
/// limit; once the feedback mentions length it produces a concise excuse
/// that satisfies all acceptance rules. An attempt counter keeps successive
/// excuses distinct.
inline TextGeneratorPort make_stub_generator() {
  return TextGeneratorPort{
      [](const std::string& prompt) -> std::string {
        std::size_t attempts = 0;
        bool shorten = false;
        std::size_t pos = 0;
        while ((pos = prompt.find("• ", pos)) != std::string::npos) {
          ++attempts;
          auto eol = prompt.find('\n', pos);
          const std::string feedback =
              prompt.substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
          if (feedback.find("long") != std::string::npos) shorten = true;
          pos = (eol == std::string::npos) ? prompt.size() : eol;
        }
        // Names are lifted from the fixed prompt template.
        const std::string names_marker = "teacher and student are ";
        auto names_at = prompt.find(names_marker);
        auto names_end = prompt.find(", respectively", names_at);
        std::string teacher = "teacher";
        std::string student = "student";
        if (names_at != std::string::npos && names_end != std::string::npos) {
          const std::string both =
              prompt.substr(names_at + names_marker.size(),
                            names_end - names_at - names_marker.size());
          auto comma = both.find(", and ");
          if (comma != std::string::npos) {
            teacher = both.substr(0, comma);
            student = both.substr(comma + 6);
          }
        }
        std::string excuse = "Dear " + teacher +
                             ", my homework vanished under circumstances I can only "
                             "describe as deeply unfortunate (attempt " +
                             std::to_string(attempts + 1) + "). Sincerely, " + student + ".";
        if (!shorten) {
          while (excuse.size() <= kMaxExcuseLength) {
            excuse += " I can explain everything, and the explanation is long.";
          }
        }
        return excuse;
      },
      std::chrono::milliseconds(0)};
}

inline std::shared_ptr<Agent> make_agent(TextGeneratorPort port,
                                         const std::string& name = "Bart",
                                         const std::string& teacher_name = "Edna Krabappel") {
  return std::make_shared<Agent>("student", initial_beliefs(name, teacher_name),
                                 std::vector<Plan>{make_plan(std::move(port))}, revise);
}

/// Agents perceive only the verdict, not the archive of rejected excuses.
inline Percepts state_filter(const EnvState& state, const std::string&) {
  return merge_beliefs({make_belief("excuseAccepted", state["excuseAccepted"]),
                        make_belief("rejectExp", state["rejectExp"])});
}

inline std::shared_ptr<Environment> make_environment(
    TextGeneratorPort port, RenderFn render = nullptr, const std::string& name = "Bart",
    const std::string& teacher_name = "Edna Krabappel") {
  return std::make_shared<Environment>(
      std::vector<std::shared_ptr<AgentBase>>{make_agent(std::move(port), name, teacher_name)},
      initial_state(), make_update_state(name, teacher_name), std::move(render), state_filter);
}

}  // namespace agentloop::excuse
