#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "agentloop/agent.hpp"
#include "agentloop/environment.hpp"

namespace agentloop::gol {

struct GridConfig {
  int width = 20;
  int height = 20;
  std::vector<bool> initial_activity;  // row-major, width*height entries
};

/// Counts active cells among the 8 Moore neighbors on a toroidal grid.
inline int determine_neighbor_activity(std::size_t index, const nlohmann::json& activity,
                                       int width, int height) {
  const std::size_t cells = static_cast<std::size_t>(width) * height;
  if (index >= cells || activity.size() != cells) {
    throw IndexError("cell index or activity size out of range");
  }
  const int row = static_cast<int>(index) / width;
  const int col = static_cast<int>(index) % width;
  int active = 0;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc) {
      if (dr == 0 && dc == 0) continue;
      const int r = (row + dr + height) % height;
      const int c = (col + dc + width) % width;
      if (activity[static_cast<std::size_t>(r) * width + c].get<bool>()) ++active;
    }
  }
  return active;
}

/// The single, always-active cell plan: survive with 2-3 active neighbors,
/// be born with exactly 3.
inline Plan make_cell_plan(int width, int height) {
  return Plan{
      [](const BeliefBase&) { return true; },
      [width, height](const BeliefBase& beliefs) {
        static const Action kActive{{"nextRound", "active"}};
        static const Action kInactive{{"nextRound", "inActive"}};
        const std::size_t index = beliefs.at("index").value.get<std::size_t>();
        const auto& activity = beliefs.at("activityArray").value;
        const int neighbors = determine_neighbor_activity(index, activity, width, height);
        const bool is_active = activity[index].get<bool>();
        const bool next_active =
            (is_active && neighbors >= 2 && neighbors < 4) || neighbors == 3;
        return std::vector<Action>{next_active ? kActive : kInactive};
      }};
}

inline std::vector<std::shared_ptr<AgentBase>> generate_agents(const GridConfig& config) {
  Plan plan = make_cell_plan(config.width, config.height);
  nlohmann::json initial = config.initial_activity;
  std::vector<std::shared_ptr<AgentBase>> agents;
  agents.reserve(config.initial_activity.size());
  for (std::size_t index = 0; index < config.initial_activity.size(); ++index) {
    BeliefBase beliefs = merge_beliefs(
        {make_belief("index", index), make_belief("activityArray", initial)});
    agents.push_back(std::make_shared<Agent>(std::to_string(index), std::move(beliefs),
                                             std::vector<Plan>{plan}));
  }
  return agents;
}

inline EnvState generate_state(const GridConfig& config) {
  return EnvState{{"previousActivity", config.initial_activity},
                  {"nextActivity", nlohmann::json::array()}};
}

/// Double-buffered update: each agent's activity is appended to the next
/// buffer; the last agent in the grid swaps the buffers.
inline EnvState update_state(const std::vector<Action>& actions, const std::string& agent_id,
                             EnvState state) {
  auto& next = state["nextActivity"];
  const std::size_t expected = next.size();
  if (std::stoull(agent_id) != expected) {
    throw SchedulingError("agent " + agent_id + " acted out of order, expected " +
                          std::to_string(expected));
  }
  bool active = false;
  for (const auto& action : actions) {
    if (action.is_object() && action.value("nextRound", "") == "active") active = true;
  }
  next.push_back(active);
  auto& previous = state["previousActivity"];
  if (expected + 1 == previous.size()) {
    previous = std::move(next);
    next = nlohmann::json::array();
  }
  return state;
}

/// Agents only ever see the completed previous generation, never the buffer
/// under construction.
inline Percepts state_filter(const EnvState& state, const std::string&) {
  return make_belief("activityArray", state["previousActivity"]);
}

inline std::shared_ptr<Environment> make_environment(const GridConfig& config,
                                                     RenderFn render = nullptr) {
  auto env = std::make_shared<Environment>(generate_agents(config), generate_state(config),
                                           update_state, std::move(render), state_filter);
  // previousActivity only changes when nextActivity resets to empty, so the
  // shared percept set is rebuilt once per generation and reused across all
  // cells of the grid.
  auto cache = std::make_shared<std::shared_ptr<const Percepts>>();
  env->set_shared_state_filter(
      [cache](const EnvState& state, const std::string& agent_id) {
        if (!*cache || state["nextActivity"].empty()) {
          *cache = std::make_shared<const Percepts>(state_filter(state, agent_id));
        }
        return *cache;
      });
  return env;
}

inline std::vector<bool> previous_activity(const EnvState& state) {
  std::vector<bool> grid;
  for (const auto& cell : state["previousActivity"]) grid.push_back(cell.get<bool>());
  return grid;
}

/// Parses a plain-text pattern: one row per line, `#` active, `.` inactive.
inline GridConfig parse_pattern(const std::string& text) {
  GridConfig config;
  config.width = 0;
  config.height = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (config.width == 0) {
      config.width = static_cast<int>(line.size());
    } else if (static_cast<int>(line.size()) != config.width) {
      throw AgentError("pattern rows must all have the same width");
    }
    for (char c : line) {
      if (c != '#' && c != '.') throw AgentError("pattern cells must be '#' or '.'");
      config.initial_activity.push_back(c == '#');
    }
    ++config.height;
  }
  if (config.initial_activity.empty()) throw AgentError("pattern file is empty");
  return config;
}

inline GridConfig random_grid(int width, int height, std::uint64_t seed) {
  GridConfig config{width, height, {}};
  std::mt19937_64 rng(seed);
  config.initial_activity.reserve(static_cast<std::size_t>(width) * height);
  for (int i = 0; i < width * height; ++i) {
    config.initial_activity.push_back((rng() & 1ull) != 0);
  }
  return config;
}

inline std::string render_text(const std::vector<bool>& activity, int width) {
  std::string out;
  for (std::size_t i = 0; i < activity.size(); ++i) {
    out += activity[i] ? '#' : '.';
    if ((i + 1) % static_cast<std::size_t>(width) == 0) out += '\n';
  }
  return out;
}

}  // namespace agentloop::gol
