#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "agentloop/beliefs.hpp"
#include "agentloop/protocol.hpp"

namespace testgen {

using agentloop::Action;
using agentloop::ActionMessage;
using agentloop::Belief;
using agentloop::BeliefBase;
using agentloop::BeliefValue;

inline std::string random_key(std::mt19937_64& rng) {
  static const char alphabet[] = "abcdefghijklmnopqrstuvwxyz_0123456789";
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_int_distribution<std::size_t> pick(0, sizeof(alphabet) - 2);
  std::string key;
  for (std::size_t i = 0, n = len(rng); i < n; ++i) key += alphabet[pick(rng)];
  return key;
}

inline BeliefValue random_value(std::mt19937_64& rng, int depth = 0) {
  std::uniform_int_distribution<int> kind(0, depth >= 2 ? 4 : 6);
  switch (kind(rng)) {
    case 0:
      return nullptr;
    case 1:
      return (rng() & 1) != 0;
    case 2:
      return static_cast<std::int64_t>(rng() % 2000) - 1000;
    case 3:
      return static_cast<double>(static_cast<std::int64_t>(rng() % 1000)) / 8.0;
    case 4:
      return random_key(rng);
    case 5: {
      BeliefValue arr = BeliefValue::array();
      for (std::size_t i = 0, n = rng() % 4; i < n; ++i) {
        arr.push_back(random_value(rng, depth + 1));
      }
      return arr;
    }
    default: {
      BeliefValue obj = BeliefValue::object();
      for (std::size_t i = 0, n = rng() % 4; i < n; ++i) {
        obj[random_key(rng)] = random_value(rng, depth + 1);
      }
      return obj;
    }
  }
}

inline BeliefBase random_belief_base(std::mt19937_64& rng, bool with_priorities = true,
                                     std::size_t max_entries = 6) {
  BeliefBase base;
  const std::size_t entries = rng() % (max_entries + 1);
  for (std::size_t i = 0; i < entries; ++i) {
    std::string key = random_key(rng);
    std::optional<std::int64_t> priority;
    if (with_priorities && (rng() % 3) == 0) {
      priority = static_cast<std::int64_t>(rng() % 10);
    }
    base[key] = Belief{key, random_value(rng), priority};
  }
  return base;
}

inline ActionMessage random_action_message(std::mt19937_64& rng) {
  ActionMessage msg;
  msg.agent_id = random_key(rng);
  const std::size_t batches = rng() % 3 + 1;
  for (std::size_t b = 0; b < batches; ++b) {
    std::vector<Action> batch;
    for (std::size_t i = 0, n = rng() % 3; i < n; ++i) {
      batch.push_back((rng() & 1) ? Action(random_key(rng))
                                  : Action{{random_key(rng), random_value(rng, 1)}});
    }
    msg.batches.push_back(std::move(batch));
  }
  return msg;
}

}  // namespace testgen
