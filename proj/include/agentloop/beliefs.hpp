#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "agentloop/errors.hpp"

namespace agentloop {

/// Structured belief values: null, booleans, numbers, text, sequences and
/// string-keyed maps. nlohmann::json with the default (sorted) object map
/// gives us canonical serialization for free: dump() emits UTF-8 with
/// lexicographically sorted keys and no insignificant whitespace.
using BeliefValue = nlohmann::json;

struct Belief {
  std::string key;
  BeliefValue value;
  std::optional<std::int64_t> priority;

  bool operator==(const Belief&) const = default;
};

/// One Belief per key; the entry's internal key equals its map key.
using BeliefBase = std::map<std::string, Belief>;

/// Percepts are incoming beliefs; same shape as a belief base.
using Percepts = BeliefBase;

/// An action is either a bare text token or a string-keyed map.
using Action = nlohmann::json;

inline bool valid_belief_key(const std::string& key) {
  if (key.empty()) return false;
  for (unsigned char c : key) {
    if (c < 0x20 || c == 0x7f) return false;
  }
  return true;
}

/// Creates a single-entry belief base, mirroring JS-son's Belief(key, value).
inline BeliefBase make_belief(const std::string& key, BeliefValue value,
                              std::optional<std::int64_t> priority = std::nullopt) {
  if (!valid_belief_key(key)) {
    throw InvalidBeliefKey("belief key must be non-empty and free of control characters");
  }
  BeliefBase base;
  base.emplace(key, Belief{key, std::move(value), priority});
  return base;
}

/// Merges single-entry fragments (the spread-style idiom for assembling an
/// initial belief base). Later fragments win on key collision.
inline BeliefBase merge_beliefs(std::initializer_list<BeliefBase> fragments) {
  BeliefBase merged;
  for (const auto& fragment : fragments) {
    for (const auto& [key, belief] : fragment) merged[key] = belief;
  }
  return merged;
}

/// Belief bases serialize to a plain JSON object of key -> value. Priorities
/// are revision metadata and are not part of the canonical form.
inline nlohmann::json beliefs_to_json(const BeliefBase& base) {
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [key, belief] : base) obj[key] = belief.value;
  return obj;
}

inline BeliefBase beliefs_from_json(const nlohmann::json& obj) {
  BeliefBase base;
  for (const auto& [key, value] : obj.items()) {
    base.emplace(key, Belief{key, value, std::nullopt});
  }
  return base;
}

/// Canonical textual form: sorted keys, UTF-8, no insignificant whitespace.
inline std::string canonical(const BeliefBase& base) { return beliefs_to_json(base).dump(); }

inline std::string canonical(const nlohmann::json& value) { return value.dump(); }

/// Merges percepts into the belief base. Keys present in exactly one input
/// are kept; on conflict: both unprioritized -> percept wins; exactly one
/// prioritized -> the prioritized entry wins; both prioritized -> higher
/// priority wins, percept on ties.
inline BeliefBase default_revise(const BeliefBase& beliefs, const Percepts& percepts) {
  // Single pass over both sorted maps so each winning entry is copied once.
  BeliefBase revised;
  auto held = beliefs.begin();
  auto incoming = percepts.begin();
  while (held != beliefs.end() || incoming != percepts.end()) {
    if (incoming == percepts.end() ||
        (held != beliefs.end() && held->first < incoming->first)) {
      revised.emplace_hint(revised.end(), *held);
      ++held;
      continue;
    }
    if (held == beliefs.end() || incoming->first < held->first) {
      revised.emplace_hint(revised.end(), *incoming);
      ++incoming;
      continue;
    }
    bool percept_wins;
    if (!held->second.priority && !incoming->second.priority) {
      percept_wins = true;
    } else if (held->second.priority && incoming->second.priority) {
      percept_wins = *incoming->second.priority >= *held->second.priority;
    } else {
      percept_wins = incoming->second.priority.has_value();
    }
    revised.emplace_hint(revised.end(), percept_wins ? *incoming : *held);
    ++held;
    ++incoming;
  }
  return revised;
}

}  // namespace agentloop
