#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "agentloop/beliefs.hpp"
#include "agentloop/errors.hpp"

namespace agentloop {

/// Client -> server frame: the actions a remote agent requests, batched per
/// reasoning cycle. The opening frame carries one empty batch.
struct ActionMessage {
  std::string agent_id;
  std::vector<std::vector<Action>> batches;

  bool operator==(const ActionMessage&) const = default;
};

/// Server -> client frame: the percepts for the remote agent, sent as a bare
/// JSON object with no envelope.
struct BeliefUpdateMessage {
  Percepts percepts;

  bool operator==(const BeliefUpdateMessage&) const = default;
};

inline std::string encode_message(const ActionMessage& msg) {
  return nlohmann::json{{"agentId", msg.agent_id}, {"actions", msg.batches}}.dump();
}

inline std::string encode_message(const BeliefUpdateMessage& msg) {
  return beliefs_to_json(msg.percepts).dump();
}

/// Frames nested deeper than this are rejected before parsing; container
/// destruction recurses with nesting depth, so unbounded depth from the wire
/// would be a stack-overflow vector.
inline constexpr int kMaxDecodeDepth = 64;

/// Returns the maximum bracket nesting depth of a JSON text (strings and
/// escapes are skipped; malformed text is left for the parser to reject).
inline int nesting_depth(const std::string& text) {
  int depth = 0;
  int max_depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (char c : text) {
    if (escaped) {
      escaped = false;
    } else if (in_string) {
      if (c == '\\') escaped = true;
      if (c == '"') in_string = false;
    } else if (c == '"') {
      in_string = true;
    } else if (c == '{' || c == '[') {
      max_depth = std::max(max_depth, ++depth);
    } else if (c == '}' || c == ']') {
      --depth;
    }
  }
  return max_depth;
}

inline ActionMessage decode_action_message(const std::string& text) {
  if (nesting_depth(text) > kMaxDecodeDepth) {
    throw DecodeError(0, "message nesting exceeds the supported depth");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DecodeError(e.byte, e.what());
  }
  if (!j.is_object()) throw DecodeError(0, "action message must be a JSON object");
  if (!j.contains("agentId") || !j["agentId"].is_string() ||
      j["agentId"].get_ref<const std::string&>().empty()) {
    throw DecodeError(0, "action message requires a non-empty agentId");
  }
  if (!j.contains("actions") || !j["actions"].is_array()) {
    throw DecodeError(0, "action message requires an actions array");
  }
  ActionMessage msg;
  msg.agent_id = j["agentId"].get<std::string>();
  for (const auto& batch : j["actions"]) {
    if (!batch.is_array()) throw DecodeError(0, "each action batch must be an array");
    msg.batches.emplace_back(batch.begin(), batch.end());
  }
  return msg;
}

/// Returns the percepts carried by a belief update, or nullopt when the
/// payload is not a structured map (clients ignore such frames).
inline std::optional<Percepts> decode_belief_update(const std::string& text) {
  if (nesting_depth(text) > kMaxDecodeDepth) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return beliefs_from_json(j);
}

/// Latest action batches per shadow agent, last writer wins. Replaces the
/// process-global map of the original protocol with an owned structure.
class ActionRequestRegistry {
 public:
  void register_agent(const std::string& agent_id) {
    std::lock_guard lock(mutex_);
    if (!entries_.emplace(agent_id, std::vector<std::vector<Action>>{}).second) {
      throw DuplicateAgentId("agent already registered: " + agent_id);
    }
  }

  bool is_registered(const std::string& agent_id) const {
    std::lock_guard lock(mutex_);
    return entries_.count(agent_id) > 0;
  }

  /// Stores the latest batches for a registered agent; returns false for
  /// unknown ids (no write happens).
  bool store(const std::string& agent_id, std::vector<std::vector<Action>> batches) {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(agent_id);
    if (it == entries_.end()) return false;
    it->second = std::move(batches);
    return true;
  }

  /// The registered actions flattened across batches; empty before the first
  /// client message.
  std::vector<Action> latest_actions(const std::string& agent_id) const {
    std::lock_guard lock(mutex_);
    auto it = entries_.find(agent_id);
    std::vector<Action> flat;
    if (it == entries_.end()) return flat;
    for (const auto& batch : it->second) flat.insert(flat.end(), batch.begin(), batch.end());
    return flat;
  }

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::vector<std::vector<Action>>> entries_;
};

}  // namespace agentloop
