#pragma once

#include <limits>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "agentloop/agent.hpp"
#include "agentloop/channel.hpp"
#include "agentloop/environment.hpp"
#include "agentloop/protocol.hpp"

namespace agentloop {

/// Drives a message-triggered environment: every inbound frame that parses
/// as JSON triggers exactly one environment cycle; frames carrying agentId
/// and actions also update the action-request registry first. Triggers that
/// arrive while a cycle is running queue in arrival order.
class MessageServer {
 public:
  struct HandleResult {
    bool cycle_triggered = false;
    std::vector<ErrorRecord> warnings;
  };

  MessageServer(std::shared_ptr<Environment> env,
                std::shared_ptr<ActionRequestRegistry> registry,
                std::size_t max_cycles = std::numeric_limits<std::size_t>::max())
      : env_(std::move(env)), registry_(std::move(registry)), max_cycles_(max_cycles) {}

  std::size_t cycles_run() const { return cycles_run_; }
  const std::vector<TraceRecord>& trace() const { return trace_; }
  bool done() const { return cycles_run_ >= max_cycles_; }

  HandleResult handle_message(const std::string& raw) {
    HandleResult result;
    nlohmann::json j = nlohmann::json::parse(raw, nullptr, false);
    if (j.is_discarded()) {
      result.warnings.push_back({"ProtocolWarning", "unparseable message", std::nullopt});
      return result;
    }
    if (j.is_object() && j.contains("agentId") && j.contains("actions") &&
        j["agentId"].is_string() && j["actions"].is_array()) {
      const std::string agent_id = j["agentId"].get<std::string>();
      std::vector<std::vector<Action>> batches;
      for (const auto& batch : j["actions"]) {
        if (batch.is_array()) {
          batches.emplace_back(batch.begin(), batch.end());
        } else {
          batches.push_back({batch});
        }
      }
      if (!registry_->store(agent_id, std::move(batches))) {
        result.warnings.push_back(
            {"ProtocolWarning", "unknown agent id: " + agent_id, std::nullopt});
      }
    }
    // A parsed message always triggers a cycle, valid action payload or not.
    result.cycle_triggered = trigger();
    return result;
  }

 private:
  /// Queues one cycle and, unless a drain is already in progress further up
  /// the stack, runs queued cycles until none are pending. A trigger is
  /// accepted only if its cycle fits the remaining budget, counting cycles
  /// already queued or in flight.
  bool trigger() {
    if (cycles_run_ + pending_ + in_flight_ >= max_cycles_) return false;
    ++pending_;
    if (draining_) return true;
    draining_ = true;
    while (pending_ > 0) {
      --pending_;
      in_flight_ = 1;
      auto records = env_->trigger_cycle();
      in_flight_ = 0;
      ++cycles_run_;
      trace_.insert(trace_.end(), std::make_move_iterator(records.begin()),
                    std::make_move_iterator(records.end()));
    }
    draining_ = false;
    return true;
  }

  std::shared_ptr<Environment> env_;
  std::shared_ptr<ActionRequestRegistry> registry_;
  std::size_t max_cycles_;
  std::size_t cycles_run_ = 0;
  std::size_t pending_ = 0;
  std::size_t in_flight_ = 0;
  bool draining_ = false;
  std::vector<TraceRecord> trace_;
};

/// Client-side loop for a remote agent: the opening frame announces the
/// agent with one empty action batch; every inbound structured map becomes
/// the percepts of one reasoning cycle whose actions are sent back as a
/// single batch. Non-map frames are ignored.
class RemoteAgentClient {
 public:
  RemoteAgentClient(std::shared_ptr<Agent> agent, std::shared_ptr<MessageChannel> channel)
      : agent_(std::move(agent)), channel_(std::move(channel)) {
    channel_->on_message([this](const std::string& raw) { handle(raw); });
  }

  /// Sends the opening request that triggers the server's first cycle.
  void start() {
    channel_->send(encode_message(ActionMessage{agent_->id(), {{}}}));
  }

  std::size_t cycles_run() const { return cycles_run_; }

 private:
  void handle(const std::string& raw) {
    auto percepts = decode_belief_update(raw);
    if (!percepts) return;
    NextResult result = agent_->next(*percepts);
    ++cycles_run_;
    channel_->send(encode_message(ActionMessage{agent_->id(), {result.actions}}));
  }

  std::shared_ptr<Agent> agent_;
  std::shared_ptr<MessageChannel> channel_;
  std::size_t cycles_run_ = 0;
};

}  // namespace agentloop
