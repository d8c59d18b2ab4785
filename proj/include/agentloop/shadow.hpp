#pragma once

#include <memory>
#include <string>
#include <utility>

#include "agentloop/agent.hpp"
#include "agentloop/channel.hpp"
#include "agentloop/protocol.hpp"

namespace agentloop {

/// Server-side stand-in for an agent running on a remote client. Each cycle
/// it forwards the percepts over the channel and returns the latest action
/// request the client has registered. It never executes plans locally.
class ShadowAgent : public AgentBase {
 public:
  ShadowAgent(std::string id, BeliefBase initial_beliefs,
              std::shared_ptr<MessageChannel> channel,
              std::shared_ptr<ActionRequestRegistry> registry)
      : id_(std::move(id)),
        beliefs_(std::move(initial_beliefs)),
        channel_(std::move(channel)),
        registry_(std::move(registry)) {
    registry_->register_agent(id_);
  }

  const std::string& id() const override { return id_; }
  const BeliefBase& beliefs() const { return beliefs_; }

  NextResult next(const Percepts& percepts) override {
    // May throw ChannelClosed; the environment records it and moves on.
    channel_->send(encode_message(BeliefUpdateMessage{percepts}));
    beliefs_ = default_revise(beliefs_, percepts);
    return {registry_->latest_actions(id_), {}};
  }

 private:
  std::string id_;
  BeliefBase beliefs_;
  std::shared_ptr<MessageChannel> channel_;
  std::shared_ptr<ActionRequestRegistry> registry_;
};

}  // namespace agentloop
