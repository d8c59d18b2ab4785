#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "agentloop/errors.hpp"

namespace agentloop {

/// Duplex text-message channel. send() throws ChannelClosed once the peer is
/// gone; delivery order is the send order.
class MessageChannel {
 public:
  using Handler = std::function<void(const std::string&)>;

  virtual ~MessageChannel() = default;
  virtual void send(const std::string& text) = 0;
  virtual void on_message(Handler handler) = 0;
  virtual void close() = 0;
  virtual bool is_open() const = 0;
};

/// In-process channel pair with synchronous delivery: send() on one endpoint
/// invokes the peer's handler in the same call stack. Lets the whole wire
/// protocol run deterministically without a network.
class LoopbackChannel : public MessageChannel,
                        public std::enable_shared_from_this<LoopbackChannel> {
 public:
  static std::pair<std::shared_ptr<LoopbackChannel>, std::shared_ptr<LoopbackChannel>>
  make_pair() {
    auto a = std::shared_ptr<LoopbackChannel>(new LoopbackChannel());
    auto b = std::shared_ptr<LoopbackChannel>(new LoopbackChannel());
    a->peer_ = b;
    b->peer_ = a;
    return {a, b};
  }

  void send(const std::string& text) override {
    auto peer = peer_.lock();
    if (!open_ || !peer || !peer->open_) throw ChannelClosed("loopback channel closed");
    if (peer->handler_) peer->handler_(text);
  }

  void on_message(Handler handler) override { handler_ = std::move(handler); }

  void close() override { open_ = false; }

  bool is_open() const override {
    auto peer = peer_.lock();
    return open_ && peer && peer->open_;
  }

 private:
  LoopbackChannel() = default;

  std::weak_ptr<LoopbackChannel> peer_;
  Handler handler_;
  bool open_ = true;
};

}  // namespace agentloop
