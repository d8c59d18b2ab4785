#pragma once

#include <memory>
#include <string>
#include <utility>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "agentloop/channel.hpp"
#include "agentloop/errors.hpp"

namespace agentloop {

namespace ws_detail {
using tcp = boost::asio::ip::tcp;
using WsStream = boost::beast::websocket::stream<tcp::socket>;
}  // namespace ws_detail

/// MessageChannel over a WebSocket text-frame stream. Single-threaded:
/// run() blocks reading frames and dispatches each to the handler; send()
/// is safe from within the handler.
class WebSocketChannel : public MessageChannel {
 public:
  explicit WebSocketChannel(std::unique_ptr<ws_detail::WsStream> stream)
      : stream_(std::move(stream)) {
    stream_->text(true);
  }

  void send(const std::string& text) override {
    if (!open_) throw ChannelClosed("websocket closed");
    boost::beast::error_code ec;
    stream_->write(boost::asio::buffer(text), ec);
    if (ec) {
      open_ = false;
      throw ChannelClosed("websocket write failed: " + ec.message());
    }
  }

  void on_message(Handler handler) override { handler_ = std::move(handler); }

  void close() override {
    if (!open_) return;
    open_ = false;
    boost::beast::error_code ec;
    stream_->close(boost::beast::websocket::close_code::normal, ec);
  }

  bool is_open() const override { return open_; }

  /// Blocking read loop; returns true on clean remote close, false on a
  /// transport error.
  bool run() {
    boost::beast::flat_buffer buffer;
    while (open_) {
      boost::beast::error_code ec;
      stream_->read(buffer, ec);
      if (ec == boost::beast::websocket::error::closed) {
        open_ = false;
        return true;
      }
      if (ec) {
        open_ = false;
        return false;
      }
      const std::string frame = boost::beast::buffers_to_string(buffer.data());
      buffer.consume(buffer.size());
      if (handler_) handler_(frame);
    }
    return true;
  }

 private:
  std::unique_ptr<ws_detail::WsStream> stream_;
  Handler handler_;
  bool open_ = true;
};

/// Binds, accepts a single client, and performs the server-side handshake.
class WebSocketAcceptor {
 public:
  WebSocketAcceptor(const std::string& address, unsigned short port)
      : acceptor_(ioc_, {boost::asio::ip::make_address(address), port}) {}

  unsigned short port() const { return acceptor_.local_endpoint().port(); }

  std::shared_ptr<WebSocketChannel> accept() {
    ws_detail::tcp::socket socket(ioc_);
    acceptor_.accept(socket);
    auto stream = std::make_unique<ws_detail::WsStream>(std::move(socket));
    stream->accept();
    return std::make_shared<WebSocketChannel>(std::move(stream));
  }

 private:
  boost::asio::io_context ioc_;
  ws_detail::tcp::acceptor acceptor_;
};

/// Connects to host:port and performs the client-side handshake.
inline std::shared_ptr<WebSocketChannel> websocket_connect(const std::string& host,
                                                           unsigned short port) {
  static boost::asio::io_context ioc;
  ws_detail::tcp::resolver resolver(ioc);
  auto results = resolver.resolve(host, std::to_string(port));
  auto stream = std::make_unique<ws_detail::WsStream>(ws_detail::tcp::socket(ioc));
  boost::asio::connect(stream->next_layer(), results);
  stream->handshake(host + ":" + std::to_string(port), "/");
  return std::make_shared<WebSocketChannel>(std::move(stream));
}

}  // namespace agentloop
