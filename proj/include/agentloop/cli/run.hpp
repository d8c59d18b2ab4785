#pragma once

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <thread>

#include "agentloop/cli/config.hpp"
#include "agentloop/scenarios/excuse.hpp"
#include "agentloop/scenarios/gol.hpp"
#include "agentloop/scenarios/http_generator.hpp"
#include "agentloop/scenarios/porter.hpp"
#include "agentloop/server.hpp"
#include "agentloop/shadow.hpp"
#include "agentloop/trace.hpp"
#include "agentloop/websocket.hpp"

namespace agentloop::cli {

// Exit codes, stable across releases.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEnvError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitTransportError = 3;

namespace detail {

inline RenderFn make_render(const RunConfig& config, std::ostream& out) {
  switch (config.trace) {
    case TraceMode::Jsonl:
      return jsonl_render(out);
    case TraceMode::Text:
      if (config.scenario == Scenario::Gol) {
        return gol_frame_render(out, config.grid_width, config.grid_height);
      }
      return text_render(out);
    case TraceMode::None:
    default:
      return nullptr;
  }
}

inline void sleep_interval(const RunConfig& config) {
  if (config.interval_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(config.interval_ms));
  }
}

inline int run_porter_mas_server(const RunConfig& config, std::ostream& out) {
  WebSocketAcceptor acceptor(config.bind_host, config.bind_port);
  std::cerr << "listening on " << config.bind_host << ":" << acceptor.port() << "\n";
  auto channel = acceptor.accept();
  auto registry = std::make_shared<ActionRequestRegistry>();
  auto shadow = std::make_shared<ShadowAgent>("claustrophobe", porter::initial_beliefs(),
                                              channel, registry);
  auto env = porter::make_mas_environment(make_render(config, out),
                                          RunnerKind::MessageTriggered, shadow);
  MessageServer server(env, registry, static_cast<std::size_t>(config.steps));
  channel->on_message([&](const std::string& raw) {
    server.handle_message(raw);
    if (server.done()) channel->close();
  });
  channel->run();
  return kExitOk;
}

inline int run_porter_mas_client(const RunConfig& config) {
  auto channel = websocket_connect(config.connect_host, config.connect_port);
  RemoteAgentClient client(porter::make_claustrophobe(), channel);
  client.start();
  return channel->run() ? kExitOk : kExitTransportError;
}

inline int run_excuse(const RunConfig& config, std::ostream& out) {
  excuse::TextGeneratorPort port =
      config.generator == GeneratorKind::Http
          ? excuse::make_http_generator(config.endpoint, config.auth_token)
          : excuse::make_stub_generator();
  auto env = excuse::make_environment(std::move(port), make_render(config, out));
  for (int cycle = 0; cycle < config.max_cycles; ++cycle) {
    env->step();
    if (env->state()["excuseAccepted"].get<bool>()) break;
    sleep_interval(config);
  }
  return kExitOk;
}

inline int run_gol(const RunConfig& config, std::ostream& out) {
  gol::GridConfig grid;
  if (!config.pattern_file.empty()) {
    std::ifstream in(config.pattern_file);
    if (!in) throw AgentError("cannot open pattern file: " + config.pattern_file);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    grid = gol::parse_pattern(text);
  } else {
    grid = gol::random_grid(config.grid_width, config.grid_height, config.seed);
  }
  RunConfig render_config = config;
  render_config.grid_width = grid.width;
  render_config.grid_height = grid.height;
  auto env = gol::make_environment(grid, make_render(render_config, out));
  env->run(config.steps);
  return kExitOk;
}

}  // namespace detail

/// Runs a validated configuration; returns the process exit code.
inline int run_scenario(const RunConfig& config, std::ostream& trace_out) {
  try {
    switch (config.scenario) {
      case Scenario::Porter: {
        auto env = porter::make_environment(config.seed, detail::make_render(config, trace_out));
        env->run(config.steps);
        return kExitOk;
      }
      case Scenario::PorterMas:
        switch (config.role) {
          case Role::Server:
            return detail::run_porter_mas_server(config, trace_out);
          case Role::Client:
            return detail::run_porter_mas_client(config);
          case Role::Local:
          default: {
            auto env = porter::make_mas_environment(detail::make_render(config, trace_out));
            env->run(config.steps);
            return kExitOk;
          }
        }
      case Scenario::Gol:
        return detail::run_gol(config, trace_out);
      case Scenario::Excuse:
        return detail::run_excuse(config, trace_out);
    }
  } catch (const ChannelClosed& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransportError;
  } catch (const boost::system::system_error& e) {
    std::cerr << "transport error: " << e.what() << "\n";
    return kExitTransportError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvError;
  }
  return kExitEnvError;
}

/// Full CLI entry: parse, dispatch, map errors to exit codes.
inline int main_impl(const std::vector<std::string>& args) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& help) {
    std::cout << help.what();
    return kExitOk;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::ofstream file;
  if (!config.trace_path.empty()) {
    file.open(config.trace_path);
    if (!file) {
      std::cerr << "cannot open trace file: " << config.trace_path << "\n";
      return kExitUsage;
    }
  }
  return run_scenario(config, file.is_open() ? file : std::cout);
}

}  // namespace agentloop::cli
