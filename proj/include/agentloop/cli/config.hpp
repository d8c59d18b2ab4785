#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace agentloop::cli {

enum class Scenario { Porter, PorterMas, Gol, Excuse };
enum class TraceMode { None, Text, Jsonl };
enum class Role { Local, Server, Client };
enum class GeneratorKind { Stub, Http };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Scenario scenario = Scenario::Porter;
  int steps = 20;
  std::uint64_t seed = 0;
  int grid_width = 20;
  int grid_height = 20;
  std::string pattern_file;
  TraceMode trace = TraceMode::None;
  std::string trace_path;
  Role role = Role::Local;
  std::string bind_host = "127.0.0.1";
  unsigned short bind_port = 8765;
  std::string connect_host = "127.0.0.1";
  unsigned short connect_port = 8765;
  int interval_ms = -1;  // -1: scenario default (0, except 3000 for excuse)
  GeneratorKind generator = GeneratorKind::Stub;
  std::string endpoint;
  std::string auth_token;
  int max_cycles = 10;
};

namespace detail {

inline void parse_host_port(const std::string& text, std::string& host, unsigned short& port) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos || colon + 1 == text.size()) {
    throw UsageError("expected HOST:PORT, got '" + text + "'");
  }
  host = text.substr(0, colon);
  port = static_cast<unsigned short>(std::stoi(text.substr(colon + 1)));
}

inline void parse_grid(const std::string& text, int& width, int& height) {
  auto x = text.find('x');
  if (x == std::string::npos) throw UsageError("expected WIDTHxHEIGHT, got '" + text + "'");
  width = std::stoi(text.substr(0, x));
  height = std::stoi(text.substr(x + 1));
  if (width <= 0 || height <= 0) throw UsageError("grid dimensions must be positive");
}

}  // namespace detail

/// Parses `run <scenario> [flags...]` into a validated RunConfig.
inline RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig config;
  std::string scenario, grid, bind, connect, trace = "none", role = "local",
                        generator = "stub";

  CLI::App app{"belief-plan reasoning-loop agent scenarios"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "run a scenario");
  run->add_option("scenario", scenario, "porter | porter-mas | gol | excuse")->required();
  run->add_option("--steps", config.steps, "environment steps / cycles");
  run->add_option("--seed", config.seed, "randomness seed");
  run->add_option("--grid", grid, "grid dimensions, WIDTHxHEIGHT");
  run->add_option("--pattern", config.pattern_file, "initial grid pattern file (./# rows)");
  run->add_option("--trace", trace, "none | text | jsonl");
  run->add_option("--trace-path", config.trace_path, "write trace to file instead of stdout");
  run->add_option("--role", role, "local | server | client (porter-mas only)");
  run->add_option("--bind", bind, "server bind address, HOST:PORT");
  run->add_option("--connect", connect, "client target, HOST:PORT");
  run->add_option("--interval-ms", config.interval_ms, "delay between cycles");
  run->add_option("--generator", generator, "stub | http (excuse only)");
  run->add_option("--endpoint", config.endpoint, "HTTP generator endpoint URL");
  run->add_option("--max-cycles", config.max_cycles, "excuse cycle budget");

  try {
    // CLI11 parses argv-style vectors in reverse.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  if (scenario == "porter") {
    config.scenario = Scenario::Porter;
  } else if (scenario == "porter-mas") {
    config.scenario = Scenario::PorterMas;
  } else if (scenario == "gol") {
    config.scenario = Scenario::Gol;
  } else if (scenario == "excuse") {
    config.scenario = Scenario::Excuse;
  } else {
    throw UsageError("unknown scenario: " + scenario);
  }

  if (trace == "none") {
    config.trace = TraceMode::None;
  } else if (trace == "text") {
    config.trace = TraceMode::Text;
  } else if (trace == "jsonl") {
    config.trace = TraceMode::Jsonl;
  } else {
    throw UsageError("unknown trace mode: " + trace);
  }

  if (role == "local") {
    config.role = Role::Local;
  } else if (role == "server") {
    config.role = Role::Server;
  } else if (role == "client") {
    config.role = Role::Client;
  } else {
    throw UsageError("unknown role: " + role);
  }
  if (config.role != Role::Local && config.scenario != Scenario::PorterMas) {
    throw UsageError("--role server/client is only valid for porter-mas");
  }

  if (generator == "stub") {
    config.generator = GeneratorKind::Stub;
  } else if (generator == "http") {
    config.generator = GeneratorKind::Http;
  } else {
    throw UsageError("unknown generator: " + generator);
  }
  if (const char* ep = std::getenv("AGENTLOOP_GENERATOR_ENDPOINT")) {
    if (config.endpoint.empty()) config.endpoint = ep;
  }
  if (const char* token = std::getenv("AGENTLOOP_GENERATOR_TOKEN")) config.auth_token = token;
  if (config.generator == GeneratorKind::Http && config.endpoint.empty()) {
    throw UsageError("--generator http requires --endpoint or AGENTLOOP_GENERATOR_ENDPOINT");
  }

  if (!grid.empty()) detail::parse_grid(grid, config.grid_width, config.grid_height);
  if (!bind.empty()) detail::parse_host_port(bind, config.bind_host, config.bind_port);
  if (!connect.empty()) {
    detail::parse_host_port(connect, config.connect_host, config.connect_port);
  }
  if (config.steps <= 0) throw UsageError("--steps must be positive");
  if (config.interval_ms == -1) {
    config.interval_ms = config.scenario == Scenario::Excuse ? 3000 : 0;
  }
  if (config.interval_ms < 0) throw UsageError("--interval-ms must be non-negative");
  return config;
}

}  // namespace agentloop::cli
