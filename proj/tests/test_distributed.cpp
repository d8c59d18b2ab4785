#include <doctest.h>

#include <memory>

#include "agentloop/channel.hpp"
#include "agentloop/protocol.hpp"
#include "agentloop/scenarios/porter.hpp"
#include "agentloop/server.hpp"
#include "agentloop/shadow.hpp"
#include "support/generators.hpp"

using namespace agentloop;

TEST_CASE("action messages encode to canonical sorted-key JSON") {
  ActionMessage msg{"a", {{}}};
  CHECK(encode_message(msg) == R"({"actions":[[]],"agentId":"a"})");
  CHECK(decode_action_message(encode_message(msg)) == msg);
}

TEST_CASE("decode_action_message rejects malformed input") {
  CHECK_THROWS_AS(decode_action_message("{}"), DecodeError);
  CHECK_THROWS_AS(decode_action_message(R"({"agentId":"a"})"), DecodeError);
  CHECK_THROWS_AS(decode_action_message(R"({"agentId":"","actions":[[]]})"), DecodeError);
  CHECK_THROWS_AS(decode_action_message(R"({"agentId":"a","actions":"x"})"), DecodeError);
  try {
    decode_action_message("not json");
  } catch (const DecodeError& e) {
    CHECK(e.byte_offset() > 0);
  }
}

TEST_CASE("excessively nested frames are rejected before parsing") {
  std::string deep(200, '[');
  deep.append(200, ']');
  std::string message = R"({"agentId":"a","actions":[[)" + deep + "]]}";
  CHECK_THROWS_AS(decode_action_message(message), DecodeError);
  CHECK_FALSE(decode_belief_update(R"({"k":)" + deep + "}").has_value());
  // bracket characters inside strings do not count towards nesting
  CHECK(nesting_depth(R"({"k":"[[[[\"[[\""})") == 1);
  std::string shallow = R"({"agentId":"a","actions":[["x"]]})";
  CHECK(decode_action_message(shallow).agent_id == "a");
}

TEST_CASE("belief updates carry a bare percept object; non-maps are ignored") {
  BeliefUpdateMessage msg{porter::initial_beliefs()};
  auto text = encode_message(msg);
  auto decoded = decode_belief_update(text);
  REQUIRE(decoded.has_value());
  CHECK(canonical(*decoded) == canonical(msg.percepts));

  CHECK_FALSE(decode_belief_update("\"hello\"").has_value());
  CHECK_FALSE(decode_belief_update("[1,2]").has_value());
  CHECK_FALSE(decode_belief_update("not json").has_value());
}

TEST_CASE("codec round-trip holds for generated messages") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto msg = testgen::random_action_message(rng);
    CHECK(decode_action_message(encode_message(msg)) == msg);

    BeliefUpdateMessage update{testgen::random_belief_base(rng, /*with_priorities=*/false)};
    auto decoded = decode_belief_update(encode_message(update));
    REQUIRE(decoded.has_value());
    CHECK(*decoded == update.percepts);
  }
}

TEST_CASE("registry keeps the latest batches per agent, last writer wins") {
  ActionRequestRegistry registry;
  registry.register_agent("c");
  CHECK_THROWS_AS(registry.register_agent("c"), DuplicateAgentId);
  CHECK(registry.latest_actions("c").empty());

  CHECK(registry.store("c", {{Action("lock")}}));
  CHECK(registry.store("c", {{Action("unlock")}, {Action("lock")}}));
  CHECK(registry.latest_actions("c") == std::vector<Action>{"unlock", "lock"});

  CHECK_FALSE(registry.store("unknown", {{}}));
  CHECK(registry.latest_actions("unknown").empty());
}

TEST_CASE("shadow agent forwards percepts and returns registered actions") {
  auto [server_end, client_end] = LoopbackChannel::make_pair();
  auto registry = std::make_shared<ActionRequestRegistry>();
  ShadowAgent shadow("c", {}, server_end, registry);

  std::vector<std::string> received;
  client_end->on_message([&](const std::string& m) { received.push_back(m); });

  auto first = shadow.next(make_belief("door", {{"locked", true}}));
  CHECK(first.actions.empty());
  REQUIRE(received.size() == 1);
  CHECK(received[0] == R"({"door":{"locked":true}})");

  registry->store("c", {{Action("unlock")}});
  CHECK(shadow.next({}).actions == std::vector<Action>{"unlock"});
}

TEST_CASE("a closed channel surfaces as a recorded cycle error, not an abort") {
  auto [server_end, client_end] = LoopbackChannel::make_pair();
  auto registry = std::make_shared<ActionRequestRegistry>();
  auto shadow = std::make_shared<ShadowAgent>("claustrophobe", porter::initial_beliefs(),
                                              server_end, registry);
  auto env = porter::make_mas_environment(nullptr, RunnerKind::Synchronous, shadow);
  client_end->close();
  auto records = env->step();
  REQUIRE(records.size() == 3);
  REQUIRE(records[1].errors.size() == 1);
  CHECK(records[1].errors[0].kind == "AgentCycleError");
  CHECK(records[1].actions.empty());
  // porter still ran
  CHECK(records[2].agent_id == "porter");
}

TEST_CASE("server triggers exactly one cycle per parsed message") {
  auto registry = std::make_shared<ActionRequestRegistry>();
  registry->register_agent("claustrophobe");
  auto env = std::make_shared<Environment>(
      std::vector<std::shared_ptr<AgentBase>>{},
      EnvState::object(),
      [](const std::vector<Action>&, const std::string&, const EnvState& s) { return s; },
      nullptr, nullptr, RunnerKind::MessageTriggered);
  MessageServer server(env, registry);

  SUBCASE("opening message stores batches and runs one cycle") {
    auto result = server.handle_message(R"({"agentId":"claustrophobe","actions":[[]]})");
    CHECK(result.cycle_triggered);
    CHECK(result.warnings.empty());
    CHECK(server.cycles_run() == 1);
    CHECK(registry->latest_actions("claustrophobe").empty());
  }

  SUBCASE("unparseable text warns and triggers nothing") {
    auto result = server.handle_message("not json");
    CHECK_FALSE(result.cycle_triggered);
    REQUIRE(result.warnings.size() == 1);
    CHECK(result.warnings[0].kind == "ProtocolWarning");
    CHECK(server.cycles_run() == 0);
  }

  SUBCASE("unknown agent id warns but still triggers a cycle") {
    auto result = server.handle_message(R"({"agentId":"stranger","actions":[["x"]]})");
    CHECK(result.cycle_triggered);
    REQUIRE(result.warnings.size() == 1);
    CHECK(server.cycles_run() == 1);
  }

  SUBCASE("a JSON message without action fields still triggers a cycle") {
    auto result = server.handle_message(R"({"hello":1})");
    CHECK(result.cycle_triggered);
    CHECK(server.cycles_run() == 1);
  }

  SUBCASE("last writer wins across messages") {
    server.handle_message(R"({"agentId":"claustrophobe","actions":[["lock"]]})");
    server.handle_message(R"({"agentId":"claustrophobe","actions":[["unlock"]]})");
    CHECK(registry->latest_actions("claustrophobe") == std::vector<Action>{"unlock"});
    CHECK(server.cycles_run() == 2);
  }
}

TEST_CASE("client loop opens with an empty batch and ignores non-map frames") {
  auto [server_end, client_end] = LoopbackChannel::make_pair();
  std::vector<std::string> to_server;
  server_end->on_message([&](const std::string& m) { to_server.push_back(m); });

  RemoteAgentClient client(porter::make_claustrophobe(), client_end);
  client.start();
  REQUIRE(to_server.size() == 1);
  CHECK(to_server[0] == R"({"actions":[[]],"agentId":"claustrophobe"})");

  server_end->send("\"hello\"");
  CHECK(to_server.size() == 1);
  CHECK(client.cycles_run() == 0);

  // Percepts with a locked door produce an unlock request batch.
  server_end->send(encode_message(BeliefUpdateMessage{merge_beliefs(
      {make_belief("door", {{"locked", true}}),
       make_belief("requests", nlohmann::json::array()),
       make_belief("executions", nlohmann::json::array())})}));
  REQUIRE(to_server.size() == 2);
  CHECK(to_server[1] == R"({"actions":[["unlock"]],"agentId":"claustrophobe"})");
  CHECK(client.cycles_run() == 1);
}

TEST_CASE("loopback porter MAS runs the full protocol end to end") {
  auto [server_end, client_end] = LoopbackChannel::make_pair();
  auto registry = std::make_shared<ActionRequestRegistry>();
  auto shadow = std::make_shared<ShadowAgent>("claustrophobe", porter::initial_beliefs(),
                                              server_end, registry);
  auto env = porter::make_mas_environment(nullptr, RunnerKind::MessageTriggered, shadow);
  MessageServer server(env, registry, 10);
  server_end->on_message([&](const std::string& raw) { server.handle_message(raw); });

  RemoteAgentClient client(porter::make_claustrophobe(), client_end);
  client.start();

  CHECK(server.cycles_run() == 10);
  const auto& trace = server.trace();
  REQUIRE(trace.size() == 30);
  // Porter acts on the remote claustrophobe's unlock request in cycle 1.
  CHECK(trace[2].agent_id == "porter");
  CHECK(trace[2].actions == std::vector<Action>{"unlock"});
  CHECK(trace[2].post_state["door"]["locked"] == false);
}
