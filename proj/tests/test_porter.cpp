#include <doctest.h>

#include <set>

#include "agentloop/scenarios/porter.hpp"

using namespace agentloop;

TEST_CASE("porter plans fire on matching door state and request") {
  auto plans = porter::plans();

  auto beliefs = merge_beliefs({make_belief("door", {{"locked", false}}),
                                make_belief("requests", {"lock"})});
  CHECK(deliberate(beliefs, plans) == std::vector<Action>{"lock"});

  beliefs["door"] = Belief{"door", {{"locked", true}}, std::nullopt};
  CHECK(deliberate(beliefs, plans).empty());

  beliefs["door"] = Belief{"door", {{"locked", false}}, std::nullopt};
  beliefs["requests"] = Belief{"requests", {"unlock", "lock"}, std::nullopt};
  CHECK(deliberate(beliefs, plans) == std::vector<Action>{"lock"});
}

TEST_CASE("porter revision filters executed requests and appends new ones") {
  auto base = [](nlohmann::json requests) {
    return merge_beliefs({make_belief("door", {{"locked", true}}),
                          make_belief("requests", std::move(requests))});
  };
  auto percepts = [](nlohmann::json requests, nlohmann::json executions) {
    return merge_beliefs({make_belief("door", {{"locked", true}}),
                          make_belief("requests", std::move(requests)),
                          make_belief("executions", std::move(executions))});
  };

  auto revised = porter::revise(base({"lock"}), percepts(nlohmann::json::array(), {"lock"}));
  CHECK(revised.at("requests").value == nlohmann::json::array());

  revised = porter::revise(base(nlohmann::json::array()),
                           percepts({"unlock"}, nlohmann::json::array()));
  CHECK(revised.at("requests").value == nlohmann::json({"unlock"}));

  // Token filtering removes every occurrence of an executed token.
  revised = porter::revise(base({"lock", "lock"}), percepts(nlohmann::json::array(), {"lock"}));
  CHECK(revised.at("requests").value == nlohmann::json::array());
}

TEST_CASE("porter revision requires door, requests and executions") {
  CHECK_THROWS_AS(porter::revise(porter::initial_beliefs(),
                                 make_belief("door", {{"locked", true}})),
                  ReviseError);
}

TEST_CASE("update_state applies actions and records executions") {
  auto update = porter::make_update_state(1);
  EnvState state = porter::initial_state();

  auto next = update({"unlock"}, "porter", state);
  CHECK(next["door"]["locked"] == false);
  CHECK(next["executions"] == nlohmann::json({"unlock"}));

  next = update({}, "porter", state);
  CHECK(next["door"]["locked"] == true);
  CHECK(next["executions"] == nlohmann::json::array());
  REQUIRE(next["requests"].size() == 1);
  std::set<std::string> tokens{"lock", "unlock"};
  CHECK(tokens.count(next["requests"][0].get<std::string>()) == 1);
}

TEST_CASE("request injection is reproducible for a fixed seed") {
  auto inject_sequence = [](std::uint64_t seed) {
    auto update = porter::make_update_state(seed);
    EnvState state = porter::initial_state();
    nlohmann::json tokens = nlohmann::json::array();
    for (int i = 0; i < 20; ++i) {
      state = update({}, "porter", state);
      tokens.push_back(state["requests"][0]);
    }
    return tokens;
  };
  CHECK(inject_sequence(9) == inject_sequence(9));
}

TEST_CASE("MAS requests accumulate until the porter's turn, then clear") {
  EnvState state = porter::initial_state();
  state = porter::mas_update_state({"lock"}, "paranoid", state);
  state = porter::mas_update_state({"unlock"}, "claustrophobe", state);
  CHECK(state["requests"] == nlohmann::json({"lock", "unlock"}));

  state = porter::mas_update_state({"unlock"}, "porter", state);
  CHECK(state["requests"] == nlohmann::json::array());
  CHECK(state["door"]["locked"] == false);
  CHECK(state["executions"] == nlohmann::json({"unlock"}));
}

TEST_CASE("local three-agent MAS toggles the door every step") {
  auto env = porter::make_mas_environment();
  auto records = env->run(6);
  REQUIRE(records.size() == 18);
  bool expected_locked = true;
  for (std::size_t i = 2; i < records.size(); i += 3) {
    expected_locked = !expected_locked;
    CHECK(records[i].agent_id == "porter");
    CHECK(records[i].post_state["door"]["locked"] == expected_locked);
  }
}
