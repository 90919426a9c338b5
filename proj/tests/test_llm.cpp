#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "support/util.hpp"

using namespace webwise;

namespace {

PromptBundle tiny() {
  PromptBundle b;
  b.messages = {{Role::system, "sys"}, {Role::user, "hello"}};
  b.token_estimate = estimate_tokens(b);
  return b;
}

std::string ok_body(const std::string& content) {
  return nlohmann::json{{"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}}}.dump();
}

struct FakeTransport {
  std::vector<HttpResponse> script;
  std::vector<HttpRequest> seen;
  HttpResponse operator()(const HttpRequest& req) {
    seen.push_back(req);
    auto r = script.at(seen.size() - 1);
    return r;
  }
};

struct Sleeps {
  std::vector<std::chrono::milliseconds> taken;
  RetryPolicy policy() {
    RetryPolicy p;
    p.sleep = [this](std::chrono::milliseconds d) { taken.push_back(d); };
    return p;
  }
};

}  // namespace

TEST(ScriptedBackend, SeedSpecificBeatsGeneric) {
  ScriptedBackend b({{"t", std::nullopt, 0, "generic"}, {"t", 7, 0, "seven"}});
  EXPECT_EQ(b.complete(tiny(), {"t", 7, 0}).raw, "seven");
  EXPECT_EQ(b.complete(tiny(), {"t", 8, 0}).raw, "generic");
  EXPECT_EQ(b.calls(), 2U);
}

TEST(ScriptedBackend, MissNamesTheKey) {
  ScriptedBackend b({{"t", std::nullopt, 0, "x"}});
  try {
    b.complete(tiny(), {"t", 3, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::script_miss);
    std::string msg = e.what();
    EXPECT_NE(msg.find("task_id=t"), std::string::npos);
    EXPECT_NE(msg.find("seed=3"), std::string::npos);
    EXPECT_NE(msg.find("step_index=1"), std::string::npos);
  }
}

TEST(ScriptedBackend, JsonlRoundTrip) {
  auto dir = testutil::temp_dir("jsonl");
  auto path = (dir / "f.jsonl").string();
  std::vector<ScriptRecord> recs{{"a", std::nullopt, 0, "line1\nline2 'q' \"d\""}, {"b", 42, 3, ""}};
  {
    std::ofstream out(path);
    for (const auto& r : recs) out << to_jsonl_line(r) << "\n\n";
  }
  auto back = load_script(path);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0].response_text, recs[0].response_text);
  EXPECT_FALSE(back[0].seed);
  EXPECT_EQ(back[1].seed, 42U);
  EXPECT_EQ(back[1].step_index, 3);
}

TEST(ScriptedBackend, MalformedFixtureReportsLine) {
  auto dir = testutil::temp_dir("badjsonl");
  auto path = (dir / "f.jsonl").string();
  {
    std::ofstream out(path);
    out << to_jsonl_line({"a", std::nullopt, 0, "x"}) << "\n{\"task_id\": 1}\n";
  }
  try {
    load_script(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::config_error);
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
  EXPECT_THROW(load_script((dir / "missing.jsonl").string()), Error);
}

TEST(GoldenFixture, LoadsAndCoversEveryTask) {
  auto recs = load_script(testutil::golden_fixture());
  std::set<std::string> tasks;
  for (const auto& r : recs) tasks.insert(r.task_id);
  EXPECT_EQ(tasks.size(), list_tasks().size());
}

TEST(TokenLimit, RefusedBeforeBackendCall) {
  CallbackBackend backend([](const PromptBundle&, const CompletionKey&) { return std::string("x"); });
  LlmConfig cfg;
  cfg.max_tokens = 10;
  PromptBundle big;
  big.messages = {{Role::user, std::string(41, 'a')}};
  try {
    complete(big, cfg, backend, {"t", 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::token_limit_exceeded);
  }
  EXPECT_EQ(backend.calls(), 0U);
  PromptBundle exact;
  exact.messages = {{Role::user, std::string(40, 'a')}};
  EXPECT_EQ(complete(exact, cfg, backend, {"t", 0, 0}).raw, "x");
  EXPECT_EQ(backend.calls(), 1U);
}

TEST(RemoteBackend, RequestShape) {
  FakeTransport fake{{{200, ok_body("done"), ""}}, {}};
  LlmConfig cfg;
  cfg.model_name = "m1";
  cfg.temperature = 0.25;
  RemoteBackend backend(cfg, "sk-test", std::ref(fake));
  EXPECT_EQ(backend.complete(tiny(), {}).raw, "done");
  ASSERT_EQ(fake.seen.size(), 1U);
  const auto& req = fake.seen[0];
  EXPECT_EQ(req.path, "/v1/chat/completions");
  EXPECT_EQ(req.headers.at("Authorization"), "Bearer sk-test");
  auto body = nlohmann::json::parse(req.body);
  EXPECT_EQ(body["model"], "m1");
  EXPECT_DOUBLE_EQ(body["temperature"].get<double>(), 0.25);
  ASSERT_EQ(body["messages"].size(), 2U);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][1]["content"], "hello");
}

TEST(RemoteBackend, NoKeyNoAuthHeader) {
  FakeTransport fake{{{200, ok_body("x"), ""}}, {}};
  RemoteBackend backend(LlmConfig{}, "", std::ref(fake));
  backend.complete(tiny(), {});
  EXPECT_FALSE(fake.seen[0].headers.contains("Authorization"));
}

TEST(RemoteBackend, RetriesRateLimitThenSucceeds) {
  FakeTransport fake{{{429, "slow down", ""}, {200, ok_body("ok"), ""}}, {}};
  Sleeps sleeps;
  RemoteBackend backend(LlmConfig{}, "k", std::ref(fake), sleeps.policy());
  EXPECT_EQ(backend.complete(tiny(), {}).raw, "ok");
  EXPECT_EQ(fake.seen.size(), 2U);
  ASSERT_EQ(sleeps.taken.size(), 1U);
  EXPECT_EQ(sleeps.taken[0], std::chrono::milliseconds(1000));
}

TEST(RemoteBackend, GivesUpAfterThreeAttemptsWithDoublingBackoff) {
  FakeTransport fake{{{500, "", ""}, {0, "", "connection refused"}, {503, "", ""}}, {}};
  Sleeps sleeps;
  RemoteBackend backend(LlmConfig{}, "k", std::ref(fake), sleeps.policy());
  try {
    backend.complete(tiny(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::transport_error);
  }
  EXPECT_EQ(fake.seen.size(), 3U);
  EXPECT_EQ(sleeps.taken, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(1000),
                                                                   std::chrono::milliseconds(2000)}));
}

TEST(RemoteBackend, ClientErrorsAreNotRetried) {
  FakeTransport fake{{{401, "bad key", ""}}, {}};
  Sleeps sleeps;
  RemoteBackend backend(LlmConfig{}, "k", std::ref(fake), sleeps.policy());
  EXPECT_THROW(backend.complete(tiny(), {}), Error);
  EXPECT_EQ(fake.seen.size(), 1U);
  EXPECT_TRUE(sleeps.taken.empty());
}

TEST(RemoteBackend, MalformedResponseIsTransportError) {
  FakeTransport fake{{{200, "{\"choices\": []}", ""}}, {}};
  RemoteBackend backend(LlmConfig{}, "k", std::ref(fake));
  try {
    backend.complete(tiny(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::transport_error);
  }
}

TEST(RemoteBackend, BaseUrlVariants) {
  EXPECT_EQ(split_base_url("https://api.openai.com"),
            (std::pair<std::string, std::string>{"https://api.openai.com", "/v1/chat/completions"}));
  EXPECT_EQ(split_base_url("http://localhost:8000/v1/"),
            (std::pair<std::string, std::string>{"http://localhost:8000", "/v1/chat/completions"}));
  EXPECT_EQ(split_base_url("http://h:1/proxy"),
            (std::pair<std::string, std::string>{"http://h:1", "/proxy/v1/chat/completions"}));
}

TEST(RemoteBackend, TalksToLocalServer) {
  httplib::Server server;
  std::string auth;
  std::string seen_model;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    auth = req.get_header_value("Authorization");
    seen_model = nlohmann::json::parse(req.body)["model"];
    res.set_content(ok_body("action = click_action1('button', 'OK', observation)"), "application/json");
  });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  LlmConfig cfg;
  cfg.base_url = "http://127.0.0.1:" + std::to_string(port);
  cfg.model_name = "local-model";
  RemoteBackend backend(cfg, "secret");
  auto out = backend.complete(tiny(), {});
  server.stop();
  th.join();
  EXPECT_EQ(extract_program(out).action_count(), 1U);
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(seen_model, "local-model");
}

TEST(RemoteBackend, UnreachableServerIsTransportError) {
  LlmConfig cfg;
  cfg.base_url = "http://127.0.0.1:1";
  Sleeps sleeps;
  RemoteBackend backend(cfg, "", {}, sleeps.policy());
  EXPECT_THROW(backend.complete(tiny(), {}), Error);
  EXPECT_EQ(sleeps.taken.size(), 2U);
}
