#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "aris/chat.hpp"
#include "aris/errors.hpp"
#include "helpers.hpp"

using namespace aris;

namespace {

ChatRequest user(const std::string& text) {
    ChatRequest r;
    r.messages.push_back({ChatRole::User, text});
    return r;
}

RequestContext agent(const std::string& doc, int id) {
    RequestContext c;
    c.doc_id = doc;
    c.agent_id = id;
    return c;
}

}  // namespace

TEST_CASE("validate_request") {
    CHECK_THROWS_AS(validate_request(ChatRequest{}), ContractError);
    CHECK_NOTHROW(validate_request(user("hi")));
}

TEST_CASE("replay backend scripts") {
    auto replay = ReplayBackend::from_json_text(R"({"replies": [
        {"doc_id": "d1", "agent_id": 1, "content": "one"},
        {"doc_id": "d1", "purpose": "reflect_arguments", "trigger": {"start": 4, "end": 11, "type": "Life:Die"},
         "contents": ["first", "second"]}]})");
    CHECK(replay->complete(user("x"), agent("d1", 1)) == "one");
    CHECK(replay->complete(user("x"), agent("d1", 1)) == "one");
    CHECK_THROWS_AS(replay->complete(user("x"), agent("d1", 2)), NoReplyError);

    RequestContext arg;
    arg.doc_id = "d1";
    arg.purpose = RequestContext::Purpose::ReflectArguments;
    arg.trigger_start = 4;
    arg.trigger_end = 11;
    arg.event_type = "Life:Die";
    CHECK(replay->complete(user("x"), arg) == "first");
    CHECK(replay->complete(user("x"), arg) == "second");
    CHECK(replay->complete(user("x"), arg) == "second");
    CHECK(replay->call_count() == 6);
    CHECK_THROWS_AS(ReplayBackend::from_json_text("{"), ParseError);
}

TEST_CASE("recording backend produces a replayable fixture") {
    FunctionBackend inner([](const ChatRequest& r, const RequestContext& c) {
        return r.messages.back().content + "/" + std::to_string(c.agent_id);
    });
    RecordingBackend rec(inner);
    rec.complete(user("a"), agent("d", 1));
    rec.complete(user("b"), agent("d", 2));
    rec.complete(user("c"), agent("d", 2));
    auto replay = ReplayBackend::from_json_text(rec.fixture().dump());
    CHECK(replay->complete(user("?"), agent("d", 1)) == "a/1");
    CHECK(replay->complete(user("?"), agent("d", 2)) == "b/2");
    CHECK(replay->complete(user("?"), agent("d", 2)) == "c/2");
}

TEST_CASE("complete_with_retries") {
    int calls = 0;
    FunctionBackend flaky([&](const ChatRequest&, const RequestContext&) -> std::string {
        if (++calls < 3) throw TransportError("blip");
        return "ok";
    });
    RetryPolicy fast{3, std::chrono::milliseconds(0)};
    CHECK(complete_with_retries(flaky, user("x"), agent("d", 1), fast, "agent 1") == "ok");

    FunctionBackend silent([](const ChatRequest&, const RequestContext&) -> std::string { throw NoReplyError("none"); });
    CHECK_THROWS_AS(complete_with_retries(silent, user("x"), agent("d", 1), fast, "agent 1"), OrchestrationError);
}

TEST_CASE("http backend against an in-process server") {
    httplib::Server server;
    std::string seen_auth;
    nlohmann::json seen_body;
    server.Post("/v1/chat", [&](const httplib::Request& req, httplib::Response& res) {
        seen_auth = req.get_header_value("Authorization");
        seen_body = nlohmann::json::parse(req.body);
        res.set_content(R"({"choices": [{"message": {"content": "```Events = []```"}}]})", "application/json");
    });
    server.Post("/down", [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    HttpChatBackend::Options options;
    options.url = "http://127.0.0.1:" + std::to_string(port) + "/v1/chat";
    options.model = "m";
    options.api_key = "secret";
    HttpChatBackend backend(options);
    ChatRequest req = user("hello");
    req.temperature = 0.9;
    req.max_output_tokens = 64;
    CHECK(backend.complete(req, agent("d", 1)) == "```Events = []```");
    CHECK(seen_auth == "Bearer secret");
    CHECK(seen_body["model"] == "m");
    CHECK(seen_body["messages"][0]["role"] == "user");
    CHECK(seen_body["messages"][0]["content"] == "hello");
    CHECK(seen_body["max_tokens"] == 64);
    CHECK_FALSE(seen_body.contains("length_penalty"));

    options.url = "http://127.0.0.1:" + std::to_string(port) + "/down";
    HttpChatBackend down(options);
    CHECK_THROWS_AS(down.complete(req, agent("d", 1)), TransportError);

    server.stop();
    thread.join();
}
