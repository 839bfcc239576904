#include <doctest.h>

#include <atomic>

#include "aris/errors.hpp"
#include "aris/moa.hpp"
#include "helpers.hpp"

using namespace aris;

namespace {

const std::string kDead = R"({"trigger": "dead", "type": "Life:Die", "arguments": []})";
const std::string kShot = R"({"trigger": "shot", "type": "Conflict:Attack", "arguments": []})";
const std::string kBombing = R"({"trigger": "bombing", "type": "Conflict:Attack", "arguments": []})";

std::string nisman_reply(int agent) {
    if (agent <= 6) return testing::events_reply("[" + kDead + ", " + kBombing + "]");
    if (agent <= 8) return testing::events_reply("[" + kShot + ", " + kBombing + "]");
    return testing::events_reply("[" + kBombing + "]");
}

MoaOptions fast() {
    MoaOptions o;
    o.transport.initial_backoff = std::chrono::milliseconds(0);
    return o;
}

}  // namespace

TEST_CASE("make_agents and validate_agents") {
    auto agents = make_agents(10, 0.9);
    REQUIRE(agents.size() == 10);
    CHECK(agents.front().agent_id == 1);
    CHECK(agents.back().agent_id == 10);
    CHECK_NOTHROW(validate_agents(agents));
    agents[3].agent_id = 1;
    CHECK_THROWS_AS(validate_agents(agents), ContractError);
}

TEST_CASE("run_self_moa on the Nisman script") {
    const auto doc = testing::nisman_doc(false);
    FunctionBackend backend([](const ChatRequest&, const RequestContext& c) { return nisman_reply(c.agent_id); });
    auto agents = make_agents(10, 0.9);
    auto result = run_self_moa(doc, "prompt", agents, backend, fast());
    CHECK(backend.call_count() == 10);
    CHECK(result.empty_agents.empty());

    const auto& v = result.votes;
    CHECK(v.agent_count == 10);
    REQUIRE(v.events.size() == 3);
    CHECK(v.events[0].trigger.text == "shot");
    CHECK(v.events[1].trigger.text == "dead");
    CHECK(v.events[2].trigger.text == "bombing");
    CHECK(v.ledger.votes(canonical_key(v.events[1])) == std::set<int>{1, 2, 3, 4, 5, 6});
    CHECK(v.ledger.votes(canonical_key(v.events[0])).size() == 2);
    CHECK(v.ledger.votes(canonical_key(v.events[2])).size() == 10);
}

TEST_CASE("single agent with an empty answer") {
    const auto doc = testing::nisman_doc(false);
    FunctionBackend backend([](const ChatRequest&, const RequestContext&) { return std::string("```\nEvents = []\n```"); });
    auto result = run_self_moa(doc, "prompt", make_agents(1, 0.9), backend, fast());
    CHECK(result.votes.events.empty());
    CHECK(result.votes.ledger.empty());
}

TEST_CASE("unparseable agent is retried once then counted as empty") {
    const auto doc = testing::nisman_doc(false);
    std::atomic<int> calls_of_2{0};
    FunctionBackend backend([&](const ChatRequest&, const RequestContext& c) {
        if (c.agent_id == 2) {
            ++calls_of_2;
            return std::string("no fence here");
        }
        return nisman_reply(c.agent_id);
    });
    auto result = run_self_moa(doc, "prompt", make_agents(3, 0.9), backend, fast());
    CHECK(calls_of_2 == 2);
    CHECK(result.empty_agents == std::vector<int>{2});
    CHECK(result.votes.events.size() == 2);
}

TEST_CASE("transport failures surface as orchestration errors") {
    const auto doc = testing::nisman_doc(false);
    std::atomic<int> calls{0};
    FunctionBackend backend([&](const ChatRequest&, const RequestContext&) -> std::string {
        ++calls;
        throw TransportError("connection refused");
    });
    CHECK_THROWS_AS(run_self_moa(doc, "prompt", make_agents(1, 0.9), backend, fast()), OrchestrationError);
    CHECK(calls == 3);
}

TEST_CASE("transient transport failure is retried") {
    const auto doc = testing::nisman_doc(false);
    std::atomic<int> calls{0};
    FunctionBackend backend([&](const ChatRequest&, const RequestContext& c) -> std::string {
        if (++calls == 1) throw TransportError("reset");
        return nisman_reply(c.agent_id);
    });
    auto result = run_self_moa(doc, "prompt", make_agents(1, 0.9), backend, fast());
    CHECK(result.votes.events.size() == 2);
}

TEST_CASE("cleanup_predictions") {
    const auto doc = testing::nisman_doc(false);
    auto dead = testing::event(doc, "dead", "Life:Die");
    auto bombing = testing::event(doc, "bombing", "Conflict:Attack");
    EventMention ghost{{"explosion", 10, 19}, "Conflict:Attack", {}};
    auto out = cleanup_predictions({bombing, ghost, dead, bombing}, doc);
    CHECK(out == std::vector<EventMention>{dead, bombing});
    CHECK(cleanup_predictions(out, doc) == out);

    auto as_attack = dead;
    as_attack.event_type = "Conflict:Attack";
    auto both = cleanup_predictions({dead, as_attack}, doc);
    REQUIRE(both.size() == 2);
    CHECK(both[0].event_type == "Conflict:Attack");
    CHECK(both[1].event_type == "Life:Die");
}

TEST_CASE("vote ledger unions") {
    const auto doc = testing::gandhi_doc(false);
    auto full = testing::event(doc, "killing", "Life:Die", {{"assassin", "Agent"}, {"Gandhi", "Victim"}});
    auto partial = testing::event(doc, "killing", "Life:Die", {{"assassin", "Agent"}});
    auto votes = aggregate_agent_lists(doc, {{full}, {full}, {partial}, {}});
    CHECK(votes.agent_count == 4);
    CHECK(votes.ledger.size() == 2);
    const TriggerId id = trigger_id(full);
    CHECK(votes.ledger.trigger_votes(id) == std::set<int>{1, 2, 3});
    CHECK(votes.ledger.argument_votes(id, argument_key(full.arguments[0])) == std::set<int>{1, 2, 3});
    CHECK(votes.ledger.argument_votes(id, argument_key(full.arguments[1])) == std::set<int>{1, 2});
    CHECK_THROWS_AS((void)votes.ledger.votes(canonical_key(testing::event(doc, "fired", "Conflict:Attack"))), LookupError);

    auto grouped = aggregate_by_trigger(votes);
    REQUIRE(grouped.size() == 1);
    CHECK(grouped[0].event.arguments.size() == 2);
    CHECK(grouped[0].trigger_votes.size() == 3);
}
