#include <doctest.h>

#include "aris/errors.hpp"
#include "aris/reflection.hpp"
#include "helpers.hpp"

using namespace aris;

namespace {

ReflectionConfig no_retry_sleep() { return ReflectionConfig{}; }

RetryPolicy fast_transport() { return RetryPolicy{3, std::chrono::milliseconds(0)}; }

}  // namespace

TEST_CASE("reflection config defaults") {
    ReflectionConfig c;
    CHECK(c.temperature == 0.1);
    CHECK(c.max_output_tokens == 4096);
    CHECK(c.length_penalty == 1.05);
    CHECK(c.retry_limit == 1);
}

TEST_CASE("trigger prompt") {
    const auto doc = testing::nisman_doc(false);
    auto prompt = build_trigger_prompt(doc, {testing::span_of(doc, "dead"), testing::span_of(doc, "shot")});
    CHECK(prompt.find("- \"dead\"") != std::string::npos);
    CHECK(prompt.find("- \"shot\"") != std::string::npos);
    CHECK(prompt.find(R"(```ClassificationMap = {"therapy": "Trigger", "increase dose": "Non-Trigger"}```)") !=
          std::string::npos);

    auto one = build_trigger_prompt(doc, {testing::span_of(doc, "dead")});
    CHECK(one.find("- \"shot\"") == std::string::npos);
    CHECK(one.find("Q: For each candidate above") != std::string::npos);

    Document quoted("q", "He said \"go\" loudly.");
    auto q = build_trigger_prompt(quoted, {testing::span_of(quoted, "\"go\"")});
    CHECK(q.find(R"(- "\"go\"")") != std::string::npos);
    auto v = parse_trigger_response(render_trigger_reply({{"\"go\"", TriggerLabel::NonTrigger}}, {"\"go\""}),
                                    {testing::span_of(quoted, "\"go\"")});
    CHECK_FALSE(v.confirms("\"go\""));
}

TEST_CASE("argument prompt") {
    const auto doc = testing::gandhi_doc(false);
    auto killing = testing::event(doc, "killing", "Life:Die");
    std::vector<ArgumentMention> cands{{testing::span_of(doc, "Gandhi"), "Victim"}, {testing::span_of(doc, "man"), "Victim"}};
    auto prompt = build_argument_prompt(doc, killing, cands);
    auto g = prompt.find(R"(1. {"text": "Gandhi", "role": "Victim"})");
    auto m = prompt.find(R"(2. {"text": "man", "role": "Victim"})");
    CHECK(g != std::string::npos);
    CHECK(m != std::string::npos);
    CHECK(g < m);
    CHECK(prompt.find("\"killing\" (type: \"Life:Die\")") != std::string::npos);

    cands.push_back({testing::span_of(doc, "gun"), "Instrument"});
    auto three = build_argument_prompt(doc, killing, cands);
    CHECK(three.find("3. ") != std::string::npos);
    CHECK(three.find("\n4. {") == std::string::npos);

    cands[0].role.clear();
    CHECK_THROWS_AS(build_argument_prompt(doc, killing, cands), ContractError);
}

TEST_CASE("parse_trigger_response") {
    const auto doc = testing::nisman_doc(false);
    std::vector<Span> cands{testing::span_of(doc, "dead"), testing::span_of(doc, "shot")};
    auto v = parse_trigger_response(R"(```ClassificationMap = {"dead": "Trigger", "shot": "Non-Trigger"}```)", cands);
    CHECK(v.confirms("dead"));
    CHECK_FALSE(v.confirms("shot"));
    CHECK(v.defaulted.empty());

    auto prose = parse_trigger_response("Here you go:\n```ClassificationMap = {\"dead\": \"Non-Trigger\"}```", cands);
    CHECK_FALSE(prose.confirms("dead"));
    CHECK(prose.defaulted == std::vector<std::string>{"shot"});

    Document fig2("f", "Raise the therapy and increase dose later.");
    auto ex = parse_trigger_response(R"(```ClassificationMap = {"therapy": "Trigger", "increase dose": "Non-Trigger"}```)",
                                     {testing::span_of(fig2, "therapy"), testing::span_of(fig2, "increase dose")});
    CHECK(ex.confirms("therapy"));
    CHECK_FALSE(ex.confirms("increase dose"));

    CHECK_THROWS_AS(parse_trigger_response("dead: Trigger", cands), ParseError);
    CHECK_THROWS_AS(parse_trigger_response(R"(```ClassificationMap = {"dead": "Maybe"}```)", cands), ParseError);
}

TEST_CASE("parse_argument_response") {
    const auto doc = testing::gandhi_doc(false);
    std::vector<ArgumentMention> one{{testing::span_of(doc, "Gandhi"), "Victim"}};
    auto v = parse_argument_response(R"(```[{"text": "Gandhi", "role": "Victim", "is_correct": true}]```)", one);
    REQUIRE(v.size() == 1);
    CHECK(v[0].is_correct);

    std::vector<ArgumentMention> three{{testing::span_of(doc, "assassin"), "Agent"},
                                       {testing::span_of(doc, "Gandhi"), "Victim"},
                                       {testing::span_of(doc, "gun"), "Instrument"}};
    ArgumentVerdict judged{{"assassin", "Agent", true}, {"Gandhi", "Victim", true}, {"gun", "Instrument", true},
                           {"India", "Place", true}};
    CHECK_THROWS_AS(parse_argument_response(render_argument_reply(judged), three), ParseError);
    judged.pop_back();
    std::swap(judged[0], judged[1]);
    CHECK_THROWS_AS(parse_argument_response(render_argument_reply(judged), three), ParseError);
    std::swap(judged[0], judged[1]);
    for (auto& j : judged) j.is_correct = false;
    auto none = parse_argument_response(render_argument_reply(judged), three);
    CHECK(none == judged);
}

TEST_CASE("reflect with scripted verdicts") {
    const auto doc = testing::nisman_doc(false);
    ReflectionQuery q;
    q.triggers = {testing::event(doc, "shot", "Conflict:Attack"), testing::event(doc, "dead", "Life:Die")};
    FunctionBackend backend([](const ChatRequest&, const RequestContext& c) {
        CHECK(c.purpose == RequestContext::Purpose::ReflectTriggers);
        return std::string(R"(```ClassificationMap = {"dead": "Trigger", "shot": "Non-Trigger"}```)");
    });
    std::vector<AuditEntry> audit;
    auto r = reflect(q, doc, backend, no_retry_sleep(), &audit, fast_transport());
    REQUIRE(r.triggers.size() == 1);
    CHECK(r.triggers[0].trigger.text == "dead");
    CHECK(backend.call_count() == 1);
    REQUIRE(audit.size() == 1);
    CHECK(audit[0].outcome == "parsed");
}

TEST_CASE("empty query costs nothing") {
    const auto doc = testing::nisman_doc(false);
    FunctionBackend backend([](const ChatRequest&, const RequestContext&) { return std::string(); });
    auto r = reflect(ReflectionQuery{}, doc, backend);
    CHECK(r.triggers.empty());
    CHECK(r.argument_sets.empty());
    CHECK(backend.call_count() == 0);
}

TEST_CASE("rejected trigger's arguments are never asked about") {
    const auto doc = testing::gandhi_doc(false);
    ReflectionQuery q;
    q.triggers = {testing::event(doc, "fired", "Conflict:Attack", {{"gun", "Instrument"}})};
    FunctionBackend backend([](const ChatRequest&, const RequestContext& c) {
        CHECK(c.purpose == RequestContext::Purpose::ReflectTriggers);
        return std::string(R"(```ClassificationMap = {"fired": "Non-Trigger"}```)");
    });
    auto r = reflect(q, doc, backend);
    CHECK(r.triggers.empty());
    CHECK(backend.call_count() == 1);
}

TEST_CASE("confirmed trigger's arguments are asked about") {
    const auto doc = testing::gandhi_doc(false);
    ReflectionQuery q;
    q.argument_sets = {testing::event(doc, "killing", "Life:Die", {{"Gandhi", "Victim"}, {"man", "Victim"}})};
    FunctionBackend backend([](const ChatRequest&, const RequestContext& c) {
        CHECK(c.purpose == RequestContext::Purpose::ReflectArguments);
        CHECK(c.trigger_start == 162);
        return render_argument_reply({{"Gandhi", "Victim", true}, {"man", "Victim", false}});
    });
    auto r = reflect(q, doc, backend);
    REQUIRE(r.argument_sets.size() == 1);
    REQUIRE(r.argument_sets[0].arguments.size() == 1);
    CHECK(r.argument_sets[0].arguments[0].span.text == "Gandhi");
}

TEST_CASE("parse failures retry then keep everything") {
    const auto doc = testing::nisman_doc(false);
    ReflectionQuery q;
    q.triggers = {testing::event(doc, "shot", "Conflict:Attack"), testing::event(doc, "dead", "Life:Die")};
    FunctionBackend backend([](const ChatRequest&, const RequestContext&) { return std::string("I am not sure."); });
    ReflectionConfig config;
    config.retry_limit = 2;
    std::vector<AuditEntry> audit;
    auto r = reflect(q, doc, backend, config, &audit);
    CHECK(r.triggers == q.triggers);
    CHECK(backend.call_count() == 3);
    REQUIRE(audit.size() == 4);
    CHECK(audit.back().outcome == "fallback");
}

TEST_CASE("backend failure becomes an orchestration error") {
    const auto doc = testing::nisman_doc(false);
    ReflectionQuery q;
    q.triggers = {testing::event(doc, "dead", "Life:Die")};
    FunctionBackend backend([](const ChatRequest&, const RequestContext&) -> std::string { throw TransportError("down"); });
    CHECK_THROWS_AS(reflect(q, doc, backend, {}, nullptr, fast_transport()), OrchestrationError);
    CHECK(backend.call_count() == 3);
}

TEST_CASE("all-confirming backend is the identity") {
    const auto doc = testing::gandhi_doc(false);
    ReflectionQuery q;
    q.triggers = {testing::event(doc, "fired", "Conflict:Attack", {{"gun", "Instrument"}, {"assassin", "Attacker"}})};
    q.argument_sets = {testing::event(doc, "killing", "Life:Die", {{"Gandhi", "Victim"}})};
    FunctionBackend backend([&](const ChatRequest& req, const RequestContext& c) {
        if (c.purpose == RequestContext::Purpose::ReflectTriggers) {
            return std::string(R"(```ClassificationMap = {"fired": "Trigger"}```)");
        }
        ArgumentVerdict all;
        const auto& prompt = req.messages.back().content;
        for (const auto* e : {&q.triggers[0], &q.argument_sets[0]}) {
            if (c.trigger_start != e->trigger.start) continue;
            for (const auto& a : e->arguments) all.push_back({a.span.text, a.role, true});
        }
        CHECK(prompt.find("Candidate Arguments to verify") != std::string::npos);
        return render_argument_reply(all);
    });
    auto r = reflect(q, doc, backend);
    CHECK(r.triggers == q.triggers);
    CHECK(r.argument_sets == q.argument_sets);
    CHECK(backend.call_count() == 3);
}
