#include <doctest.h>

#include "aris/agreement.hpp"
#include "helpers.hpp"

using namespace aris;

TEST_CASE("Nisman trigger matching") {
    const auto doc = testing::nisman_doc(false);
    std::vector<EventMention> smoa{testing::event(doc, "shot", "Conflict:Attack"), testing::event(doc, "dead", "Life:Die"),
                                   testing::event(doc, "bombing", "Conflict:Attack")};
    std::vector<EventMention> tagger{testing::event(doc, "bombing", "Conflict:Attack")};
    auto r = match_triggers(smoa, tagger, 0.5);
    REQUIRE(r.consensus.size() == 1);
    CHECK(r.consensus[0].smoa_index == 2);
    CHECK(r.consensus[0].tagger_index == 0);
    CHECK(r.smoa_only == std::vector<std::size_t>{0, 1});
    CHECK(r.tagger_only.empty());
}

TEST_CASE("'was attached' matches 'attached'") {
    Document doc("d", "The file was attached to the mail.");
    auto smoa = testing::event(doc, "was attached", "Transfer");
    auto tagger = testing::event(doc, "attached", "Transfer");
    auto r = match_triggers({smoa}, {tagger});
    REQUIRE(r.consensus.size() == 1);
    CHECK(r.consensus[0].overlap == doctest::Approx(8.0 / 12.0));

    auto other = tagger;
    other.event_type = "Other";
    CHECK(match_triggers({smoa}, {other}).consensus.empty());
}

TEST_CASE("identical lists at threshold 1") {
    const auto doc = testing::nisman_doc(false);
    std::vector<EventMention> events{testing::event(doc, "dead", "Life:Die"), testing::event(doc, "bombing", "Conflict:Attack")};
    auto r = match_triggers(events, events, 1.0);
    CHECK(r.consensus.size() == 2);
    CHECK(r.smoa_only.empty());
    CHECK(r.tagger_only.empty());
}

TEST_CASE("greedy prefers the larger overlap") {
    Document doc("d", "abcdefghij");
    EventMention s{{"abcdef", 0, 6}, "T", {}};
    EventMention t1{{"abcd", 0, 4}, "T", {}};
    EventMention t2{{"abcdef", 0, 6}, "T", {}};
    auto r = match_triggers({s}, {t1, t2});
    REQUIRE(r.consensus.size() == 1);
    CHECK(r.consensus[0].tagger_index == 1);
    CHECK(r.tagger_only == std::vector<std::size_t>{0});
}

TEST_CASE("argument matching") {
    const auto doc = testing::gandhi_doc(false);
    auto smoa = testing::event(doc, "killing", "Life:Die", {{"assassin", "Agent"}, {"Gandhi", "Victim"}});
    auto tagger = testing::event(doc, "killing", "Life:Die", {{"assassin", "Agent"}, {"man", "Victim"}});
    auto r = match_arguments(smoa, tagger);
    REQUIRE(r.consensus.size() == 1);
    CHECK(smoa.arguments[r.consensus[0].smoa_index].span.text == "assassin");
    REQUIRE(r.smoa_only.size() == 1);
    CHECK(smoa.arguments[r.smoa_only[0]].span.text == "Gandhi");
    REQUIRE(r.tagger_only.size() == 1);
    CHECK(tagger.arguments[r.tagger_only[0]].span.text == "man");

    Document gov("g", "Yesterday the government officials resigned.");
    auto a = testing::event(gov, "resigned", "End-Position", {{"the government officials", "Person"}});
    auto b = testing::event(gov, "resigned", "End-Position", {{"government officials", "Person"}});
    CHECK(match_arguments(a, b).consensus.size() == 1);

    auto same = match_arguments(smoa, smoa);
    CHECK(same.consensus.size() == 2);
    CHECK(same.smoa_only.empty());
    CHECK(same.tagger_only.empty());
}
