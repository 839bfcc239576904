#include <doctest.h>

#include "aris/confidence.hpp"
#include "aris/errors.hpp"
#include "helpers.hpp"

using namespace aris;

namespace {

const ThresholdLevel kLlamaM2E2Trigger{0.80, 0.85, 0.30};

VoteLedger ledger_with(const EventMention& e, int votes) {
    VoteLedger l;
    for (int a = 1; a <= votes; ++a) l.record(canonical_key(e), a);
    return l;
}

}  // namespace

TEST_CASE("score_smoa_confidence is votes over n") {
    const auto doc = testing::nisman_doc(false);
    auto dead = testing::event(doc, "dead", "Life:Die");
    CHECK(score_smoa_confidence(dead, ledger_with(dead, 6), 10) == 0.6);
    CHECK(score_smoa_confidence(dead, ledger_with(dead, 10), 10) == 1.0);
    CHECK(score_smoa_confidence(dead, ledger_with(dead, 1), 10) == 0.1);
    CHECK_THROWS_AS(score_smoa_confidence(testing::event(doc, "shot", "Life:Die"), ledger_with(dead, 1), 10),
                    LookupError);
}

TEST_CASE("three-way split with the Llama-3.1 M2E2 0.9 trigger row") {
    std::vector<ScoredDisagreement> items{{Source::SMoA, 0.6}, {Source::SMoA, 0.2}, {Source::SMoA, 0.9},
                                          {Source::Tagger, 0.97}, {Source::Tagger, 0.5}};
    auto p = filter_disagreements(std::span<const ScoredDisagreement>(items), kLlamaM2E2Trigger);
    CHECK(p.reflect == std::vector<std::size_t>{0});
    CHECK(p.removed == std::vector<std::size_t>{1, 4});
    CHECK(p.retained_smoa == std::vector<std::size_t>{2});
    CHECK(p.retained_tagger == std::vector<std::size_t>{3});
}

TEST_CASE("boundaries: >= keeps, < drop removes") {
    std::vector<ScoredDisagreement> items{{Source::SMoA, 0.85}, {Source::SMoA, 0.30}, {Source::Tagger, 0.80}};
    auto p = filter_disagreements(std::span<const ScoredDisagreement>(items), kLlamaM2E2Trigger);
    CHECK(p.retained_smoa == std::vector<std::size_t>{0});
    CHECK(p.reflect == std::vector<std::size_t>{1});
    CHECK(p.retained_tagger == std::vector<std::size_t>{2});
}

TEST_CASE("theta above one never keeps directly") {
    std::vector<ScoredDisagreement> items{{Source::SMoA, 1.0}};
    auto p = filter_disagreements(std::span<const ScoredDisagreement>(items), ThresholdLevel{0.5, 1.10, 0.9});
    CHECK(p.retained_smoa.empty());
    CHECK(p.reflect == std::vector<std::size_t>{0});
}

TEST_CASE("Nisman events through the ledger") {
    const auto doc = testing::nisman_doc(false);
    auto dead = testing::event(doc, "dead", "Life:Die");
    auto shot = testing::event(doc, "shot", "Conflict:Attack");
    VoteLedger ledger;
    for (int a = 1; a <= 6; ++a) ledger.record(canonical_key(dead), a);
    for (int a = 7; a <= 8; ++a) ledger.record(canonical_key(shot), a);
    std::vector<DisagreementEvent> items{{dead, Source::SMoA, 0.0}, {shot, Source::SMoA, 0.0}};
    auto p = filter_disagreements(items, kLlamaM2E2Trigger, ledger, 10);
    CHECK(p.reflect == std::vector<std::size_t>{0});
    CHECK(p.removed == std::vector<std::size_t>{1});
}

TEST_CASE("combined mode") {
    std::vector<ScoredDisagreement> items{{Source::SMoA, 0.6}, {Source::Tagger, 0.3}};
    auto p = filter_disagreements(std::span<const ScoredDisagreement>(items), kLlamaM2E2Trigger,
                                  FilterPolicy{FilterMode::Combined, 0.5});
    CHECK(p.retained_smoa == std::vector<std::size_t>{0});
    CHECK(p.reflect == std::vector<std::size_t>{1});
    CHECK(p.removed.empty());
}

TEST_CASE("threshold validation and json") {
    CHECK_THROWS_AS(validate(ThresholdSet{{0.5, 0.2, 0.3}, {}}), ConfigError);
    CHECK_THROWS_AS(validate(ThresholdSet{{-0.1, 0.5, 0.3}, {}}), ConfigError);
    ThresholdSet t{kLlamaM2E2Trigger, {0.9, 0.99, 0.5}};
    CHECK_NOTHROW(validate(t));
    CHECK(threshold_set_from_json(nlohmann::json::parse(to_json(t).dump())) == t);
}

TEST_CASE("published table lookup") {
    auto table = load_threshold_table(std::filesystem::path(ARIS_DATA_DIR) / "threshold_tables.json");
    auto row = find_threshold_row(table, "Llama-3.1:M2E2:0.9");
    CHECK(row.trigger == kLlamaM2E2Trigger);
    auto casie = find_threshold_row(table, "Phi-3:CASIE:0.1");
    CHECK(casie.trigger.agent_keep == doctest::Approx(1.1));
    CHECK_THROWS_AS(find_threshold_row(table, "Nope:M2E2:0.9"), LookupError);
}
