#include <doctest.h>

#include "aris/errors.hpp"
#include "aris/evaluation.hpp"
#include "helpers.hpp"

using namespace aris;

namespace {

Document letters() {
    Document bare("abc", "a b c d");
    return Document("abc", bare.text(),
                    {testing::event(bare, "a", "T"), testing::event(bare, "b", "T"), testing::event(bare, "c", "T")});
}

}  // namespace

TEST_CASE("hand example on Trg-I") {
    const auto doc = letters();
    PredictionsByDoc preds{{"abc", {testing::event(doc, "b", "T"), testing::event(doc, "c", "T"), testing::event(doc, "d", "T")}}};
    auto m = score_predictions(preds, {doc});
    CHECK(m.trigger_identification.tp == 2);
    CHECK(m.trigger_identification.precision() == doctest::Approx(2.0 / 3.0));
    CHECK(m.trigger_identification.recall() == doctest::Approx(2.0 / 3.0));
    CHECK(m.trigger_identification.f1() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("Gandhi passage against its gold") {
    const auto gold = testing::gandhi_doc();
    const auto bare = testing::gandhi_doc(false);
    PredictionsByDoc preds{
        {"gandhi", {testing::event(bare, "killing", "Life:Die", {{"assassin", "Agent"}, {"Gandhi", "Victim"}})}}};
    auto m = score_predictions(preds, {gold});
    CHECK(m.argument_classification == SubtaskScore{2, 0, 1});
    CHECK(m.trigger_classification == SubtaskScore{1, 0, 0});
}

TEST_CASE("degenerate conventions") {
    auto m = score_predictions({}, {letters()});
    CHECK(m.trigger_identification.precision() == 0.0);
    CHECK(m.trigger_identification.recall() == 0.0);
    CHECK(m.trigger_identification.f1() == 0.0);
    CHECK(f1_from_counts(0, 0, 0) == 0.0);
    CHECK(f1_from_counts(1, 1, 1) == doctest::Approx(0.5));
}

TEST_CASE("unknown documents are reference errors") {
    PredictionsByDoc preds{{"ghost", {}}};
    CHECK_THROWS_AS(score_predictions(preds, {letters()}), ReferenceError);
}

TEST_CASE("perfect predictions score one") {
    const auto gold = testing::gandhi_doc();
    auto m = score_predictions({{"gandhi", gold.gold_events()}}, {gold});
    CHECK(m.trigger_identification.f1() == 1.0);
    CHECK(m.trigger_classification.f1() == 1.0);
    CHECK(m.argument_identification.f1() == 1.0);
    CHECK(m.argument_classification.f1() == 1.0);
}

TEST_CASE("duplicates count once and gates differ") {
    const auto gold = testing::gandhi_doc();
    const auto bare = testing::gandhi_doc(false);
    auto wrong_type = testing::event(bare, "killing", "Conflict:Attack", {{"assassin", "Agent"}});
    auto m = score_predictions({{"gandhi", {wrong_type, wrong_type}}}, {gold});
    CHECK(m.trigger_identification == SubtaskScore{1, 0, 0});
    CHECK(m.trigger_classification == SubtaskScore{0, 1, 1});
    CHECK(m.argument_identification.tp == 0);

    auto loose = score_predictions({{"gandhi", {wrong_type}}}, {gold}, ArgumentGate::TriggerIdentification);
    CHECK(loose.argument_identification.tp == 1);
    CHECK(loose.argument_classification.tp == 1);
}

TEST_CASE("metrics table") {
    auto m = score_predictions({{"gandhi", testing::gandhi_doc().gold_events()}}, {testing::gandhi_doc()});
    auto table = format_metrics_table(m);
    CHECK(table.find("Trg-I") != std::string::npos);
    CHECK(table.find("Arg-C") != std::string::npos);
    CHECK(to_json(m).contains("trg_c"));
}

TEST_CASE("one span with two event types") {
    Document bare("m", "x y");
    Document gold("m", "x y", {testing::event(bare, "x", "A"), testing::event(bare, "x", "B")});
    auto both = score_predictions({{"m", {testing::event(bare, "x", "A"), testing::event(bare, "x", "B")}}}, {gold});
    CHECK(both.trigger_identification == SubtaskScore{2, 0, 0});
    CHECK(both.trigger_classification == SubtaskScore{2, 0, 0});
    auto one = score_predictions({{"m", {testing::event(bare, "x", "C")}}}, {gold});
    CHECK(one.trigger_identification == SubtaskScore{1, 0, 1});
    CHECK(one.trigger_classification == SubtaskScore{0, 1, 2});
}
