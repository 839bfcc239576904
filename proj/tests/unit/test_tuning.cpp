#include <doctest.h>

#include "aris/errors.hpp"
#include "aris/tuning.hpp"
#include "helpers.hpp"

using namespace aris;

namespace {

/// Agent-only dev set: correct events get 7 of 10 votes, wrong ones 3.
std::vector<DevExample> separable_dev() {
    std::vector<DevExample> dev;
    const auto nisman = testing::nisman_doc();
    const auto bare = testing::nisman_doc(false);
    auto dead = testing::event(bare, "dead", "Life:Die");
    auto bombing = testing::event(bare, "bombing", "Conflict:Attack");
    auto shot = testing::event(bare, "shot", "Conflict:Attack");
    std::vector<std::vector<EventMention>> lists;
    for (int a = 1; a <= 10; ++a) {
        std::vector<EventMention> l;
        if (a <= 7) l.push_back(dead);
        if (a <= 7) l.push_back(bombing);
        if (a > 7) l.push_back(shot);
        lists.push_back(l);
    }
    dev.push_back({nisman, {}, aggregate_agent_lists(bare, lists)});
    return dev;
}

}  // namespace

TEST_CASE("grid values") {
    auto g = grid_values({0.0, 1.0}, 0.05);
    CHECK(g.size() == 21);
    CHECK(g[7] == 0.35);
    CHECK(grid_values({0.12, 0.31}, 0.1) == std::vector<double>{0.2, 0.3});
    CHECK_THROWS_AS(grid_values({0, 1}, 0.0), ConfigError);
    CHECK_THROWS_AS(grid_values({0, 1}, 1.5), ConfigError);
}

TEST_CASE("quantile interpolates") {
    CHECK(quantile({4, 1, 3, 2}, 0.25) == doctest::Approx(1.75));
    CHECK(quantile({5}, 0.75) == 5);
    CHECK_THROWS_AS(quantile({}, 0.5), ContractError);
}

TEST_CASE("empty dev set") { CHECK_THROWS_AS(tune_thresholds({}), ConfigError); }

TEST_CASE("separable votes put the drop threshold between the groups") {
    TuneOptions o;
    o.range = SearchRange::Full;
    auto r = tune_thresholds(separable_dev(), o);
    CHECK(r.thresholds.trigger.agent_drop > 0.3);
    CHECK(r.thresholds.trigger.agent_drop <= 0.7);
    CHECK(r.thresholds.trigger.agent_drop == 0.35);
    CHECK(r.trigger.best_f1 == 1.0);
    CHECK(r.trigger.evaluated == 21 * 21 * 22 / 2);
}

TEST_CASE("single correct prediction: lowest retaining triple") {
    const auto gold = testing::gandhi_doc();
    const auto bare = testing::gandhi_doc(false);
    DevExample ex{gold, {{testing::event(bare, "killing", "Life:Die"), 0.9, {}}}, {}};
    ex.agents.agent_count = 10;
    TuneOptions o;
    o.range = SearchRange::Full;
    auto r = tune_thresholds({ex}, o);
    CHECK(r.thresholds.trigger == ThresholdLevel{0.0, 0.0, 0.0});
    CHECK(r.trigger.best_f1 == 1.0);
}

TEST_CASE("quartile ranges stay in the unit interval") {
    TuneOptions o;
    auto r = tune_thresholds(separable_dev(), o);
    CHECK(r.trigger.agent_range.lo >= 0.0);
    CHECK(r.trigger.agent_range.hi <= 1.0);
    CHECK(r.trigger.agent_range.lo == doctest::Approx(0.25));
    CHECK(r.trigger.agent_range.hi == doctest::Approx(0.75));
    CHECK(to_json(r).contains("trigger_search"));
}
