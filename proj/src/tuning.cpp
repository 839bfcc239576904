#include "aris/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <memory>
#include <set>

#include "aris/errors.hpp"
#include "aris/simulation.hpp"

namespace aris {

namespace {

std::unique_ptr<Reflector> make_stand_in(ReflectionStandIn s) {
    switch (s) {
        case ReflectionStandIn::KeepAll: return std::make_unique<KeepAllReflector>();
        case ReflectionStandIn::DropAll: return std::make_unique<DropAllReflector>();
        case ReflectionStandIn::Gold: return std::make_unique<GoldReflector>();
    }
    throw ContractError("unknown reflection stand-in");
}

double round9(double v) { return std::round(v * 1e9) / 1e9; }

struct Distributions {
    std::vector<double> tagger_correct, tagger_wrong, agent_correct, agent_wrong;

    void add(Source s, bool correct, double c) {
        if (s == Source::Tagger) {
            (correct ? tagger_correct : tagger_wrong).push_back(c);
        } else {
            (correct ? agent_correct : agent_wrong).push_back(c);
        }
    }
};

GridRange quartile_range(const std::vector<double>& correct, const std::vector<double>& wrong, double step) {
    if (correct.empty() && wrong.empty()) return {0.0, 1.0};
    double lo = 1.0;
    double hi = 0.0;
    for (const auto* v : {&correct, &wrong}) {
        if (v->empty()) continue;
        lo = std::min(lo, quantile(*v, 0.25));
        hi = std::max(hi, quantile(*v, 0.75));
    }
    return {std::clamp(lo - step, 0.0, 1.0), std::clamp(hi + step, 0.0, 1.0)};
}

std::set<TriggerId> gold_triggers(const Document& doc) {
    std::set<TriggerId> out;
    for (const auto& e : doc.gold_events()) out.insert(trigger_id(e));
    return out;
}

std::set<std::pair<TriggerId, ArgumentKey>> gold_arguments(const Document& doc) {
    std::set<std::pair<TriggerId, ArgumentKey>> out;
    for (const auto& e : doc.gold_events()) {
        for (const auto& a : e.arguments) out.emplace(trigger_id(e), argument_key(a));
    }
    return out;
}

Metrics evaluate_with_gold(const std::vector<DevExample>& dev, const std::vector<DocumentPlan>& plans,
                           const std::vector<Document>& gold, const ThresholdSet& thresholds, Reflector& reflector,
                           ArgumentGate gate) {
    PipelineConfig config{thresholds, kDefaultOverlapThreshold, {}};
    PredictionsByDoc predictions;
    for (std::size_t i = 0; i < dev.size(); ++i) {
        predictions[dev[i].doc.doc_id()] = plain_events(resolve_plan(plans[i], dev[i].doc, config, reflector).events);
    }
    return score_predictions(predictions, gold, gate);
}

/// Evaluates every valid (θ−, θ_S, θ+) triple and keeps the first strict maximum
/// in θ−, θ_S, θ+ order.
LevelSearch search_level(const std::vector<DevExample>& dev, const std::vector<DocumentPlan>& plans,
                         const GridRange& tagger_range, const GridRange& agent_range, const TuneOptions& options,
                         const std::function<ThresholdSet(const ThresholdLevel&)>& compose,
                         const std::function<double(const Metrics&)>& objective) {
    const auto taggers = grid_values(tagger_range, options.step);
    const auto agents = grid_values(agent_range, options.step);

    std::vector<ThresholdLevel> triples;
    for (double lo : agents) {
        for (double s : taggers) {
            for (double hi : agents) {
                if (lo > hi) continue;
                triples.push_back({s, hi, lo});
            }
        }
    }

    std::vector<Document> gold;
    for (const auto& ex : dev) gold.push_back(ex.doc);
    std::vector<double> scores(triples.size(), 0.0);
    const std::size_t workers = static_cast<std::size_t>(std::max(1, options.parallelism));
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&, w] {
            auto reflector = make_stand_in(options.stand_in);
            for (std::size_t i = w; i < triples.size(); i += workers) {
                scores[i] = objective(evaluate_with_gold(dev, plans, gold, compose(triples[i]), *reflector, options.gate));
            }
        }));
    }
    for (auto& j : jobs) j.get();

    LevelSearch result;
    result.tagger_range = tagger_range;
    result.agent_range = agent_range;
    result.evaluated = triples.size();
    bool have = false;
    for (std::size_t i = 0; i < triples.size(); ++i) {
        if (!have || scores[i] > result.best_f1) {
            result.best = triples[i];
            result.best_f1 = scores[i];
            have = true;
        }
    }
    return result;
}

}  // namespace

std::vector<double> grid_values(const GridRange& range, double step) {
    if (!(step > 0.0) || step > 1.0) throw ConfigError("grid step must lie in (0, 1]");
    std::vector<double> out;
    const auto first = static_cast<long long>(std::ceil(round9(range.lo / step)));
    const auto last = static_cast<long long>(std::floor(round9(range.hi / step)));
    for (long long k = first; k <= last; ++k) out.push_back(round9(static_cast<double>(k) * step));
    return out;
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ContractError("quantile of an empty sample");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (values[hi] - values[lo]) * (pos - static_cast<double>(lo));
}

Metrics evaluate_thresholds(const std::vector<DevExample>& dev, const std::vector<DocumentPlan>& plans,
                            const ThresholdSet& thresholds, ReflectionStandIn stand_in, ArgumentGate gate) {
    auto reflector = make_stand_in(stand_in);
    std::vector<Document> gold;
    for (const auto& ex : dev) gold.push_back(ex.doc);
    return evaluate_with_gold(dev, plans, gold, thresholds, *reflector, gate);
}

TuningResult tune_thresholds(const std::vector<DevExample>& dev, const TuneOptions& options) {
    if (dev.empty()) throw ConfigError("threshold tuning needs a non-empty dev set");
    if (!(options.step > 0.0) || options.step > 1.0) throw ConfigError("grid step must lie in (0, 1]");

    std::vector<DocumentPlan> plans;
    Distributions trig;
    Distributions args;
    for (const auto& ex : dev) {
        plans.push_back(build_plan(ex.doc, ex.tagger, ex.agents, options.overlap_threshold));
        const auto& plan = plans.back();
        const auto gt = gold_triggers(ex.doc);
        const auto ga = gold_arguments(ex.doc);
        for (const auto& c : plan.trigger_candidates) {
            const TriggerId id = trigger_id(c.event);
            trig.add(c.source, gt.contains(id), c.confidence);
            for (std::size_t k = 0; k < c.event.arguments.size(); ++k) {
                args.add(c.source, ga.contains({id, argument_key(c.event.arguments[k])}), c.argument_confidences[k]);
            }
        }
        for (const auto& c : plan.consensus_argument_candidates) {
            args.add(c.source, ga.contains({c.owner, argument_key(c.argument)}), c.confidence);
        }
    }

    auto ranges = [&](const Distributions& d) -> std::pair<GridRange, GridRange> {
        if (options.range == SearchRange::Full) return {{0.0, 1.0}, {0.0, 1.0}};
        return {quartile_range(d.tagger_correct, d.tagger_wrong, options.step),
                quartile_range(d.agent_correct, d.agent_wrong, options.step)};
    };

    TuningResult result;
    const auto [tr_s, tr_a] = ranges(trig);
    result.trigger = search_level(
        dev, plans, tr_s, tr_a, options,
        [&](const ThresholdLevel& l) { return ThresholdSet{l, options.initial_argument}; },
        [](const Metrics& m) { return m.trigger_classification.f1(); });

    const ThresholdLevel trigger_best = result.trigger.best;
    const auto [ar_s, ar_a] = ranges(args);
    result.argument = search_level(
        dev, plans, ar_s, ar_a, options, [&](const ThresholdLevel& l) { return ThresholdSet{trigger_best, l}; },
        [](const Metrics& m) { return m.argument_classification.f1(); });

    result.thresholds = {result.trigger.best, result.argument.best};
    return result;
}

ojson to_json(const TuningResult& result) {
    auto level = [](const LevelSearch& s, const char* metric) {
        return ojson{{"best", to_json(s.best)},
                     {metric, s.best_f1},
                     {"tagger_range", {s.tagger_range.lo, s.tagger_range.hi}},
                     {"agent_range", {s.agent_range.lo, s.agent_range.hi}},
                     {"evaluated", s.evaluated}};
    };
    return ojson{{"thresholds", to_json(result.thresholds)},
                 {"trigger_search", level(result.trigger, "trg_c_f1")},
                 {"argument_search", level(result.argument, "arg_c_f1")}};
}

}  // namespace aris
