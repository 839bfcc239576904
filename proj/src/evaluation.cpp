#include "aris/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>
#include <set>
#include <tuple>

#include "aris/errors.hpp"

namespace aris {

namespace {

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

using TrigC = std::tuple<std::size_t, std::size_t, std::string>;
// Owning trigger (type left empty when gated on identification), argument span, role.
using ArgTuple = std::tuple<std::size_t, std::size_t, std::string, std::size_t, std::size_t, std::string>;

struct TupleSets {
    std::set<TrigC> triggers;
    std::set<ArgTuple> arguments;
};

TupleSets collect(const std::vector<EventMention>& events, ArgumentGate gate) {
    TupleSets s;
    for (const auto& e : events) {
        s.triggers.emplace(e.trigger.start, e.trigger.end, e.event_type);
        const std::string owner_type = gate == ArgumentGate::TriggerClassification ? e.event_type : std::string{};
        for (const auto& a : e.arguments) {
            s.arguments.emplace(e.trigger.start, e.trigger.end, owner_type, a.span.start, a.span.end, a.role);
        }
    }
    return s;
}

/// One-to-one matching where items match when their keys are equal: per key,
/// min(#predicted, #gold) true positives.
template <typename T, typename Key>
void accumulate(SubtaskScore& score, const std::set<T>& pred, const std::set<T>& gold, Key key) {
    std::map<decltype(key(std::declval<const T&>())), std::pair<std::size_t, std::size_t>> groups;
    for (const auto& p : pred) ++groups[key(p)].first;
    for (const auto& g : gold) ++groups[key(g)].second;
    std::size_t tp = 0;
    for (const auto& [_, counts] : groups) tp += std::min(counts.first, counts.second);
    score.tp += tp;
    score.fp += pred.size() - tp;
    score.fn += gold.size() - tp;
}

template <typename T>
T same(const T& t) {
    return t;
}
std::tuple<std::size_t, std::size_t> trigger_span(const TrigC& t) { return {std::get<0>(t), std::get<1>(t)}; }
auto argument_slot(const ArgTuple& a) {
    return std::make_tuple(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a), std::get<4>(a));
}

ojson score_json(const SubtaskScore& s) {
    return ojson{{"precision", s.precision()}, {"recall", s.recall()}, {"f1", s.f1()},
                 {"tp", s.tp},                 {"fp", s.fp},         {"fn", s.fn}};
}

}  // namespace

double SubtaskScore::precision() const { return ratio(tp, tp + fp); }
double SubtaskScore::recall() const { return ratio(tp, tp + fn); }
double SubtaskScore::f1() const { return f1_from_counts(tp, fp, fn); }

double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn) {
    const double p = ratio(tp, tp + fp);
    const double r = ratio(tp, tp + fn);
    return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
}

Metrics score_predictions(const PredictionsByDoc& predictions, const std::vector<Document>& gold, ArgumentGate gate) {
    std::map<std::string, const Document*> index;
    for (const auto& d : gold) index.emplace(d.doc_id(), &d);
    for (const auto& [doc_id, _] : predictions) {
        if (!index.contains(doc_id)) throw ReferenceError("predictions for unknown doc_id " + doc_id);
    }
    static const std::vector<EventMention> kNone;
    Metrics m;
    for (const auto& doc : gold) {
        auto it = predictions.find(doc.doc_id());
        const TupleSets p = collect(it == predictions.end() ? kNone : it->second, gate);
        const TupleSets g = collect(doc.gold_events(), gate);
        accumulate(m.trigger_identification, p.triggers, g.triggers, trigger_span);
        accumulate(m.trigger_classification, p.triggers, g.triggers, same<TrigC>);
        accumulate(m.argument_identification, p.arguments, g.arguments, argument_slot);
        accumulate(m.argument_classification, p.arguments, g.arguments, same<ArgTuple>);
    }
    return m;
}

ojson to_json(const Metrics& metrics) {
    return ojson{{"trg_i", score_json(metrics.trigger_identification)},
                 {"trg_c", score_json(metrics.trigger_classification)},
                 {"arg_i", score_json(metrics.argument_identification)},
                 {"arg_c", score_json(metrics.argument_classification)}};
}

std::string format_metrics_table(const Metrics& metrics) {
    const SubtaskScore* cols[] = {&metrics.trigger_identification, &metrics.trigger_classification,
                                  &metrics.argument_identification, &metrics.argument_classification};
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-4s %9s %9s %9s %9s\n", "", "Trg-I", "Trg-C", "Arg-I", "Arg-C");
    out += buf;
    auto pct_row = [&](const char* name, double (SubtaskScore::*fn)() const) {
        std::snprintf(buf, sizeof buf, "%-4s %9.2f %9.2f %9.2f %9.2f\n", name, 100.0 * (cols[0]->*fn)(),
                      100.0 * (cols[1]->*fn)(), 100.0 * (cols[2]->*fn)(), 100.0 * (cols[3]->*fn)());
        out += buf;
    };
    auto count_row = [&](const char* name, std::size_t SubtaskScore::*field) {
        std::snprintf(buf, sizeof buf, "%-4s %9zu %9zu %9zu %9zu\n", name, cols[0]->*field, cols[1]->*field,
                      cols[2]->*field, cols[3]->*field);
        out += buf;
    };
    pct_row("P", &SubtaskScore::precision);
    pct_row("R", &SubtaskScore::recall);
    pct_row("F1", &SubtaskScore::f1);
    count_row("TP", &SubtaskScore::tp);
    count_row("FP", &SubtaskScore::fp);
    count_row("FN", &SubtaskScore::fn);
    return out;
}

}  // namespace aris
