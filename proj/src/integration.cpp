#include "aris/integration.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "aris/errors.hpp"

namespace aris {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Agreed: return "agreed";
        case Provenance::HighConfTagger: return "high_conf_tagger";
        case Provenance::HighConfSMoA: return "high_conf_smoa";
        case Provenance::Reflected: return "reflected";
    }
    return "agreed";
}

ProvenanceBucket ProvenanceBucket::from_events(const std::vector<EventMention>& events) {
    ProvenanceBucket bucket;
    for (const auto& e : events) {
        bucket.triggers.push_back(EventMention{e.trigger, e.event_type, {}});
        for (const auto& a : e.arguments) bucket.arguments.push_back({trigger_id(e), a});
    }
    return bucket;
}

namespace {

std::string describe(const TriggerId& id) {
    return "[" + std::to_string(id.start) + ", " + std::to_string(id.end) + ") " + id.event_type;
}

}  // namespace

std::vector<ProvenancedEvent> finalize_events(const ProvenanceBucket& consensus, const ProvenanceBucket& retained_tagger,
                                              const ProvenanceBucket& retained_smoa, const ProvenanceBucket& reflected) {
    const std::pair<const ProvenanceBucket*, Provenance> paths[] = {{&consensus, Provenance::Agreed},
                                                                    {&retained_tagger, Provenance::HighConfTagger},
                                                                    {&retained_smoa, Provenance::HighConfSMoA},
                                                                    {&reflected, Provenance::Reflected}};
    std::map<TriggerId, ProvenancedEvent> merged;
    for (const auto& [bucket, provenance] : paths) {
        for (const auto& t : bucket->triggers) {
            ProvenancedEvent pe{EventMention{t.trigger, t.event_type, {}}, provenance, {}};
            if (!merged.emplace(trigger_id(t), std::move(pe)).second) {
                throw ConsistencyError("trigger " + describe(trigger_id(t)) + " accepted by two paths");
            }
        }
    }
    std::set<std::pair<TriggerId, ArgumentKey>> seen;
    for (const auto& [bucket, provenance] : paths) {
        for (const auto& record : bucket->arguments) {
            auto it = merged.find(record.trigger);
            if (it == merged.end()) {
                throw ConsistencyError("argument '" + record.argument.span.text + "' refers to unaccepted trigger " +
                                       describe(record.trigger));
            }
            if (!seen.emplace(record.trigger, argument_key(record.argument)).second) {
                throw ConsistencyError("argument '" + record.argument.span.text + "' under " + describe(record.trigger) +
                                       " accepted twice");
            }
            it->second.arguments.push_back({record.argument, provenance, record.trigger});
        }
    }
    std::vector<ProvenancedEvent> out;
    out.reserve(merged.size());
    for (auto& [id, pe] : merged) {
        std::sort(pe.arguments.begin(), pe.arguments.end(), [](const ProvenancedArgument& a, const ProvenancedArgument& b) {
            return argument_key(a.argument) < argument_key(b.argument);
        });
        for (const auto& a : pe.arguments) pe.event.arguments.push_back(a.argument);
        out.push_back(std::move(pe));
    }
    std::sort(out.begin(), out.end(),
              [](const ProvenancedEvent& a, const ProvenancedEvent& b) { return position_less(a.event, b.event); });
    return out;
}

std::vector<EventMention> plain_events(const std::vector<ProvenancedEvent>& events) {
    std::vector<EventMention> out;
    out.reserve(events.size());
    for (const auto& e : events) out.push_back(e.event);
    return out;
}

ojson to_json(const ProvenancedEvent& event) {
    ojson args = ojson::array();
    for (const auto& a : event.arguments) {
        args.push_back(ojson{{"text", a.argument.span.text},
                             {"start", a.argument.span.start},
                             {"end", a.argument.span.end},
                             {"role", a.argument.role},
                             {"provenance", std::string(to_string(a.provenance))},
                             {"trigger_id", ojson{{"start", a.trigger.start}, {"end", a.trigger.end}, {"type", a.trigger.event_type}}}});
    }
    return ojson{{"trigger", span_to_json(event.event.trigger)},
                 {"type", event.event.event_type},
                 {"provenance", std::string(to_string(event.trigger_provenance))},
                 {"arguments", std::move(args)}};
}

}  // namespace aris
