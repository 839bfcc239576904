#include "aris/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace aris {

namespace {

double vote_share(const std::set<int>& votes, int n) {
    return n > 0 ? static_cast<double>(votes.size()) / static_cast<double>(n) : 0.0;
}

EventMention bare_trigger(const EventMention& e) { return EventMention{e.trigger, e.event_type, {}}; }

/// Reconciles the candidates gathered under one consensus trigger: anything
/// equal to an agreed argument is dropped, and an argument both sources
/// proposed with the same span and role becomes agreed.
void reconcile_owner(const TriggerId& owner, std::vector<ArgumentRecord>& agreed,
                     std::vector<ArgumentCandidate>& candidates) {
    std::set<ArgumentKey> agreed_keys;
    for (const auto& r : agreed) {
        if (r.trigger == owner) agreed_keys.insert(argument_key(r.argument));
    }
    std::map<ArgumentKey, std::set<Source>> sources;
    for (const auto& c : candidates) {
        if (c.owner == owner) sources[argument_key(c.argument)].insert(c.source);
    }
    std::vector<ArgumentCandidate> kept;
    std::set<ArgumentKey> emitted;
    for (auto& c : candidates) {
        if (c.owner != owner) {
            kept.push_back(std::move(c));
            continue;
        }
        const auto key = argument_key(c.argument);
        if (agreed_keys.contains(key)) continue;
        if (sources[key].size() == 2) {
            if (c.source == Source::Tagger) {
                agreed.push_back({owner, c.argument});
                agreed_keys.insert(key);
            }
            continue;
        }
        if (emitted.insert(key).second) kept.push_back(std::move(c));
    }
    candidates = std::move(kept);
}

}  // namespace

std::vector<TaggerPrediction> merge_tagger_predictions(const std::vector<TaggerPrediction>& predictions) {
    std::map<TriggerId, TaggerPrediction> merged;
    for (const auto& p : predictions) {
        auto [it, inserted] = merged.try_emplace(trigger_id(p.event), p);
        if (inserted) continue;
        auto& into = it->second;
        into.trigger_confidence = std::max(into.trigger_confidence, p.trigger_confidence);
        std::map<ArgumentKey, std::pair<ArgumentMention, double>> args;
        for (std::size_t i = 0; i < into.event.arguments.size(); ++i) {
            args[argument_key(into.event.arguments[i])] = {into.event.arguments[i], into.argument_confidences[i]};
        }
        for (std::size_t i = 0; i < p.event.arguments.size(); ++i) {
            auto& slot = args[argument_key(p.event.arguments[i])];
            slot.first = p.event.arguments[i];
            slot.second = std::max(slot.second, p.argument_confidences[i]);
        }
        into.event.arguments.clear();
        into.argument_confidences.clear();
        for (auto& [_, ac] : args) {
            into.event.arguments.push_back(ac.first);
            into.argument_confidences.push_back(ac.second);
        }
    }
    std::vector<TaggerPrediction> out;
    for (auto& [_, p] : merged) out.push_back(std::move(p));
    std::sort(out.begin(), out.end(),
              [](const TaggerPrediction& a, const TaggerPrediction& b) { return position_less(a.event, b.event); });
    return out;
}

DocumentPlan build_plan(const Document& doc, const std::vector<TaggerPrediction>& tagger_predictions,
                        const AgentVotes& agents, double overlap_threshold) {
    (void)doc;
    const auto agent_triggers = aggregate_by_trigger(agents);
    const auto tagger = merge_tagger_predictions(tagger_predictions);
    const int n = agents.agent_count;

    std::vector<EventMention> smoa_events;
    for (const auto& t : agent_triggers) smoa_events.push_back(t.event);
    std::vector<EventMention> tagger_events;
    for (const auto& p : tagger) tagger_events.push_back(p.event);

    const MatchReport report = match_triggers(smoa_events, tagger_events, overlap_threshold);

    DocumentPlan plan;
    std::set<TriggerId> owners;
    for (const auto& pair : report.consensus) {
        const auto& s = agent_triggers[pair.smoa_index];
        const auto& t = tagger[pair.tagger_index];
        const TriggerId owner = trigger_id(t.event);
        owners.insert(owner);
        plan.consensus_triggers.push_back(bare_trigger(t.event));

        const MatchReport args = match_arguments(s.event, t.event, overlap_threshold);
        for (const auto& ap : args.consensus) plan.agreed_arguments.push_back({owner, t.event.arguments[ap.tagger_index]});
        for (std::size_t i : args.smoa_only) {
            plan.consensus_argument_candidates.push_back(
                {owner, s.event.arguments[i], Source::SMoA, vote_share(s.argument_votes[i], n)});
        }
        for (std::size_t j : args.tagger_only) {
            plan.consensus_argument_candidates.push_back(
                {owner, t.event.arguments[j], Source::Tagger, t.argument_confidences[j]});
        }
    }

    for (std::size_t i : report.smoa_only) {
        const auto& s = agent_triggers[i];
        const TriggerId id = trigger_id(s.event);
        if (owners.contains(id)) {
            // Same span and type as a tagger-retained consensus trigger: its
            // arguments join that trigger instead of forming a duplicate event.
            for (std::size_t k = 0; k < s.event.arguments.size(); ++k) {
                plan.consensus_argument_candidates.push_back(
                    {id, s.event.arguments[k], Source::SMoA, vote_share(s.argument_votes[k], n)});
            }
            continue;
        }
        TriggerCandidate c{s.event, Source::SMoA, vote_share(s.trigger_votes, n), {}};
        for (const auto& v : s.argument_votes) c.argument_confidences.push_back(vote_share(v, n));
        plan.trigger_candidates.push_back(std::move(c));
    }
    for (std::size_t j : report.tagger_only) {
        const auto& t = tagger[j];
        plan.trigger_candidates.push_back({t.event, Source::Tagger, t.trigger_confidence, t.argument_confidences});
    }
    std::stable_sort(plan.trigger_candidates.begin(), plan.trigger_candidates.end(),
                     [](const TriggerCandidate& a, const TriggerCandidate& b) { return position_less(a.event, b.event); });

    for (const auto& owner : owners) reconcile_owner(owner, plan.agreed_arguments, plan.consensus_argument_candidates);
    return plan;
}

DocumentOutcome resolve_plan(const DocumentPlan& plan, const Document& doc, const PipelineConfig& config,
                             Reflector& reflector) {
    DocumentOutcome outcome;
    StageReport& stages = outcome.stages;

    ProvenanceBucket consensus;
    ProvenanceBucket retained_tagger;
    ProvenanceBucket retained_smoa;
    ProvenanceBucket reflected;

    consensus.triggers = plan.consensus_triggers;
    consensus.arguments = plan.agreed_arguments;
    stages.agreed_triggers = plan.consensus_triggers;

    // Trigger-level disagreements.
    std::vector<ScoredDisagreement> trigger_scores;
    for (const auto& c : plan.trigger_candidates) trigger_scores.push_back({c.source, c.confidence});
    const Partition triggers =
        filter_disagreements(std::span<const ScoredDisagreement>(trigger_scores), config.thresholds.trigger, config.filter);

    std::set<TriggerId> pending;  // waiting on trigger reflection
    std::vector<ArgumentCandidate> arg_candidates = plan.consensus_argument_candidates;
    auto adopt_arguments = [&](const TriggerCandidate& c) {
        for (std::size_t k = 0; k < c.event.arguments.size(); ++k) {
            arg_candidates.push_back({trigger_id(c.event), c.event.arguments[k], c.source, c.argument_confidences[k]});
        }
    };
    for (std::size_t i : triggers.retained_tagger) {
        retained_tagger.triggers.push_back(bare_trigger(plan.trigger_candidates[i].event));
        stages.high_confidence_triggers.push_back(bare_trigger(plan.trigger_candidates[i].event));
        adopt_arguments(plan.trigger_candidates[i]);
    }
    for (std::size_t i : triggers.retained_smoa) {
        retained_smoa.triggers.push_back(bare_trigger(plan.trigger_candidates[i].event));
        stages.high_confidence_triggers.push_back(bare_trigger(plan.trigger_candidates[i].event));
        adopt_arguments(plan.trigger_candidates[i]);
    }
    for (std::size_t i : triggers.removed) stages.removed_triggers.push_back(bare_trigger(plan.trigger_candidates[i].event));
    std::map<TriggerId, EventMention> reflect_triggers;
    for (std::size_t i : triggers.reflect) {
        const auto& c = plan.trigger_candidates[i];
        pending.insert(trigger_id(c.event));
        reflect_triggers.emplace(trigger_id(c.event), bare_trigger(c.event));
        stages.reflect_triggers.push_back(bare_trigger(c.event));
        adopt_arguments(c);
    }
    auto by_position = [](const EventMention& a, const EventMention& b) { return position_less(a, b); };
    std::sort(stages.high_confidence_triggers.begin(), stages.high_confidence_triggers.end(), by_position);

    // Argument-level disagreements.
    std::vector<ScoredDisagreement> arg_scores;
    for (const auto& c : arg_candidates) arg_scores.push_back({c.source, c.confidence});
    const Partition args =
        filter_disagreements(std::span<const ScoredDisagreement>(arg_scores), config.thresholds.argument, config.filter);

    std::map<TriggerId, std::vector<std::pair<ArgumentRecord, Source>>> held;
    for (const auto* list : {&args.retained_tagger, &args.retained_smoa}) {
        for (std::size_t i : *list) {
            const auto& c = arg_candidates[i];
            ArgumentRecord record{c.owner, c.argument};
            if (pending.contains(c.owner)) {
                held[c.owner].emplace_back(record, c.source);
            } else {
                (c.source == Source::Tagger ? retained_tagger : retained_smoa).arguments.push_back(record);
            }
        }
    }
    for (std::size_t i : args.removed) stages.removed_arguments.push_back({arg_candidates[i].owner, arg_candidates[i].argument});
    std::map<TriggerId, EventMention> argument_sets;
    for (std::size_t i : args.reflect) {
        const auto& c = arg_candidates[i];
        stages.reflect_arguments.push_back({c.owner, c.argument});
        if (pending.contains(c.owner)) {
            reflect_triggers.at(c.owner).arguments.push_back(c.argument);
        } else {
            auto [it, _] = argument_sets.try_emplace(
                c.owner, EventMention{Span{}, c.owner.event_type, {}});
            it->second.arguments.push_back(c.argument);
        }
    }

    ReflectionQuery query;
    for (auto& [id, event] : reflect_triggers) {
        normalize(event);
        query.triggers.push_back(event);
    }
    for (auto& [id, event] : argument_sets) {
        // Recover the owning trigger span from the accepted trigger lists.
        for (const auto* bucket : {&consensus, &retained_tagger, &retained_smoa}) {
            for (const auto& t : bucket->triggers) {
                if (trigger_id(t) == id) event.trigger = t.trigger;
            }
        }
        normalize(event);
        query.argument_sets.push_back(event);
    }
    std::sort(query.triggers.begin(), query.triggers.end(), by_position);
    std::sort(query.argument_sets.begin(), query.argument_sets.end(), by_position);

    if (!query.empty()) {
        const ReflectionResult result = reflector.reflect(query, doc);
        auto asked = [](const EventMention& queried, const ArgumentMention& a) {
            return std::find(queried.arguments.begin(), queried.arguments.end(), a) != queried.arguments.end();
        };
        for (const auto& event : result.triggers) {
            const TriggerId id = trigger_id(event);
            if (!pending.contains(id)) continue;
            reflected.triggers.push_back(bare_trigger(event));
            for (const auto& a : event.arguments) {
                if (asked(reflect_triggers.at(id), a)) reflected.arguments.push_back({id, a});
            }
            for (const auto& [record, source] : held[id]) {
                (source == Source::Tagger ? retained_tagger : retained_smoa).arguments.push_back(record);
            }
        }
        for (const auto& event : result.argument_sets) {
            auto it = argument_sets.find(trigger_id(event));
            if (it == argument_sets.end()) continue;
            for (const auto& a : event.arguments) {
                if (asked(it->second, a)) reflected.arguments.push_back({it->first, a});
            }
        }
    }

    outcome.events = finalize_events(consensus, retained_tagger, retained_smoa, reflected);
    return outcome;
}

DocumentOutcome process_document(const Document& doc, const std::vector<TaggerPrediction>& tagger,
                                 const AgentVotes& agents, const PipelineConfig& config, Reflector& reflector) {
    return resolve_plan(build_plan(doc, tagger, agents, config.overlap_threshold), doc, config, reflector);
}

}  // namespace aris
