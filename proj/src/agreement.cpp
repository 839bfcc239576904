#include "aris/agreement.hpp"

#include <algorithm>
#include <functional>

#include "aris/errors.hpp"

namespace aris {

namespace {

struct Candidate {
    std::size_t smoa;
    std::size_t tagger;
    double overlap;
    std::size_t smoa_start;
    std::size_t tagger_start;
};

MatchReport greedy_match(std::size_t smoa_count, std::size_t tagger_count,
                         const std::function<const Span&(bool, std::size_t)>& span_of,
                         const std::function<bool(std::size_t, std::size_t)>& compatible, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) throw ContractError("overlap threshold must lie in (0, 1]");
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < smoa_count; ++i) {
        for (std::size_t j = 0; j < tagger_count; ++j) {
            if (!compatible(i, j)) continue;
            const Span& s = span_of(true, i);
            const Span& t = span_of(false, j);
            const double ov = span_overlap(s, t);
            if (ov >= threshold) candidates.push_back({i, j, ov, s.start, t.start});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.overlap != b.overlap) return a.overlap > b.overlap;
        if (a.tagger_start != b.tagger_start) return a.tagger_start < b.tagger_start;
        if (a.smoa_start != b.smoa_start) return a.smoa_start < b.smoa_start;
        if (a.tagger != b.tagger) return a.tagger < b.tagger;
        return a.smoa < b.smoa;
    });

    std::vector<bool> smoa_used(smoa_count, false);
    std::vector<bool> tagger_used(tagger_count, false);
    MatchReport report;
    for (const auto& c : candidates) {
        if (smoa_used[c.smoa] || tagger_used[c.tagger]) continue;
        smoa_used[c.smoa] = tagger_used[c.tagger] = true;
        report.consensus.push_back({c.smoa, c.tagger, c.overlap});
    }
    std::sort(report.consensus.begin(), report.consensus.end(),
              [](const MatchedPair& a, const MatchedPair& b) { return a.tagger_index < b.tagger_index; });
    for (std::size_t i = 0; i < smoa_count; ++i) {
        if (!smoa_used[i]) report.smoa_only.push_back(i);
    }
    for (std::size_t j = 0; j < tagger_count; ++j) {
        if (!tagger_used[j]) report.tagger_only.push_back(j);
    }
    return report;
}

}  // namespace

MatchReport match_triggers(const std::vector<EventMention>& smoa, const std::vector<EventMention>& tagger,
                           double overlap_threshold) {
    return greedy_match(
        smoa.size(), tagger.size(),
        [&](bool is_smoa, std::size_t i) -> const Span& { return is_smoa ? smoa[i].trigger : tagger[i].trigger; },
        [&](std::size_t i, std::size_t j) { return smoa[i].event_type == tagger[j].event_type; }, overlap_threshold);
}

MatchReport match_arguments(const EventMention& smoa_event, const EventMention& tagger_event, double overlap_threshold) {
    const auto& s = smoa_event.arguments;
    const auto& t = tagger_event.arguments;
    return greedy_match(
        s.size(), t.size(), [&](bool is_smoa, std::size_t i) -> const Span& { return is_smoa ? s[i].span : t[i].span; },
        [&](std::size_t i, std::size_t j) { return s[i].role == t[j].role; }, overlap_threshold);
}

}  // namespace aris
