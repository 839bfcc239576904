#pragma once

#include <cstddef>
#include <vector>

#include "aris/event_model.hpp"

namespace aris {

inline constexpr double kDefaultOverlapThreshold = 0.5;

struct MatchedPair {
    std::size_t smoa_index = 0;
    std::size_t tagger_index = 0;
    double overlap = 0.0;
};

/// Outcome of one-to-one span matching between the two sources. Indices refer
/// to the input lists; on a match the tagger span is the retained span.
struct MatchReport {
    std::vector<MatchedPair> consensus;
    std::vector<std::size_t> smoa_only;
    std::vector<std::size_t> tagger_only;
};

/// Greedy maximum-overlap matching of triggers. Eligible pairs have equal event
/// types and span_overlap >= threshold; they are taken in order of overlap
/// (desc), tagger start, smoa start.
MatchReport match_triggers(const std::vector<EventMention>& smoa, const std::vector<EventMention>& tagger,
                           double overlap_threshold = kDefaultOverlapThreshold);

/// Argument matching under an already matched trigger pair: equal roles and
/// span_overlap >= threshold, same greedy order as triggers.
MatchReport match_arguments(const EventMention& smoa_event, const EventMention& tagger_event,
                            double overlap_threshold = kDefaultOverlapThreshold);

}  // namespace aris
