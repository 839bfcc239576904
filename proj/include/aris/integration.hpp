#pragma once

#include <string_view>
#include <vector>

#include "aris/event_model.hpp"
#include "aris/json_io.hpp"

namespace aris {

enum class Provenance { Agreed, HighConfTagger, HighConfSMoA, Reflected };

std::string_view to_string(Provenance p);

struct ProvenancedArgument {
    ArgumentMention argument;
    Provenance provenance = Provenance::Agreed;
    TriggerId trigger;  // the event this argument was attached to
};

struct ProvenancedEvent {
    EventMention event;
    Provenance trigger_provenance = Provenance::Agreed;
    std::vector<ProvenancedArgument> arguments;  // aligned with event.arguments
};

/// An argument that travels separately from its trigger until the final merge.
struct ArgumentRecord {
    TriggerId trigger;
    ArgumentMention argument;
};

/// One provenance path: the triggers it accepted and the arguments it accepted.
/// A path may contribute arguments to a trigger accepted by another path.
struct ProvenanceBucket {
    std::vector<EventMention> triggers;  // arguments of these events are ignored
    std::vector<ArgumentRecord> arguments;

    /// Splits whole events into a trigger list and argument records.
    static ProvenanceBucket from_events(const std::vector<EventMention>& events);
};

/// Merges the four paths into the final event set sorted by trigger position.
/// Throws ConsistencyError when a trigger is accepted by two paths, an argument
/// appears twice, or an argument's trigger was never accepted.
std::vector<ProvenancedEvent> finalize_events(const ProvenanceBucket& consensus, const ProvenanceBucket& retained_tagger,
                                              const ProvenanceBucket& retained_smoa, const ProvenanceBucket& reflected);

std::vector<EventMention> plain_events(const std::vector<ProvenancedEvent>& events);

/// Corpus event schema plus "provenance" on the event and on every argument.
ojson to_json(const ProvenancedEvent& event);

}  // namespace aris
