#pragma once

#include <vector>

#include "aris/agreement.hpp"
#include "aris/confidence.hpp"
#include "aris/event_model.hpp"
#include "aris/ingestion.hpp"
#include "aris/integration.hpp"
#include "aris/moa.hpp"
#include "aris/reflection.hpp"

namespace aris {

struct PipelineConfig {
    ThresholdSet thresholds;
    double overlap_threshold = kDefaultOverlapThreshold;
    FilterPolicy filter;
};

/// A trigger only one source proposed, with everything needed to score it.
struct TriggerCandidate {
    EventMention event;
    Source source = Source::SMoA;
    double confidence = 0.0;
    std::vector<double> argument_confidences;  // aligned with event.arguments
};

/// A single-source argument under some trigger.
struct ArgumentCandidate {
    TriggerId owner;
    ArgumentMention argument;
    Source source = Source::SMoA;
    double confidence = 0.0;
};

/// Threshold-independent part of the per-document work: trigger and argument
/// matching and confidence scoring. Deciding what survives is resolve_plan's job.
struct DocumentPlan {
    std::vector<EventMention> consensus_triggers;  // tagger spans, no arguments
    std::vector<ArgumentRecord> agreed_arguments;
    std::vector<ArgumentCandidate> consensus_argument_candidates;
    std::vector<TriggerCandidate> trigger_candidates;
};

/// Collapses tagger predictions that share a trigger id (argument union, max confidences).
std::vector<TaggerPrediction> merge_tagger_predictions(const std::vector<TaggerPrediction>& predictions);

DocumentPlan build_plan(const Document& doc, const std::vector<TaggerPrediction>& tagger, const AgentVotes& agents,
                        double overlap_threshold = kDefaultOverlapThreshold);

/// Trigger-level view of what each stage did, for reports and worked examples.
struct StageReport {
    std::vector<EventMention> agreed_triggers;
    std::vector<EventMention> high_confidence_triggers;
    std::vector<EventMention> removed_triggers;
    std::vector<EventMention> reflect_triggers;
    std::vector<ArgumentRecord> removed_arguments;
    std::vector<ArgumentRecord> reflect_arguments;
};

struct DocumentOutcome {
    std::vector<ProvenancedEvent> events;
    StageReport stages;
};

DocumentOutcome resolve_plan(const DocumentPlan& plan, const Document& doc, const PipelineConfig& config,
                             Reflector& reflector);

/// build_plan followed by resolve_plan.
DocumentOutcome process_document(const Document& doc, const std::vector<TaggerPrediction>& tagger,
                                 const AgentVotes& agents, const PipelineConfig& config, Reflector& reflector);

}  // namespace aris
