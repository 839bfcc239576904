#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "aris/event_model.hpp"
#include "aris/json_io.hpp"
#include "aris/moa.hpp"

namespace aris {

/// Cutoffs for one level (triggers or arguments). Values above 1 are legal and
/// mean "never keep directly".
struct ThresholdLevel {
    double tagger_keep = 0.0;  // θ_S
    double agent_keep = 1.0;   // θ+_SMoA
    double agent_drop = 0.0;   // θ−_SMoA

    friend bool operator==(const ThresholdLevel&, const ThresholdLevel&) = default;
};

struct ThresholdSet {
    ThresholdLevel trigger;
    ThresholdLevel argument;

    friend bool operator==(const ThresholdSet&, const ThresholdSet&) = default;
};

/// Throws ConfigError unless 0 <= agent_drop <= agent_keep and tagger_keep >= 0.
void validate(const ThresholdSet& thresholds);

ojson to_json(const ThresholdLevel& level);
ojson to_json(const ThresholdSet& thresholds);
ThresholdSet threshold_set_from_json(const nlohmann::json& j);
ThresholdSet load_threshold_set(const std::filesystem::path& path);

/// One row of the published per-(model, dataset, temperature) threshold tables.
struct ThresholdTableRow {
    std::string model;
    std::string dataset;
    double temperature = 0.0;
    ThresholdSet thresholds;
};

std::vector<ThresholdTableRow> load_threshold_table(const std::filesystem::path& path);
/// Looks up "MODEL:DATASET:TEMP" (e.g. "Llama-3.1:M2E2:0.9"); throws LookupError.
ThresholdSet find_threshold_row(const std::vector<ThresholdTableRow>& table, const std::string& selector);

enum class Source { Tagger, SMoA };

/// |A_e| / n for the whole event e. Throws LookupError when e has no votes.
double score_smoa_confidence(const EventMention& event, const VoteLedger& ledger, int agent_count);

/// Three-way split (the default) or the single combined-score rule:
/// (conf_tagger + conf_smoa) / (#sources) >= tau keeps, anything else is reflected.
enum class FilterMode { ThreeWay, Combined };

struct FilterPolicy {
    FilterMode mode = FilterMode::ThreeWay;
    double combined_tau = 0.5;
};

/// A single-source prediction that the other source did not confirm.
struct ScoredDisagreement {
    Source source = Source::SMoA;
    double confidence = 0.0;
};

/// Index sets into the scored disagreement list; disjoint and jointly total.
struct Partition {
    std::vector<std::size_t> retained_tagger;
    std::vector<std::size_t> retained_smoa;
    std::vector<std::size_t> removed;
    std::vector<std::size_t> reflect;
};

/// Tagger side: >= θ_S kept, otherwise removed. Agent side: >= θ+ kept,
/// < θ− removed, the band in between reflected.
Partition filter_disagreements(std::span<const ScoredDisagreement> items, const ThresholdLevel& level,
                               const FilterPolicy& policy = {});

struct DisagreementEvent {
    EventMention event;
    Source source = Source::SMoA;
    double tagger_confidence = 0.0;  // used for Source::Tagger
};

/// Scores agent-side events from the ledger, tagger-side from their own confidence.
Partition filter_disagreements(const std::vector<DisagreementEvent>& items, const ThresholdLevel& level,
                               const VoteLedger& ledger, int agent_count, const FilterPolicy& policy = {});

}  // namespace aris
