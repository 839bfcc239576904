#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "aris/event_model.hpp"
#include "aris/json_io.hpp"

namespace aris {

struct SubtaskScore {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;

    [[nodiscard]] double precision() const;
    [[nodiscard]] double recall() const;
    [[nodiscard]] double f1() const;

    friend bool operator==(const SubtaskScore&, const SubtaskScore&) = default;
};

/// 2PR / (P + R) from raw counts, 0 when P + R == 0.
double f1_from_counts(std::size_t tp, std::size_t fp, std::size_t fn);

struct Metrics {
    SubtaskScore trigger_identification;
    SubtaskScore trigger_classification;
    SubtaskScore argument_identification;
    SubtaskScore argument_classification;

    friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Which trigger match an argument needs before it can count as correct.
enum class ArgumentGate { TriggerClassification, TriggerIdentification };

using PredictionsByDoc = std::map<std::string, std::vector<EventMention>>;

/// Exact-match micro scores. Duplicate predictions count once; identification
/// pairs items one-to-one by span, so a span carrying two event types needs two
/// predictions on it for two Trg-I hits. Documents of
/// `gold` without predictions contribute false negatives only.
/// Throws ReferenceError when a prediction names a document not in `gold`.
Metrics score_predictions(const PredictionsByDoc& predictions, const std::vector<Document>& gold,
                          ArgumentGate gate = ArgumentGate::TriggerClassification);

ojson to_json(const Metrics& metrics);

/// Plain-text table: one column per subtask (Trg-I, Trg-C, Arg-I, Arg-C), rows P/R/F1 (in %) and TP/FP/FN.
std::string format_metrics_table(const Metrics& metrics);

}  // namespace aris
