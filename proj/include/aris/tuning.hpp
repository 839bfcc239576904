#pragma once

#include <vector>

#include "aris/confidence.hpp"
#include "aris/evaluation.hpp"
#include "aris/ingestion.hpp"
#include "aris/json_io.hpp"
#include "aris/moa.hpp"
#include "aris/pipeline.hpp"

namespace aris {

/// One dev document with both sources' predictions.
struct DevExample {
    Document doc;
    std::vector<TaggerPrediction> tagger;
    AgentVotes agents;
};

/// What answers reflection while thresholds are searched.
enum class ReflectionStandIn { KeepAll, DropAll, Gold };

enum class SearchRange {
    /// [min Q1, max Q3] of the correct / incorrect confidence distributions, one step wider.
    Quartile,
    Full,
};

struct TuneOptions {
    double step = 0.05;
    SearchRange range = SearchRange::Quartile;
    ReflectionStandIn stand_in = ReflectionStandIn::KeepAll;
    double overlap_threshold = kDefaultOverlapThreshold;
    ArgumentGate gate = ArgumentGate::TriggerClassification;
    /// Argument thresholds in force while trigger thresholds are searched.
    ThresholdLevel initial_argument{0.0, 1.0, 0.0};
    int parallelism = 4;
};

struct GridRange {
    double lo = 0.0;
    double hi = 1.0;
};

struct LevelSearch {
    ThresholdLevel best;
    double best_f1 = 0.0;
    GridRange tagger_range;
    GridRange agent_range;
    std::size_t evaluated = 0;
};

struct TuningResult {
    ThresholdSet thresholds;
    LevelSearch trigger;
    LevelSearch argument;
};

/// Grid points k * step inside [range.lo, range.hi], rounded to 1e-9.
std::vector<double> grid_values(const GridRange& range, double step);

/// Linear-interpolated quantile of unsorted values; q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Scores every dev document under fixed thresholds with the stand-in reflector.
Metrics evaluate_thresholds(const std::vector<DevExample>& dev, const std::vector<DocumentPlan>& plans,
                            const ThresholdSet& thresholds, ReflectionStandIn stand_in, ArgumentGate gate);

/// Trigger triple by Trg-C F1, then the argument triple by Arg-C F1 with the
/// trigger triple fixed. Ties go to the smallest θ−, then θ_S, then θ+.
/// Throws ConfigError for an empty dev set or a step outside (0, 1].
TuningResult tune_thresholds(const std::vector<DevExample>& dev, const TuneOptions& options = {});

ojson to_json(const TuningResult& result);

}  // namespace aris
