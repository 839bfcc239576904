#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aris/chat.hpp"
#include "aris/confidence.hpp"
#include "aris/evaluation.hpp"
#include "aris/reflection.hpp"
#include "aris/tuning.hpp"

namespace aris {

/// Everything an extract run needs. Exactly one threshold source is set.
struct RunConfig {
    std::filesystem::path corpus;
    std::filesystem::path tagger_predictions;
    std::string backend;  // url | replay:PATH | oracle
    std::string model = "aris-agent";
    int agents = 10;
    double temperature = 0.9;
    int max_output_tokens = 2048;
    std::optional<std::string> thresholds;  // PATH or table:MODEL:DATASET:TEMP
    std::optional<std::filesystem::path> tune_corpus;
    std::optional<std::filesystem::path> tune_tagger_predictions;
    TuneOptions tune;
    double overlap_threshold = kDefaultOverlapThreshold;
    FilterPolicy filter;
    ReflectionConfig reflection;
    std::filesystem::path out = "aris-out";
    std::uint64_t seed = 0;
    ArgumentGate metrics_gate = ArgumentGate::TriggerClassification;
    int parallelism = 4;
    std::string api_key_env = "ARIS_API_KEY";
};

/// Throws ConfigError when the config is inconsistent.
void validate(const RunConfig& config);

/// Builds the chat backend named by `descriptor`; `corpora` feed the oracle backend.
std::unique_ptr<ChatBackend> make_backend(const RunConfig& config, const std::vector<Document>& corpora);

/// Resolves a "--thresholds" value: a JSON file or table:MODEL:DATASET:TEMP.
ThresholdSet resolve_thresholds(const std::string& source);

struct RunSummary {
    std::size_t documents = 0;
    std::size_t events = 0;
    std::optional<Metrics> metrics;
    ThresholdSet thresholds;
};

/// ingest, Self-MoA, agreement, filtering, reflection, integration and, when the
/// corpus has gold, evaluation. Writes predictions.jsonl, reflection_audit.jsonl,
/// metrics.json and metrics.txt (with gold) and thresholds.json (when tuned) to config.out.
RunSummary run_pipeline(const RunConfig& config);

/// Process exit code for an exception escaping a subcommand.
int exit_code_for(const std::exception& e);

/// Entry point shared by the aris tool and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace aris
