#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "aris/chat.hpp"
#include "aris/confidence.hpp"
#include "aris/evaluation.hpp"
#include "aris/ingestion.hpp"
#include "aris/json_io.hpp"
#include "aris/moa.hpp"
#include "aris/reflection.hpp"

namespace aris {

/// Noise model of one synthetic prediction source.
struct OracleProfile {
    double target_precision = 1.0;
    double target_recall = 1.0;
    /// Surfaces that may be predicted as spurious triggers or arguments when they occur in a passage.
    std::vector<std::string> hallucination_vocabulary;
    std::uint64_t seed = 0;
    /// Tagger softmax ranges for correct and spurious predictions.
    double correct_confidence_lo = 0.75;
    double correct_confidence_hi = 1.0;
    double spurious_confidence_lo = 0.2;
    double spurious_confidence_hi = 0.9;
};

/// Throws ConfigError on ratios outside [0, 1], inverted confidence ranges, or
/// an empty vocabulary with precision below 1.
void validate(const OracleProfile& profile);

struct SyntheticCorpusOptions {
    std::size_t documents = 20;
    std::size_t min_events = 1;
    std::size_t max_events = 4;
    std::uint64_t seed = 0;
};

struct SyntheticCorpus {
    std::vector<Document> documents;
    /// Filler words planted in the passages; a natural hallucination vocabulary.
    std::vector<std::string> distractors;
    std::vector<std::string> event_types;
};

/// Passages built from a small event lexicon. Every name, place and filler
/// word occurs at most once per passage.
SyntheticCorpus synthesize_corpus(const SyntheticCorpusOptions& options);

/// Tagger-style predictions: each gold event survives with probability
/// target_recall, spurious events are added to approach target_precision, and
/// confidences are drawn from the profile's ranges.
TaggerPredictions synthesize_tagger_predictions(const std::vector<Document>& corpus, const OracleProfile& profile);

/// One noisy prediction list per agent; agents share the profile but draw
/// independent noise. Element [doc][agent].
std::map<std::string, std::vector<std::vector<EventMention>>> synthesize_agent_lists(const std::vector<Document>& corpus,
                                                                                     const OracleProfile& profile,
                                                                                     int agents);

/// synthesize_agent_lists folded into per-document AgentVotes.
std::map<std::string, AgentVotes> synthesize_agent_predictions(const std::vector<Document>& corpus,
                                                               const OracleProfile& profile, int agents);

// --- gold lookups shared by the oracle backend and reflector -----------------

/// Some gold event of `doc` has this trigger text.
bool gold_confirms_trigger(const Document& doc, const std::string& phrase);
/// The gold event at `trigger` has an argument with this text and role.
bool gold_confirms_argument(const Document& doc, const TriggerId& trigger, const std::string& text,
                            const std::string& role);

/// Answers from gold: agents get the gold event list, reflection prompts are
/// parsed and judged with the gold lookups above.
class GoldOracleBackend : public ChatBackend {
  public:
    explicit GoldOracleBackend(const std::vector<Document>& corpus);
    std::string complete(const ChatRequest& request, const RequestContext& context) override;

  private:
    std::map<std::string, const Document*> docs_;
};

/// The same judgements without going through prompts.
class GoldReflector : public Reflector {
  public:
    ReflectionResult reflect(const ReflectionQuery& query, const Document& doc) override;
};

/// Agent replies in the fenced Events format, as a replay fixture.
ojson agent_replay_fixture(const std::map<std::string, std::vector<std::vector<EventMention>>>& lists);
std::string render_agent_reply(const std::vector<EventMention>& events);

// --- scenarios -----------------------------------------------------------------

struct Scenario {
    SyntheticCorpusOptions corpus;
    OracleProfile tagger;
    OracleProfile agents;
    int agent_count = 10;
    ThresholdSet thresholds;
    double overlap_threshold = 0.5;
};

/// {"corpus":{documents,min_events,max_events,seed}, "tagger":{precision,recall,seed},
///  "agents":{precision,recall,seed,count}, "thresholds":{...}, "overlap_threshold":r}
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::filesystem::path& path);
ojson to_json(const Scenario& scenario);

/// The fixed scenario: tagger P~0.9 / R~0.6, ten agents P~0.5 / R~0.9.
Scenario default_scenario();

struct ScenarioData {
    SyntheticCorpus corpus;
    TaggerPredictions tagger;
    std::map<std::string, std::vector<std::vector<EventMention>>> agent_lists;
    std::map<std::string, AgentVotes> agents;
};

ScenarioData materialize(const Scenario& scenario);

struct ScenarioReport {
    Metrics aris;
    Metrics tagger_only;
    Metrics smoa_union;
    Metrics smoa_majority;
    PredictionsByDoc predictions;
};

/// Runs the pipeline with gold-oracle reflection and scores it against the
/// standalone sources. When `replay` is given it receives a replay fixture with
/// the agent replies and every reflection reply of the run.
ScenarioReport run_scenario(const Scenario& scenario, const ScenarioData& data, ojson* replay = nullptr);

ojson to_json(const ScenarioReport& report);

}  // namespace aris
