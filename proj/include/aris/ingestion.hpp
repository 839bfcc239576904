#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "aris/event_model.hpp"
#include "aris/json_io.hpp"

namespace aris {

/// One tagger event with its already-maximised softmax scores.
struct TaggerPrediction {
    EventMention event;
    double trigger_confidence = 0.0;
    /// Aligned with event.arguments.
    std::vector<double> argument_confidences;

    friend bool operator==(const TaggerPrediction&, const TaggerPrediction&) = default;
};

using TaggerPredictions = std::map<std::string, std::vector<TaggerPrediction>>;

/// JSON lines: {doc_id, text, events:[{trigger:{text,start,end}, type, arguments:[{text,start,end,role}]}]}
std::vector<Document> load_corpus(const std::filesystem::path& path);

/// Same event schema plus "trigger_confidence" and per-argument "confidence".
/// Every doc_id must be present in `corpus`.
TaggerPredictions load_tagger_predictions(const std::filesystem::path& path, const std::vector<Document>& corpus);

/// One tagger-prediction line in the format load_tagger_predictions reads.
nlohmann::ordered_json tagger_record_to_json(const std::string& doc_id, const std::vector<TaggerPrediction>& predictions);

/// Parses an agent reply holding ```Events = [{"trigger", "type", "arguments": [{"text", "role"}]}]```
/// and grounds the surface strings in `doc`. Events whose trigger does not occur
/// in the passage are dropped, as are arguments that do not occur.
std::vector<EventMention> parse_agent_output(std::string_view raw, const Document& doc);

/// Index of documents by id; the pointers stay valid while `corpus` lives.
std::map<std::string, const Document*> index_by_id(const std::vector<Document>& corpus);

}  // namespace aris
