#include "aris/ingestion.hpp"

#include <algorithm>
#include <set>

#include "aris/errors.hpp"
#include "aris/json_io.hpp"
#include "aris/structured_output.hpp"

namespace aris {

namespace {

void require_contained(const Document& doc, const Span& span) {
    if (!doc.contains(span)) {
        throw ValidationError("doc " + doc.doc_id() + ": span \"" + span.text + "\" [" + std::to_string(span.start) +
                              ", " + std::to_string(span.end) + ") does not match the passage text");
    }
}

void require_contained(const Document& doc, const EventMention& event) {
    require_contained(doc, event.trigger);
    for (const auto& a : event.arguments) require_contained(doc, a.span);
}

double read_confidence(const nlohmann::json& j, const char* field, const std::string& doc_id) {
    if (!j.contains(field)) throw ParseError(doc_id + ": missing " + std::string(field), j.dump());
    const double c = j.at(field).get<double>();
    if (!(c >= 0.0 && c <= 1.0)) {
        throw ValidationError(doc_id + ": " + std::string(field) + " " + std::to_string(c) + " outside [0, 1]");
    }
    return c;
}

/// Resolves repeated surface strings left to right: the k-th mention of a string
/// maps to the k-th occurrence; once occurrences run out it wraps to the first.
class Grounder {
  public:
    explicit Grounder(const Document& doc) : doc_(doc) {}

    std::optional<Span> ground(const std::string& surface) {
        auto& cursor = cursors_[surface];
        auto span = locate_span(doc_, surface, cursor);
        if (!span && cursor != 0) span = locate_span(doc_, surface, 0);
        if (span) cursor = span->end;
        return span;
    }

  private:
    const Document& doc_;
    std::map<std::string, std::size_t> cursors_;
};

}  // namespace

std::map<std::string, const Document*> index_by_id(const std::vector<Document>& corpus) {
    std::map<std::string, const Document*> index;
    for (const auto& doc : corpus) index.emplace(doc.doc_id(), &doc);
    return index;
}

std::vector<Document> load_corpus(const std::filesystem::path& path) {
    std::vector<Document> corpus;
    std::set<std::string> seen;
    for (const auto& record : read_json_lines(path)) {
        std::string doc_id;
        std::string text;
        std::vector<EventMention> gold;
        try {
            doc_id = record.at("doc_id").get<std::string>();
            text = record.at("text").get<std::string>();
            if (record.contains("events")) {
                for (const auto& e : record.at("events")) gold.push_back(event_from_json(e));
            }
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path.string() + ": bad corpus record: " + e.what(), record.dump());
        }
        if (!seen.insert(doc_id).second) throw ValidationError("duplicate doc_id " + doc_id);
        Document doc(std::move(doc_id), std::move(text), std::move(gold));
        for (const auto& e : doc.gold_events()) require_contained(doc, e);
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

nlohmann::ordered_json tagger_record_to_json(const std::string& doc_id, const std::vector<TaggerPrediction>& predictions) {
    ojson events = ojson::array();
    for (const auto& p : predictions) {
        ojson e = event_to_json(p.event);
        e["trigger_confidence"] = p.trigger_confidence;
        for (std::size_t i = 0; i < p.argument_confidences.size(); ++i) {
            e["arguments"][i]["confidence"] = p.argument_confidences[i];
        }
        events.push_back(std::move(e));
    }
    return ojson{{"doc_id", doc_id}, {"events", std::move(events)}};
}

TaggerPredictions load_tagger_predictions(const std::filesystem::path& path, const std::vector<Document>& corpus) {
    const auto index = index_by_id(corpus);
    TaggerPredictions out;
    for (const auto& record : read_json_lines(path)) {
        std::string doc_id;
        try {
            doc_id = record.at("doc_id").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path.string() + ": tagger record without doc_id", record.dump());
        }
        const auto it = index.find(doc_id);
        if (it == index.end()) throw ReferenceError("tagger predictions reference unknown doc_id " + doc_id);
        const Document& doc = *it->second;
        auto& preds = out[doc_id];
        for (const auto& ej : record.value("events", nlohmann::json::array())) {
            TaggerPrediction p;
            p.trigger_confidence = read_confidence(ej, "trigger_confidence", doc_id);
            // Keep confidences attached to their argument through normalisation.
            std::vector<std::pair<ArgumentKey, double>> arg_conf;
            for (const auto& aj : ej.value("arguments", nlohmann::json::array())) {
                const Span s = span_from_json(aj);
                arg_conf.emplace_back(ArgumentKey{s.start, s.end, aj.value("role", "")},
                                      read_confidence(aj, "confidence", doc_id));
            }
            p.event = event_from_json(ej);
            require_contained(doc, p.event);
            for (const auto& a : p.event.arguments) {
                const auto key = argument_key(a);
                double best = 0.0;
                for (const auto& [k, c] : arg_conf) {
                    if (k == key) best = std::max(best, c);
                }
                p.argument_confidences.push_back(best);
            }
            preds.push_back(std::move(p));
        }
        std::stable_sort(preds.begin(), preds.end(), [](const TaggerPrediction& a, const TaggerPrediction& b) {
            return position_less(a.event, b.event);
        });
    }
    return out;
}

std::vector<EventMention> parse_agent_output(std::string_view raw, const Document& doc) {
    const FencedAnswer answer = parse_fenced_answer(raw);
    if (!answer.value.is_array()) throw ParseError("agent answer is not a list of events", std::string(raw));
    std::vector<EventMention> events;
    Grounder triggers(doc);
    try {
        for (const auto& ej : answer.value) {
            const auto surface = ej.at("trigger").get<std::string>();
            const auto type = ej.at("type").get<std::string>();
            std::vector<std::pair<std::string, std::string>> arg_strings;
            if (ej.contains("arguments")) {
                for (const auto& aj : ej.at("arguments")) {
                    arg_strings.emplace_back(aj.at("text").get<std::string>(), aj.at("role").get<std::string>());
                }
            }
            auto trigger = triggers.ground(surface);
            if (!trigger || type.empty()) continue;
            EventMention event{*trigger, type, {}};
            Grounder args(doc);
            for (const auto& [text, role] : arg_strings) {
                if (role.empty()) continue;
                if (auto span = args.ground(text)) event.arguments.push_back({*span, role});
            }
            normalize(event);
            events.push_back(std::move(event));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed event entry: ") + e.what(), std::string(raw));
    }
    return events;
}

}  // namespace aris
