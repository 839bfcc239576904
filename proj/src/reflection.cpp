#include "aris/reflection.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "aris/errors.hpp"
#include "aris/structured_output.hpp"

namespace aris {

namespace {

std::string json_quote(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

constexpr std::string_view kTriggerLabel = "Trigger";
constexpr std::string_view kNonTriggerLabel = "Non-Trigger";

ojson candidate_object(const ArgumentMention& a) { return ojson{{"text", a.span.text}, {"role", a.role}}; }

std::vector<Span> trigger_spans(const std::vector<EventMention>& events) {
    std::vector<Span> spans;
    for (const auto& e : events) spans.push_back(e.trigger);
    return spans;
}

ChatRequest make_request(const std::string& prompt, const ReflectionConfig& config) {
    ChatRequest request;
    request.messages.push_back({ChatRole::User, prompt});
    request.temperature = config.temperature;
    request.max_output_tokens = config.max_output_tokens;
    request.length_penalty = config.length_penalty;
    return request;
}

/// Asks until `parse` succeeds or retries run out. Returns nullopt on fallback.
template <typename Parse>
auto ask(ChatBackend& backend, const std::string& prompt, const RequestContext& context, const ReflectionConfig& config,
         const RetryPolicy& transport, AuditEntry base, std::vector<AuditEntry>* audit, Parse parse)
    -> std::optional<decltype(parse(std::string_view{}))> {
    const ChatRequest request = make_request(prompt, config);
    const std::string who = "reflection for doc " + context.doc_id;
    const int attempts = 1 + std::max(0, config.retry_limit);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        const std::string reply = complete_with_retries(backend, request, context, transport, who);
        AuditEntry entry = base;
        entry.attempt = attempt;
        entry.prompt = prompt;
        entry.reply = reply;
        try {
            auto parsed = parse(reply);
            entry.outcome = "parsed";
            if (audit) audit->push_back(std::move(entry));
            return parsed;
        } catch (const ParseError& e) {
            entry.outcome = "parse_error";
            entry.detail = e.what();
            if (audit) audit->push_back(std::move(entry));
        }
    }
    if (audit) {
        AuditEntry entry = base;
        entry.attempt = attempts;
        entry.outcome = "fallback";
        entry.detail = "kept every queried candidate after " + std::to_string(attempts) + " unparseable replies";
        audit->push_back(std::move(entry));
    }
    return std::nullopt;
}

}  // namespace

std::vector<std::string> candidate_phrases(const std::vector<Span>& candidates) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const auto& c : candidates) {
        if (seen.insert(c.text).second) out.push_back(c.text);
    }
    return out;
}

std::string build_trigger_prompt(const Document& doc, const std::vector<Span>& candidates) {
    if (candidates.empty()) throw ContractError("trigger reflection needs at least one candidate");
    const auto phrases = candidate_phrases(candidates);
    std::string bullets;
    for (const auto& p : phrases) bullets += "- " + json_quote(p) + "\n";
    ojson list = ojson::array();
    for (const auto& p : phrases) list.push_back(p);

    std::string prompt;
    prompt += "You previously identified the following candidate triggers:\n\n";
    prompt += bullets;
    prompt += "\nYour task is to decide for each whether it truly signals an event trigger.\n\n";
    prompt += "Generation Rules:\n";
    prompt += "1. Classify each phrase as either 'Trigger' or 'Non-Trigger'.\n";
    prompt += "2. Output strictly in the required format-no extra text.\n\n";
    prompt += "Output Format (strict):\n";
    prompt += "- Wrap the answer in triple backticks (```)\n";
    prompt += "- Write: ClassificationMap = {\"phrase1\": \"Trigger\", \"phrase2\": \"Non-Trigger\", ...}\n\n";
    prompt += "Example:\n";
    prompt += "```ClassificationMap = {\"therapy\": \"Trigger\", \"increase dose\": \"Non-Trigger\"}```\n\n";
    prompt += "Passage:\n" + doc.text() + "\n\n";
    prompt += "Candidates:\n" + inline_json(list) + "\n\n";
    prompt += "Q: For each candidate above, decide whether it is a 'Trigger' or 'Non-Trigger'.";
    return prompt;
}

std::string build_argument_prompt(const Document& doc, const EventMention& trigger,
                                  const std::vector<ArgumentMention>& candidates) {
    if (candidates.empty()) throw ContractError("argument reflection needs at least one candidate");
    for (const auto& c : candidates) {
        if (c.role.empty()) throw ContractError("argument candidate '" + c.span.text + "' has an empty role");
    }
    std::string listing;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        listing += std::to_string(i + 1) + ". " + inline_json(candidate_object(candidates[i])) + "\n";
    }

    std::string prompt;
    prompt += "You are an argument validator.\n";
    prompt += "Given a single trigger and its candidate arguments, decide which arguments are valid.\n\n";
    prompt += "Generation Rules:\n";
    prompt += "1. An argument is valid only if the passage supports its role for this trigger.\n";
    prompt += "2. Preserve the input order-do not add, remove, or reorder.\n";
    prompt += "3. Output exactly three fields per argument: `text`, `role`, `is_correct`.\n";
    prompt += "4. Wrap the entire response in triple backticks (```).\n\n";
    prompt += "Passage:\n\"" + doc.text() + "\"\n\n";
    prompt += "Trigger:\n\"" + trigger.trigger.text + "\" (type: \"" + trigger.event_type + "\")\n\n";
    prompt += "Candidate Arguments to verify:\n" + listing + "\n";
    prompt += "Q: For each candidate above, set `is_correct` to `true` or `false`.";
    return prompt;
}

TriggerVerdict parse_trigger_response(std::string_view raw, const std::vector<Span>& candidates) {
    const FencedAnswer answer = parse_fenced_answer(raw);
    if (!answer.value.is_object()) throw ParseError("ClassificationMap is not an object", std::string(raw));
    std::map<std::string, TriggerLabel> replied;
    for (const auto& [phrase, label] : answer.value.items()) {
        if (!label.is_string()) throw ParseError("label for '" + phrase + "' is not a string", std::string(raw));
        const auto s = label.get<std::string>();
        if (s == kTriggerLabel) {
            replied[phrase] = TriggerLabel::Trigger;
        } else if (s == kNonTriggerLabel) {
            replied[phrase] = TriggerLabel::NonTrigger;
        } else {
            throw ParseError("unknown label '" + s + "' for '" + phrase + "'", std::string(raw));
        }
    }
    TriggerVerdict verdict;
    for (const auto& phrase : candidate_phrases(candidates)) {
        auto it = replied.find(phrase);
        if (it == replied.end()) {
            verdict.labels[phrase] = TriggerLabel::Trigger;
            verdict.defaulted.push_back(phrase);
        } else {
            verdict.labels[phrase] = it->second;
        }
    }
    return verdict;
}

ArgumentVerdict parse_argument_response(std::string_view raw, const std::vector<ArgumentMention>& candidates) {
    const FencedAnswer answer = parse_fenced_answer(raw);
    if (!answer.value.is_array()) throw ParseError("argument verdict is not a list", std::string(raw));
    if (answer.value.size() != candidates.size()) {
        throw ParseError("argument verdict has " + std::to_string(answer.value.size()) + " entries for " +
                             std::to_string(candidates.size()) + " candidates",
                         std::string(raw));
    }
    ArgumentVerdict verdict;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& item = answer.value[i];
        if (!item.is_object() || !item.contains("text") || !item.contains("role") || !item.contains("is_correct")) {
            throw ParseError("argument entry " + std::to_string(i + 1) + " lacks text/role/is_correct", std::string(raw));
        }
        if (!item["text"].is_string() || !item["role"].is_string() || !item["is_correct"].is_boolean()) {
            throw ParseError("argument entry " + std::to_string(i + 1) + " has mistyped fields", std::string(raw));
        }
        ArgumentJudgement j{item["text"].get<std::string>(), item["role"].get<std::string>(),
                            item["is_correct"].get<bool>()};
        if (j.text != candidates[i].span.text || j.role != candidates[i].role) {
            throw ParseError("argument entry " + std::to_string(i + 1) + " does not match the candidate order",
                             std::string(raw));
        }
        verdict.push_back(std::move(j));
    }
    return verdict;
}

std::string render_trigger_reply(const std::map<std::string, TriggerLabel>& labels,
                                 const std::vector<std::string>& order) {
    ojson map = ojson::object();
    for (const auto& phrase : order) {
        auto it = labels.find(phrase);
        if (it == labels.end()) continue;
        map[phrase] = std::string(it->second == TriggerLabel::Trigger ? kTriggerLabel : kNonTriggerLabel);
    }
    return "```ClassificationMap = " + inline_json(map) + "```";
}

std::string render_argument_reply(const ArgumentVerdict& verdict) {
    ojson list = ojson::array();
    for (const auto& j : verdict) list.push_back(ojson{{"text", j.text}, {"role", j.role}, {"is_correct", j.is_correct}});
    return "```\n" + inline_json(list) + "\n```";
}

ojson to_json(const AuditEntry& entry) {
    ojson j{{"doc_id", entry.doc_id}, {"stage", entry.stage}};
    if (entry.trigger) {
        j["trigger"] = ojson{{"start", entry.trigger->start}, {"end", entry.trigger->end}, {"type", entry.trigger->event_type}};
    }
    j["attempt"] = entry.attempt;
    j["outcome"] = entry.outcome;
    j["prompt"] = entry.prompt;
    j["reply"] = entry.reply;
    if (!entry.detail.empty()) j["detail"] = entry.detail;
    return j;
}

ReflectionResult reflect(const ReflectionQuery& query, const Document& doc, ChatBackend& backend,
                         const ReflectionConfig& config, std::vector<AuditEntry>* audit, const RetryPolicy& transport) {
    if (config.retry_limit < 0 || config.max_output_tokens <= 0) throw ConfigError("invalid reflection config");
    ReflectionResult result;

    // Triggers: one query covering every ambiguous candidate in the document.
    std::vector<EventMention> confirmed;
    if (!query.triggers.empty()) {
        const auto candidates = trigger_spans(query.triggers);
        RequestContext context{doc.doc_id(), RequestContext::Purpose::ReflectTriggers, 0, 0, 0, {}};
        AuditEntry base{doc.doc_id(), "triggers", std::nullopt, 0, {}, {}, {}, {}};
        auto verdict = ask(backend, build_trigger_prompt(doc, candidates), context, config, transport, base, audit,
                           [&](std::string_view raw) { return parse_trigger_response(raw, candidates); });
        for (const auto& event : query.triggers) {
            if (!verdict || verdict->confirms(event.trigger.text)) confirmed.push_back(event);
        }
    }

    auto resolve_arguments = [&](EventMention event) {
        if (event.arguments.empty()) return event;
        const auto candidates = event.arguments;
        RequestContext context{doc.doc_id(), RequestContext::Purpose::ReflectArguments, 0, event.trigger.start,
                               event.trigger.end, event.event_type};
        AuditEntry base{doc.doc_id(), "arguments", trigger_id(event), 0, {}, {}, {}, {}};
        auto verdict = ask(backend, build_argument_prompt(doc, event, candidates), context, config, transport, base,
                           audit, [&](std::string_view raw) { return parse_argument_response(raw, candidates); });
        if (verdict) {
            event.arguments.clear();
            for (std::size_t i = 0; i < candidates.size(); ++i) {
                if ((*verdict)[i].is_correct) event.arguments.push_back(candidates[i]);
            }
        }
        return event;
    };

    for (auto& event : confirmed) result.triggers.push_back(resolve_arguments(std::move(event)));
    for (const auto& event : query.argument_sets) result.argument_sets.push_back(resolve_arguments(event));
    return result;
}

ReflectionResult BackendReflector::reflect(const ReflectionQuery& query, const Document& doc) {
    audit_.clear();
    return aris::reflect(query, doc, backend_, config_, &audit_, transport_);
}

ReflectionResult KeepAllReflector::reflect(const ReflectionQuery& query, const Document&) {
    return {query.triggers, query.argument_sets};
}

ReflectionResult DropAllReflector::reflect(const ReflectionQuery& query, const Document&) {
    ReflectionResult result;
    for (auto event : query.argument_sets) {
        event.arguments.clear();
        result.argument_sets.push_back(std::move(event));
    }
    return result;
}

}  // namespace aris
