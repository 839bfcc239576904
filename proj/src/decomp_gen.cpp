#include "aris/decomp_gen.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "aris/errors.hpp"
#include "aris/rng.hpp"
#include "aris/structured_output.hpp"

namespace aris {

namespace {

struct VariantInfo {
    TaskVariant variant;
    std::string_view name;
    std::string_view key;
};

constexpr VariantInfo kVariantInfo[] = {
    {TaskVariant::FullStructure, "full_structure", "Events"},
    {TaskVariant::RoleAblated, "role_ablated", "Events"},
    {TaskVariant::TriggerDetection, "trigger_detection", "Triggers"},
    {TaskVariant::TriggerTypeSingle, "trigger_type_single", "EventType"},
    {TaskVariant::TriggerTypeMulti, "trigger_type_multi", "TriggerTypes"},
    {TaskVariant::DiscriminationMulti, "discrimination_multi", "ClassificationMap"},
    {TaskVariant::DiscriminationSingle, "discrimination_single", "Label"},
    {TaskVariant::EventDetectionJoint, "event_detection_joint", "DetectedEvents"},
    {TaskVariant::ArgumentExtractionSingle, "argument_extraction_single", "Arguments"},
    {TaskVariant::ArgumentExtractionMulti, "argument_extraction_multi", "TriggerArguments"},
    {TaskVariant::ArgumentExtractionJoint, "argument_extraction_joint", "EventArguments"},
    {TaskVariant::RoleAssignmentSingle, "role_assignment_single", "Role"},
    {TaskVariant::RoleAssignmentMulti, "role_assignment_multi", "RoleAssignments"},
};

const VariantInfo& info(TaskVariant v) {
    for (const auto& i : kVariantInfo) {
        if (i.variant == v) return i;
    }
    throw ContractError("unknown task variant");
}

std::string json_quote(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

constexpr std::string_view kMask = "<MASK>";

// Six-part prompt: role, task, rules, format, example, query.
struct Template {
    std::string role;
    std::string task;
    std::vector<std::string> rules;
    std::string format;
    std::string example;
    std::string context;  // extra material shown after the passage
    std::string question;
};

std::string render(const Template& t, const Document& doc) {
    std::string out = t.role + "\n" + t.task + "\n\nGeneration Rules:\n";
    for (std::size_t i = 0; i < t.rules.size(); ++i) out += std::to_string(i + 1) + ". " + t.rules[i] + "\n";
    out += "\nOutput Format (strict):\n";
    out += "- Wrap the answer in triple backticks (```).\n";
    out += "- Write: " + t.format + ".\n\n";
    out += "Example:\n```\n" + t.example + "\n```\n\n";
    out += "Passage:\n\"" + doc.text() + "\"\n\n";
    out += t.context;
    out += "Q: " + t.question;
    return out;
}

ojson arguments_json(const EventMention& e, bool with_roles) {
    ojson args = ojson::array();
    for (const auto& a : e.arguments) {
        if (with_roles) {
            args.push_back(ojson{{"text", a.span.text}, {"role", a.role}});
        } else {
            args.push_back(a.span.text);
        }
    }
    return args;
}

ojson events_json(const std::vector<EventMention>& events) {
    ojson list = ojson::array();
    for (const auto& e : events) {
        list.push_back(ojson{{"trigger", e.trigger.text}, {"type", e.event_type}, {"arguments", arguments_json(e, true)}});
    }
    return list;
}

ojson trigger_type_list(const std::vector<EventMention>& events) {
    ojson list = ojson::array();
    for (const auto& e : events) list.push_back(ojson{{"trigger", e.trigger.text}, {"type", e.event_type}});
    return list;
}

std::string trigger_ref(const EventMention& e) {
    return "the trigger " + json_quote(e.trigger.text) + " (event type: " + json_quote(e.event_type) + ")";
}

const EventMention& target_event(const Document& doc, const InstructionTarget& target, TaskVariant v) {
    if (!target.event || *target.event >= doc.gold_events().size()) {
        throw ContractError(std::string(variant_name(v)) + " needs a gold trigger target in doc " + doc.doc_id());
    }
    return doc.gold_events()[*target.event];
}

const ArgumentMention& target_argument(const EventMention& e, const InstructionTarget& target, TaskVariant v) {
    if (!target.argument || *target.argument >= e.arguments.size()) {
        throw ContractError(std::string(variant_name(v)) + " needs an argument target of trigger '" + e.trigger.text + "'");
    }
    return e.arguments[*target.argument];
}

bool is_gold_trigger_phrase(const Document& doc, const std::string& phrase) {
    return std::any_of(doc.gold_events().begin(), doc.gold_events().end(),
                       [&](const EventMention& e) { return e.trigger.text == phrase; });
}

std::string lower(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool is_edge_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

std::size_t count_occurrences(const std::string& hay, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

std::vector<EventMention> events_in_order(const Document& doc) {
    auto events = doc.gold_events();
    std::stable_sort(events.begin(), events.end(), position_less);
    return events;
}

}  // namespace

std::string_view variant_name(TaskVariant v) { return info(v).name; }
std::string_view answer_key(TaskVariant v) { return info(v).key; }

TaskVariant variant_from_name(std::string_view name) {
    for (const auto& i : kVariantInfo) {
        if (i.name == name) return i.variant;
    }
    throw ConfigError("unknown task variant '" + std::string(name) + "'");
}

// --- POS ---------------------------------------------------------------------

PosTag HeuristicPosTagger::tag(const std::vector<std::string>& tokens, std::size_t index) const {
    static const std::set<std::string> determiners = {"a",     "an",   "the",  "this", "that", "these", "those",
                                                       "some",  "any",  "each", "every", "no",  "his",  "her",
                                                       "its",   "their", "our", "my",   "your", "another", "all"};
    static const std::set<std::string> closed = {
        "and",  "or",    "but",   "nor",   "so",    "yet",  "of",    "in",    "on",    "at",    "to",   "for",
        "from", "by",    "with",  "about", "as",    "into", "over",  "after", "before", "under", "than", "if",
        "he",   "she",   "it",    "they",  "we",    "i",    "you",   "him",   "them",  "us",    "me",   "who",
        "whom", "which", "what",  "when",  "where", "while", "not",  "also",  "very",  "just",  "then", "there",
        "here", "up",    "down",  "out",   "off",   "against", "during", "through", "between", "among", "toward",
        "towards", "said"};
    static const std::set<std::string> auxiliaries = {"is",   "are",  "was",  "were", "be",    "been", "being",
                                                      "has",  "have", "had",  "do",   "does",  "did",  "will",
                                                      "would", "can", "could", "may", "might", "must", "shall",
                                                      "should"};
    const std::string w = lower(tokens.at(index));
    if (w.empty()) return PosTag::Other;
    if (determiners.contains(w)) return PosTag::Determiner;
    if (auxiliaries.contains(w)) return PosTag::Verb;
    if (closed.contains(w)) return PosTag::Other;
    if (std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c) || c == '.' || c == ','; })) {
        return PosTag::Other;
    }
    auto ends_with = [&](std::string_view suffix) {
        return w.size() > suffix.size() + 1 && w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    if (ends_with("ly")) return PosTag::Other;
    for (std::string_view s : {"ous", "ful", "ive", "able", "ible", "ical", "less", "ish"}) {
        if (ends_with(s)) return PosTag::Other;
    }
    for (std::string_view s : {"ed", "ing", "ize", "ise", "ify"}) {
        if (ends_with(s)) return PosTag::Verb;
    }
    // Right after "to" or an auxiliary, a bare word reads as a verb.
    if (index > 0) {
        const std::string prev = lower(tokens[index - 1]);
        if (prev == "to" || auxiliaries.contains(prev)) return PosTag::Verb;
    }
    return PosTag::Noun;
}

std::vector<Token> whitespace_tokens(const Document& doc) {
    std::vector<Token> tokens;
    const std::size_t n = doc.length();
    std::size_t i = 0;
    auto is_space = [&](std::size_t k) {
        const auto c = doc.slice(k, k + 1);
        return c.size() == 1 && std::isspace(static_cast<unsigned char>(c[0]));
    };
    auto is_punct = [&](std::size_t k) {
        const auto c = doc.slice(k, k + 1);
        return c.size() == 1 && is_edge_punct(c[0]);
    };
    while (i < n) {
        while (i < n && is_space(i)) ++i;
        if (i >= n) break;
        std::size_t j = i;
        while (j < n && !is_space(j)) ++j;
        std::size_t s = i;
        std::size_t e = j;
        while (s < e && is_punct(s)) ++s;
        while (e > s && is_punct(e - 1)) --e;
        tokens.push_back({std::string(doc.slice(s, e)), s, e});
        i = j;
    }
    return tokens;
}

std::vector<Span> sample_negative_ngrams(const Document& doc, const std::vector<Span>& gold_triggers, std::size_t k,
                                         std::uint64_t seed, const PosTagger& tagger) {
    if (k > 3) throw ContractError("at most three negatives per document");
    if (k == 0 || gold_triggers.empty()) return {};
    const auto tokens = whitespace_tokens(doc);
    std::vector<std::string> words;
    for (const auto& t : tokens) words.push_back(t.text);

    // Token range covered by each trigger.
    std::vector<std::pair<std::size_t, std::size_t>> trigger_tokens;
    for (const auto& trig : gold_triggers) {
        std::optional<std::size_t> first, last;
        for (std::size_t t = 0; t < tokens.size(); ++t) {
            if (tokens[t].start < trig.end && trig.start < std::max(tokens[t].end, tokens[t].start + 1)) {
                if (!first) first = t;
                last = t;
            }
        }
        if (first) trigger_tokens.emplace_back(*first, *last);
    }

    std::vector<Span> eligible;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        for (std::size_t n = 1; n <= 3 && i + n <= tokens.size(); ++n) {
            const std::size_t j = i + n - 1;
            bool tokens_ok = true;
            for (std::size_t t = i; t <= j; ++t) {
                const PosTag tag = tokens[t].text.empty() ? PosTag::Other : tagger.tag(words, t);
                if (tag == PosTag::Other) tokens_ok = false;
            }
            if (!tokens_ok) continue;
            const Span span{std::string(doc.slice(tokens[i].start, tokens[j].end)), tokens[i].start, tokens[j].end};
            if (!span.well_formed() || seen.contains(span.text)) continue;
            if (count_occurrences(doc.text(), span.text) != 1) continue;
            const std::string lc = lower(span.text);
            const bool clashes = std::any_of(gold_triggers.begin(), gold_triggers.end(), [&](const Span& g) {
                const std::string lg = lower(g.text);
                return span_overlap(span, g) > 0.0 || lg.find(lc) != std::string::npos || lc.find(lg) != std::string::npos;
            });
            if (clashes) continue;
            const bool near = std::any_of(trigger_tokens.begin(), trigger_tokens.end(), [&](const auto& tt) {
                const std::size_t gap = j < tt.first ? tt.first - j : (i > tt.second ? i - tt.second : 0);
                return gap >= 1 && gap <= 3;
            });
            if (!near) continue;
            seen.insert(span.text);
            eligible.push_back(span);
        }
    }
    SeededRng rng(mix_seed(seed, "negatives/" + doc.doc_id()));
    rng.shuffle(eligible);
    if (eligible.size() > k) eligible.resize(k);
    std::sort(eligible.begin(), eligible.end(),
              [](const Span& a, const Span& b) { return std::tie(a.start, a.end) < std::tie(b.start, b.end); });
    return eligible;
}

// --- rendering -----------------------------------------------------------------

ojson to_json(const InstructionRecord& record) {
    ojson provenance = ojson::object();
    if (record.target.event) provenance["event"] = *record.target.event;
    if (record.target.argument) provenance["argument"] = *record.target.argument;
    if (!record.target.phrases.empty()) provenance["candidates"] = record.target.phrases;
    return ojson{{"variant", std::string(variant_name(record.variant))},
                 {"prompt", record.prompt},
                 {"answer", record.answer},
                 {"doc_id", record.doc_id},
                 {"provenance", std::move(provenance)}};
}

InstructionRecord render_instruction(TaskVariant variant, const Document& doc, const InstructionTarget& target) {
    Template t;
    ojson answer;
    const auto events = events_in_order(doc);
    const std::string events_format =
        R"(Events = [{"trigger": "t1", "type": "T1", "arguments": [{"text": "a1", "role": "R1"}, ...]}, ...])";
    const std::string events_example =
        R"(Events = [{"trigger": "therapy", "type": "Treatment", "arguments": [{"text": "insulin", "role": "Drug"}]}])";

    switch (variant) {
        case TaskVariant::FullStructure:
            t = {"You are an event extractor.",
                 "Extract every event in the passage with its trigger, event type and arguments.",
                 {"List events in the exact order their triggers appear in the passage.",
                  "Copy trigger and argument texts exactly as they appear in the passage.",
                  "Give every argument its role."},
                 events_format,
                 events_example,
                 "",
                 "What are the events in the passage?"};
            answer = events_json(events);
            break;

        case TaskVariant::RoleAblated: {
            const auto& e = target_event(doc, target, variant);
            const auto& masked = target_argument(e, target, variant);
            std::vector<EventMention> partial = doc.gold_events();
            for (auto& a : partial[*target.event].arguments) {
                if (a == masked) a.role = std::string(kMask);
            }
            std::stable_sort(partial.begin(), partial.end(), position_less);
            t = {"You are an event extractor.",
                 "Complete the events below, in which one argument role has been masked.",
                 {"Replace " + std::string(kMask) + " with the correct role.",
                  "Keep every other trigger, type, argument and role unchanged.",
                  "List events in the exact order their triggers appear in the passage."},
                 events_format,
                 events_example,
                 "Partial Events:\n" + inline_json(events_json(partial)) + "\n\n",
                 "What are the complete events, with the masked role filled in?"};
            answer = events_json(events);
            break;
        }

        case TaskVariant::TriggerDetection: {
            t = {"You are a trigger detector.",
                 "List every event trigger in the passage.",
                 {"List triggers in the exact order they appear in the passage.", "Do not include event types."},
                 R"(Triggers = ["trigger1", "trigger2", ...])",
                 R"(Triggers = ["therapy", "increase"])",
                 "",
                 "What are the event triggers in the passage?"};
            answer = ojson::array();
            for (const auto& e : events) answer.push_back(e.trigger.text);
            break;
        }

        case TaskVariant::TriggerTypeSingle: {
            const auto& e = target_event(doc, target, variant);
            t = {"You are an event type classifier.",
                 "Choose the event type of the single trigger shown below.",
                 {"Answer with exactly one event type.", "Write the type label only."},
                 R"(EventType = "type")",
                 R"(EventType = "Treatment")",
                 "",
                 "What is the event type of the trigger " + json_quote(e.trigger.text) + "?"};
            answer = e.event_type;
            break;
        }

        case TaskVariant::TriggerTypeMulti: {
            ojson triggers = ojson::array();
            for (const auto& e : events) triggers.push_back(e.trigger.text);
            t = {"You are an event type classifier.",
                 "Choose the event type of every trigger listed below.",
                 {"Keep the order of the listed triggers.", "Assign exactly one event type to each trigger."},
                 R"(TriggerTypes = [{"trigger": "t1", "type": "T1"}, ...])",
                 R"(TriggerTypes = [{"trigger": "therapy", "type": "Treatment"}])",
                 "Triggers:\n" + inline_json(triggers) + "\n\n",
                 "What is the event type of each listed trigger?"};
            answer = trigger_type_list(events);
            break;
        }

        case TaskVariant::DiscriminationMulti: {
            if (target.phrases.empty()) throw ContractError("discrimination needs candidate phrases");
            ojson map = ojson::object();
            for (const auto& p : target.phrases) {
                map[p] = is_gold_trigger_phrase(doc, p) ? "Trigger" : "Non-Trigger";
            }
            t = {"You are a trigger discriminator.",
                 "Decide for each candidate phrase whether it signals an event trigger.",
                 {"Classify each phrase as either 'Trigger' or 'Non-Trigger'.", "Keep the order of the candidates."},
                 R"(ClassificationMap = {"phrase1": "Trigger", "phrase2": "Non-Trigger", ...})",
                 R"(ClassificationMap = {"therapy": "Trigger", "increase dose": "Non-Trigger"})",
                 "Candidates:\n" + inline_json(ojson(target.phrases)) + "\n\n",
                 "For each candidate above, decide whether it is a 'Trigger' or 'Non-Trigger'."};
            answer = std::move(map);
            break;
        }

        case TaskVariant::DiscriminationSingle: {
            if (target.phrases.size() != 1) throw ContractError("single discrimination needs exactly one phrase");
            const auto& p = target.phrases.front();
            t = {"You are a trigger discriminator.",
                 "Decide whether the phrase shown below signals an event trigger.",
                 {"Answer 'Trigger' or 'Non-Trigger'.", "Judge the phrase in the context of the passage."},
                 R"(Label = "Trigger" or "Non-Trigger")",
                 R"(Label = "Non-Trigger")",
                 "",
                 "Is the phrase " + json_quote(p) + " a 'Trigger' or 'Non-Trigger'?"};
            answer = is_gold_trigger_phrase(doc, p) ? "Trigger" : "Non-Trigger";
            break;
        }

        case TaskVariant::EventDetectionJoint:
            t = {"You are an event detector.",
                 "Detect every event trigger in the passage and assign its event type.",
                 {"List triggers in the exact order they appear in the passage.", "Give each trigger one event type."},
                 R"(DetectedEvents = [{"trigger": "t1", "type": "T1"}, ...])",
                 R"(DetectedEvents = [{"trigger": "therapy", "type": "Treatment"}])",
                 "",
                 "What are the event triggers in the passage and their event types?"};
            answer = trigger_type_list(events);
            break;

        case TaskVariant::ArgumentExtractionSingle: {
            const auto& e = target_event(doc, target, variant);
            t = {"You are an argument extractor.",
                 "Extract all arguments for the specific trigger shown below.",
                 {"List arguments in the exact order they appear in the passage.",
                  "Ignore argument roles and include only the argument texts."},
                 R"(Arguments = ["arg1", "arg2", ...])",
                 R"(Arguments = ["insulin", "VEGF"])",
                 "",
                 "What are the arguments of " + trigger_ref(e) + "?"};
            answer = arguments_json(e, false);
            break;
        }

        case TaskVariant::ArgumentExtractionMulti: {
            ojson triggers = trigger_type_list(events);
            ojson list = ojson::array();
            for (const auto& e : events) list.push_back(ojson{{"trigger", e.trigger.text}, {"arguments", arguments_json(e, false)}});
            t = {"You are an argument extractor.",
                 "Extract the arguments of every trigger listed below.",
                 {"Keep the order of the listed triggers.",
                  "List each trigger's arguments in the exact order they appear in the passage.",
                  "Ignore argument roles and include only the argument texts."},
                 R"(TriggerArguments = [{"trigger": "t1", "arguments": ["arg1", ...]}, ...])",
                 R"(TriggerArguments = [{"trigger": "therapy", "arguments": ["insulin", "VEGF"]}])",
                 "Triggers:\n" + inline_json(triggers) + "\n\n",
                 "What are the arguments of each listed trigger?"};
            answer = std::move(list);
            break;
        }

        case TaskVariant::ArgumentExtractionJoint: {
            ojson triggers = trigger_type_list(events);
            t = {"You are an argument extractor.",
                 "Given all triggers below, extract the arguments of each trigger and assign each argument a role.",
                 {"Keep the order of the listed triggers.",
                  "List each trigger's arguments in the exact order they appear in the passage.",
                  "Give every argument its role."},
                 R"(EventArguments = [{"trigger": "t1", "type": "T1", "arguments": [{"text": "a1", "role": "R1"}, ...]}, ...])",
                 R"(EventArguments = [{"trigger": "therapy", "type": "Treatment", "arguments": [{"text": "insulin", "role": "Drug"}]}])",
                 "Triggers:\n" + inline_json(triggers) + "\n\n",
                 "What are the arguments and roles of each listed trigger?"};
            answer = events_json(events);
            break;
        }

        case TaskVariant::RoleAssignmentSingle: {
            const auto& e = target_event(doc, target, variant);
            const auto& a = target_argument(e, target, variant);
            t = {"You are a role classifier.",
                 "Assign the role that the argument plays for the trigger shown below.",
                 {"Answer with exactly one role.", "Write the role label only."},
                 R"(Role = "role")",
                 R"(Role = "Drug")",
                 "",
                 "What is the role of the argument " + json_quote(a.span.text) + " for " + trigger_ref(e) + "?"};
            answer = a.role;
            break;
        }

        case TaskVariant::RoleAssignmentMulti: {
            const auto& e = target_event(doc, target, variant);
            if (e.arguments.empty()) throw ContractError("role assignment needs a trigger with arguments");
            ojson texts = arguments_json(e, false);
            t = {"You are a role classifier.",
                 "Assign a role to each candidate argument of the trigger shown below.",
                 {"Keep the order of the listed arguments.", "Assign exactly one role to each argument."},
                 R"(RoleAssignments = [{"text": "a1", "role": "R1"}, ...])",
                 R"(RoleAssignments = [{"text": "insulin", "role": "Drug"}])",
                 "Arguments:\n" + inline_json(texts) + "\n\n",
                 "What are the roles of the listed arguments for " + trigger_ref(e) + "?"};
            answer = arguments_json(e, true);
            break;
        }
    }

    InstructionRecord record;
    record.variant = variant;
    record.prompt = render(t, doc);
    record.answer = render_fenced(answer_key(variant), answer);
    record.doc_id = doc.doc_id();
    record.target = target;
    return record;
}

std::string build_extraction_prompt(const Document& doc) {
    return render_instruction(TaskVariant::FullStructure, Document(doc.doc_id(), doc.text(), {})).prompt;
}

std::vector<InstructionRecord> generate_dataset(const std::vector<Document>& corpus, const std::set<TaskVariant>& variants,
                                                const GenerationOptions& options, const PosTagger& tagger) {
    std::vector<InstructionRecord> out;
    for (const auto& doc : corpus) {
        const auto& gold = doc.gold_events();
        // Gold events are indexed in their stored order; emit targets in passage order.
        std::vector<std::size_t> order(gold.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return position_less(gold[a], gold[b]); });

        std::vector<Span> trigger_spans;
        for (const auto& e : gold) trigger_spans.push_back(e.trigger);
        std::vector<std::string> candidates;
        for (std::size_t i : order) {
            if (std::find(candidates.begin(), candidates.end(), gold[i].trigger.text) == candidates.end()) {
                candidates.push_back(gold[i].trigger.text);
            }
        }
        for (const auto& neg : sample_negative_ngrams(doc, trigger_spans, std::min<std::size_t>(3, options.negatives_per_document),
                                                      options.seed, tagger)) {
            candidates.push_back(neg.text);
        }
        SeededRng rng(mix_seed(options.seed, "doc/" + doc.doc_id()));
        std::vector<std::string> shuffled = candidates;
        rng.shuffle(shuffled);

        std::size_t argument_total = 0;
        for (const auto& e : gold) argument_total += e.arguments.size();

        for (TaskVariant v : kAllVariants) {
            if (!variants.contains(v)) continue;
            switch (v) {
                case TaskVariant::FullStructure:
                case TaskVariant::TriggerDetection:
                case TaskVariant::TriggerTypeMulti:
                case TaskVariant::EventDetectionJoint:
                case TaskVariant::ArgumentExtractionMulti:
                case TaskVariant::ArgumentExtractionJoint:
                    out.push_back(render_instruction(v, doc));
                    break;
                case TaskVariant::RoleAblated: {
                    if (argument_total == 0) break;
                    std::size_t pick = rng.below(argument_total);
                    for (std::size_t i = 0; i < gold.size(); ++i) {
                        if (pick < gold[i].arguments.size()) {
                            out.push_back(render_instruction(v, doc, {i, pick, {}}));
                            break;
                        }
                        pick -= gold[i].arguments.size();
                    }
                    break;
                }
                case TaskVariant::TriggerTypeSingle:
                case TaskVariant::ArgumentExtractionSingle:
                    for (std::size_t i : order) out.push_back(render_instruction(v, doc, {i, std::nullopt, {}}));
                    break;
                case TaskVariant::DiscriminationMulti:
                    if (!shuffled.empty()) out.push_back(render_instruction(v, doc, {std::nullopt, std::nullopt, shuffled}));
                    break;
                case TaskVariant::DiscriminationSingle:
                    for (const auto& p : candidates) out.push_back(render_instruction(v, doc, {std::nullopt, std::nullopt, {p}}));
                    break;
                case TaskVariant::RoleAssignmentSingle:
                    for (std::size_t i : order) {
                        for (std::size_t a = 0; a < gold[i].arguments.size(); ++a) {
                            out.push_back(render_instruction(v, doc, {i, a, {}}));
                        }
                    }
                    break;
                case TaskVariant::RoleAssignmentMulti:
                    for (std::size_t i : order) {
                        if (!gold[i].arguments.empty()) out.push_back(render_instruction(v, doc, {i, std::nullopt, {}}));
                    }
                    break;
            }
        }
    }
    return out;
}

}  // namespace aris
