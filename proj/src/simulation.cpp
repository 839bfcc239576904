#include "aris/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aris/errors.hpp"
#include "aris/pipeline.hpp"
#include "aris/rng.hpp"
#include "aris/structured_output.hpp"

namespace aris {

namespace {

struct LexiconEntry {
    const char* verb;
    const char* type;
    const char* first_role;
    const char* second_role;
};

constexpr LexiconEntry kLexicon[] = {
    {"attacked", "Conflict:Attack", "Attacker", "Target"},
    {"killed", "Life:Die", "Agent", "Victim"},
    {"met", "Contact:Meet", "Entity", "Participant"},
    {"hired", "Personnel:Start-Position", "Employer", "Person"},
    {"sued", "Justice:Sue", "Plaintiff", "Defendant"},
    {"arrested", "Justice:Arrest-Jail", "Agent", "Person"},
    {"paid", "Transaction:Transfer-Money", "Giver", "Recipient"},
    {"phoned", "Contact:Phone-Write", "Entity", "Participant"},
    {"injured", "Life:Injure", "Agent", "Victim"},
    {"fired", "Personnel:End-Position", "Employer", "Person"},
};

constexpr const char* kFirstNames[] = {"Amara",  "Bjorn", "Chiara", "Dmitri", "Esther", "Farid", "Greta",
                                       "Hamza",  "Ingrid", "Jorge",  "Keiko",  "Lukas",  "Mireille", "Nnamdi",
                                       "Odette", "Pavel", "Quentin", "Rosalind", "Soren", "Tamsin"};
constexpr const char* kSurnames[] = {"Abernathy", "Bergstrom", "Castellano", "Dubrovsky", "Eze",     "Fairweather",
                                     "Gallagher", "Hollister", "Iwasaki",    "Jaramillo", "Kowalczyk", "Lindqvist",
                                     "Marchetti", "Nakamura",  "Oyelaran",   "Pemberton", "Quiroga", "Rasmussen",
                                     "Szabo",     "Thorvaldsen"};
constexpr const char* kPlaces[] = {"Oslo",     "Nairobi", "Valparaiso", "Tbilisi", "Winnipeg", "Kyoto",
                                   "Marseille", "Accra",  "Bergen",     "Cusco",   "Dundee",   "Gdansk",
                                   "Hobart",   "Izmir",   "Jaipur",     "Krakow",  "Leipzig",  "Mombasa"};
constexpr const char* kFillers[] = {"convoy",   "blockade", "referendum", "shipment", "bulletin", "ceremony",
                                    "tribunal", "pipeline", "stampede",   "airlift",  "standoff", "summit",
                                    "exodus",   "rally",    "embargo",    "audit"};

template <typename T, std::size_t N>
std::vector<std::size_t> pick_distinct(SeededRng& rng, const T (&)[N], std::size_t k) {
    std::vector<std::size_t> idx(N);
    for (std::size_t i = 0; i < N; ++i) idx[i] = i;
    rng.shuffle(idx);
    idx.resize(std::min(k, N));
    return idx;
}

Span grounded(const Document& doc, const std::string& surface) {
    auto span = locate_span(doc, surface, 0);
    if (!span) throw ContractError("synthetic surface '" + surface + "' missing from " + doc.doc_id());
    return *span;
}

std::vector<Span> vocabulary_spans(const Document& doc, const std::vector<std::string>& vocabulary) {
    std::vector<Span> spans;
    for (const auto& w : vocabulary) {
        if (auto s = locate_span(doc, w, 0)) spans.push_back(*s);
    }
    return spans;
}

std::vector<std::string> all_roles() {
    std::set<std::string> roles;
    for (const auto& e : kLexicon) {
        roles.insert(e.first_role);
        roles.insert(e.second_role);
    }
    roles.insert("Place");
    return {roles.begin(), roles.end()};
}

std::vector<std::string> all_types() {
    std::vector<std::string> types;
    for (const auto& e : kLexicon) types.emplace_back(e.type);
    return types;
}

/// A hallucinated surface gets the same type from every source that proposes it.
std::string spurious_type(const std::string& surface) {
    static const auto types = all_types();
    return types[mix_seed(0, "type/" + surface) % types.size()];
}

std::size_t spurious_count(SeededRng& rng, std::size_t kept, double precision) {
    if (precision >= 1.0 || kept == 0) return 0;
    const double expected = precision <= 0.0 ? static_cast<double>(kept) * 4.0
                                             : static_cast<double>(kept) * (1.0 - precision) / precision;
    const double whole = std::floor(expected);
    return static_cast<std::size_t>(whole) + (rng.bernoulli(expected - whole) ? 1 : 0);
}

struct Draw {
    EventMention event;
    bool correct_trigger = true;
    std::vector<bool> correct_arguments;
};

/// One noisy view of a document's gold events.
std::vector<Draw> noisy_view(const Document& doc, const OracleProfile& profile, SeededRng& rng) {
    static const auto roles = all_roles();
    std::vector<Span> gold_arg_spans;
    for (const auto& e : doc.gold_events()) {
        for (const auto& a : e.arguments) gold_arg_spans.push_back(a.span);
    }

    std::vector<Draw> out;
    for (const auto& gold : doc.gold_events()) {
        if (!rng.bernoulli(profile.target_recall)) continue;
        Draw d{EventMention{gold.trigger, gold.event_type, {}}, true, {}};
        for (const auto& a : gold.arguments) {
            if (rng.bernoulli(profile.target_recall)) {
                d.event.arguments.push_back(a);
                d.correct_arguments.push_back(true);
            }
        }
        if (!gold_arg_spans.empty() && rng.bernoulli(1.0 - profile.target_precision)) {
            ArgumentMention extra{gold_arg_spans[rng.below(gold_arg_spans.size())], roles[rng.below(roles.size())]};
            const bool dup = std::any_of(d.event.arguments.begin(), d.event.arguments.end(),
                                         [&](const ArgumentMention& a) { return argument_key(a) == argument_key(extra); });
            const bool is_gold = std::find(gold.arguments.begin(), gold.arguments.end(), extra) != gold.arguments.end();
            if (!dup && !is_gold) {
                d.event.arguments.push_back(extra);
                d.correct_arguments.push_back(false);
            }
        }
        out.push_back(std::move(d));
    }

    const auto spans = vocabulary_spans(doc, profile.hallucination_vocabulary);
    const std::size_t spurious = spans.empty() ? 0 : spurious_count(rng, std::max<std::size_t>(out.size(), 1), profile.target_precision);
    std::set<std::size_t> used;
    for (std::size_t i = 0; i < spurious && used.size() < spans.size(); ++i) {
        std::size_t k = rng.below(spans.size());
        while (used.contains(k)) k = (k + 1) % spans.size();
        used.insert(k);
        out.push_back({EventMention{spans[k], spurious_type(spans[k].text), {}}, false, {}});
    }

    for (auto& d : out) {
        // Keep argument flags aligned through normalisation.
        std::vector<std::pair<ArgumentMention, bool>> paired;
        for (std::size_t i = 0; i < d.event.arguments.size(); ++i) paired.emplace_back(d.event.arguments[i], d.correct_arguments[i]);
        std::sort(paired.begin(), paired.end(), [](const auto& a, const auto& b) {
            return argument_key(a.first) < argument_key(b.first);
        });
        d.event.arguments.clear();
        d.correct_arguments.clear();
        for (auto& [a, c] : paired) {
            d.event.arguments.push_back(std::move(a));
            d.correct_arguments.push_back(c);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Draw& a, const Draw& b) { return position_less(a.event, b.event); });
    return out;
}

}  // namespace

void validate(const OracleProfile& p) {
    auto ratio = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!ratio(p.target_precision) || !ratio(p.target_recall)) {
        throw ConfigError("oracle profile precision and recall must lie in [0, 1]");
    }
    if (p.correct_confidence_lo > p.correct_confidence_hi || p.spurious_confidence_lo > p.spurious_confidence_hi ||
        !ratio(p.correct_confidence_lo) || !ratio(p.correct_confidence_hi) || !ratio(p.spurious_confidence_lo) ||
        !ratio(p.spurious_confidence_hi)) {
        throw ConfigError("oracle profile confidence ranges must be ordered subranges of [0, 1]");
    }
    if (p.target_precision < 1.0 && p.hallucination_vocabulary.empty()) {
        throw ConfigError("precision below 1 needs a non-empty hallucination vocabulary");
    }
}

SyntheticCorpus synthesize_corpus(const SyntheticCorpusOptions& options) {
    constexpr std::size_t kLexiconSize = std::size(kLexicon);
    if (options.min_events > options.max_events || options.max_events > std::min<std::size_t>(kLexiconSize, 4)) {
        throw ConfigError("synthetic corpus needs 0 <= min_events <= max_events <= 4");
    }
    SyntheticCorpus corpus;
    corpus.event_types = all_types();
    for (const auto* f : kFillers) corpus.distractors.emplace_back(f);

    for (std::size_t d = 0; d < options.documents; ++d) {
        const std::string doc_id = "syn-" + std::to_string(d + 1);
        SeededRng rng(mix_seed(options.seed, "corpus/" + doc_id));
        const std::size_t n_events =
            options.min_events + rng.below(options.max_events - options.min_events + 1);
        const auto verbs = pick_distinct(rng, kLexicon, n_events);
        const auto firsts = pick_distinct(rng, kFirstNames, 2 * n_events);
        const auto lasts = pick_distinct(rng, kSurnames, 2 * n_events);
        const auto places = pick_distinct(rng, kPlaces, n_events);
        const auto fillers = pick_distinct(rng, kFillers, n_events + 2);

        struct Planned {
            std::string a, b, place;
            const LexiconEntry* lex;
        };
        std::vector<Planned> planned;
        std::string text;
        std::size_t filler_next = 0;
        auto add_filler = [&] {
            text += "Reporters noted the " + std::string(kFillers[fillers[filler_next++]]) + " briefly. ";
        };
        add_filler();
        for (std::size_t e = 0; e < n_events; ++e) {
            Planned p{std::string(kFirstNames[firsts[2 * e]]) + " " + kSurnames[lasts[2 * e]],
                      std::string(kFirstNames[firsts[2 * e + 1]]) + " " + kSurnames[lasts[2 * e + 1]],
                      kPlaces[places[e]], &kLexicon[verbs[e]]};
            text += p.a + " " + p.lex->verb + " " + p.b + " near " + p.place + ". ";
            planned.push_back(std::move(p));
            add_filler();
        }
        add_filler();
        text.pop_back();

        Document bare(doc_id, text, {});
        std::vector<EventMention> gold;
        for (const auto& p : planned) {
            EventMention e{grounded(bare, p.lex->verb), p.lex->type, {}};
            e.arguments.push_back({grounded(bare, p.a), p.lex->first_role});
            e.arguments.push_back({grounded(bare, p.b), p.lex->second_role});
            e.arguments.push_back({grounded(bare, p.place), "Place"});
            gold.push_back(std::move(e));
        }
        corpus.documents.emplace_back(doc_id, text, std::move(gold));
    }
    return corpus;
}

TaggerPredictions synthesize_tagger_predictions(const std::vector<Document>& corpus, const OracleProfile& profile) {
    validate(profile);
    TaggerPredictions out;
    for (const auto& doc : corpus) {
        SeededRng rng(mix_seed(profile.seed, "tagger/" + doc.doc_id()));
        auto& preds = out[doc.doc_id()];
        for (auto& d : noisy_view(doc, profile, rng)) {
            TaggerPrediction p;
            p.trigger_confidence = d.correct_trigger
                                       ? rng.uniform(profile.correct_confidence_lo, profile.correct_confidence_hi)
                                       : rng.uniform(profile.spurious_confidence_lo, profile.spurious_confidence_hi);
            for (bool c : d.correct_arguments) {
                p.argument_confidences.push_back(c ? rng.uniform(profile.correct_confidence_lo, profile.correct_confidence_hi)
                                                   : rng.uniform(profile.spurious_confidence_lo, profile.spurious_confidence_hi));
            }
            p.event = std::move(d.event);
            preds.push_back(std::move(p));
        }
    }
    return out;
}

std::map<std::string, std::vector<std::vector<EventMention>>> synthesize_agent_lists(const std::vector<Document>& corpus,
                                                                                     const OracleProfile& profile,
                                                                                     int agents) {
    validate(profile);
    if (agents < 1) throw ConfigError("agent count must be at least 1");
    std::map<std::string, std::vector<std::vector<EventMention>>> out;
    for (const auto& doc : corpus) {
        auto& lists = out[doc.doc_id()];
        for (int a = 1; a <= agents; ++a) {
            SeededRng rng(mix_seed(profile.seed, "agent/" + std::to_string(a) + "/" + doc.doc_id()));
            std::vector<EventMention> events;
            for (auto& d : noisy_view(doc, profile, rng)) events.push_back(std::move(d.event));
            lists.push_back(std::move(events));
        }
    }
    return out;
}

std::map<std::string, AgentVotes> synthesize_agent_predictions(const std::vector<Document>& corpus,
                                                               const OracleProfile& profile, int agents) {
    const auto lists = synthesize_agent_lists(corpus, profile, agents);
    std::map<std::string, AgentVotes> out;
    for (const auto& doc : corpus) out.emplace(doc.doc_id(), aggregate_agent_lists(doc, lists.at(doc.doc_id())));
    return out;
}

// --- gold lookups --------------------------------------------------------------

bool gold_confirms_trigger(const Document& doc, const std::string& phrase) {
    return std::any_of(doc.gold_events().begin(), doc.gold_events().end(),
                       [&](const EventMention& e) { return e.trigger.text == phrase; });
}

bool gold_confirms_argument(const Document& doc, const TriggerId& trigger, const std::string& text,
                            const std::string& role) {
    for (const auto& e : doc.gold_events()) {
        if (trigger_id(e) != trigger) continue;
        for (const auto& a : e.arguments) {
            if (a.span.text == text && a.role == role) return true;
        }
    }
    return false;
}

GoldOracleBackend::GoldOracleBackend(const std::vector<Document>& corpus) : docs_(index_by_id(corpus)) {}

std::string GoldOracleBackend::complete(const ChatRequest& request, const RequestContext& context) {
    validate_request(request);
    const auto it = docs_.find(context.doc_id);
    if (it == docs_.end()) throw NoReplyError("oracle backend has no document " + context.doc_id);
    const Document& doc = *it->second;
    const std::string& prompt = request.messages.back().content;

    switch (context.purpose) {
        case RequestContext::Purpose::Agent:
            return render_agent_reply(doc.gold_events());

        case RequestContext::Purpose::ReflectTriggers: {
            const std::string marker = "\nCandidates:\n";
            const auto pos = prompt.rfind(marker);
            if (pos == std::string::npos) throw ContractError("trigger reflection prompt without candidates");
            const auto line_start = pos + marker.size();
            const auto line = prompt.substr(line_start, prompt.find('\n', line_start) - line_start);
            const auto phrases = nlohmann::json::parse(line).get<std::vector<std::string>>();
            std::map<std::string, TriggerLabel> labels;
            for (const auto& p : phrases) {
                labels[p] = gold_confirms_trigger(doc, p) ? TriggerLabel::Trigger : TriggerLabel::NonTrigger;
            }
            return render_trigger_reply(labels, phrases);
        }

        case RequestContext::Purpose::ReflectArguments: {
            const std::string marker = "Candidate Arguments to verify:\n";
            auto pos = prompt.find(marker);
            if (pos == std::string::npos) throw ContractError("argument reflection prompt without candidates");
            pos += marker.size();
            const TriggerId owner{context.trigger_start, context.trigger_end, context.event_type};
            ArgumentVerdict verdict;
            while (pos < prompt.size() && std::isdigit(static_cast<unsigned char>(prompt[pos]))) {
                const auto eol = prompt.find('\n', pos);
                const auto line = prompt.substr(pos, eol - pos);
                const auto obj = nlohmann::json::parse(line.substr(line.find(". ") + 2));
                ArgumentJudgement j{obj.at("text").get<std::string>(), obj.at("role").get<std::string>(), false};
                j.is_correct = gold_confirms_argument(doc, owner, j.text, j.role);
                verdict.push_back(std::move(j));
                if (eol == std::string::npos) break;
                pos = eol + 1;
            }
            return render_argument_reply(verdict);
        }
    }
    throw ContractError("unknown request purpose");
}

ReflectionResult GoldReflector::reflect(const ReflectionQuery& query, const Document& doc) {
    auto keep_true_arguments = [&](EventMention e) {
        const TriggerId id = trigger_id(e);
        std::erase_if(e.arguments,
                      [&](const ArgumentMention& a) { return !gold_confirms_argument(doc, id, a.span.text, a.role); });
        return e;
    };
    ReflectionResult result;
    for (const auto& e : query.triggers) {
        if (gold_confirms_trigger(doc, e.trigger.text)) result.triggers.push_back(keep_true_arguments(e));
    }
    for (const auto& e : query.argument_sets) result.argument_sets.push_back(keep_true_arguments(e));
    return result;
}

std::string render_agent_reply(const std::vector<EventMention>& events) {
    ojson list = ojson::array();
    for (const auto& e : events) {
        ojson args = ojson::array();
        for (const auto& a : e.arguments) args.push_back(ojson{{"text", a.span.text}, {"role", a.role}});
        list.push_back(ojson{{"trigger", e.trigger.text}, {"type", e.event_type}, {"arguments", std::move(args)}});
    }
    return render_fenced("Events", list);
}

ojson agent_replay_fixture(const std::map<std::string, std::vector<std::vector<EventMention>>>& lists) {
    ojson replies = ojson::array();
    for (const auto& [doc_id, per_agent] : lists) {
        for (std::size_t a = 0; a < per_agent.size(); ++a) {
            replies.push_back(ojson{{"doc_id", doc_id},
                                    {"agent_id", static_cast<int>(a + 1)},
                                    {"content", render_agent_reply(per_agent[a])}});
        }
    }
    return ojson{{"replies", std::move(replies)}};
}

// --- scenarios -------------------------------------------------------------------

namespace {

OracleProfile profile_from_json(const nlohmann::json& j, const std::vector<std::string>& default_vocabulary) {
    OracleProfile p;
    p.target_precision = j.value("precision", 1.0);
    p.target_recall = j.value("recall", 1.0);
    p.seed = j.value("seed", std::uint64_t{0});
    p.hallucination_vocabulary = j.value("vocabulary", default_vocabulary);
    if (j.contains("correct_confidence")) {
        p.correct_confidence_lo = j.at("correct_confidence").at(0).get<double>();
        p.correct_confidence_hi = j.at("correct_confidence").at(1).get<double>();
    }
    if (j.contains("spurious_confidence")) {
        p.spurious_confidence_lo = j.at("spurious_confidence").at(0).get<double>();
        p.spurious_confidence_hi = j.at("spurious_confidence").at(1).get<double>();
    }
    validate(p);
    return p;
}

ojson profile_to_json(const OracleProfile& p) {
    return ojson{{"precision", p.target_precision},
                 {"recall", p.target_recall},
                 {"seed", p.seed},
                 {"vocabulary", p.hallucination_vocabulary},
                 {"correct_confidence", {p.correct_confidence_lo, p.correct_confidence_hi}},
                 {"spurious_confidence", {p.spurious_confidence_lo, p.spurious_confidence_hi}}};
}

std::vector<std::string> filler_vocabulary() { return {std::begin(kFillers), std::end(kFillers)}; }

}  // namespace

Scenario default_scenario() {
    Scenario s;
    s.corpus = {40, 1, 4, 7};
    s.tagger.target_precision = 0.9;
    s.tagger.target_recall = 0.6;
    s.tagger.seed = 11;
    s.tagger.hallucination_vocabulary = filler_vocabulary();
    s.agents.target_precision = 0.5;
    s.agents.target_recall = 0.9;
    s.agents.seed = 13;
    s.agents.hallucination_vocabulary = filler_vocabulary();
    s.agent_count = 10;
    s.thresholds.trigger = {0.80, 0.85, 0.30};
    s.thresholds.argument = {0.80, 0.85, 0.30};
    return s;
}

Scenario scenario_from_json(const nlohmann::json& j) {
    Scenario s = default_scenario();
    try {
        if (j.contains("corpus")) {
            const auto& c = j.at("corpus");
            s.corpus.documents = c.value("documents", s.corpus.documents);
            s.corpus.min_events = c.value("min_events", s.corpus.min_events);
            s.corpus.max_events = c.value("max_events", s.corpus.max_events);
            s.corpus.seed = c.value("seed", s.corpus.seed);
        }
        if (j.contains("tagger")) s.tagger = profile_from_json(j.at("tagger"), filler_vocabulary());
        if (j.contains("agents")) {
            s.agents = profile_from_json(j.at("agents"), filler_vocabulary());
            s.agent_count = j.at("agents").value("count", s.agent_count);
        }
        if (j.contains("thresholds")) s.thresholds = threshold_set_from_json(j.at("thresholds"));
        s.overlap_threshold = j.value("overlap_threshold", s.overlap_threshold);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    if (s.agent_count < 1) throw ConfigError("scenario needs at least one agent");
    validate(s.thresholds);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

ojson to_json(const Scenario& s) {
    ojson agents = profile_to_json(s.agents);
    agents["count"] = s.agent_count;
    return ojson{{"corpus",
                  {{"documents", s.corpus.documents},
                   {"min_events", s.corpus.min_events},
                   {"max_events", s.corpus.max_events},
                   {"seed", s.corpus.seed}}},
                 {"tagger", profile_to_json(s.tagger)},
                 {"agents", std::move(agents)},
                 {"thresholds", to_json(s.thresholds)},
                 {"overlap_threshold", s.overlap_threshold}};
}

ScenarioData materialize(const Scenario& scenario) {
    ScenarioData data;
    data.corpus = synthesize_corpus(scenario.corpus);
    data.tagger = synthesize_tagger_predictions(data.corpus.documents, scenario.tagger);
    data.agent_lists = synthesize_agent_lists(data.corpus.documents, scenario.agents, scenario.agent_count);
    for (const auto& doc : data.corpus.documents) {
        data.agents.emplace(doc.doc_id(), aggregate_agent_lists(doc, data.agent_lists.at(doc.doc_id())));
    }
    return data;
}

ScenarioReport run_scenario(const Scenario& scenario, const ScenarioData& data, ojson* replay) {
    const auto& docs = data.corpus.documents;
    GoldOracleBackend oracle(docs);
    RecordingBackend recorder(oracle);
    BackendReflector reflector(recorder, ReflectionConfig{});
    PipelineConfig config{scenario.thresholds, scenario.overlap_threshold, {}};

    ScenarioReport report;
    PredictionsByDoc tagger_only;
    PredictionsByDoc smoa_union;
    PredictionsByDoc smoa_majority;
    for (const auto& doc : docs) {
        static const std::vector<TaggerPrediction> none;
        const auto tit = data.tagger.find(doc.doc_id());
        const auto& tagger = tit == data.tagger.end() ? none : tit->second;
        const AgentVotes& agents = data.agents.at(doc.doc_id());

        report.predictions[doc.doc_id()] = plain_events(process_document(doc, tagger, agents, config, reflector).events);

        auto& t = tagger_only[doc.doc_id()];
        for (const auto& p : merge_tagger_predictions(tagger)) t.push_back(p.event);
        smoa_union[doc.doc_id()] = agents.events;
        auto& m = smoa_majority[doc.doc_id()];
        for (const auto& at : aggregate_by_trigger(agents)) {
            if (2 * static_cast<int>(at.trigger_votes.size()) <= agents.agent_count) continue;
            EventMention e{at.event.trigger, at.event.event_type, {}};
            for (std::size_t i = 0; i < at.event.arguments.size(); ++i) {
                if (2 * static_cast<int>(at.argument_votes[i].size()) > agents.agent_count) e.arguments.push_back(at.event.arguments[i]);
            }
            m.push_back(std::move(e));
        }
    }
    if (replay) {
        *replay = agent_replay_fixture(data.agent_lists);
        const ojson recorded = recorder.fixture();
        for (const auto& r : recorded.at("replies")) (*replay)["replies"].push_back(r);
    }
    report.aris = score_predictions(report.predictions, docs);
    report.tagger_only = score_predictions(tagger_only, docs);
    report.smoa_union = score_predictions(smoa_union, docs);
    report.smoa_majority = score_predictions(smoa_majority, docs);
    return report;
}

ojson to_json(const ScenarioReport& report) {
    return ojson{{"aris", to_json(report.aris)},
                 {"tagger_only", to_json(report.tagger_only)},
                 {"smoa_union", to_json(report.smoa_union)},
                 {"smoa_majority", to_json(report.smoa_majority)}};
}

}  // namespace aris
