#include "aris/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <future>
#include <ostream>
#include <sstream>

#include "aris/decomp_gen.hpp"
#include "aris/errors.hpp"
#include "aris/ingestion.hpp"
#include "aris/integration.hpp"
#include "aris/moa.hpp"
#include "aris/pipeline.hpp"
#include "aris/simulation.hpp"

#ifndef ARIS_DATA_DIR
#define ARIS_DATA_DIR "data"
#endif

namespace aris {

namespace {

std::filesystem::path data_dir() {
    if (const char* env = std::getenv("ARIS_DATA_DIR")) return env;
    return ARIS_DATA_DIR;
}

template <typename Fn>
auto parallel_map(std::size_t n, int parallelism, Fn fn) {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(n);
    const std::size_t width = static_cast<std::size_t>(std::max(1, parallelism));
    for (std::size_t base = 0; base < n; base += width) {
        std::vector<std::future<R>> jobs;
        for (std::size_t i = base; i < std::min(n, base + width); ++i) {
            jobs.push_back(std::async(std::launch::async, fn, i));
        }
        for (std::size_t k = 0; k < jobs.size(); ++k) out[base + k] = jobs[k].get();
    }
    return out;
}

std::string json_lines(const std::vector<ojson>& rows) {
    std::string out;
    for (const auto& r : rows) out += r.dump() + "\n";
    return out;
}

void write_metrics(const std::filesystem::path& dir, const Metrics& m) {
    write_file_atomic(dir / "metrics.json", to_json(m).dump(2) + "\n");
    write_file_atomic(dir / "metrics.txt", format_metrics_table(m));
}

bool any_gold(const std::vector<Document>& docs) {
    return std::any_of(docs.begin(), docs.end(), [](const Document& d) { return d.has_gold(); });
}

ArgumentGate parse_gate(const std::string& s) {
    if (s == "trgC") return ArgumentGate::TriggerClassification;
    if (s == "trgI") return ArgumentGate::TriggerIdentification;
    throw ConfigError("--metrics-gate must be trgC or trgI");
}

MoaOptions moa_options(const RunConfig& config) {
    MoaOptions o;
    o.parallelism = config.parallelism;
    return o;
}

std::vector<DevExample> collect_dev(const RunConfig& config, ChatBackend& backend, const std::vector<Document>& dev,
                                    const TaggerPredictions& tagger) {
    const auto agents = make_agents(config.agents, config.temperature, config.max_output_tokens);
    return parallel_map(dev.size(), config.parallelism, [&](std::size_t i) {
        const Document& doc = dev[i];
        auto moa = run_self_moa(doc, build_extraction_prompt(doc), agents, backend, moa_options(config));
        const auto it = tagger.find(doc.doc_id());
        return DevExample{doc, it == tagger.end() ? std::vector<TaggerPrediction>{} : it->second, std::move(moa.votes)};
    });
}

struct DocResult {
    std::vector<ProvenancedEvent> events;
    std::vector<AuditEntry> audit;
    std::vector<int> empty_agents;
};

}  // namespace

void validate(const RunConfig& c) {
    if (c.corpus.empty()) throw ConfigError("--corpus is required");
    if (c.tagger_predictions.empty()) throw ConfigError("--tagger-preds is required");
    if (c.backend.empty()) throw ConfigError("--backend is required");
    if (c.thresholds.has_value() == c.tune_corpus.has_value()) {
        throw ConfigError("give exactly one of --thresholds and --tune");
    }
    if (c.tune_corpus && !c.tune_tagger_predictions) throw ConfigError("--tune needs --tune-tagger-preds");
    if (c.agents < 1) throw ConfigError("--agents must be at least 1");
    if (!(c.overlap_threshold > 0.0) || c.overlap_threshold > 1.0) {
        throw ConfigError("--overlap-threshold must lie in (0, 1]");
    }
    if (c.temperature < 0.0) throw ConfigError("--temperature must be non-negative");
    if (c.parallelism < 1) throw ConfigError("--parallelism must be at least 1");
}

std::unique_ptr<ChatBackend> make_backend(const RunConfig& config, const std::vector<Document>& corpora) {
    const std::string& d = config.backend;
    if (d == "oracle") return std::make_unique<GoldOracleBackend>(corpora);
    if (d.rfind("replay:", 0) == 0) return ReplayBackend::from_file(d.substr(7));
    if (d.rfind("http://", 0) == 0 || d.rfind("https://", 0) == 0) {
        HttpChatBackend::Options o;
        o.url = d;
        o.model = config.model;
        if (const char* key = std::getenv(config.api_key_env.c_str())) o.api_key = key;
        return std::make_unique<HttpChatBackend>(o);
    }
    throw ConfigError("--backend must be an http(s) URL, replay:PATH or oracle");
}

ThresholdSet resolve_thresholds(const std::string& source) {
    if (source.rfind("table:", 0) == 0) {
        return find_threshold_row(load_threshold_table(data_dir() / "threshold_tables.json"), source.substr(6));
    }
    return load_threshold_set(source);
}

RunSummary run_pipeline(const RunConfig& config) {
    validate(config);
    const auto corpus = load_corpus(config.corpus);
    const auto tagger = load_tagger_predictions(config.tagger_predictions, corpus);

    std::vector<Document> dev;
    TaggerPredictions dev_tagger;
    if (config.tune_corpus) {
        dev = load_corpus(*config.tune_corpus);
        dev_tagger = load_tagger_predictions(*config.tune_tagger_predictions, dev);
    }
    std::vector<Document> all = corpus;
    all.insert(all.end(), dev.begin(), dev.end());
    auto backend = make_backend(config, all);

    RunSummary summary;
    std::optional<TuningResult> tuned;
    if (config.thresholds) {
        summary.thresholds = resolve_thresholds(*config.thresholds);
    } else {
        TuneOptions opts = config.tune;
        opts.overlap_threshold = config.overlap_threshold;
        opts.gate = config.metrics_gate;
        tuned = tune_thresholds(collect_dev(config, *backend, dev, dev_tagger), opts);
        summary.thresholds = tuned->thresholds;
    }
    validate(summary.thresholds);

    PipelineConfig pc{summary.thresholds, config.overlap_threshold, config.filter};
    const auto agents = make_agents(config.agents, config.temperature, config.max_output_tokens);
    const auto results = parallel_map(corpus.size(), config.parallelism, [&](std::size_t i) {
        const Document& doc = corpus[i];
        auto moa = run_self_moa(doc, build_extraction_prompt(doc), agents, *backend, moa_options(config));
        BackendReflector reflector(*backend, config.reflection);
        static const std::vector<TaggerPrediction> none;
        const auto it = tagger.find(doc.doc_id());
        auto outcome = process_document(doc, it == tagger.end() ? none : it->second, moa.votes, pc, reflector);
        return DocResult{std::move(outcome.events), reflector.take_audit(), std::move(moa.empty_agents)};
    });

    std::vector<ojson> prediction_rows;
    std::vector<ojson> audit_rows;
    PredictionsByDoc plain;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ojson events = ojson::array();
        for (const auto& e : results[i].events) events.push_back(to_json(e));
        prediction_rows.push_back(ojson{{"doc_id", corpus[i].doc_id()}, {"events", std::move(events)}});
        for (int a : results[i].empty_agents) {
            audit_rows.push_back(ojson{{"doc_id", corpus[i].doc_id()},
                                       {"stage", "agents"},
                                       {"agent_id", a},
                                       {"outcome", "empty"},
                                       {"detail", "unparseable reply after retry; agent contributes no events"}});
        }
        for (const auto& a : results[i].audit) audit_rows.push_back(to_json(a));
        plain[corpus[i].doc_id()] = plain_events(results[i].events);
        summary.events += results[i].events.size();
    }
    summary.documents = corpus.size();

    std::filesystem::create_directories(config.out);
    write_file_atomic(config.out / "predictions.jsonl", json_lines(prediction_rows));
    write_file_atomic(config.out / "reflection_audit.jsonl", json_lines(audit_rows));
    if (tuned) {
        write_file_atomic(config.out / "thresholds.json", to_json(summary.thresholds).dump(2) + "\n");
        write_file_atomic(config.out / "tuning.json", to_json(*tuned).dump(2) + "\n");
    }
    if (any_gold(corpus)) {
        summary.metrics = score_predictions(plain, corpus, config.metrics_gate);
        write_metrics(config.out, *summary.metrics);
    }
    return summary;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const CLI::Error*>(&e)) return 2;
    if (dynamic_cast<const ReferenceError*>(&e)) return 3;
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e)) return 4;
    if (dynamic_cast<const OrchestrationError*>(&e) || dynamic_cast<const NoReplyError*>(&e)) return 5;
    if (dynamic_cast<const ContractError*>(&e) || dynamic_cast<const ConsistencyError*>(&e) ||
        dynamic_cast<const LookupError*>(&e)) {
        return 6;
    }
    return 1;
}

namespace {

std::string error_kind(const std::exception& e) {
    if (dynamic_cast<const ConfigError*>(&e)) return "config_error";
    if (dynamic_cast<const ReferenceError*>(&e)) return "reference_error";
    if (dynamic_cast<const ParseError*>(&e)) return "parse_error";
    if (dynamic_cast<const ValidationError*>(&e)) return "validation_error";
    if (dynamic_cast<const OrchestrationError*>(&e)) return "orchestration_error";
    if (dynamic_cast<const NoReplyError*>(&e)) return "no_reply_error";
    if (dynamic_cast<const ContractError*>(&e)) return "contract_error";
    if (dynamic_cast<const ConsistencyError*>(&e)) return "consistency_error";
    if (dynamic_cast<const LookupError*>(&e)) return "lookup_error";
    return "error";
}

void report_error(std::ostream& err, const std::exception& e) {
    nlohmann::ordered_json j{{"error", error_kind(e)}, {"message", e.what()}};
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
        if (p->line() > 0) j["line"] = p->line();
    }
    err << j.dump() << "\n";
}

ReflectionStandIn parse_stand_in(const std::string& s) {
    if (s == "keep-all") return ReflectionStandIn::KeepAll;
    if (s == "drop-all") return ReflectionStandIn::DropAll;
    if (s == "gold") return ReflectionStandIn::Gold;
    throw ConfigError("--stand-in must be keep-all, drop-all or gold");
}

SearchRange parse_range(const std::string& s) {
    if (s == "quartile") return SearchRange::Quartile;
    if (s == "full") return SearchRange::Full;
    throw ConfigError("--range must be quartile or full");
}

FilterMode parse_filter(const std::string& s) {
    if (s == "three-way") return FilterMode::ThreeWay;
    if (s == "combined") return FilterMode::Combined;
    throw ConfigError("--filter-mode must be three-way or combined");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Reflective agreement event extraction"};
    app.set_config("--config", "", "TOML or INI file with option defaults");
    app.require_subcommand(1);

    RunConfig rc;
    std::string gate = "trgC";
    std::string stand_in = "keep-all";
    std::string range = "quartile";
    std::string filter_mode = "three-way";
    std::string tune_path;
    std::string thresholds;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--corpus", rc.corpus, "Corpus JSON lines")->required();
        sub->add_option("--tagger-preds", rc.tagger_predictions, "Tagger predictions JSON lines")->required();
        sub->add_option("--backend", rc.backend, "http(s)://host/path | replay:PATH | oracle")->required();
        sub->add_option("--model", rc.model, "Model name sent to an HTTP backend");
        sub->add_option("--agents", rc.agents, "Number of Self-MoA agents");
        sub->add_option("--temperature", rc.temperature, "Agent sampling temperature");
        sub->add_option("--max-output-tokens", rc.max_output_tokens, "Agent output token budget");
        sub->add_option("--overlap-threshold", rc.overlap_threshold, "Span overlap ratio for agreement");
        sub->add_option("--out", rc.out, "Output directory");
        sub->add_option("--seed", rc.seed, "Run seed");
        sub->add_option("--metrics-gate", gate, "trgC or trgI");
        sub->add_option("--parallelism", rc.parallelism, "Concurrent documents and agent calls");
        sub->add_option("--api-key-env", rc.api_key_env, "Environment variable holding the backend credential");
        sub->add_option("--step", rc.tune.step, "Threshold grid step");
        sub->add_option("--range", range, "Threshold search range: quartile or full");
        sub->add_option("--stand-in", stand_in, "Reflection stand-in while tuning: keep-all, drop-all or gold");
    };

    auto* extract = app.add_subcommand("extract", "Run the full pipeline over a corpus");
    add_common(extract);
    extract->add_option("--thresholds", thresholds, "Threshold JSON file or table:MODEL:DATASET:TEMP");
    extract->add_option("--tune", tune_path, "Dev corpus to tune thresholds on");
    extract->add_option("--tune-tagger-preds", rc.tune_tagger_predictions, "Tagger predictions for the dev corpus");
    extract->add_option("--filter-mode", filter_mode, "three-way or combined");
    extract->add_option("--tau", rc.filter.combined_tau, "Cutoff of the combined filter mode");
    extract->add_option("--reflection-retries", rc.reflection.retry_limit, "Re-asks after an unparseable reflection reply");

    auto* tune = app.add_subcommand("tune-thresholds", "Grid-search thresholds on a dev corpus");
    add_common(tune);

    std::string predictions_path;
    std::string gold_path;
    std::string eval_out = "aris-out";
    auto* evaluate = app.add_subcommand("evaluate", "Score a predictions file against gold");
    evaluate->add_option("--predictions", predictions_path, "predictions.jsonl")->required();
    evaluate->add_option("--corpus", gold_path, "Gold corpus JSON lines")->required();
    evaluate->add_option("--metrics-gate", gate, "trgC or trgI");
    evaluate->add_option("--out", eval_out, "Output directory");

    std::string decomp_corpus;
    std::string decomp_out = "decomp.jsonl";
    std::string variants = "all";
    std::uint64_t decomp_seed = 0;
    std::size_t negatives = 3;
    auto* gen = app.add_subcommand("gen-decomp", "Generate the decomposed instruction dataset");
    gen->add_option("--corpus", decomp_corpus, "Annotated corpus JSON lines")->required();
    gen->add_option("--variants", variants, "Comma-separated variant names or 'all'");
    gen->add_option("--seed", decomp_seed, "Sampling seed");
    gen->add_option("--negatives", negatives, "Negative n-grams per document (at most 3)");
    gen->add_option("--out", decomp_out, "Output JSON lines file");

    std::string scenario_path;
    std::string sim_out = "aris-sim";
    bool sim_export = false;
    auto* simulate = app.add_subcommand("simulate", "Run a seeded synthetic scenario");
    simulate->add_option("--scenario", scenario_path, "Scenario JSON (default: built-in scenario)");
    simulate->add_option("--out", sim_out, "Output directory");
    simulate->add_flag("--export", sim_export, "Also write corpus, tagger predictions and agent replay fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << nlohmann::ordered_json{{"error", "usage_error"}, {"message", e.what()}}.dump() << "\n";
        return 2;
    }

    try {
        if (extract->parsed() || tune->parsed()) {
            rc.metrics_gate = parse_gate(gate);
            rc.tune.range = parse_range(range);
            rc.tune.stand_in = parse_stand_in(stand_in);
            rc.tune.parallelism = rc.parallelism;
        }
        if (extract->parsed()) {
            rc.filter.mode = parse_filter(filter_mode);
            if (!thresholds.empty()) rc.thresholds = thresholds;
            if (!tune_path.empty()) rc.tune_corpus = tune_path;
            const auto summary = run_pipeline(rc);
            out << "documents: " << summary.documents << "\nevents: " << summary.events << "\n";
            if (summary.metrics) out << format_metrics_table(*summary.metrics);
            return 0;
        }
        if (tune->parsed()) {
            rc.thresholds = "unused";
            validate(rc);
            const auto dev = load_corpus(rc.corpus);
            const auto tagger = load_tagger_predictions(rc.tagger_predictions, dev);
            auto backend = make_backend(rc, dev);
            TuneOptions opts = rc.tune;
            opts.overlap_threshold = rc.overlap_threshold;
            opts.gate = rc.metrics_gate;
            const auto result = tune_thresholds(collect_dev(rc, *backend, dev, tagger), opts);
            std::filesystem::create_directories(rc.out);
            write_file_atomic(rc.out / "thresholds.json", to_json(result.thresholds).dump(2) + "\n");
            write_file_atomic(rc.out / "tuning.json", to_json(result).dump(2) + "\n");
            out << to_json(result.thresholds).dump(2) << "\n";
            return 0;
        }
        if (evaluate->parsed()) {
            const auto gold = load_corpus(gold_path);
            const auto index = index_by_id(gold);
            PredictionsByDoc preds;
            for (const auto& row : read_json_lines(predictions_path)) {
                const auto doc_id = row.at("doc_id").get<std::string>();
                if (!index.contains(doc_id)) throw ReferenceError("predictions reference unknown doc_id " + doc_id);
                auto& list = preds[doc_id];
                for (const auto& e : row.value("events", nlohmann::json::array())) list.push_back(event_from_json(e));
            }
            const auto metrics = score_predictions(preds, gold, parse_gate(gate));
            std::filesystem::create_directories(eval_out);
            write_metrics(eval_out, metrics);
            out << format_metrics_table(metrics);
            return 0;
        }
        if (gen->parsed()) {
            std::set<TaskVariant> chosen;
            if (variants == "all") {
                chosen.insert(kAllVariants.begin(), kAllVariants.end());
            } else {
                std::stringstream ss(variants);
                for (std::string name; std::getline(ss, name, ',');) chosen.insert(variant_from_name(name));
            }
            const auto corpus = load_corpus(decomp_corpus);
            GenerationOptions opts{decomp_seed, negatives};
            std::vector<ojson> rows;
            for (const auto& r : generate_dataset(corpus, chosen, opts)) rows.push_back(to_json(r));
            const std::filesystem::path target(decomp_out);
            if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
            write_file_atomic(target, json_lines(rows));
            out << "records: " << rows.size() << "\n";
            return 0;
        }
        if (simulate->parsed()) {
            const Scenario scenario = scenario_path.empty() ? default_scenario() : load_scenario(scenario_path);
            const ScenarioData data = materialize(scenario);
            ojson replay;
            const ScenarioReport report = run_scenario(scenario, data, &replay);
            const std::filesystem::path dir(sim_out);
            std::filesystem::create_directories(dir);
            write_file_atomic(dir / "simulation_report.json", to_json(report).dump(2) + "\n");
            write_metrics(dir, report.aris);
            if (sim_export) {
                std::vector<ojson> docs;
                std::vector<ojson> tagger_rows;
                for (const auto& d : data.corpus.documents) {
                    docs.push_back(document_to_json(d));
                    const auto it = data.tagger.find(d.doc_id());
                    tagger_rows.push_back(
                        tagger_record_to_json(d.doc_id(), it == data.tagger.end() ? std::vector<TaggerPrediction>{} : it->second));
                }
                write_file_atomic(dir / "corpus.jsonl", json_lines(docs));
                write_file_atomic(dir / "tagger.jsonl", json_lines(tagger_rows));
                write_file_atomic(dir / "replay.json", replay.dump(2) + "\n");
                write_file_atomic(dir / "thresholds.json", to_json(scenario.thresholds).dump(2) + "\n");
                write_file_atomic(dir / "scenario.json", to_json(scenario).dump(2) + "\n");
            }
            auto line = [&](const char* name, const Metrics& m) {
                out << name << " Trg-C F1 " << m.trigger_classification.f1() << "  Arg-C F1 "
                    << m.argument_classification.f1() << "\n";
            };
            line("aris         ", report.aris);
            line("tagger       ", report.tagger_only);
            line("smoa-union   ", report.smoa_union);
            line("smoa-majority", report.smoa_majority);
            return 0;
        }
    } catch (const std::exception& e) {
        report_error(err, e);
        return exit_code_for(e);
    }
    return 2;
}

}  // namespace aris
