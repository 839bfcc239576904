#include "aris/confidence.hpp"

#include <cmath>
#include <sstream>

#include "aris/errors.hpp"

namespace aris {

void validate(const ThresholdSet& thresholds) {
    for (const auto* level : {&thresholds.trigger, &thresholds.argument}) {
        if (!(level->tagger_keep >= 0.0)) throw ConfigError("θ_S must be non-negative");
        if (!(level->agent_drop >= 0.0 && level->agent_drop <= level->agent_keep)) {
            throw ConfigError("agent thresholds need 0 <= drop <= keep");
        }
    }
}

ojson to_json(const ThresholdLevel& level) {
    return ojson{{"theta_S", level.tagger_keep}, {"theta_smoa_hi", level.agent_keep}, {"theta_smoa_lo", level.agent_drop}};
}

ojson to_json(const ThresholdSet& thresholds) {
    return ojson{{"trigger", to_json(thresholds.trigger)}, {"argument", to_json(thresholds.argument)}};
}

namespace {

ThresholdLevel level_from_json(const nlohmann::json& j) {
    return {j.at("theta_S").get<double>(), j.at("theta_smoa_hi").get<double>(), j.at("theta_smoa_lo").get<double>()};
}

}  // namespace

ThresholdSet threshold_set_from_json(const nlohmann::json& j) {
    ThresholdSet t;
    try {
        t.trigger = level_from_json(j.at("trigger"));
        t.argument = level_from_json(j.at("argument"));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad threshold set: ") + e.what(), j.dump());
    }
    validate(t);
    return t;
}

ThresholdSet load_threshold_set(const std::filesystem::path& path) {
    try {
        return threshold_set_from_json(nlohmann::json::parse(read_file(path)));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::vector<ThresholdTableRow> load_threshold_table(const std::filesystem::path& path) {
    std::vector<ThresholdTableRow> rows;
    try {
        const auto root = nlohmann::json::parse(read_file(path));
        for (const auto& r : root.at("rows")) {
            rows.push_back({r.at("model").get<std::string>(), r.at("dataset").get<std::string>(),
                            r.at("temperature").get<double>(), threshold_set_from_json(r.at("thresholds"))});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return rows;
}

ThresholdSet find_threshold_row(const std::vector<ThresholdTableRow>& table, const std::string& selector) {
    std::stringstream ss(selector);
    std::string model, dataset, temp;
    std::getline(ss, model, ':');
    std::getline(ss, dataset, ':');
    std::getline(ss, temp);
    double t = 0.0;
    try {
        t = std::stod(temp);
    } catch (const std::exception&) {
        throw ConfigError("threshold selector must be MODEL:DATASET:TEMP, got '" + selector + "'");
    }
    for (const auto& row : table) {
        if (row.model == model && row.dataset == dataset && std::abs(row.temperature - t) < 1e-9) return row.thresholds;
    }
    throw LookupError("no threshold row for " + selector);
}

double score_smoa_confidence(const EventMention& event, const VoteLedger& ledger, int agent_count) {
    if (agent_count < 1) throw ContractError("agent count must be at least 1");
    const auto& votes = ledger.votes(canonical_key(event));
    return static_cast<double>(votes.size()) / static_cast<double>(agent_count);
}

Partition filter_disagreements(std::span<const ScoredDisagreement> items, const ThresholdLevel& level,
                               const FilterPolicy& policy) {
    Partition p;
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& item = items[i];
        const bool tagger = item.source == Source::Tagger;
        if (policy.mode == FilterMode::Combined) {
            // Disagreements are single-source, so the combined score is the lone confidence.
            if (item.confidence >= policy.combined_tau) {
                (tagger ? p.retained_tagger : p.retained_smoa).push_back(i);
            } else {
                p.reflect.push_back(i);
            }
            continue;
        }
        if (tagger) {
            (item.confidence >= level.tagger_keep ? p.retained_tagger : p.removed).push_back(i);
        } else if (item.confidence >= level.agent_keep) {
            p.retained_smoa.push_back(i);
        } else if (item.confidence < level.agent_drop) {
            p.removed.push_back(i);
        } else {
            p.reflect.push_back(i);
        }
    }
    return p;
}

Partition filter_disagreements(const std::vector<DisagreementEvent>& items, const ThresholdLevel& level,
                               const VoteLedger& ledger, int agent_count, const FilterPolicy& policy) {
    std::vector<ScoredDisagreement> scored;
    scored.reserve(items.size());
    for (const auto& item : items) {
        const double c = item.source == Source::Tagger ? item.tagger_confidence
                                                       : score_smoa_confidence(item.event, ledger, agent_count);
        scored.push_back({item.source, c});
    }
    return filter_disagreements(std::span<const ScoredDisagreement>(scored), level, policy);
}

}  // namespace aris
