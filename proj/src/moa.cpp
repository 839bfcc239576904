#include "aris/moa.hpp"

#include <algorithm>
#include <future>

#include "aris/errors.hpp"
#include "aris/ingestion.hpp"

namespace aris {

std::vector<AgentConfig> make_agents(int n, double temperature, int max_output_tokens) {
    if (n < 1) throw ConfigError("agent count must be at least 1");
    std::vector<AgentConfig> agents;
    for (int i = 1; i <= n; ++i) agents.push_back({i, temperature, max_output_tokens});
    return agents;
}

void validate_agents(std::span<const AgentConfig> agents) {
    if (agents.empty()) throw ContractError("self-MoA needs at least one agent");
    std::vector<int> ids;
    for (const auto& a : agents) {
        if (a.temperature < 0.0) throw ContractError("agent " + std::to_string(a.agent_id) + " has negative temperature");
        if (a.max_output_tokens <= 0) throw ContractError("agent " + std::to_string(a.agent_id) + " has no token budget");
        ids.push_back(a.agent_id);
    }
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] != static_cast<int>(i) + 1) throw ContractError("agent ids must be exactly 1..n");
    }
}

void VoteLedger::record(const EventKey& key, int agent_id) { votes_[key].insert(agent_id); }

const std::set<int>& VoteLedger::votes(const EventKey& key) const {
    auto it = votes_.find(key);
    if (it == votes_.end()) {
        throw LookupError("no votes recorded for event at [" + std::to_string(key.trigger_start) + ", " +
                          std::to_string(key.trigger_end) + ") " + key.event_type);
    }
    return it->second;
}

std::set<int> VoteLedger::trigger_votes(const TriggerId& trigger) const {
    std::set<int> out;
    const EventKey lower{trigger.start, trigger.end, trigger.event_type, {}};
    for (auto it = votes_.lower_bound(lower); it != votes_.end() && it->first.trigger_id() == trigger; ++it) {
        out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

std::set<int> VoteLedger::argument_votes(const TriggerId& trigger, const ArgumentKey& argument) const {
    std::set<int> out;
    const EventKey lower{trigger.start, trigger.end, trigger.event_type, {}};
    for (auto it = votes_.lower_bound(lower); it != votes_.end() && it->first.trigger_id() == trigger; ++it) {
        const auto& args = it->first.argument_keys;
        if (std::binary_search(args.begin(), args.end(), argument)) out.insert(it->second.begin(), it->second.end());
    }
    return out;
}

std::vector<EventMention> cleanup_predictions(std::vector<EventMention> raw, const Document& doc) {
    std::vector<EventMention> valid;
    valid.reserve(raw.size());
    for (auto& event : raw) {
        if (!doc.contains(event.trigger)) continue;
        std::erase_if(event.arguments, [&](const ArgumentMention& a) { return !doc.contains(a.span) || a.role.empty(); });
        normalize(event);
        valid.push_back(std::move(event));
    }
    std::sort(valid.begin(), valid.end(), position_less);
    valid.erase(std::unique(valid.begin(), valid.end(),
                            [](const EventMention& a, const EventMention& b) { return canonical_key(a) == canonical_key(b); }),
                valid.end());
    return valid;
}

AgentVotes aggregate_agent_lists(const Document& doc, const std::vector<std::vector<EventMention>>& per_agent) {
    AgentVotes out;
    out.agent_count = static_cast<int>(per_agent.size());
    std::vector<EventMention> raw;
    for (std::size_t i = 0; i < per_agent.size(); ++i) {
        for (const auto& event : cleanup_predictions(per_agent[i], doc)) {
            out.ledger.record(canonical_key(event), static_cast<int>(i) + 1);
            raw.push_back(event);
        }
    }
    out.events = cleanup_predictions(std::move(raw), doc);
    return out;
}

MoaResult run_self_moa(const Document& doc, const std::string& prompt, std::span<const AgentConfig> agents,
                       ChatBackend& backend, const MoaOptions& options) {
    validate_agents(agents);
    std::vector<AgentConfig> ordered(agents.begin(), agents.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.agent_id < b.agent_id; });

    struct Reply {
        std::vector<EventMention> events;
        bool parsed = false;
    };

    auto query = [&](const AgentConfig& agent) {
        ChatRequest request;
        request.messages.push_back({ChatRole::User, prompt});
        request.temperature = agent.temperature;
        request.max_output_tokens = agent.max_output_tokens;
        RequestContext context;
        context.doc_id = doc.doc_id();
        context.purpose = RequestContext::Purpose::Agent;
        context.agent_id = agent.agent_id;
        const std::string who = "doc " + doc.doc_id() + " agent " + std::to_string(agent.agent_id);
        for (int attempt = 0; attempt <= options.parse_retries; ++attempt) {
            const std::string raw = complete_with_retries(backend, request, context, options.transport, who);
            try {
                return Reply{parse_agent_output(raw, doc), true};
            } catch (const ParseError&) {
            }
        }
        return Reply{};
    };

    std::vector<Reply> replies(ordered.size());
    const std::size_t width = static_cast<std::size_t>(std::max(1, options.parallelism));
    for (std::size_t begin = 0; begin < ordered.size(); begin += width) {
        const std::size_t end = std::min(ordered.size(), begin + width);
        std::vector<std::future<Reply>> pending;
        for (std::size_t i = begin; i < end; ++i) {
            pending.push_back(std::async(std::launch::async, query, std::cref(ordered[i])));
        }
        for (std::size_t i = begin; i < end; ++i) replies[i] = pending[i - begin].get();
    }

    MoaResult result;
    std::vector<std::vector<EventMention>> per_agent;
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (!replies[i].parsed) result.empty_agents.push_back(ordered[i].agent_id);
        per_agent.push_back(std::move(replies[i].events));
    }
    result.votes = aggregate_agent_lists(doc, per_agent);
    return result;
}

std::vector<AgentTrigger> aggregate_by_trigger(const AgentVotes& votes) {
    std::map<TriggerId, EventMention> merged;
    for (const auto& event : votes.events) {
        auto [it, inserted] = merged.try_emplace(trigger_id(event), event);
        if (!inserted) {
            auto& args = it->second.arguments;
            args.insert(args.end(), event.arguments.begin(), event.arguments.end());
        }
    }
    std::vector<AgentTrigger> out;
    for (auto& [id, event] : merged) {
        normalize(event);
        AgentTrigger t;
        t.trigger_votes = votes.ledger.trigger_votes(id);
        for (const auto& a : event.arguments) t.argument_votes.push_back(votes.ledger.argument_votes(id, argument_key(a)));
        t.event = std::move(event);
        out.push_back(std::move(t));
    }
    std::sort(out.begin(), out.end(), [](const AgentTrigger& a, const AgentTrigger& b) { return position_less(a.event, b.event); });
    return out;
}

}  // namespace aris
