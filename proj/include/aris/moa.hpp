#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "aris/chat.hpp"
#include "aris/event_model.hpp"

namespace aris {

struct AgentConfig {
    int agent_id = 1;
    double temperature = 0.9;
    int max_output_tokens = 2048;
};

/// n agents with ids 1..n sharing one temperature.
std::vector<AgentConfig> make_agents(int n, double temperature, int max_output_tokens = 2048);

/// Throws ContractError unless ids are distinct and cover exactly 1..n.
void validate_agents(std::span<const AgentConfig> agents);

/// Which agents emitted each whole event.
class VoteLedger {
  public:
    void record(const EventKey& key, int agent_id);

    [[nodiscard]] bool contains(const EventKey& key) const { return votes_.contains(key); }
    /// Throws LookupError for an unknown key.
    [[nodiscard]] const std::set<int>& votes(const EventKey& key) const;
    [[nodiscard]] const std::map<EventKey, std::set<int>>& entries() const noexcept { return votes_; }
    [[nodiscard]] bool empty() const noexcept { return votes_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return votes_.size(); }

    /// Agents that emitted any event with this trigger and type, whatever its arguments.
    [[nodiscard]] std::set<int> trigger_votes(const TriggerId& trigger) const;
    /// Agents whose event for `trigger` included `argument`.
    [[nodiscard]] std::set<int> argument_votes(const TriggerId& trigger, const ArgumentKey& argument) const;

    friend bool operator==(const VoteLedger&, const VoteLedger&) = default;

  private:
    std::map<EventKey, std::set<int>> votes_;
};

/// The cleaned Self-MoA prediction set of one document with its vote bookkeeping.
struct AgentVotes {
    std::vector<EventMention> events;
    VoteLedger ledger;
    int agent_count = 0;
};

struct MoaOptions {
    int parallelism = 4;
    /// Extra attempts after an unparseable reply before the agent counts as empty.
    int parse_retries = 1;
    RetryPolicy transport{};
};

struct MoaResult {
    AgentVotes votes;
    /// Agents whose replies stayed unparseable and contributed nothing.
    std::vector<int> empty_agents;
};

/// Queries every agent with `prompt`, parses and grounds each reply, and folds
/// the replies in agent-id order into a deduplicated, cleaned union.
MoaResult run_self_moa(const Document& doc, const std::string& prompt, std::span<const AgentConfig> agents,
                       ChatBackend& backend, const MoaOptions& options = {});

/// Unions per-agent prediction lists (index i belongs to agent i + 1) without a backend.
AgentVotes aggregate_agent_lists(const Document& doc, const std::vector<std::vector<EventMention>>& per_agent);

/// Drops events whose trigger fails Document-containment (and arguments that
/// fail it), collapses identical events and sorts by (trigger.start, trigger.end, type).
std::vector<EventMention> cleanup_predictions(std::vector<EventMention> raw, const Document& doc);

/// One Self-MoA trigger with the union of arguments proposed under it and the
/// agents backing the trigger and each argument.
struct AgentTrigger {
    EventMention event;
    std::set<int> trigger_votes;
    std::vector<std::set<int>> argument_votes;  // aligned with event.arguments
};

/// Collapses whole-event predictions sharing a trigger id into one AgentTrigger,
/// in trigger position order.
std::vector<AgentTrigger> aggregate_by_trigger(const AgentVotes& votes);

}  // namespace aris
