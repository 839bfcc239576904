#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aris/chat.hpp"
#include "aris/event_model.hpp"
#include "aris/json_io.hpp"

namespace aris {

struct ReflectionConfig {
    double temperature = 0.1;
    int max_output_tokens = 4096;
    double length_penalty = 1.05;
    /// Re-asks after an unparseable reply before falling back to keep-all.
    int retry_limit = 1;
};

enum class TriggerLabel { Trigger, NonTrigger };

struct TriggerVerdict {
    std::map<std::string, TriggerLabel> labels;
    /// Candidates the reply did not mention; they are labelled Trigger.
    std::vector<std::string> defaulted;

    [[nodiscard]] bool confirms(const std::string& phrase) const {
        auto it = labels.find(phrase);
        return it == labels.end() || it->second == TriggerLabel::Trigger;
    }
};

struct ArgumentJudgement {
    std::string text;
    std::string role;
    bool is_correct = false;

    friend bool operator==(const ArgumentJudgement&, const ArgumentJudgement&) = default;
};

/// Same order and length as the queried candidates.
using ArgumentVerdict = std::vector<ArgumentJudgement>;

/// Distinct candidate phrases in first-seen order.
std::vector<std::string> candidate_phrases(const std::vector<Span>& candidates);

std::string build_trigger_prompt(const Document& doc, const std::vector<Span>& candidates);
/// Throws ContractError for an empty candidate list or an empty role.
std::string build_argument_prompt(const Document& doc, const EventMention& trigger,
                                  const std::vector<ArgumentMention>& candidates);

TriggerVerdict parse_trigger_response(std::string_view raw, const std::vector<Span>& candidates);
ArgumentVerdict parse_argument_response(std::string_view raw, const std::vector<ArgumentMention>& candidates);

/// Well-formed replies in the format the prompts ask for.
std::string render_trigger_reply(const std::map<std::string, TriggerLabel>& labels,
                                 const std::vector<std::string>& order);
std::string render_argument_reply(const ArgumentVerdict& verdict);

/// Disagreements left after confidence filtering.
struct ReflectionQuery {
    /// Ambiguous triggers; `arguments` holds the ambiguous arguments that are
    /// only asked about if the trigger is confirmed.
    std::vector<EventMention> triggers;
    /// Already accepted triggers whose listed arguments are ambiguous.
    std::vector<EventMention> argument_sets;

    [[nodiscard]] bool empty() const { return triggers.empty() && argument_sets.empty(); }
};

/// Subsets of the query: confirmed triggers with their confirmed arguments, and
/// each argument set reduced to its confirmed arguments.
struct ReflectionResult {
    std::vector<EventMention> triggers;
    std::vector<EventMention> argument_sets;
};

struct AuditEntry {
    std::string doc_id;
    std::string stage;  // "triggers" | "arguments"
    std::optional<TriggerId> trigger;
    int attempt = 0;
    std::string prompt;
    std::string reply;
    std::string outcome;  // "parsed" | "parse_error" | "fallback"
    std::string detail;
};

ojson to_json(const AuditEntry& entry);

class Reflector {
  public:
    virtual ~Reflector() = default;
    virtual ReflectionResult reflect(const ReflectionQuery& query, const Document& doc) = 0;
};

/// Triggers first (one prompt per document), then one argument prompt per
/// surviving trigger. Unparseable replies are retried `retry_limit` times, then
/// every queried candidate is kept and a "fallback" audit entry is written.
ReflectionResult reflect(const ReflectionQuery& query, const Document& doc, ChatBackend& backend,
                         const ReflectionConfig& config = {}, std::vector<AuditEntry>* audit = nullptr,
                         const RetryPolicy& transport = {});

class BackendReflector : public Reflector {
  public:
    BackendReflector(ChatBackend& backend, ReflectionConfig config, RetryPolicy transport = {})
        : backend_(backend), config_(config), transport_(transport) {}

    ReflectionResult reflect(const ReflectionQuery& query, const Document& doc) override;

    /// Audit entries of the most recent reflect() call.
    [[nodiscard]] const std::vector<AuditEntry>& audit() const noexcept { return audit_; }
    std::vector<AuditEntry> take_audit() { return std::exchange(audit_, {}); }

  private:
    ChatBackend& backend_;
    ReflectionConfig config_;
    RetryPolicy transport_;
    std::vector<AuditEntry> audit_;
};

/// Confirms everything: the reflection stand-in used while tuning thresholds.
class KeepAllReflector : public Reflector {
  public:
    ReflectionResult reflect(const ReflectionQuery& query, const Document& doc) override;
};

class DropAllReflector : public Reflector {
  public:
    ReflectionResult reflect(const ReflectionQuery& query, const Document& doc) override;
};

}  // namespace aris
