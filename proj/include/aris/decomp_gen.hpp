#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "aris/event_model.hpp"
#include "aris/json_io.hpp"

namespace aris {

/// The thirteen decomposed task variants, in curriculum table order.
enum class TaskVariant {
    FullStructure,
    RoleAblated,
    TriggerDetection,
    TriggerTypeSingle,
    TriggerTypeMulti,
    DiscriminationMulti,
    DiscriminationSingle,
    EventDetectionJoint,
    ArgumentExtractionSingle,
    ArgumentExtractionMulti,
    ArgumentExtractionJoint,
    RoleAssignmentSingle,
    RoleAssignmentMulti,
};

inline constexpr std::array<TaskVariant, 13> kAllVariants = {
    TaskVariant::FullStructure,           TaskVariant::RoleAblated,
    TaskVariant::TriggerDetection,        TaskVariant::TriggerTypeSingle,
    TaskVariant::TriggerTypeMulti,        TaskVariant::DiscriminationMulti,
    TaskVariant::DiscriminationSingle,    TaskVariant::EventDetectionJoint,
    TaskVariant::ArgumentExtractionSingle, TaskVariant::ArgumentExtractionMulti,
    TaskVariant::ArgumentExtractionJoint, TaskVariant::RoleAssignmentSingle,
    TaskVariant::RoleAssignmentMulti,
};

std::string_view variant_name(TaskVariant v);
TaskVariant variant_from_name(std::string_view name);
/// Top-level key of the variant's fenced answer (Events, Triggers, ClassificationMap, ...).
std::string_view answer_key(TaskVariant v);

// --- part-of-speech gate -----------------------------------------------------

enum class PosTag { Noun, Verb, Determiner, Other };

class PosTagger {
  public:
    virtual ~PosTagger() = default;
    /// Tag of tokens[index]; tokens are whitespace tokens with edge punctuation removed.
    [[nodiscard]] virtual PosTag tag(const std::vector<std::string>& tokens, std::size_t index) const = 0;
};

/// Closed-class lexicon plus suffix rules; anything unrecognised is a noun.
class HeuristicPosTagger : public PosTagger {
  public:
    [[nodiscard]] PosTag tag(const std::vector<std::string>& tokens, std::size_t index) const override;
};

/// Whitespace token with leading/trailing punctuation stripped, in code point offsets.
struct Token {
    std::string text;
    std::size_t start = 0;
    std::size_t end = 0;
};

std::vector<Token> whitespace_tokens(const Document& doc);

/// Up to k (<= 3) n-grams (n <= 3) that occur exactly once in the passage, share
/// no substring with a gold trigger, sit within three tokens of a trigger and
/// pass the POS gate (noun, verb or determiner). Returned in passage order.
std::vector<Span> sample_negative_ngrams(const Document& doc, const std::vector<Span>& gold_triggers, std::size_t k,
                                         std::uint64_t seed, const PosTagger& tagger = HeuristicPosTagger{});

// --- records -----------------------------------------------------------------

/// What a single-target variant is about. Whole-document variants leave it empty.
struct InstructionTarget {
    std::optional<std::size_t> event;     // index into doc.gold_events()
    std::optional<std::size_t> argument;  // index into that event's arguments
    std::vector<std::string> phrases;     // discrimination candidates
};

struct InstructionRecord {
    TaskVariant variant = TaskVariant::FullStructure;
    std::string prompt;
    std::string answer;
    std::string doc_id;
    InstructionTarget target;
};

ojson to_json(const InstructionRecord& record);

/// Renders one variant for one target. Throws ContractError when the target
/// does not fit the variant (missing trigger, argument out of range, ...).
InstructionRecord render_instruction(TaskVariant variant, const Document& doc, const InstructionTarget& target = {});

/// The full-structure extraction prompt sent to every agent (no answer).
std::string build_extraction_prompt(const Document& doc);

struct GenerationOptions {
    std::uint64_t seed = 0;
    std::size_t negatives_per_document = 3;
};

/// Records in document order, then variant order, then target index.
std::vector<InstructionRecord> generate_dataset(const std::vector<Document>& corpus, const std::set<TaskVariant>& variants,
                                                const GenerationOptions& options = {},
                                                const PosTagger& tagger = HeuristicPosTagger{});

}  // namespace aris
