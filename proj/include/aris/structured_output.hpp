#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

namespace aris {

/// Body of a fenced model answer of the form `Key = <json>` (or a bare JSON value).
struct FencedAnswer {
    std::string key;  // empty when the fence held a bare JSON value
    nlohmann::ordered_json value;
};

/// Content of the first ``` ... ``` block, with an optional language tag line dropped.
[[nodiscard]] std::optional<std::string> extract_fence(std::string_view raw);

/// Extracts and parses the first fenced block. Throws ParseError carrying `raw`.
[[nodiscard]] FencedAnswer parse_fenced_answer(std::string_view raw);

/// JSON rendered on one line with ", " and ": " separators, the way the prompt
/// examples write it: {"dead": "Trigger", "shot": "Non-Trigger"}.
[[nodiscard]] std::string inline_json(const nlohmann::ordered_json& value);

/// "```\nKey = <inline json>\n```"
[[nodiscard]] std::string render_fenced(std::string_view key, const nlohmann::ordered_json& value);

}  // namespace aris
