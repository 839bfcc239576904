#include "aris/structured_output.hpp"

#include <cctype>

#include "aris/errors.hpp"

namespace aris {

namespace {

constexpr std::string_view kFence = "```";

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    }
    return true;
}

}  // namespace

std::optional<std::string> extract_fence(std::string_view raw) {
    const auto open = raw.find(kFence);
    if (open == std::string_view::npos) return std::nullopt;
    const auto body_start = open + kFence.size();
    const auto close = raw.find(kFence, body_start);
    if (close == std::string_view::npos) return std::nullopt;
    std::string_view body = raw.substr(body_start, close - body_start);
    // ```json\n...``` style language tag
    if (const auto nl = body.find('\n'); nl != std::string_view::npos) {
        const auto first = trim(body.substr(0, nl));
        if (is_identifier(first) && !trim(body.substr(nl + 1)).empty()) body = body.substr(nl + 1);
    }
    return std::string(trim(body));
}

FencedAnswer parse_fenced_answer(std::string_view raw) {
    auto body = extract_fence(raw);
    if (!body) throw ParseError("no fenced block in reply", std::string(raw));
    std::string_view text = *body;
    FencedAnswer answer;
    if (!text.empty() && text.front() != '[' && text.front() != '{' && text.front() != '"') {
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError("fenced block has no `Key =` prefix", std::string(raw));
        const auto key = trim(text.substr(0, eq));
        if (!is_identifier(key)) throw ParseError("invalid answer key '" + std::string(key) + "'", std::string(raw));
        answer.key = std::string(key);
        text = trim(text.substr(eq + 1));
    }
    try {
        answer.value = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::ordered_json::parse_error& e) {
        throw ParseError(std::string("unparseable answer body: ") + e.what(), std::string(raw));
    }
    return answer;
}

std::string inline_json(const nlohmann::ordered_json& value) {
    if (value.is_array()) {
        std::string out = "[";
        bool first = true;
        for (const auto& item : value) {
            if (!first) out += ", ";
            first = false;
            out += inline_json(item);
        }
        return out + "]";
    }
    if (value.is_object()) {
        std::string out = "{";
        bool first = true;
        for (const auto& [k, v] : value.items()) {
            if (!first) out += ", ";
            first = false;
            out += nlohmann::ordered_json(k).dump() + ": " + inline_json(v);
        }
        return out + "}";
    }
    return value.dump();
}

std::string render_fenced(std::string_view key, const nlohmann::ordered_json& value) {
    return "```\n" + std::string(key) + " = " + inline_json(value) + "\n```";
}

}  // namespace aris
