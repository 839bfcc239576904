#include "aris/event_model.hpp"

#include <algorithm>

#include "aris/errors.hpp"

namespace aris {

namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0U) == 0x80U; }

}  // namespace

std::size_t utf8_length(std::string_view text) noexcept {
    std::size_t n = 0;
    for (unsigned char c : text) {
        if (!is_continuation(c)) ++n;
    }
    return n;
}

bool Span::well_formed() const { return start < end && utf8_length(text) == end - start; }

Span make_span(std::string text, std::size_t start, std::size_t end) {
    Span span{std::move(text), start, end};
    if (!span.well_formed()) {
        throw ValidationError("malformed span \"" + span.text + "\" [" + std::to_string(start) + ", " +
                              std::to_string(end) + ")");
    }
    return span;
}

void normalize(EventMention& event) {
    auto& args = event.arguments;
    std::stable_sort(args.begin(), args.end(), [](const ArgumentMention& a, const ArgumentMention& b) {
        return std::tie(a.span.start, a.span.end, a.role) < std::tie(b.span.start, b.span.end, b.role);
    });
    args.erase(std::unique(args.begin(), args.end(),
                           [](const ArgumentMention& a, const ArgumentMention& b) {
                               return a.span.start == b.span.start && a.span.end == b.span.end &&
                                      a.role == b.role;
                           }),
               args.end());
}

EventMention normalized(EventMention event) {
    normalize(event);
    return event;
}

ArgumentKey argument_key(const ArgumentMention& argument) {
    return {argument.span.start, argument.span.end, argument.role};
}

TriggerId trigger_id(const EventMention& event) {
    return {event.trigger.start, event.trigger.end, event.event_type};
}

EventKey canonical_key(const EventMention& event) {
    EventKey key{event.trigger.start, event.trigger.end, event.event_type, {}};
    key.argument_keys.reserve(event.arguments.size());
    for (const auto& arg : event.arguments) key.argument_keys.push_back(argument_key(arg));
    std::sort(key.argument_keys.begin(), key.argument_keys.end());
    key.argument_keys.erase(std::unique(key.argument_keys.begin(), key.argument_keys.end()),
                            key.argument_keys.end());
    return key;
}

double span_overlap(const Span& a, const Span& b) {
    const std::size_t lo = std::max(a.start, b.start);
    const std::size_t hi = std::min(a.end, b.end);
    if (hi <= lo) return 0.0;
    const std::size_t inter = hi - lo;
    const std::size_t uni = std::max(a.end, b.end) - std::min(a.start, b.start);
    return static_cast<double>(inter) / static_cast<double>(uni);
}

bool position_less(const EventMention& a, const EventMention& b) {
    if (a.trigger.start != b.trigger.start) return a.trigger.start < b.trigger.start;
    if (a.trigger.end != b.trigger.end) return a.trigger.end < b.trigger.end;
    if (a.event_type != b.event_type) return a.event_type < b.event_type;
    return canonical_key(a) < canonical_key(b);
}

Document::Document(std::string doc_id, std::string text, std::vector<EventMention> gold_events)
    : doc_id_(std::move(doc_id)), text_(std::move(text)), gold_(std::move(gold_events)) {
    char_to_byte_.clear();
    for (std::size_t i = 0; i < text_.size(); ++i) {
        if (!is_continuation(static_cast<unsigned char>(text_[i]))) char_to_byte_.push_back(i);
    }
    char_to_byte_.push_back(text_.size());
    for (auto& event : gold_) normalize(event);
}

std::string_view Document::slice(std::size_t start, std::size_t end) const {
    if (start > end || end > length()) return {};
    const std::size_t b0 = char_to_byte_[start];
    return std::string_view(text_).substr(b0, char_to_byte_[end] - b0);
}

bool Document::contains(const Span& span) const {
    if (!span.well_formed() || span.end > length()) return false;
    return slice(span.start, span.end) == span.text;
}

bool Document::contains(const EventMention& event) const {
    if (!contains(event.trigger)) return false;
    return std::all_of(event.arguments.begin(), event.arguments.end(),
                       [this](const ArgumentMention& a) { return contains(a.span); });
}

std::size_t Document::char_offset(std::size_t byte) const {
    auto it = std::lower_bound(char_to_byte_.begin(), char_to_byte_.end(), byte);
    return static_cast<std::size_t>(it - char_to_byte_.begin());
}

std::optional<Span> locate_span(const Document& doc, std::string_view surface, std::size_t search_from) {
    if (surface.empty() || search_from > doc.length()) return std::nullopt;
    const std::size_t pos = doc.text().find(surface, doc.byte_offset(search_from));
    if (pos == std::string::npos) return std::nullopt;
    // A match starting inside a multi-byte sequence cannot be a real occurrence.
    if (is_continuation(static_cast<unsigned char>(doc.text()[pos]))) {
        return locate_span(doc, surface, doc.char_offset(pos));
    }
    const std::size_t start = doc.char_offset(pos);
    return Span{std::string(surface), start, start + utf8_length(surface)};
}

}  // namespace aris
