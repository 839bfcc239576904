#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace aris {

/// Contiguous half-open character range [start, end) of a passage together with
/// its surface string. Offsets count Unicode code points, not bytes.
struct Span {
    std::string text;
    std::size_t start = 0;
    std::size_t end = 0;

    [[nodiscard]] std::size_t length() const noexcept { return end - start; }
    /// Checks 0 <= start < end and that `text` has exactly end - start code points.
    [[nodiscard]] bool well_formed() const;

    friend bool operator==(const Span&, const Span&) = default;
};

/// Builds a span, throwing ValidationError when the invariants do not hold.
Span make_span(std::string text, std::size_t start, std::size_t end);

struct ArgumentMention {
    Span span;
    std::string role;

    friend bool operator==(const ArgumentMention&, const ArgumentMention&) = default;
};

struct EventMention {
    Span trigger;
    std::string event_type;
    std::vector<ArgumentMention> arguments;

    friend bool operator==(const EventMention&, const EventMention&) = default;
};

/// Restores the EventMention invariants: arguments ordered by (start, end, role),
/// identical (start, end, role) triples collapsed to one.
void normalize(EventMention& event);
[[nodiscard]] EventMention normalized(EventMention event);

struct ArgumentKey {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string role;

    friend auto operator<=>(const ArgumentKey&, const ArgumentKey&) = default;
    friend bool operator==(const ArgumentKey&, const ArgumentKey&) = default;
};

/// Identifies a trigger independently of its arguments. Arguments carry this to
/// find their owning trigger when the final event set is reassembled.
struct TriggerId {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string event_type;

    friend auto operator<=>(const TriggerId&, const TriggerId&) = default;
    friend bool operator==(const TriggerId&, const TriggerId&) = default;
};

/// Full identity of a prediction: trigger offsets, type and the sorted argument set.
struct EventKey {
    std::size_t trigger_start = 0;
    std::size_t trigger_end = 0;
    std::string event_type;
    std::vector<ArgumentKey> argument_keys;

    [[nodiscard]] TriggerId trigger_id() const { return {trigger_start, trigger_end, event_type}; }

    friend auto operator<=>(const EventKey&, const EventKey&) = default;
    friend bool operator==(const EventKey&, const EventKey&) = default;
};

[[nodiscard]] EventKey canonical_key(const EventMention& event);
[[nodiscard]] TriggerId trigger_id(const EventMention& event);
[[nodiscard]] ArgumentKey argument_key(const ArgumentMention& argument);

/// Character-range Jaccard: |a ∩ b| / |a ∪ b|.
[[nodiscard]] double span_overlap(const Span& a, const Span& b);

/// A passage with optional gold annotation. Keeps a code point to byte index so
/// spans can be sliced and located in O(1)/O(n).
class Document {
  public:
    Document() = default;
    Document(std::string doc_id, std::string text, std::vector<EventMention> gold_events = {});

    [[nodiscard]] const std::string& doc_id() const noexcept { return doc_id_; }
    [[nodiscard]] const std::string& text() const noexcept { return text_; }
    [[nodiscard]] const std::vector<EventMention>& gold_events() const noexcept { return gold_; }
    [[nodiscard]] bool has_gold() const noexcept { return !gold_.empty(); }

    /// Length of the passage in code points.
    [[nodiscard]] std::size_t length() const noexcept { return char_to_byte_.size() - 1; }
    [[nodiscard]] std::string_view slice(std::size_t start, std::size_t end) const;
    /// Document-containment: text[start, end) equals the span's surface string.
    [[nodiscard]] bool contains(const Span& span) const;
    [[nodiscard]] bool contains(const EventMention& event) const;

    /// Byte offset of a code point offset; `offset` may equal length().
    [[nodiscard]] std::size_t byte_offset(std::size_t offset) const { return char_to_byte_.at(offset); }
    /// Code point offset of a byte offset that starts a code point.
    [[nodiscard]] std::size_t char_offset(std::size_t byte) const;

  private:
    std::string doc_id_;
    std::string text_;
    std::vector<EventMention> gold_;
    std::vector<std::size_t> char_to_byte_{0};
};

/// First occurrence of `surface` starting at or after `search_from`.
[[nodiscard]] std::optional<Span> locate_span(const Document& doc, std::string_view surface,
                                              std::size_t search_from = 0);

/// Number of code points in a UTF-8 string. Invalid lead bytes count as one.
[[nodiscard]] std::size_t utf8_length(std::string_view text) noexcept;

/// Orders events by trigger position, then type, then argument set.
[[nodiscard]] bool position_less(const EventMention& a, const EventMention& b);

}  // namespace aris
