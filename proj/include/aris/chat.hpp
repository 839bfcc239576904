#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "aris/json_io.hpp"

#include "aris/errors.hpp"

namespace aris {

enum class ChatRole { System, User, Assistant };

struct ChatMessage {
    ChatRole role = ChatRole::User;
    std::string content;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    double temperature = 0.0;
    int max_output_tokens = 1024;
    std::optional<double> length_penalty;
};

/// What a request is for. Never sent over the wire; replay and oracle backends key on it.
struct RequestContext {
    enum class Purpose { Agent, ReflectTriggers, ReflectArguments };

    std::string doc_id;
    Purpose purpose = Purpose::Agent;
    int agent_id = 0;
    /// Owning trigger for argument reflection: start, end, event type.
    std::size_t trigger_start = 0;
    std::size_t trigger_end = 0;
    std::string event_type;
};

/// Transport-level failure; eligible for retry.
class TransportError : public Error {
  public:
    using Error::Error;
};

/// The backend has no answer for this request and never will; not retried.
class NoReplyError : public Error {
  public:
    using Error::Error;
};

/// A chat-completion service. Implementations must be callable from several threads at once.
class ChatBackend {
  public:
    virtual ~ChatBackend() = default;
    virtual std::string complete(const ChatRequest& request, const RequestContext& context) = 0;
};

/// Retries TransportError up to `attempts` times in total with doubling backoff.
/// Anything still failing becomes an OrchestrationError naming `who`.
struct RetryPolicy {
    int attempts = 3;
    std::chrono::milliseconds initial_backoff{200};
};

std::string complete_with_retries(ChatBackend& backend, const ChatRequest& request, const RequestContext& context,
                                  const RetryPolicy& policy, const std::string& who);

/// Checks ChatRequest invariants (at least one user message); throws ContractError.
void validate_request(const ChatRequest& request);

/// Scripted replies loaded from a JSON fixture:
///
///   {"replies": [
///     {"doc_id": "d1", "agent_id": 3, "content": "..."},
///     {"doc_id": "d1", "purpose": "reflect_triggers", "content": "..."},
///     {"doc_id": "d1", "purpose": "reflect_arguments",
///      "trigger": {"start": 4, "end": 11, "type": "Life:Die"}, "contents": ["...", "..."]}
///   ]}
///
/// "contents" scripts successive replies for the same key; the last one repeats.
class ReplayBackend : public ChatBackend {
  public:
    struct Key {
        std::string doc_id;
        RequestContext::Purpose purpose = RequestContext::Purpose::Agent;
        int agent_id = 0;
        std::size_t trigger_start = 0;
        std::size_t trigger_end = 0;
        std::string event_type;

        friend auto operator<=>(const Key&, const Key&) = default;
    };

    ReplayBackend() = default;
    static std::unique_ptr<ReplayBackend> from_file(const std::filesystem::path& path);
    static std::unique_ptr<ReplayBackend> from_json_text(const std::string& text);

    void add(const Key& key, std::vector<std::string> contents);
    std::string complete(const ChatRequest& request, const RequestContext& context) override;

    [[nodiscard]] std::size_t call_count() const;
    [[nodiscard]] std::vector<ChatRequest> requests() const;

    static Key key_of(const RequestContext& context);

  private:
    struct Script {
        std::vector<std::string> contents;
        std::size_t next = 0;
    };

    mutable std::mutex mutex_;
    std::map<Key, Script> scripts_;
    std::vector<ChatRequest> requests_;
};

/// Answers from a callback; handy for tests that need to inspect prompts.
class FunctionBackend : public ChatBackend {
  public:
    using Handler = std::function<std::string(const ChatRequest&, const RequestContext&)>;
    explicit FunctionBackend(Handler handler) : handler_(std::move(handler)) {}

    std::string complete(const ChatRequest& request, const RequestContext& context) override;
    [[nodiscard]] std::size_t call_count() const;

  private:
    Handler handler_;
    mutable std::mutex mutex_;
    std::size_t calls_ = 0;
};

/// Forwards to another backend and keeps every reply, so a run can be saved
/// as a replay fixture.
class RecordingBackend : public ChatBackend {
  public:
    explicit RecordingBackend(ChatBackend& inner) : inner_(inner) {}

    std::string complete(const ChatRequest& request, const RequestContext& context) override;
    /// {"replies": [...]} in ReplayBackend's format, ordered by key; repeated
    /// keys become "contents" lists in call order.
    [[nodiscard]] nlohmann::ordered_json fixture() const;

  private:
    ChatBackend& inner_;
    mutable std::mutex mutex_;
    std::map<ReplayBackend::Key, std::vector<std::string>> replies_;
};

/// POSTs {model, messages, temperature, max_tokens[, length_penalty]} to an
/// endpoint and reads {"content": string} back (an OpenAI-style
/// choices[0].message.content body is also accepted).
class HttpChatBackend : public ChatBackend {
  public:
    struct Options {
        std::string url;  // http://host[:port]/path
        std::string model = "aris-agent";
        std::string api_key;  // sent as a Bearer token when non-empty
        std::chrono::seconds timeout{120};
    };

    explicit HttpChatBackend(Options options);
    std::string complete(const ChatRequest& request, const RequestContext& context) override;

    /// Wire body for a request; exposed for tests.
    [[nodiscard]] std::string request_body(const ChatRequest& request) const;

  private:
    Options options_;
    std::string scheme_host_port_;
    std::string path_;
};

}  // namespace aris
