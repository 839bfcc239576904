#include "aris/chat.hpp"

#include <algorithm>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "aris/json_io.hpp"

namespace aris {

namespace {

const char* role_name(ChatRole role) {
    switch (role) {
        case ChatRole::System: return "system";
        case ChatRole::User: return "user";
        case ChatRole::Assistant: return "assistant";
    }
    return "user";
}

RequestContext::Purpose parse_purpose(const std::string& s) {
    if (s == "agent") return RequestContext::Purpose::Agent;
    if (s == "reflect_triggers") return RequestContext::Purpose::ReflectTriggers;
    if (s == "reflect_arguments") return RequestContext::Purpose::ReflectArguments;
    throw ParseError("unknown replay purpose '" + s + "'");
}

std::string describe(const ReplayBackend::Key& key) {
    switch (key.purpose) {
        case RequestContext::Purpose::Agent:
            return key.doc_id + "/agent " + std::to_string(key.agent_id);
        case RequestContext::Purpose::ReflectTriggers:
            return key.doc_id + "/reflect_triggers";
        case RequestContext::Purpose::ReflectArguments:
            return key.doc_id + "/reflect_arguments [" + std::to_string(key.trigger_start) + ", " +
                   std::to_string(key.trigger_end) + ") " + key.event_type;
    }
    return key.doc_id;
}

}  // namespace

void validate_request(const ChatRequest& request) {
    const bool has_user = std::any_of(request.messages.begin(), request.messages.end(),
                                      [](const ChatMessage& m) { return m.role == ChatRole::User; });
    if (!has_user) throw ContractError("chat request without a user message");
    if (request.max_output_tokens <= 0) throw ContractError("max_output_tokens must be positive");
}

std::string complete_with_retries(ChatBackend& backend, const ChatRequest& request, const RequestContext& context,
                                  const RetryPolicy& policy, const std::string& who) {
    validate_request(request);
    auto backoff = policy.initial_backoff;
    std::string last_error;
    const int attempts = std::max(1, policy.attempts);
    for (int attempt = 1; attempt <= attempts; ++attempt) {
        try {
            return backend.complete(request, context);
        } catch (const TransportError& e) {
            last_error = e.what();
        } catch (const NoReplyError& e) {
            throw OrchestrationError(who + ": " + e.what());
        }
        if (attempt < attempts && backoff.count() > 0) {
            std::this_thread::sleep_for(backoff);
            backoff *= 2;
        }
    }
    throw OrchestrationError(who + ": backend failed after " + std::to_string(attempts) +
                             " attempts: " + last_error);
}

// ---------------------------------------------------------------------------

ReplayBackend::Key ReplayBackend::key_of(const RequestContext& context) {
    Key key{context.doc_id, context.purpose, 0, 0, 0, {}};
    switch (context.purpose) {
        case RequestContext::Purpose::Agent:
            key.agent_id = context.agent_id;
            break;
        case RequestContext::Purpose::ReflectTriggers:
            break;
        case RequestContext::Purpose::ReflectArguments:
            key.trigger_start = context.trigger_start;
            key.trigger_end = context.trigger_end;
            key.event_type = context.event_type;
            break;
    }
    return key;
}

std::unique_ptr<ReplayBackend> ReplayBackend::from_json_text(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("replay fixture: ") + e.what());
    }
    auto backend = std::make_unique<ReplayBackend>();
    try {
        for (const auto& r : root.at("replies")) {
            RequestContext ctx;
            ctx.doc_id = r.at("doc_id").get<std::string>();
            ctx.purpose = parse_purpose(r.value("purpose", "agent"));
            ctx.agent_id = r.value("agent_id", 0);
            if (r.contains("trigger")) {
                const auto& t = r.at("trigger");
                ctx.trigger_start = t.at("start").get<std::size_t>();
                ctx.trigger_end = t.at("end").get<std::size_t>();
                ctx.event_type = t.at("type").get<std::string>();
            }
            std::vector<std::string> contents;
            if (r.contains("contents")) {
                contents = r.at("contents").get<std::vector<std::string>>();
            } else {
                contents.push_back(r.at("content").get<std::string>());
            }
            backend->add(key_of(ctx), std::move(contents));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("replay fixture: ") + e.what());
    }
    return backend;
}

std::unique_ptr<ReplayBackend> ReplayBackend::from_file(const std::filesystem::path& path) {
    return from_json_text(read_file(path));
}

void ReplayBackend::add(const Key& key, std::vector<std::string> contents) {
    if (contents.empty()) throw ContractError("replay entry " + describe(key) + " has no contents");
    std::lock_guard lock(mutex_);
    auto& script = scripts_[key];
    script.contents.insert(script.contents.end(), std::make_move_iterator(contents.begin()),
                           std::make_move_iterator(contents.end()));
}

std::string ReplayBackend::complete(const ChatRequest& request, const RequestContext& context) {
    const Key key = key_of(context);
    std::lock_guard lock(mutex_);
    requests_.push_back(request);
    auto it = scripts_.find(key);
    if (it == scripts_.end()) throw NoReplyError("replay fixture has no reply for " + describe(key));
    auto& script = it->second;
    const std::size_t i = std::min(script.next, script.contents.size() - 1);
    ++script.next;
    return script.contents[i];
}

std::size_t ReplayBackend::call_count() const {
    std::lock_guard lock(mutex_);
    return requests_.size();
}

std::vector<ChatRequest> ReplayBackend::requests() const {
    std::lock_guard lock(mutex_);
    return requests_;
}

// ---------------------------------------------------------------------------

std::string RecordingBackend::complete(const ChatRequest& request, const RequestContext& context) {
    std::string reply = inner_.complete(request, context);
    std::lock_guard lock(mutex_);
    replies_[ReplayBackend::key_of(context)].push_back(reply);
    return reply;
}

nlohmann::ordered_json RecordingBackend::fixture() const {
    std::lock_guard lock(mutex_);
    nlohmann::ordered_json replies = nlohmann::ordered_json::array();
    for (const auto& [key, contents] : replies_) {
        nlohmann::ordered_json r{{"doc_id", key.doc_id}};
        switch (key.purpose) {
            case RequestContext::Purpose::Agent:
                r["agent_id"] = key.agent_id;
                break;
            case RequestContext::Purpose::ReflectTriggers:
                r["purpose"] = "reflect_triggers";
                break;
            case RequestContext::Purpose::ReflectArguments:
                r["purpose"] = "reflect_arguments";
                r["trigger"] = {{"start", key.trigger_start}, {"end", key.trigger_end}, {"type", key.event_type}};
                break;
        }
        if (contents.size() == 1) {
            r["content"] = contents.front();
        } else {
            r["contents"] = contents;
        }
        replies.push_back(std::move(r));
    }
    return nlohmann::ordered_json{{"replies", std::move(replies)}};
}

std::string FunctionBackend::complete(const ChatRequest& request, const RequestContext& context) {
    {
        std::lock_guard lock(mutex_);
        ++calls_;
    }
    return handler_(request, context);
}

std::size_t FunctionBackend::call_count() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

// ---------------------------------------------------------------------------

HttpChatBackend::HttpChatBackend(Options options) : options_(std::move(options)) {
    const auto scheme_end = options_.url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("backend url needs a scheme: " + options_.url);
    const auto path_start = options_.url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) {
        scheme_host_port_ = options_.url;
        path_ = "/";
    } else {
        scheme_host_port_ = options_.url.substr(0, path_start);
        path_ = options_.url.substr(path_start);
    }
}

std::string HttpChatBackend::request_body(const ChatRequest& request) const {
    ojson messages = ojson::array();
    for (const auto& m : request.messages) messages.push_back(ojson{{"role", role_name(m.role)}, {"content", m.content}});
    ojson body{{"model", options_.model},
               {"messages", std::move(messages)},
               {"temperature", request.temperature},
               {"max_tokens", request.max_output_tokens}};
    if (request.length_penalty) body["length_penalty"] = *request.length_penalty;
    return body.dump();
}

std::string HttpChatBackend::complete(const ChatRequest& request, const RequestContext& /*context*/) {
    httplib::Client client(scheme_host_port_);
    if (!client.is_valid()) throw ConfigError("unsupported backend url " + options_.url);
    client.set_connection_timeout(options_.timeout);
    client.set_read_timeout(options_.timeout);
    httplib::Headers headers;
    if (!options_.api_key.empty()) headers.emplace("Authorization", "Bearer " + options_.api_key);
    auto res = client.Post(path_, headers, request_body(request), "application/json");
    if (!res) throw TransportError("POST " + options_.url + " failed: " + httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300) {
        throw TransportError("POST " + options_.url + " returned HTTP " + std::to_string(res->status));
    }
    try {
        const auto body = nlohmann::json::parse(res->body);
        if (body.contains("content")) return body.at("content").get<std::string>();
        return body.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed backend response: ") + e.what());
    }
}

}  // namespace aris
