#include "aris/json_io.hpp"

#include <fstream>
#include <sstream>

#include "aris/errors.hpp"

namespace aris {

ojson span_to_json(const Span& span) {
    return ojson{{"text", span.text}, {"start", span.start}, {"end", span.end}};
}

ojson event_to_json(const EventMention& event) {
    ojson args = ojson::array();
    for (const auto& a : event.arguments) {
        args.push_back(ojson{{"text", a.span.text}, {"start", a.span.start}, {"end", a.span.end}, {"role", a.role}});
    }
    return ojson{{"trigger", span_to_json(event.trigger)}, {"type", event.event_type}, {"arguments", std::move(args)}};
}

ojson document_to_json(const Document& doc) {
    ojson events = ojson::array();
    for (const auto& e : doc.gold_events()) events.push_back(event_to_json(e));
    return ojson{{"doc_id", doc.doc_id()}, {"text", doc.text()}, {"events", std::move(events)}};
}

Span span_from_json(const nlohmann::json& j) {
    try {
        return make_span(j.at("text").get<std::string>(), j.at("start").get<std::size_t>(),
                         j.at("end").get<std::size_t>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad span: ") + e.what(), j.dump());
    }
}

EventMention event_from_json(const nlohmann::json& j) {
    EventMention event;
    try {
        event.trigger = span_from_json(j.at("trigger"));
        event.event_type = j.at("type").get<std::string>();
        if (j.contains("arguments")) {
            for (const auto& a : j.at("arguments")) {
                ArgumentMention arg{span_from_json(a), a.at("role").get<std::string>()};
                if (arg.role.empty()) throw ValidationError("argument '" + arg.span.text + "' has an empty role");
                event.arguments.push_back(std::move(arg));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad event: ") + e.what(), j.dump());
    }
    if (event.event_type.empty()) throw ValidationError("event '" + event.trigger.text + "' has an empty type");
    normalize(event);
    return event;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ReferenceError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<nlohmann::json> read_json_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ReferenceError("cannot open " + path.string());
    std::vector<nlohmann::json> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            records.push_back(nlohmann::json::parse(line));
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what(), line, line_no);
        }
    }
    return records;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ReferenceError("cannot write " + tmp.string());
        out << contents;
        if (!out) throw ReferenceError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace aris
