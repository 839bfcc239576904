#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "aris/event_model.hpp"

namespace aris {

using ojson = nlohmann::ordered_json;

ojson span_to_json(const Span& span);
ojson event_to_json(const EventMention& event);
ojson document_to_json(const Document& doc);

/// Reads the corpus event schema. Offsets and surface strings are checked for
/// span well-formedness here; Document-containment is checked by the caller.
Span span_from_json(const nlohmann::json& j);
EventMention event_from_json(const nlohmann::json& j);

/// Reads a JSON-lines file; blank lines are skipped. ParseError carries the 1-based line.
std::vector<nlohmann::json> read_json_lines(const std::filesystem::path& path);

/// Writes through a temporary sibling and renames, so readers never see a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace aris
