#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "aris/event_model.hpp"
#include "aris/ingestion.hpp"
#include "aris/structured_output.hpp"

namespace testing {

inline const std::string kNisman =
    "The prosecutor, Alberto Nisman, was found shot dead in his bathroom in January - four days after he accused "
    "Fernandez and her aides of making a deal with Iran to cover up the alleged roles that Iranian officials played "
    "in the 1994 bombing of a Jewish center in Argentina.";

inline const std::string kGandhi =
    "Moments after the revered activist was escorted through a crowd, the assassin walked towards Gandhi and, at a "
    "range of just one meter, fired his gun three times, killing the man who led India\xE2\x80\x99s historic revolt "
    "against British rule.";

inline aris::Span span_of(const aris::Document& doc, const std::string& surface, std::size_t from = 0) {
    auto s = aris::locate_span(doc, surface, from);
    if (!s) throw std::runtime_error("no '" + surface + "' in " + doc.doc_id());
    return *s;
}

inline aris::EventMention event(const aris::Document& doc, const std::string& trigger, const std::string& type,
                                std::vector<std::pair<std::string, std::string>> args = {}) {
    aris::EventMention e{span_of(doc, trigger), type, {}};
    for (auto& [text, role] : args) e.arguments.push_back({span_of(doc, text), role});
    aris::normalize(e);
    return e;
}

inline aris::Document nisman_doc(bool gold = true) {
    aris::Document bare("nisman", kNisman);
    if (!gold) return bare;
    return aris::Document("nisman", kNisman,
                          {event(bare, "dead", "Life:Die"), event(bare, "bombing", "Conflict:Attack")});
}

inline aris::Document gandhi_doc(bool gold = true) {
    aris::Document bare("gandhi", kGandhi);
    if (!gold) return bare;
    return aris::Document(
        "gandhi", kGandhi,
        {event(bare, "killing", "Life:Die", {{"assassin", "Agent"}, {"Gandhi", "Victim"}, {"gun", "Instrument"}})});
}

inline std::string events_reply(const std::string& body) { return "```\nEvents = " + body + "\n```"; }

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("aris-test-" + name + "-" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

inline const std::filesystem::path kFixtures = ARIS_FIXTURE_DIR;

}  // namespace testing
