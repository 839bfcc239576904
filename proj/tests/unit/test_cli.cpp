#include <doctest.h>

#include <sstream>

#include "aris/cli.hpp"
#include "aris/errors.hpp"
#include "aris/json_io.hpp"
#include "helpers.hpp"

using namespace aris;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = 0;
    std::string out;
    std::string err;
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "aris");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    CliRun r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

const fs::path kWorked = testing::kFixtures / "worked_examples";

std::vector<std::string> extract_args(const fs::path& out) {
    return {"extract",
            "--corpus", (kWorked / "corpus.jsonl").string(),
            "--tagger-preds", (kWorked / "tagger.jsonl").string(),
            "--backend", "replay:" + (kWorked / "replay.json").string(),
            "--thresholds", (kWorked / "thresholds.json").string(),
            "--out", out.string()};
}

}  // namespace

TEST_CASE("extract reproduces the golden outputs") {
    auto dir = testing::scratch("cli-extract");
    auto r = run(extract_args(dir));
    REQUIRE_MESSAGE(r.code == 0, r.err);
    for (const char* name : {"predictions.jsonl", "reflection_audit.jsonl", "metrics.json", "metrics.txt"}) {
        CHECK_MESSAGE(read_file(dir / name) == read_file(kWorked / "golden" / name), name);
    }
}

TEST_CASE("published table selector") {
    auto dir = testing::scratch("cli-table");
    auto args = extract_args(dir);
    args[8] = "table:Llama-3.1:M2E2:0.9";
    auto r = run(args);
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(fs::exists(dir / "predictions.jsonl"));
}

TEST_CASE("missing tagger file is a reference error") {
    auto dir = testing::scratch("cli-missing");
    auto args = extract_args(dir);
    args[4] = (dir / "absent.jsonl").string();
    auto r = run(args);
    CHECK(r.code == 3);
    auto j = nlohmann::json::parse(r.err);
    CHECK(j.contains("error"));
    CHECK(j.contains("message"));
}

TEST_CASE("usage and config errors") {
    CHECK(run({"extract", "--corpus", "x"}).code == 2);
    auto dir = testing::scratch("cli-config");
    auto args = extract_args(dir);
    args.push_back("--agents");
    args.push_back("0");
    CHECK(run(args).code == 2);
    auto bad = extract_args(dir);
    bad[8] = "table:Nobody:M2E2:0.9";
    CHECK(run(bad).code == 6);
}

TEST_CASE("evaluate scores a predictions file") {
    auto dir = testing::scratch("cli-eval");
    auto r = run({"evaluate", "--predictions", (kWorked / "golden/predictions.jsonl").string(), "--corpus",
                  (kWorked / "corpus.jsonl").string(), "--out", dir.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(read_file(dir / "metrics.json") == read_file(kWorked / "golden/metrics.json"));
}

TEST_CASE("gen-decomp writes one record per line") {
    auto dir = testing::scratch("cli-gen");
    auto r = run({"gen-decomp", "--corpus", (kWorked / "corpus.jsonl").string(), "--variants",
                  "full_structure,trigger_detection", "--out", (dir / "d.jsonl").string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(read_json_lines(dir / "d.jsonl").size() == 4);
    CHECK(run({"gen-decomp", "--corpus", (kWorked / "corpus.jsonl").string(), "--variants", "bogus", "--out",
               (dir / "e.jsonl").string()})
              .code == 2);
}

TEST_CASE("simulate export replays to the same metrics") {
    auto sim = testing::scratch("cli-sim");
    auto r = run({"simulate", "--out", sim.string(), "--export"});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    auto dir = testing::scratch("cli-sim-replay");
    auto e = run({"extract", "--corpus", (sim / "corpus.jsonl").string(), "--tagger-preds",
                  (sim / "tagger.jsonl").string(), "--backend", "replay:" + (sim / "replay.json").string(),
                  "--thresholds", (sim / "thresholds.json").string(), "--out", dir.string()});
    REQUIRE_MESSAGE(e.code == 0, e.err);
    CHECK(read_file(dir / "metrics.json") == read_file(sim / "metrics.json"));
}

TEST_CASE("tune mode writes thresholds") {
    auto sim = testing::scratch("cli-tune-data");
    REQUIRE(run({"simulate", "--out", sim.string(), "--export"}).code == 0);
    auto dir = testing::scratch("cli-tune");
    auto r = run({"extract", "--corpus", (sim / "corpus.jsonl").string(), "--tagger-preds",
                  (sim / "tagger.jsonl").string(), "--backend", "oracle", "--tune", (sim / "corpus.jsonl").string(),
                  "--tune-tagger-preds", (sim / "tagger.jsonl").string(), "--step", "0.1", "--out", dir.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    auto t = threshold_set_from_json(nlohmann::json::parse(read_file(dir / "thresholds.json")));
    CHECK_NOTHROW(validate(t));
    CHECK(fs::exists(dir / "tuning.json"));

    auto both = run({"extract", "--corpus", (sim / "corpus.jsonl").string(), "--tagger-preds",
                     (sim / "tagger.jsonl").string(), "--backend", "oracle", "--tune", (sim / "corpus.jsonl").string(),
                     "--thresholds", (sim / "thresholds.json").string(), "--out", dir.string()});
    CHECK(both.code == 2);
}

TEST_CASE("exit codes") {
    CHECK(exit_code_for(ConfigError("x")) == 2);
    CHECK(exit_code_for(ReferenceError("x")) == 3);
    CHECK(exit_code_for(ParseError("x")) == 4);
    CHECK(exit_code_for(OrchestrationError("x")) == 5);
    CHECK(exit_code_for(ConsistencyError("x")) == 6);
    CHECK(exit_code_for(std::runtime_error("x")) == 1);
}
