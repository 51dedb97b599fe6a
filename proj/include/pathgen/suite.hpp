#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathgen/campaign.hpp"
#include "pathgen/oracle.hpp"
#include "pathgen/pathset.hpp"

namespace pathgen {

struct SuiteEntry {
    std::string path;
    InputVector input;
    int length = 0;
    int cost = 0;
    std::int64_t first_k = 0;
};

// Deliverable test data: one representative input per unique path, plus
// enough provenance to reproduce the run.
struct TestSuite {
    std::string subject;
    std::string schema_digest;
    nlohmann::ordered_json config;  // campaign settings as written by the CLI
    std::uint64_t seed = 0;
    std::vector<SuiteEntry> entries;
};

// Builds a suite from a PathSet in first-seen order and replays every
// entry through the interpreter; a stored input that no longer reproduces
// its path throws ReplayMismatch.
TestSuite extract_suite(const PathSet& set, const std::string& subject_name,
                        const Program& program, const DecisionTable& table,
                        const nlohmann::ordered_json& config, std::uint64_t seed,
                        std::int64_t step_budget = kDefaultStepBudget);

// Replays an existing suite; throws ReplayMismatch on the first entry
// whose input fails to reproduce its path.
void validate_suite(const TestSuite& suite, const Program& program, const DecisionTable& table,
                    std::int64_t step_budget = kDefaultStepBudget);

// Serialization. Byte-stable: equal values produce equal bytes.
// Supported: suite json; report json+csv; heuristics json+csv.
// Anything else throws UnsupportedFormat.
std::string export_suite(const TestSuite& suite, const std::string& format);
std::string export_report(const CampaignReport& report, const std::string& format,
                          bool stable_time = false);

// `program` resolves value kinds (an empty matrix serializes like an empty
// array); pass it when the suite's subject is at hand.
TestSuite import_suite(const std::string& bytes, const Program* program = nullptr);
CampaignReport import_report(const std::string& bytes, const std::string& format);

inline constexpr const char* kReportCsvHeader = "k,test_cases,ufp,nfp,llp,etime_ms";

// Cross-construct ledger of predictions and measurements, keyed by
// (construct, dims, source).
struct HeuristicRow {
    std::string construct;
    std::vector<std::int64_t> dims;
    std::string source;  // predicted | measured
    std::int64_t k_l = 0;
    std::optional<std::int64_t> k_s;
    std::int64_t l_max = 0;

    bool operator==(const HeuristicRow&) const = default;
};

struct HeuristicStore {
    std::vector<HeuristicRow> rows;

    // Replaces the row with the same key in place, or appends.
    void upsert(const HeuristicEntry& entry, const std::string& source);
    const HeuristicRow* find(const std::string& construct, const std::vector<std::int64_t>& dims,
                             const std::string& source) const;
};

std::string export_heuristics(const HeuristicStore& store, const std::string& format);
HeuristicStore import_heuristics(const std::string& bytes, const std::string& format);

// Shared by suite and CLI: InputVector <-> JSON object {name: value}.
nlohmann::ordered_json input_to_json(const InputVector& input);
InputVector input_from_json(const nlohmann::ordered_json& doc, const Program* program = nullptr);

}  // namespace pathgen
