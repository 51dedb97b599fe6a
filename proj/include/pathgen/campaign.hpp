#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathgen/decision_table.hpp"
#include "pathgen/interpreter.hpp"
#include "pathgen/pathset.hpp"
#include "pathgen/schema.hpp"

namespace pathgen {

struct StopRule {
    enum class Type { Saturation, LongestPath, KMax };
    Type type = Type::Saturation;
    int window = 3;
};

struct CampaignConfig {
    std::int64_t domain = 1000;                  // elements drawn from [0, domain)
    std::map<std::string, std::int64_t> max_size;  // per free size axis; empty entry -> broadcast
    std::int64_t max_size_all = 10;              // broadcast cap when an axis has no entry
    std::int64_t k_max = 1000;
    int batch = 100;                             // inputs drawn per k step
    std::uint64_t seed = 1;
    enum class ShapeMode { CostBudget, Fixed };
    ShapeMode shape_mode = ShapeMode::CostBudget;
    Shape fixed_shape;                           // ShapeMode::Fixed only
    StopRule stop;
    std::int64_t step_budget = kDefaultStepBudget;
    int workers = 1;
    bool include_faulty_paths = false;           // admit partial traces of faulted runs
    int probes_per_shape = 4;                    // draws used to cost a shape
};

// Parses the JSON config document; unknown keys are errors. Flags layered
// on top by the CLI override file values.
CampaignConfig config_from_json(const std::string& json_text);

struct CampaignRow {
    std::int64_t k = 0;
    std::int64_t test_cases = 0;  // cumulative draws
    std::int64_t ufp = 0;         // cumulative unique paths
    std::int64_t nfp = 0;         // paths first seen at this k
    std::int64_t llp = 0;         // longest path length so far
    double etime_ms = 0.0;
};

struct CampaignReport {
    std::vector<CampaignRow> rows;
    std::int64_t skipped_inputs = 0;             // faults, budget blowups, infeasible draws
    std::optional<std::int64_t> k_longest;       // filled from the final rows
    std::optional<std::int64_t> k_saturation;
};

// A shape with its probed longest-path cost (max trace cost over a few
// deterministic draws).
struct ShapeInfo {
    Shape shape;
    std::int64_t cost = 0;
};

// All shapes on the capped grid with a usable probe, in odometer order.
std::vector<ShapeInfo> probe_shapes(const Program& program, const DecisionTable& table,
                                    const InputSchema& schema, const CampaignConfig& config);

// Shapes whose probed cost fits the budget k (all of them at k >= max cost).
std::vector<ShapeInfo> shapes_for_budget(const std::vector<ShapeInfo>& grid, std::int64_t k);

// The generate-execute-filter loop: per k step, draw `batch` inputs over
// the admissible shapes (the most expensive shape gets at least half the
// batch, the rest round-robin), execute, dedup into the PathSet, append
// one row. Deterministic for a given (config, program) at any worker
// count. Throws ConfigError on invalid config; per-input failures are
// counted, never fatal.
std::pair<CampaignReport, PathSet> run_campaign(const Program& program, const DecisionTable& table,
                                                const InputSchema& schema,
                                                const CampaignConfig& config);

// Smallest k whose llp equals the final llp, provided a later row confirms
// the plateau. Empty when the last row still raised llp.
std::optional<std::int64_t> detect_k_longest(const CampaignReport& report);

// Smallest k opening a run of `window` consecutive nfp = 0 rows, beyond
// the detected k_longest when there is one. Empty when no such run exists.
std::optional<std::int64_t> detect_k_saturation(const CampaignReport& report, int window);

}  // namespace pathgen
