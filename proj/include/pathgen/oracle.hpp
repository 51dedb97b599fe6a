#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathgen/decision_table.hpp"
#include "pathgen/interpreter.hpp"
#include "pathgen/pathset.hpp"
#include "pathgen/schema.hpp"

namespace pathgen {

inline constexpr std::int64_t kDefaultOracleCap = 10'000'000;

// Runs the program on every input with elements in [0, d), honoring the
// schema's constraints by filtering the full product space. Exact: the
// result is the complete feasible-path set for that shape and domain.
// Throws OracleTooLarge when d^(free elements) exceeds the cap.
PathSet enumerate_feasible_paths(const Program& program, const DecisionTable& table,
                                 const InputSchema& schema, const Shape& shape, std::int64_t d,
                                 std::int64_t cap = kDefaultOracleCap,
                                 std::int64_t step_budget = kDefaultStepBudget);

// Maximum-length member of the enumerated set; ties go to the
// lexicographically smallest key. Returns (key, token count).
std::pair<std::string, int> longest_feasible_path(const Program& program,
                                                  const DecisionTable& table,
                                                  const InputSchema& schema, const Shape& shape,
                                                  std::int64_t d,
                                                  std::int64_t cap = kDefaultOracleCap,
                                                  std::int64_t step_budget = kDefaultStepBudget);

// Closed-form predictions for one construct family and size.
struct HeuristicEntry {
    std::string construct;               // linear | bubble | matrix | merge
    std::vector<std::int64_t> dims;
    std::int64_t k_l = 0;
    std::optional<std::int64_t> k_s;     // empty: saturation level is stochastic
    std::int64_t l_max = 0;
};

// linear(n), bubble(n), matrix(m,n,q), merge(n) or merge(n1,n2).
// Throws UnknownConstruct for an unknown id, ConfigError for bad dims.
HeuristicEntry predict(const std::string& construct_id, const std::vector<std::int64_t>& dims);

}  // namespace pathgen
