#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathgen/decision_table.hpp"
#include "pathgen/input.hpp"
#include "pathgen/trace.hpp"

namespace pathgen {

inline constexpr std::int64_t kDefaultStepBudget = 10'000'000;

enum class ExecStatus { Ok, BudgetExceeded, RuntimeFault };

struct ExecResult {
    ExecStatus status = ExecStatus::Ok;
    Trace trace;                        // partial on BudgetExceeded / RuntimeFault
    bool has_return = false;
    std::int64_t return_value = 0;
    std::vector<Value> final_params;    // in param order; empty unless Ok
    std::string fault;                  // set on RuntimeFault

    bool ok() const { return status == ExecStatus::Ok; }
};

// Runs the program on one input. Deterministic; never throws for in-language
// failures (faults and budget exhaustion come back in the result, with the
// partial trace). Every statement and condition evaluation costs one step.
//
// Semantics: signed 64-bit with two's-complement wrap on + - *; division
// truncates toward zero and faults only on a zero divisor; comparisons and
// logical operators yield 0/1 and && || short-circuit. An uninitialized
// `let` holds 0. Out-of-range indexing is a fault.
ExecResult execute(const Program& program, const DecisionTable& table, const InputVector& input,
                   std::int64_t step_budget = kDefaultStepBudget);

}  // namespace pathgen
