#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathgen/decision_table.hpp"

namespace pathgen {

struct TraceEvent {
    int decision_id = 0;
    bool taken = false;
};

struct Trace {
    std::vector<TraceEvent> events;
    std::int64_t steps_used = 0;
};

// Canonical path string: `label` for taken, `-label` for not-taken, single
// spaces, empty trace renders as "".
std::string render_trace(const Trace& trace, const DecisionTable& table);

// Inverse of render_trace (steps_used comes back 0).
Trace parse_path_key(const std::string& key, const DecisionTable& table);

// Token count of the rendered string.
int trace_length(const Trace& trace);

// Taken-outcomes at innermost-loop decisions: the work a path demands from
// the iteration budget.
int trace_cost(const Trace& trace, const DecisionTable& table);

}  // namespace pathgen
