#include "pathgen/trace.hpp"

#include <sstream>

#include "pathgen/errors.hpp"

namespace pathgen {

std::string render_trace(const Trace& trace, const DecisionTable& table) {
    std::string out;
    for (const auto& event : trace.events) {
        if (event.decision_id < 0 ||
            event.decision_id >= static_cast<int>(table.entries.size()))
            throw UnknownDecision("decision id " + std::to_string(event.decision_id) +
                                  " is not in the table");
        if (!out.empty()) out.push_back(' ');
        if (!event.taken) out.push_back('-');
        out += table.entries[static_cast<std::size_t>(event.decision_id)].label;
    }
    return out;
}

Trace parse_path_key(const std::string& key, const DecisionTable& table) {
    Trace trace;
    std::istringstream in(key);
    std::string token;
    while (in >> token) {
        TraceEvent event;
        std::string label = token;
        if (!label.empty() && label[0] == '-') {
            event.taken = false;
            label.erase(0, 1);
        } else {
            event.taken = true;
        }
        const Decision* decision = table.find_label(label);
        if (!decision) throw UnknownDecision("unknown label '" + token + "'");
        event.decision_id = decision->id;
        trace.events.push_back(event);
    }
    return trace;
}

int trace_length(const Trace& trace) {
    return static_cast<int>(trace.events.size());
}

int trace_cost(const Trace& trace, const DecisionTable& table) {
    int cost = 0;
    for (const auto& event : trace.events) {
        if (!event.taken) continue;
        const auto& decision = table.entries.at(static_cast<std::size_t>(event.decision_id));
        if (decision.kind == DecisionKind::Loop && decision.innermost_loop) ++cost;
    }
    return cost;
}

}  // namespace pathgen
