#include "pathgen/oracle.hpp"

#include <algorithm>

#include "pathgen/errors.hpp"
#include "pathgen/trace.hpp"

namespace pathgen {

namespace {

// One enumerable cell of the input space: a key scalar or one element of
// an array/matrix param.
struct Cell {
    std::size_t binding;   // index into the InputVector being built
    std::size_t element;   // 0 for scalars, storage index otherwise
};

bool satisfies(const Value& value, Constraint constraint) {
    switch (constraint) {
        case Constraint::None:
            return true;
        case Constraint::SortedAscending:
            return std::is_sorted(value.elems.begin(), value.elems.end());
        case Constraint::DistinctElements: {
            auto sorted = value.elems;
            std::sort(sorted.begin(), sorted.end());
            return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        }
    }
    return true;
}

}  // namespace

PathSet enumerate_feasible_paths(const Program& program, const DecisionTable& table,
                                 const InputSchema& schema, const Shape& shape, std::int64_t d,
                                 std::int64_t cap, std::int64_t step_budget) {
    if (d < 1) throw ConfigError("oracle domain must be positive");
    auto sizes = schema.resolve_sizes(shape);

    // Skeleton input with all enumerable cells zeroed.
    InputVector input;
    std::vector<Cell> cells;
    std::vector<std::pair<std::size_t, Constraint>> constrained;  // binding -> constraint
    for (const auto& param : schema.params) {
        std::size_t binding = input.bindings.size();
        switch (param.kind) {
            case ParamKind::Scalar:
                if (param.role == ScalarRole::Size) {
                    input.bindings.emplace_back(param.name,
                                                Value::make_scalar(sizes.at(param.name)));
                } else {
                    input.bindings.emplace_back(param.name, Value::make_scalar(0));
                    cells.push_back({binding, 0});
                }
                break;
            case ParamKind::Array: {
                auto len = static_cast<std::size_t>(schema.dim_value(param.length, sizes));
                input.bindings.emplace_back(param.name,
                                            Value::make_array(std::vector<std::int64_t>(len, 0)));
                for (std::size_t i = 0; i < len; ++i) cells.push_back({binding, i});
                if (param.constraint != Constraint::None)
                    constrained.emplace_back(binding, param.constraint);
                break;
            }
            case ParamKind::Matrix: {
                auto rows = static_cast<int>(schema.dim_value(param.rows, sizes));
                auto cols = static_cast<int>(schema.dim_value(param.cols, sizes));
                auto count = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
                input.bindings.emplace_back(
                    param.name,
                    Value::make_matrix(rows, cols, std::vector<std::int64_t>(count, 0)));
                for (std::size_t i = 0; i < count; ++i) cells.push_back({binding, i});
                break;
            }
        }
    }

    // Product-space size check before touching anything.
    std::int64_t total = 1;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (total > cap / d)
            throw OracleTooLarge("input space " + std::to_string(d) + "^" +
                                 std::to_string(cells.size()) + " exceeds the cap of " +
                                 std::to_string(cap));
        total *= d;
    }

    auto cell_value = [&input](const Cell& cell) -> std::int64_t& {
        Value& value = input.bindings[cell.binding].second;
        return value.kind == ParamKind::Scalar ? value.scalar : value.elems[cell.element];
    };

    PathSet set;
    std::vector<std::int64_t> odometer(cells.size(), 0);
    for (;;) {
        bool admissible = true;
        for (const auto& [binding, constraint] : constrained)
            if (!satisfies(input.bindings[binding].second, constraint)) {
                admissible = false;
                break;
            }
        if (admissible) {
            ExecResult result = execute(program, table, input, step_budget);
            if (result.ok()) {
                std::string key = render_trace(result.trace, table);
                set.insert(key, input, 0, trace_length(result.trace),
                           trace_cost(result.trace, table));
            }
        }
        // Advance the odometer, least-significant cell last.
        std::size_t i = cells.size();
        while (i > 0) {
            --i;
            std::int64_t& v = cell_value(cells[i]);
            if (++odometer[i] < d) {
                v = odometer[i];
                break;
            }
            odometer[i] = 0;
            v = 0;
            if (i == 0) return set;
        }
        if (cells.empty()) return set;
    }
}

std::pair<std::string, int> longest_feasible_path(const Program& program,
                                                  const DecisionTable& table,
                                                  const InputSchema& schema, const Shape& shape,
                                                  std::int64_t d, std::int64_t cap,
                                                  std::int64_t step_budget) {
    PathSet set = enumerate_feasible_paths(program, table, schema, shape, d, cap, step_budget);
    const PathRecord* best = nullptr;
    for (const auto& record : set.records()) {
        if (!best || record.length > best->length ||
            (record.length == best->length && record.key < best->key))
            best = &record;
    }
    if (!best) return {"", 0};
    return {best->key, best->length};
}

HeuristicEntry predict(const std::string& construct_id, const std::vector<std::int64_t>& dims) {
    auto need = [&](std::size_t lo, std::size_t hi) {
        if (dims.size() < lo || dims.size() > hi)
            throw ConfigError("construct '" + construct_id + "' takes " + std::to_string(lo) +
                              (hi == lo ? "" : ".." + std::to_string(hi)) + " dims, got " +
                              std::to_string(dims.size()));
        for (std::int64_t v : dims)
            if (v < 1) throw ConfigError("dims must be positive");
    };
    HeuristicEntry entry;
    entry.construct = construct_id;
    entry.dims = dims;
    if (construct_id == "linear") {
        need(1, 1);
        std::int64_t n = dims[0];
        entry.k_l = n;
        entry.k_s = n + 1;
        entry.l_max = 2 * n + 1;
    } else if (construct_id == "bubble") {
        need(1, 1);
        std::int64_t n = dims[0];
        entry.k_l = n * (n - 1) / 2;
        entry.k_s = entry.k_l + 1;
        entry.l_max = n < 2 ? 1 : (n - 1) * (n + 2) + 1;
    } else if (construct_id == "matrix") {
        need(3, 3);
        std::int64_t m = dims[0], n = dims[1], q = dims[2];
        entry.k_l = m * n * q;
        entry.k_s = entry.k_l + 1;
        entry.l_max = m * (2 + q * (n + 2)) + 1;
    } else if (construct_id == "merge") {
        need(1, 2);
        std::int64_t n1 = dims[0];
        std::int64_t n2 = dims.size() == 2 ? dims[1] : dims[0];
        entry.k_l = n1 + n2;
        entry.k_s = std::nullopt;  // saturation is stochastic for this construct
        entry.l_max = 2 * (n1 + n2) + 2;
    } else {
        throw UnknownConstruct("unknown construct '" + construct_id + "'");
    }
    return entry;
}

}  // namespace pathgen
