#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pathgen/ast.hpp"

namespace pathgen {

// Runtime value of one parameter. Matrices store row-major data.
struct Value {
    ParamKind kind = ParamKind::Scalar;
    std::int64_t scalar = 0;
    std::vector<std::int64_t> elems;  // array contents / matrix row-major
    int rows = 0;
    int cols = 0;

    static Value make_scalar(std::int64_t v) {
        Value value;
        value.scalar = v;
        return value;
    }

    static Value make_array(std::vector<std::int64_t> data) {
        Value value;
        value.kind = ParamKind::Array;
        value.elems = std::move(data);
        return value;
    }

    static Value make_matrix(int rows, int cols, std::vector<std::int64_t> data) {
        Value value;
        value.kind = ParamKind::Matrix;
        value.rows = rows;
        value.cols = cols;
        value.elems = std::move(data);
        return value;
    }

    int length() const { return static_cast<int>(elems.size()); }

    bool operator==(const Value&) const = default;
};

// One concrete binding of every program parameter, in param order.
struct InputVector {
    std::vector<std::pair<std::string, Value>> bindings;

    const Value* find(const std::string& name) const {
        for (const auto& [bound_name, value] : bindings)
            if (bound_name == name) return &value;
        return nullptr;
    }

    bool operator==(const InputVector&) const = default;
};

// Checks names, kinds, and binding order against the program params.
// Throws SchemaError listing every mismatch.
void check_bindings(const Program& program, const InputVector& input);

}  // namespace pathgen
