#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pathgen/ast.hpp"

namespace pathgen {

// Concrete values for the schema's free size parameters, in
// free_size_names() order.
using Shape = std::vector<std::int64_t>;

enum class Constraint { None, SortedAscending, DistinctElements };
enum class ScalarRole { Size, Key };

const char* constraint_name(Constraint c);

// One array/matrix dimension: a fixed count or the name of a size param.
struct DimSpec {
    bool is_fixed = false;
    std::int64_t fixed = 0;
    std::string ref;
};

struct SchemaParam {
    std::string name;
    ParamKind kind = ParamKind::Scalar;
    ScalarRole role = ScalarRole::Key;       // scalars only
    std::string equals;                      // size scalar coupled to another size
    DimSpec length;                          // arrays
    DimSpec rows, cols;                      // matrices
    Constraint constraint = Constraint::None;  // arrays only
};

// Declarative input description for one subject: which params are sizes,
// which are keys, how arrays/matrices are dimensioned, and what element
// constraints hold.
struct InputSchema {
    std::vector<SchemaParam> params;

    const SchemaParam* find(const std::string& name) const;

    // Size params that are not coupled to another size, in schema order.
    // These are the axes a Shape assigns.
    std::vector<std::string> free_size_names() const;

    // Value of every size param (free and coupled) under one Shape.
    std::map<std::string, std::int64_t> resolve_sizes(const Shape& shape) const;

    std::int64_t dim_value(const DimSpec& dim,
                           const std::map<std::string, std::int64_t>& sizes) const;
};

// Parses the sidecar JSON. A scalar referenced by a dimension or coupling
// is inferred to be a size param; everything else defaults to a key drawn
// from the domain. Throws SchemaError listing every problem.
InputSchema schema_from_json(const std::string& json_text);

// Stable one-line rendering; equal schemas produce equal strings.
std::string schema_canonical(const InputSchema& schema);

// 16-hex-digit digest of the canonical form.
std::string schema_digest(const InputSchema& schema);

// Cross-checks schema against program params (names, kinds, order).
// Throws SchemaError listing every mismatch.
void validate_schema(const Program& program, const InputSchema& schema);

}  // namespace pathgen
