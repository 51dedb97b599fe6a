#pragma once

#include <string>

#include "pathgen/ast.hpp"
#include "pathgen/decision_table.hpp"
#include "pathgen/schema.hpp"

namespace pathgen {

// One loaded subject: program text, parsed tree, branch labels, and the
// sidecar input schema.
struct Subject {
    std::string name;
    std::string source;
    Program program;
    DecisionTable table;
    InputSchema schema;
};

// Loads `<stem>.tp` and its sidecar `<stem>.schema.json`, parses both, and
// cross-validates them. Throws ParseError/SemanticError/SchemaError.
Subject load_subject(const std::string& tp_path);

// Sidecar path for a subject file: strips a trailing ".tp" and appends
// ".schema.json".
std::string schema_path_for(const std::string& tp_path);

}  // namespace pathgen
