#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "pathgen/ast.hpp"

namespace pathgen {

enum class DecisionKind { Loop, Branch };

struct Decision {
    int id = 0;                   // dense, 0-based, in label order
    std::string label;
    DecisionKind kind = DecisionKind::Branch;
    int nesting_depth = 0;        // enclosing loop count
    bool innermost_loop = false;  // loop with no loop anywhere in its body
    SourcePos pos;
};

// Branch labels for one program. Holds pointers into the Program's statement
// tree, which stay valid across moves of the Program (nodes live behind
// unique_ptr).
struct DecisionTable {
    std::vector<Decision> entries;

    int id_of(const Stmt* stmt) const;                  // throws UnknownDecision
    const Decision* find_label(const std::string& label) const;  // null if absent

    std::unordered_map<const Stmt*, int> stmt_to_id;
    std::unordered_map<std::string, int> label_to_id;
};

// Labels every if/while/for in source order: a..z, aa, ab, ...
DecisionTable assign_labels(const Program& program);

// 0 -> "a", 25 -> "z", 26 -> "aa" (bijective base-26).
std::string base26_label(int index);

}  // namespace pathgen
