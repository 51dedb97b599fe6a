#include "pathgen/decision_table.hpp"

#include <algorithm>

#include "pathgen/errors.hpp"

namespace pathgen {

std::string base26_label(int index) {
    std::string label;
    for (int n = index;;) {
        label.push_back(static_cast<char>('a' + n % 26));
        n = n / 26 - 1;
        if (n < 0) break;
    }
    std::reverse(label.begin(), label.end());
    return label;
}

int DecisionTable::id_of(const Stmt* stmt) const {
    auto it = stmt_to_id.find(stmt);
    if (it == stmt_to_id.end()) throw UnknownDecision("statement has no decision entry");
    return it->second;
}

const Decision* DecisionTable::find_label(const std::string& label) const {
    auto it = label_to_id.find(label);
    return it == label_to_id.end() ? nullptr : &entries[static_cast<std::size_t>(it->second)];
}

namespace {

bool contains_loop(const Block& block) {
    for (const auto& stmt : block) {
        switch (stmt->kind) {
            case StmtKind::While:
            case StmtKind::For:
                return true;
            case StmtKind::If:
                if (contains_loop(stmt->body) || contains_loop(stmt->else_body)) return true;
                break;
            default:
                break;
        }
    }
    return false;
}

void walk(const Block& block, int loop_depth, DecisionTable& table) {
    for (const auto& stmt : block) {
        switch (stmt->kind) {
            case StmtKind::If: {
                Decision d;
                d.id = static_cast<int>(table.entries.size());
                d.label = base26_label(d.id);
                d.kind = DecisionKind::Branch;
                d.nesting_depth = loop_depth;
                d.pos = stmt->pos;
                table.stmt_to_id.emplace(stmt.get(), d.id);
                table.label_to_id.emplace(d.label, d.id);
                table.entries.push_back(std::move(d));
                walk(stmt->body, loop_depth, table);
                walk(stmt->else_body, loop_depth, table);
                break;
            }
            case StmtKind::While:
            case StmtKind::For: {
                Decision d;
                d.id = static_cast<int>(table.entries.size());
                d.label = base26_label(d.id);
                d.kind = DecisionKind::Loop;
                d.nesting_depth = loop_depth;
                d.innermost_loop = !contains_loop(stmt->body);
                d.pos = stmt->pos;
                table.stmt_to_id.emplace(stmt.get(), d.id);
                table.label_to_id.emplace(d.label, d.id);
                table.entries.push_back(std::move(d));
                walk(stmt->body, loop_depth + 1, table);
                break;
            }
            default:
                break;
        }
    }
}

}  // namespace

DecisionTable assign_labels(const Program& program) {
    DecisionTable table;
    walk(program.body, 0, table);
    return table;
}

}  // namespace pathgen
