#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pathgen/errors.hpp"

namespace pathgen {

enum class ParamKind { Scalar, Array, Matrix };

const char* param_kind_name(ParamKind kind);

struct Param {
    std::string name;
    ParamKind kind = ParamKind::Scalar;
    SourcePos pos;
};

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };

enum class ExprKind { IntLit, VarRef, Index, Unary, Binary };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

// One tagged node type instead of a class hierarchy; the language is small
// enough that a fat node keeps both the parser and the interpreter simple.
struct Expr {
    ExprKind kind;
    SourcePos pos;

    std::int64_t value = 0;             // IntLit
    std::string name;                   // VarRef / Index
    int slot = -1;                      // variable slot, set by the resolver
    std::vector<ExprPtr> indices;       // Index: 1 entry for arrays, 2 for matrices
    UnaryOp un_op = UnaryOp::Neg;
    BinaryOp bin_op = BinaryOp::Add;
    ExprPtr lhs;                        // Binary
    ExprPtr rhs;                        // Binary
    ExprPtr operand;                    // Unary
};

enum class StmtKind { Let, Assign, If, While, For, Return };

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;
using Block = std::vector<StmtPtr>;

struct Stmt {
    StmtKind kind;
    SourcePos pos;

    std::string name;                   // Let / Assign target
    int slot = -1;                      // target slot, set by the resolver
    std::vector<ExprPtr> indices;       // Assign target subscripts
    ExprPtr value;                      // Let init / Assign rhs / Return value (may be null)

    ExprPtr cond;                       // If / While / For
    Block body;                         // If-then / loop body
    Block else_body;                    // If only
    StmtPtr for_init;                   // For: Let or Assign without ';' (may be null)
    StmtPtr for_update;                 // For (may be null)
};

struct Program {
    std::string name;
    std::vector<Param> params;
    Block body;
    SourcePos pos;
    int slot_count = 0;                 // params + locals, set by the resolver

    const Param* find_param(const std::string& param_name) const {
        for (const auto& p : params)
            if (p.name == param_name) return &p;
        return nullptr;
    }
};

// Parses and resolves a subject program. The returned Program has every
// variable reference bound to a slot; parse errors carry line/column and
// the expected-token set.
Program parse(const std::string& source);

// Canonical source form. parse(pretty_print(p)) is structurally identical
// to p (same tree, slots, and labels).
std::string pretty_print(const Program& program);

// Number of if/while/for nodes in the tree; independent of DecisionTable.
int count_decision_stmts(const Program& program);

}  // namespace pathgen
