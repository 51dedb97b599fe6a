#include "pathgen/ast.hpp"

#include <sstream>
#include <unordered_map>

#include "pathgen/lexer.hpp"

namespace pathgen {

const char* param_kind_name(ParamKind kind) {
    switch (kind) {
        case ParamKind::Scalar: return "int";
        case ParamKind::Array: return "int[]";
        case ParamKind::Matrix: return "int[][]";
    }
    return "?";
}

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    Program run() {
        Program prog;
        expect(TokenType::KwFn);
        prog.pos = prev().pos;
        prog.name = expect(TokenType::Ident).text;
        expect(TokenType::LParen);
        if (!check(TokenType::RParen)) {
            for (;;) {
                prog.params.push_back(parse_param());
                if (!match(TokenType::Comma)) break;
            }
        }
        expect(TokenType::RParen);
        prog.body = parse_block();
        expect(TokenType::EndOfFile);
        return prog;
    }

private:
    const Token& peek() const { return tokens_[index_]; }
    const Token& prev() const { return tokens_[index_ - 1]; }
    bool check(TokenType type) const { return peek().type == type; }

    bool match(TokenType type) {
        if (!check(type)) return false;
        ++index_;
        return true;
    }

    const Token& expect(TokenType type) {
        if (!check(type))
            throw ParseError(std::string("expected ") + token_type_name(type) + ", found " +
                                 token_type_name(peek().type),
                             peek().pos, {token_type_name(type)});
        ++index_;
        return prev();
    }

    Param parse_param() {
        Param p;
        const Token& name = expect(TokenType::Ident);
        p.name = name.text;
        p.pos = name.pos;
        expect(TokenType::Colon);
        expect(TokenType::KwInt);
        if (match(TokenType::LBracket)) {
            expect(TokenType::RBracket);
            p.kind = ParamKind::Array;
            if (match(TokenType::LBracket)) {
                expect(TokenType::RBracket);
                p.kind = ParamKind::Matrix;
            }
        }
        return p;
    }

    Block parse_block() {
        expect(TokenType::LBrace);
        Block block;
        while (!check(TokenType::RBrace)) {
            if (check(TokenType::EndOfFile))
                throw ParseError("unterminated block", peek().pos, {"'}'"});
            block.push_back(parse_stmt());
        }
        expect(TokenType::RBrace);
        return block;
    }

    StmtPtr parse_stmt() {
        switch (peek().type) {
            case TokenType::KwLet: return parse_let(true);
            case TokenType::KwIf: return parse_if();
            case TokenType::KwWhile: return parse_while();
            case TokenType::KwFor: return parse_for();
            case TokenType::KwReturn: return parse_return();
            case TokenType::Ident: return parse_assign(true);
            default:
                throw ParseError(std::string("expected a statement, found ") +
                                     token_type_name(peek().type),
                                 peek().pos,
                                 {"'let'", "'if'", "'while'", "'for'", "'return'", "identifier"});
        }
    }

    StmtPtr parse_let(bool with_semi) {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = StmtKind::Let;
        stmt->pos = expect(TokenType::KwLet).pos;
        stmt->name = expect(TokenType::Ident).text;
        if (match(TokenType::Assign)) stmt->value = parse_expr();
        if (with_semi) expect(TokenType::Semicolon);
        return stmt;
    }

    StmtPtr parse_assign(bool with_semi) {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = StmtKind::Assign;
        const Token& name = expect(TokenType::Ident);
        stmt->name = name.text;
        stmt->pos = name.pos;
        if (check(TokenType::LParen))
            throw SemanticError("call expressions are not part of the language", peek().pos);
        while (match(TokenType::LBracket)) {
            stmt->indices.push_back(parse_expr());
            expect(TokenType::RBracket);
        }
        expect(TokenType::Assign);
        stmt->value = parse_expr();
        if (with_semi) expect(TokenType::Semicolon);
        return stmt;
    }

    StmtPtr parse_if() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = StmtKind::If;
        stmt->pos = expect(TokenType::KwIf).pos;
        expect(TokenType::LParen);
        stmt->cond = parse_expr();
        expect(TokenType::RParen);
        stmt->body = parse_block();
        if (match(TokenType::KwElse)) stmt->else_body = parse_block();
        return stmt;
    }

    StmtPtr parse_while() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = StmtKind::While;
        stmt->pos = expect(TokenType::KwWhile).pos;
        expect(TokenType::LParen);
        stmt->cond = parse_expr();
        expect(TokenType::RParen);
        stmt->body = parse_block();
        return stmt;
    }

    StmtPtr parse_for() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = StmtKind::For;
        stmt->pos = expect(TokenType::KwFor).pos;
        expect(TokenType::LParen);
        if (!check(TokenType::Semicolon)) stmt->for_init = parse_simple();
        expect(TokenType::Semicolon);
        stmt->cond = parse_expr();
        expect(TokenType::Semicolon);
        if (!check(TokenType::RParen)) stmt->for_update = parse_simple();
        expect(TokenType::RParen);
        stmt->body = parse_block();
        return stmt;
    }

    // Init/update clause of a for: a let or an assignment without its ';'.
    StmtPtr parse_simple() {
        if (check(TokenType::KwLet)) return parse_let(false);
        if (check(TokenType::Ident)) return parse_assign(false);
        throw ParseError(std::string("expected a declaration or assignment, found ") +
                             token_type_name(peek().type),
                         peek().pos, {"'let'", "identifier"});
    }

    StmtPtr parse_return() {
        auto stmt = std::make_unique<Stmt>();
        stmt->kind = StmtKind::Return;
        stmt->pos = expect(TokenType::KwReturn).pos;
        if (!check(TokenType::Semicolon)) stmt->value = parse_expr();
        expect(TokenType::Semicolon);
        return stmt;
    }

    ExprPtr parse_expr() { return parse_or(); }

    ExprPtr parse_or() {
        ExprPtr lhs = parse_and();
        while (match(TokenType::OrOr)) lhs = binary(BinaryOp::Or, std::move(lhs), parse_and());
        return lhs;
    }

    ExprPtr parse_and() {
        ExprPtr lhs = parse_equality();
        while (match(TokenType::AndAnd))
            lhs = binary(BinaryOp::And, std::move(lhs), parse_equality());
        return lhs;
    }

    ExprPtr parse_equality() {
        ExprPtr lhs = parse_relational();
        for (;;) {
            if (match(TokenType::Eq)) lhs = binary(BinaryOp::Eq, std::move(lhs), parse_relational());
            else if (match(TokenType::Ne)) lhs = binary(BinaryOp::Ne, std::move(lhs), parse_relational());
            else return lhs;
        }
    }

    ExprPtr parse_relational() {
        ExprPtr lhs = parse_additive();
        for (;;) {
            if (match(TokenType::Lt)) lhs = binary(BinaryOp::Lt, std::move(lhs), parse_additive());
            else if (match(TokenType::Le)) lhs = binary(BinaryOp::Le, std::move(lhs), parse_additive());
            else if (match(TokenType::Gt)) lhs = binary(BinaryOp::Gt, std::move(lhs), parse_additive());
            else if (match(TokenType::Ge)) lhs = binary(BinaryOp::Ge, std::move(lhs), parse_additive());
            else return lhs;
        }
    }

    ExprPtr parse_additive() {
        ExprPtr lhs = parse_multiplicative();
        for (;;) {
            if (match(TokenType::Plus)) lhs = binary(BinaryOp::Add, std::move(lhs), parse_multiplicative());
            else if (match(TokenType::Minus)) lhs = binary(BinaryOp::Sub, std::move(lhs), parse_multiplicative());
            else return lhs;
        }
    }

    ExprPtr parse_multiplicative() {
        ExprPtr lhs = parse_unary();
        for (;;) {
            if (match(TokenType::Star)) lhs = binary(BinaryOp::Mul, std::move(lhs), parse_unary());
            else if (match(TokenType::Slash)) lhs = binary(BinaryOp::Div, std::move(lhs), parse_unary());
            else if (match(TokenType::Percent)) lhs = binary(BinaryOp::Mod, std::move(lhs), parse_unary());
            else return lhs;
        }
    }

    ExprPtr parse_unary() {
        if (match(TokenType::Minus)) return unary(UnaryOp::Neg, prev().pos, parse_unary());
        if (match(TokenType::Bang)) return unary(UnaryOp::Not, prev().pos, parse_unary());
        return parse_primary();
    }

    ExprPtr parse_primary() {
        if (match(TokenType::IntLit)) {
            auto expr = std::make_unique<Expr>();
            expr->kind = ExprKind::IntLit;
            expr->pos = prev().pos;
            expr->value = prev().int_value;
            return expr;
        }
        if (match(TokenType::LParen)) {
            ExprPtr inner = parse_expr();
            expect(TokenType::RParen);
            return inner;
        }
        if (match(TokenType::Ident)) {
            const Token& name = prev();
            if (check(TokenType::LParen))
                throw SemanticError("call expressions are not part of the language", peek().pos);
            auto expr = std::make_unique<Expr>();
            expr->pos = name.pos;
            expr->name = name.text;
            if (check(TokenType::LBracket)) {
                expr->kind = ExprKind::Index;
                while (match(TokenType::LBracket)) {
                    expr->indices.push_back(parse_expr());
                    expect(TokenType::RBracket);
                }
            } else {
                expr->kind = ExprKind::VarRef;
            }
            return expr;
        }
        throw ParseError(std::string("expected an expression, found ") +
                             token_type_name(peek().type),
                         peek().pos, {"identifier", "integer", "'('", "'-'", "'!'"});
    }

    ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
        auto expr = std::make_unique<Expr>();
        expr->kind = ExprKind::Binary;
        expr->pos = lhs->pos;
        expr->bin_op = op;
        expr->lhs = std::move(lhs);
        expr->rhs = std::move(rhs);
        return expr;
    }

    ExprPtr unary(UnaryOp op, SourcePos pos, ExprPtr operand) {
        auto expr = std::make_unique<Expr>();
        expr->kind = ExprKind::Unary;
        expr->pos = pos;
        expr->un_op = op;
        expr->operand = std::move(operand);
        return expr;
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
};

// Binds every name to a slot. Params take slots [0, params); each `let`
// claims a fresh slot (no reuse). Visibility is block-scoped; shadowing
// any visible name is an error.
class Resolver {
public:
    explicit Resolver(Program& prog) : prog_(prog) {}

    void run() {
        scopes_.emplace_back();
        for (auto& param : prog_.params) {
            if (lookup(param.name))
                throw SemanticError("duplicate parameter '" + param.name + "'", param.pos);
            declare(param.name, param.kind);
        }
        resolve_block(prog_.body);
        scopes_.pop_back();
        prog_.slot_count = next_slot_;
    }

private:
    struct Binding {
        int slot;
        ParamKind kind;
    };

    const Binding* lookup(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
            auto found = it->find(name);
            if (found != it->end()) return &found->second;
        }
        return nullptr;
    }

    int declare(const std::string& name, ParamKind kind) {
        int slot = next_slot_++;
        scopes_.back().emplace(name, Binding{slot, kind});
        return slot;
    }

    void resolve_block(Block& block) {
        scopes_.emplace_back();
        for (auto& stmt : block) resolve_stmt(*stmt);
        scopes_.pop_back();
    }

    void resolve_stmt(Stmt& stmt) {
        switch (stmt.kind) {
            case StmtKind::Let:
                if (stmt.value) resolve_expr(*stmt.value);
                if (lookup(stmt.name))
                    throw SemanticError("'" + stmt.name + "' shadows an earlier declaration",
                                        stmt.pos);
                stmt.slot = declare(stmt.name, ParamKind::Scalar);
                break;
            case StmtKind::Assign: {
                const Binding* target = lookup(stmt.name);
                if (!target)
                    throw SemanticError("assignment to undeclared '" + stmt.name + "'", stmt.pos);
                check_arity(stmt.name, target->kind, stmt.indices.size(), stmt.pos);
                stmt.slot = target->slot;
                for (auto& index : stmt.indices) resolve_expr(*index);
                resolve_expr(*stmt.value);
                break;
            }
            case StmtKind::If:
                resolve_expr(*stmt.cond);
                resolve_block(stmt.body);
                resolve_block(stmt.else_body);
                break;
            case StmtKind::While:
                resolve_expr(*stmt.cond);
                resolve_block(stmt.body);
                break;
            case StmtKind::For:
                scopes_.emplace_back();  // a `for (let ...)` binding spans init/cond/update/body
                if (stmt.for_init) resolve_stmt(*stmt.for_init);
                resolve_expr(*stmt.cond);
                if (stmt.for_update) resolve_stmt(*stmt.for_update);
                resolve_block(stmt.body);
                scopes_.pop_back();
                break;
            case StmtKind::Return:
                if (stmt.value) resolve_expr(*stmt.value);
                break;
        }
    }

    void resolve_expr(Expr& expr) {
        switch (expr.kind) {
            case ExprKind::IntLit:
                break;
            case ExprKind::VarRef: {
                const Binding* binding = lookup(expr.name);
                if (!binding)
                    throw SemanticError("use of undeclared '" + expr.name + "'", expr.pos);
                if (binding->kind != ParamKind::Scalar)
                    throw SemanticError("'" + expr.name + "' is " +
                                            param_kind_name(binding->kind) +
                                            " and cannot be used as a value",
                                        expr.pos);
                expr.slot = binding->slot;
                break;
            }
            case ExprKind::Index: {
                const Binding* binding = lookup(expr.name);
                if (!binding)
                    throw SemanticError("use of undeclared '" + expr.name + "'", expr.pos);
                check_arity(expr.name, binding->kind, expr.indices.size(), expr.pos);
                expr.slot = binding->slot;
                for (auto& index : expr.indices) resolve_expr(*index);
                break;
            }
            case ExprKind::Unary:
                resolve_expr(*expr.operand);
                break;
            case ExprKind::Binary:
                resolve_expr(*expr.lhs);
                resolve_expr(*expr.rhs);
                break;
        }
    }

    static void check_arity(const std::string& name, ParamKind kind, std::size_t subscripts,
                            SourcePos pos) {
        std::size_t expected = kind == ParamKind::Scalar ? 0 : kind == ParamKind::Array ? 1 : 2;
        if (subscripts != expected)
            throw SemanticError("'" + name + "' is " + param_kind_name(kind) + " and takes " +
                                    std::to_string(expected) + " subscript(s), not " +
                                    std::to_string(subscripts),
                                pos);
    }

    Program& prog_;
    std::vector<std::unordered_map<std::string, Binding>> scopes_;
    int next_slot_ = 0;
};

int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Eq:
        case BinaryOp::Ne: return 3;
        case BinaryOp::Lt:
        case BinaryOp::Le:
        case BinaryOp::Gt:
        case BinaryOp::Ge: return 4;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return 6;
    }
    return 0;
}

const char* op_text(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Mod: return "%";
        case BinaryOp::Eq: return "==";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "&&";
        case BinaryOp::Or: return "||";
    }
    return "?";
}

class Printer {
public:
    std::string print(const Program& prog) {
        out_ << "fn " << prog.name << "(";
        for (std::size_t i = 0; i < prog.params.size(); ++i) {
            if (i) out_ << ", ";
            out_ << prog.params[i].name << ": " << param_kind_name(prog.params[i].kind);
        }
        out_ << ") {\n";
        ++depth_;
        print_block(prog.body);
        --depth_;
        out_ << "}\n";
        return out_.str();
    }

private:
    void indent() {
        for (int i = 0; i < depth_; ++i) out_ << "    ";
    }

    void print_block(const Block& block) {
        for (const auto& stmt : block) print_stmt(*stmt);
    }

    void print_stmt(const Stmt& stmt) {
        indent();
        print_stmt_head(stmt);
        switch (stmt.kind) {
            case StmtKind::Let:
            case StmtKind::Assign:
            case StmtKind::Return:
                out_ << ";\n";
                break;
            case StmtKind::If:
                out_ << " {\n";
                ++depth_;
                print_block(stmt.body);
                --depth_;
                indent();
                out_ << "}";
                if (!stmt.else_body.empty()) {
                    out_ << " else {\n";
                    ++depth_;
                    print_block(stmt.else_body);
                    --depth_;
                    indent();
                    out_ << "}";
                }
                out_ << "\n";
                break;
            case StmtKind::While:
            case StmtKind::For:
                out_ << " {\n";
                ++depth_;
                print_block(stmt.body);
                --depth_;
                indent();
                out_ << "}\n";
                break;
        }
    }

    // The statement without its trailing ';' or block, usable inside for(...).
    void print_stmt_head(const Stmt& stmt) {
        switch (stmt.kind) {
            case StmtKind::Let:
                out_ << "let " << stmt.name;
                if (stmt.value) {
                    out_ << " = ";
                    print_expr(*stmt.value, 0);
                }
                break;
            case StmtKind::Assign:
                out_ << stmt.name;
                for (const auto& index : stmt.indices) {
                    out_ << "[";
                    print_expr(*index, 0);
                    out_ << "]";
                }
                out_ << " = ";
                print_expr(*stmt.value, 0);
                break;
            case StmtKind::If:
                out_ << "if (";
                print_expr(*stmt.cond, 0);
                out_ << ")";
                break;
            case StmtKind::While:
                out_ << "while (";
                print_expr(*stmt.cond, 0);
                out_ << ")";
                break;
            case StmtKind::For:
                out_ << "for (";
                if (stmt.for_init) print_stmt_head(*stmt.for_init);
                out_ << "; ";
                print_expr(*stmt.cond, 0);
                out_ << ";";
                if (stmt.for_update) {
                    out_ << " ";
                    print_stmt_head(*stmt.for_update);
                }
                out_ << ")";
                break;
            case StmtKind::Return:
                out_ << "return";
                if (stmt.value) {
                    out_ << " ";
                    print_expr(*stmt.value, 0);
                }
                break;
        }
    }

    // min_prec: parenthesize if this node binds looser than the context.
    void print_expr(const Expr& expr, int min_prec) {
        switch (expr.kind) {
            case ExprKind::IntLit:
                out_ << expr.value;
                break;
            case ExprKind::VarRef:
                out_ << expr.name;
                break;
            case ExprKind::Index:
                out_ << expr.name;
                for (const auto& index : expr.indices) {
                    out_ << "[";
                    print_expr(*index, 0);
                    out_ << "]";
                }
                break;
            case ExprKind::Unary:
                out_ << (expr.un_op == UnaryOp::Neg ? "-" : "!");
                print_expr(*expr.operand, 7);
                break;
            case ExprKind::Binary: {
                int prec = precedence(expr.bin_op);
                bool parens = prec < min_prec;
                if (parens) out_ << "(";
                // Left-associative: the left child may sit at equal precedence,
                // the right child must bind strictly tighter.
                print_expr(*expr.lhs, prec);
                out_ << " " << op_text(expr.bin_op) << " ";
                print_expr(*expr.rhs, prec + 1);
                if (parens) out_ << ")";
                break;
            }
        }
    }

    std::ostringstream out_;
    int depth_ = 0;
};

int count_decisions_in(const Block& block);

int count_decisions_in(const Stmt& stmt) {
    switch (stmt.kind) {
        case StmtKind::If:
            return 1 + count_decisions_in(stmt.body) + count_decisions_in(stmt.else_body);
        case StmtKind::While:
        case StmtKind::For:
            return 1 + count_decisions_in(stmt.body);
        default:
            return 0;
    }
}

int count_decisions_in(const Block& block) {
    int total = 0;
    for (const auto& stmt : block) total += count_decisions_in(*stmt);
    return total;
}

}  // namespace

Program parse(const std::string& source) {
    Program prog = Parser(tokenize(source)).run();
    Resolver(prog).run();
    return prog;
}

std::string pretty_print(const Program& program) {
    return Printer().print(program);
}

int count_decision_stmts(const Program& program) {
    return count_decisions_in(program.body);
}

}  // namespace pathgen
