#include "pathgen/interpreter.hpp"

#include <limits>

#include "pathgen/errors.hpp"

namespace pathgen {

namespace {

struct BudgetSignal {};

struct FaultSignal {
    std::string message;
};

std::int64_t wrap_add(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) +
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_sub(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) -
                                     static_cast<std::uint64_t>(b));
}

std::int64_t wrap_mul(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(static_cast<std::uint64_t>(a) *
                                     static_cast<std::uint64_t>(b));
}

class Machine {
public:
    Machine(const Program& program, const DecisionTable& table, std::int64_t budget)
        : prog_(program), table_(table), budget_(budget) {}

    ExecResult run(const InputVector& input) {
        check_bindings(prog_, input);
        slots_.assign(static_cast<std::size_t>(prog_.slot_count), Value{});
        for (std::size_t i = 0; i < prog_.params.size(); ++i)
            slots_[i] = *input.find(prog_.params[i].name);

        ExecResult result;
        try {
            exec_block(prog_.body);
            result.status = ExecStatus::Ok;
            result.has_return = has_return_;
            result.return_value = return_value_;
            result.final_params.assign(slots_.begin(),
                                       slots_.begin() + static_cast<long>(prog_.params.size()));
        } catch (const BudgetSignal&) {
            result.status = ExecStatus::BudgetExceeded;
        } catch (const FaultSignal& fault) {
            result.status = ExecStatus::RuntimeFault;
            result.fault = fault.message;
        }
        result.trace = std::move(trace_);
        return result;
    }

private:
    void step() {
        if (++trace_.steps_used > budget_) throw BudgetSignal{};
    }

    Value& slot(int index) { return slots_[static_cast<std::size_t>(index)]; }

    std::int64_t* element(Value& value, const std::vector<ExprPtr>& indices,
                          const std::string& name) {
        if (value.kind == ParamKind::Array) {
            std::int64_t i = eval(*indices[0]);
            if (i < 0 || i >= static_cast<std::int64_t>(value.elems.size()))
                throw FaultSignal{"index " + std::to_string(i) + " out of range for '" + name +
                                  "' (length " + std::to_string(value.elems.size()) + ")"};
            return &value.elems[static_cast<std::size_t>(i)];
        }
        std::int64_t r = eval(*indices[0]);
        std::int64_t c = eval(*indices[1]);
        if (r < 0 || r >= value.rows || c < 0 || c >= value.cols)
            throw FaultSignal{"index [" + std::to_string(r) + "][" + std::to_string(c) +
                              "] out of range for '" + name + "' (" + std::to_string(value.rows) +
                              "x" + std::to_string(value.cols) + ")"};
        return &value.elems[static_cast<std::size_t>(r * value.cols + c)];
    }

    std::int64_t eval(const Expr& expr) {
        switch (expr.kind) {
            case ExprKind::IntLit:
                return expr.value;
            case ExprKind::VarRef:
                return slot(expr.slot).scalar;
            case ExprKind::Index:
                return *element(slot(expr.slot), expr.indices, expr.name);
            case ExprKind::Unary: {
                std::int64_t v = eval(*expr.operand);
                return expr.un_op == UnaryOp::Neg ? wrap_sub(0, v) : (v == 0 ? 1 : 0);
            }
            case ExprKind::Binary: {
                if (expr.bin_op == BinaryOp::And)
                    return eval(*expr.lhs) != 0 && eval(*expr.rhs) != 0 ? 1 : 0;
                if (expr.bin_op == BinaryOp::Or)
                    return eval(*expr.lhs) != 0 || eval(*expr.rhs) != 0 ? 1 : 0;
                std::int64_t a = eval(*expr.lhs);
                std::int64_t b = eval(*expr.rhs);
                switch (expr.bin_op) {
                    case BinaryOp::Add: return wrap_add(a, b);
                    case BinaryOp::Sub: return wrap_sub(a, b);
                    case BinaryOp::Mul: return wrap_mul(a, b);
                    case BinaryOp::Div:
                        if (b == 0) throw FaultSignal{"division by zero"};
                        if (a == std::numeric_limits<std::int64_t>::min() && b == -1)
                            return a;  // wraps, same as * -1
                        return a / b;
                    case BinaryOp::Mod:
                        if (b == 0) throw FaultSignal{"division by zero"};
                        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) return 0;
                        return a % b;
                    case BinaryOp::Eq: return a == b ? 1 : 0;
                    case BinaryOp::Ne: return a != b ? 1 : 0;
                    case BinaryOp::Lt: return a < b ? 1 : 0;
                    case BinaryOp::Le: return a <= b ? 1 : 0;
                    case BinaryOp::Gt: return a > b ? 1 : 0;
                    case BinaryOp::Ge: return a >= b ? 1 : 0;
                    default: return 0;  // And/Or handled above
                }
            }
        }
        return 0;
    }

    bool eval_decision(const Stmt& stmt) {
        step();
        bool taken = eval(*stmt.cond) != 0;
        trace_.events.push_back({table_.id_of(&stmt), taken});
        return taken;
    }

    void exec_block(const Block& block) {
        for (const auto& stmt : block) {
            exec_stmt(*stmt);
            if (returned_) return;
        }
    }

    void exec_stmt(const Stmt& stmt) {
        switch (stmt.kind) {
            case StmtKind::Let:
                step();
                slot(stmt.slot) = Value::make_scalar(stmt.value ? eval(*stmt.value) : 0);
                break;
            case StmtKind::Assign: {
                step();
                if (stmt.indices.empty()) {
                    slot(stmt.slot).scalar = eval(*stmt.value);
                } else {
                    std::int64_t* target = element(slot(stmt.slot), stmt.indices, stmt.name);
                    *target = eval(*stmt.value);
                }
                break;
            }
            case StmtKind::If:
                if (eval_decision(stmt)) exec_block(stmt.body);
                else exec_block(stmt.else_body);
                break;
            case StmtKind::While:
                while (eval_decision(stmt)) {
                    exec_block(stmt.body);
                    if (returned_) return;
                }
                break;
            case StmtKind::For:
                if (stmt.for_init) exec_stmt(*stmt.for_init);
                while (eval_decision(stmt)) {
                    exec_block(stmt.body);
                    if (returned_) return;
                    if (stmt.for_update) exec_stmt(*stmt.for_update);
                }
                break;
            case StmtKind::Return:
                step();
                if (stmt.value) {
                    return_value_ = eval(*stmt.value);
                    has_return_ = true;
                }
                returned_ = true;
                break;
        }
    }

    const Program& prog_;
    const DecisionTable& table_;
    std::int64_t budget_;
    Trace trace_;
    std::vector<Value> slots_;
    bool returned_ = false;
    bool has_return_ = false;
    std::int64_t return_value_ = 0;
};

}  // namespace

ExecResult execute(const Program& program, const DecisionTable& table, const InputVector& input,
                   std::int64_t step_budget) {
    return Machine(program, table, step_budget).run(input);
}

}  // namespace pathgen
