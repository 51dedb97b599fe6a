#include "pathgen/input.hpp"

#include <set>

#include "pathgen/errors.hpp"

namespace pathgen {

void check_bindings(const Program& program, const InputVector& input) {
    std::vector<std::string> issues;
    std::set<std::string> seen;
    for (const auto& [name, value] : input.bindings) {
        if (!seen.insert(name).second) issues.push_back("'" + name + "' is bound twice");
        const Param* param = program.find_param(name);
        if (!param) {
            issues.push_back("'" + name + "' is not a parameter of " + program.name);
            continue;
        }
        if (param->kind != value.kind)
            issues.push_back("'" + name + "' is " + param_kind_name(param->kind) +
                             ", bound value is " + param_kind_name(value.kind));
        if (value.kind == ParamKind::Matrix &&
            static_cast<std::size_t>(value.rows) * static_cast<std::size_t>(value.cols) !=
                value.elems.size())
            issues.push_back("'" + name + "' matrix data does not match rows*cols");
    }
    for (const auto& param : program.params)
        if (!seen.count(param.name)) issues.push_back("'" + param.name + "' is unbound");
    if (!issues.empty()) throw SchemaError(std::move(issues));
}

}  // namespace pathgen
