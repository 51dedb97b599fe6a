#include "pathgen/sampler.hpp"

#include <algorithm>
#include <set>

#include "pathgen/errors.hpp"

namespace pathgen {

namespace {

std::vector<std::int64_t> draw_elements(std::int64_t count, std::int64_t domain,
                                        Constraint constraint, SplitMix64& rng,
                                        const std::string& name) {
    if (constraint == Constraint::DistinctElements && count > domain)
        throw InfeasibleConstraint("param '" + name + "': " + std::to_string(count) +
                                   " distinct elements do not fit in a domain of " +
                                   std::to_string(domain));
    std::vector<std::int64_t> elems(static_cast<std::size_t>(count));
    if (constraint == Constraint::DistinctElements) {
        std::set<std::int64_t> used;
        for (auto& e : elems) {
            std::int64_t v = rng.below(domain);
            while (used.count(v)) v = rng.below(domain);
            used.insert(v);
            e = v;
        }
    } else {
        for (auto& e : elems) e = rng.below(domain);
        if (constraint == Constraint::SortedAscending) std::sort(elems.begin(), elems.end());
    }
    return elems;
}

}  // namespace

InputVector sample_input(const InputSchema& schema, const Shape& shape, std::int64_t domain,
                         SplitMix64& rng) {
    if (domain < 1) throw ConfigError("domain must be positive");
    auto sizes = schema.resolve_sizes(shape);
    InputVector input;
    for (const auto& param : schema.params) {
        switch (param.kind) {
            case ParamKind::Scalar: {
                std::int64_t v = param.role == ScalarRole::Size ? sizes.at(param.name)
                                                                : rng.below(domain);
                input.bindings.emplace_back(param.name, Value::make_scalar(v));
                break;
            }
            case ParamKind::Array: {
                std::int64_t len = schema.dim_value(param.length, sizes);
                input.bindings.emplace_back(
                    param.name,
                    Value::make_array(draw_elements(len, domain, param.constraint, rng,
                                                    param.name)));
                break;
            }
            case ParamKind::Matrix: {
                std::int64_t rows = schema.dim_value(param.rows, sizes);
                std::int64_t cols = schema.dim_value(param.cols, sizes);
                input.bindings.emplace_back(
                    param.name,
                    Value::make_matrix(static_cast<int>(rows), static_cast<int>(cols),
                                       draw_elements(rows * cols, domain, Constraint::None, rng,
                                                     param.name)));
                break;
            }
        }
    }
    return input;
}

}  // namespace pathgen
