#include "pathgen/schema.hpp"

#include <set>
#include <sstream>

#include <json.hpp>

#include "pathgen/errors.hpp"
#include "pathgen/rng.hpp"

namespace pathgen {

const char* constraint_name(Constraint c) {
    switch (c) {
        case Constraint::None: return "none";
        case Constraint::SortedAscending: return "sorted";
        case Constraint::DistinctElements: return "distinct";
    }
    return "?";
}

const SchemaParam* InputSchema::find(const std::string& name) const {
    for (const auto& param : params)
        if (param.name == name) return &param;
    return nullptr;
}

std::vector<std::string> InputSchema::free_size_names() const {
    std::vector<std::string> names;
    for (const auto& param : params)
        if (param.kind == ParamKind::Scalar && param.role == ScalarRole::Size &&
            param.equals.empty())
            names.push_back(param.name);
    return names;
}

std::map<std::string, std::int64_t> InputSchema::resolve_sizes(const Shape& shape) const {
    std::vector<std::string> free = free_size_names();
    if (shape.size() != free.size())
        throw ConfigError("shape has " + std::to_string(shape.size()) + " entries, schema has " +
                          std::to_string(free.size()) + " free size params");
    std::map<std::string, std::int64_t> sizes;
    for (std::size_t i = 0; i < free.size(); ++i) sizes[free[i]] = shape[i];
    // Coupled sizes follow their chain to a free size. Chains are acyclic
    // (checked at parse time), so a fixed number of sweeps settles them.
    bool progressed = true;
    while (progressed) {
        progressed = false;
        for (const auto& param : params) {
            if (param.kind != ParamKind::Scalar || param.role != ScalarRole::Size) continue;
            if (param.equals.empty() || sizes.count(param.name)) continue;
            auto it = sizes.find(param.equals);
            if (it != sizes.end()) {
                sizes[param.name] = it->second;
                progressed = true;
            }
        }
    }
    return sizes;
}

std::int64_t InputSchema::dim_value(const DimSpec& dim,
                                    const std::map<std::string, std::int64_t>& sizes) const {
    if (dim.is_fixed) return dim.fixed;
    auto it = sizes.find(dim.ref);
    if (it == sizes.end())
        throw ConfigError("dimension refers to unresolved size param '" + dim.ref + "'");
    return it->second;
}

namespace {

using nlohmann::json;

DimSpec parse_dim(const json& value, const std::string& where, std::vector<std::string>& issues) {
    DimSpec dim;
    if (value.is_number_integer()) {
        dim.is_fixed = true;
        dim.fixed = value.get<std::int64_t>();
        if (dim.fixed < 0) issues.push_back(where + ": fixed dimension must be >= 0");
    } else if (value.is_string()) {
        dim.ref = value.get<std::string>();
        if (dim.ref.empty()) issues.push_back(where + ": empty dimension reference");
    } else {
        issues.push_back(where + ": dimension must be an integer or a size-param name");
    }
    return dim;
}

}  // namespace

InputSchema schema_from_json(const std::string& json_text) {
    std::vector<std::string> issues;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError({std::string("invalid JSON: ") + e.what()});
    }
    if (!doc.is_object() || !doc.contains("params") || !doc["params"].is_array())
        throw SchemaError({"schema document must be an object with a \"params\" array"});

    InputSchema schema;
    std::set<std::string> referenced;     // names used as a dimension or coupling target
    std::set<std::string> explicit_keys;  // scalars whose role "key" was written out

    for (const auto& entry : doc["params"]) {
        if (!entry.is_object()) {
            issues.push_back("every params entry must be an object");
            continue;
        }
        SchemaParam param;
        param.name = entry.value("name", "");
        if (param.name.empty()) issues.push_back("params entry without a name");
        std::string where = "param '" + param.name + "'";

        std::string kind = entry.value("kind", "");
        if (kind == "scalar") param.kind = ParamKind::Scalar;
        else if (kind == "array") param.kind = ParamKind::Array;
        else if (kind == "matrix") param.kind = ParamKind::Matrix;
        else issues.push_back(where + ": kind must be scalar, array, or matrix");

        if (param.kind == ParamKind::Array) {
            if (entry.contains("length")) param.length = parse_dim(entry["length"], where, issues);
            else issues.push_back(where + ": array needs a length");
            std::string constraint = entry.value("constraint", "none");
            if (constraint == "none") param.constraint = Constraint::None;
            else if (constraint == "sorted") param.constraint = Constraint::SortedAscending;
            else if (constraint == "distinct") param.constraint = Constraint::DistinctElements;
            else issues.push_back(where + ": constraint must be none, sorted, or distinct");
        } else if (entry.contains("constraint")) {
            issues.push_back(where + ": only arrays take a constraint");
        }

        if (param.kind == ParamKind::Matrix) {
            if (entry.contains("rows")) param.rows = parse_dim(entry["rows"], where, issues);
            else issues.push_back(where + ": matrix needs rows");
            if (entry.contains("cols")) param.cols = parse_dim(entry["cols"], where, issues);
            else issues.push_back(where + ": matrix needs cols");
        }

        if (param.kind == ParamKind::Scalar) {
            if (entry.contains("equals")) param.equals = entry["equals"].get<std::string>();
        } else if (entry.contains("equals")) {
            issues.push_back(where + ": only scalars take equals");
        }

        if (!param.length.ref.empty()) referenced.insert(param.length.ref);
        if (!param.rows.ref.empty()) referenced.insert(param.rows.ref);
        if (!param.cols.ref.empty()) referenced.insert(param.cols.ref);
        if (!param.equals.empty()) referenced.insert(param.equals);

        // Role: explicit wins, otherwise inferred from references below.
        if (entry.contains("role")) {
            std::string role = entry["role"].get<std::string>();
            if (role == "size") param.role = ScalarRole::Size;
            else if (role == "key") {
                param.role = ScalarRole::Key;
                explicit_keys.insert(param.name);
            } else issues.push_back(where + ": role must be size or key");
            if (param.kind != ParamKind::Scalar && entry.contains("role"))
                issues.push_back(where + ": only scalars take a role");
        }
        schema.params.push_back(std::move(param));
    }

    // Pass 2: inference and cross-checks that need the full param list.
    std::set<std::string> names;
    for (auto& param : schema.params) {
        if (!names.insert(param.name).second)
            issues.push_back("duplicate param '" + param.name + "'");
        if (param.kind != ParamKind::Scalar) continue;
        bool is_referenced = referenced.count(param.name) > 0;
        if (is_referenced) {
            if (explicit_keys.count(param.name))
                issues.push_back("param '" + param.name +
                                 "' is used as a size but declared role key");
            param.role = ScalarRole::Size;
        }
        if (!param.equals.empty()) param.role = ScalarRole::Size;
    }

    auto check_ref = [&](const DimSpec& dim, const std::string& where) {
        if (dim.is_fixed || dim.ref.empty()) return;
        const SchemaParam* target = schema.find(dim.ref);
        if (!target)
            issues.push_back(where + ": dimension refers to unknown param '" + dim.ref + "'");
        else if (target->kind != ParamKind::Scalar)
            issues.push_back(where + ": dimension must refer to a scalar, '" + dim.ref +
                             "' is " + param_kind_name(target->kind));
    };
    for (const auto& param : schema.params) {
        std::string where = "param '" + param.name + "'";
        check_ref(param.length, where);
        check_ref(param.rows, where);
        check_ref(param.cols, where);
        if (!param.equals.empty()) {
            const SchemaParam* target = schema.find(param.equals);
            if (!target)
                issues.push_back(where + ": equals refers to unknown param '" + param.equals + "'");
            else if (target->kind != ParamKind::Scalar)
                issues.push_back(where + ": equals must refer to a scalar");
        }
    }

    // Coupling chains must reach a free size param.
    for (const auto& param : schema.params) {
        if (param.equals.empty()) continue;
        std::set<std::string> seen{param.name};
        const SchemaParam* cursor = schema.find(param.equals);
        while (cursor && !cursor->equals.empty()) {
            if (!seen.insert(cursor->name).second) {
                issues.push_back("coupling cycle through '" + param.name + "'");
                cursor = nullptr;
                break;
            }
            cursor = schema.find(cursor->equals);
        }
    }

    if (!issues.empty()) throw SchemaError(std::move(issues));
    return schema;
}

std::string schema_canonical(const InputSchema& schema) {
    std::ostringstream out;
    auto dim = [](const DimSpec& d) {
        return d.is_fixed ? std::to_string(d.fixed) : d.ref;
    };
    for (const auto& param : schema.params) {
        out << param.name << ":" << param_kind_name(param.kind);
        switch (param.kind) {
            case ParamKind::Scalar:
                out << ":" << (param.role == ScalarRole::Size ? "size" : "key");
                if (!param.equals.empty()) out << "=" << param.equals;
                break;
            case ParamKind::Array:
                out << "[" << dim(param.length) << "]:" << constraint_name(param.constraint);
                break;
            case ParamKind::Matrix:
                out << "[" << dim(param.rows) << "][" << dim(param.cols) << "]";
                break;
        }
        out << ";";
    }
    return out.str();
}

std::string schema_digest(const InputSchema& schema) {
    std::string canon = schema_canonical(schema);
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (unsigned char c : canon) h = mix64(h ^ c);
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

void validate_schema(const Program& program, const InputSchema& schema) {
    std::vector<std::string> issues;
    if (program.params.size() != schema.params.size())
        issues.push_back("program has " + std::to_string(program.params.size()) +
                         " params, schema has " + std::to_string(schema.params.size()));
    std::size_t n = std::min(program.params.size(), schema.params.size());
    for (std::size_t i = 0; i < n; ++i) {
        const Param& p = program.params[i];
        const SchemaParam& s = schema.params[i];
        if (p.name != s.name) {
            issues.push_back("param " + std::to_string(i) + ": program declares '" + p.name +
                             "', schema declares '" + s.name + "'");
            continue;
        }
        if (p.kind != s.kind)
            issues.push_back("param '" + p.name + "': program kind " + param_kind_name(p.kind) +
                             ", schema kind " + param_kind_name(s.kind));
    }
    for (const auto& s : schema.params)
        if (!program.find_param(s.name))
            issues.push_back("schema param '" + s.name + "' is not a program param");
    for (const auto& p : program.params)
        if (!schema.find(p.name))
            issues.push_back("program param '" + p.name + "' is missing from the schema");
    if (!issues.empty()) throw SchemaError(std::move(issues));
}

}  // namespace pathgen
