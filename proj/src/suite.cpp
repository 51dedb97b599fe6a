#include "pathgen/suite.hpp"

#include <charconv>
#include <sstream>

#include "pathgen/errors.hpp"
#include "pathgen/trace.hpp"

namespace pathgen {

using nlohmann::ordered_json;

namespace {

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string replay_path(const Program& program, const DecisionTable& table,
                        const InputVector& input, std::int64_t step_budget) {
    ExecResult result = execute(program, table, input, step_budget);
    if (!result.ok()) return "<" + std::string(result.status == ExecStatus::BudgetExceeded
                                                   ? "budget exceeded"
                                                   : "fault: " + result.fault) +
                             ">";
    return render_trace(result.trace, table);
}

}  // namespace

nlohmann::ordered_json input_to_json(const InputVector& input) {
    ordered_json doc = ordered_json::object();
    for (const auto& [name, value] : input.bindings) {
        switch (value.kind) {
            case ParamKind::Scalar:
                doc[name] = value.scalar;
                break;
            case ParamKind::Array:
                doc[name] = value.elems;
                break;
            case ParamKind::Matrix: {
                ordered_json rows = ordered_json::array();
                for (int r = 0; r < value.rows; ++r) {
                    ordered_json row = ordered_json::array();
                    for (int c = 0; c < value.cols; ++c)
                        row.push_back(value.elems[static_cast<std::size_t>(r * value.cols + c)]);
                    rows.push_back(std::move(row));
                }
                doc[name] = std::move(rows);
                break;
            }
        }
    }
    return doc;
}

InputVector input_from_json(const nlohmann::ordered_json& doc, const Program* program) {
    if (!doc.is_object()) throw UnsupportedFormat("input must be a JSON object");
    InputVector input;
    for (const auto& [name, value] : doc.items()) {
        const Param* param = program ? program->find_param(name) : nullptr;
        if (value.is_number_integer()) {
            input.bindings.emplace_back(name, Value::make_scalar(value.get<std::int64_t>()));
        } else if (value.is_array()) {
            bool nested = !value.empty() && value.front().is_array();
            bool as_matrix = nested || (param && param->kind == ParamKind::Matrix);
            if (as_matrix) {
                int rows = static_cast<int>(value.size());
                int cols = rows == 0 ? 0 : static_cast<int>(value.front().size());
                std::vector<std::int64_t> data;
                for (const auto& row : value) {
                    if (static_cast<int>(row.size()) != cols)
                        throw UnsupportedFormat("ragged matrix for '" + name + "'");
                    for (const auto& cell : row) data.push_back(cell.get<std::int64_t>());
                }
                input.bindings.emplace_back(name, Value::make_matrix(rows, cols, std::move(data)));
            } else {
                input.bindings.emplace_back(name,
                                            Value::make_array(value.get<std::vector<std::int64_t>>()));
            }
        } else {
            throw UnsupportedFormat("unsupported value for '" + name + "'");
        }
    }
    return input;
}

TestSuite extract_suite(const PathSet& set, const std::string& subject_name,
                        const Program& program, const DecisionTable& table,
                        const nlohmann::ordered_json& config, std::uint64_t seed,
                        std::int64_t step_budget) {
    TestSuite suite;
    suite.subject = subject_name;
    suite.config = config;
    suite.seed = seed;
    if (config.contains("schema_digest")) suite.schema_digest = config["schema_digest"];
    for (const auto& record : set.records()) {
        std::string replayed = replay_path(program, table, record.first_input, step_budget);
        if (replayed != record.key)
            throw ReplayMismatch("stored input for path \"" + record.key + "\" replays as \"" +
                                 replayed + "\"");
        SuiteEntry entry;
        entry.path = record.key;
        entry.input = record.first_input;
        entry.length = record.length;
        entry.cost = record.cost;
        entry.first_k = record.first_k;
        suite.entries.push_back(std::move(entry));
    }
    return suite;
}

void validate_suite(const TestSuite& suite, const Program& program, const DecisionTable& table,
                    std::int64_t step_budget) {
    for (const auto& entry : suite.entries) {
        std::string replayed = replay_path(program, table, entry.input, step_budget);
        if (replayed != entry.path)
            throw ReplayMismatch("suite entry \"" + entry.path + "\" replays as \"" + replayed +
                                 "\"");
    }
}

std::string export_suite(const TestSuite& suite, const std::string& format) {
    if (format != "json")
        throw UnsupportedFormat("suites export as json, not " + format);
    ordered_json doc;
    doc["subject"] = suite.subject;
    doc["schema_digest"] = suite.schema_digest;
    doc["config"] = suite.config;
    doc["seed"] = suite.seed;
    ordered_json entries = ordered_json::array();
    for (const auto& entry : suite.entries) {
        ordered_json e;
        e["path"] = entry.path;
        e["input"] = input_to_json(entry.input);
        e["length"] = entry.length;
        e["cost"] = entry.cost;
        e["first_k"] = entry.first_k;
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

TestSuite import_suite(const std::string& bytes, const Program* program) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(bytes);
    } catch (const ordered_json::parse_error& e) {
        throw UnsupportedFormat(std::string("invalid suite JSON: ") + e.what());
    }
    TestSuite suite;
    suite.subject = doc.value("subject", "");
    suite.schema_digest = doc.value("schema_digest", "");
    if (doc.contains("config")) suite.config = doc["config"];
    suite.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& e : doc.value("entries", ordered_json::array())) {
        SuiteEntry entry;
        entry.path = e.value("path", "");
        entry.input = input_from_json(e.at("input"), program);
        entry.length = e.value("length", 0);
        entry.cost = e.value("cost", 0);
        entry.first_k = e.value("first_k", std::int64_t{0});
        suite.entries.push_back(std::move(entry));
    }
    return suite;
}

std::string export_report(const CampaignReport& report, const std::string& format,
                          bool stable_time) {
    if (format == "csv") {
        std::ostringstream out;
        out << kReportCsvHeader << "\n";
        for (const auto& row : report.rows) {
            out << row.k << "," << row.test_cases << "," << row.ufp << "," << row.nfp << ","
                << row.llp << "," << format_double(stable_time ? 0.0 : row.etime_ms) << "\n";
        }
        return out.str();
    }
    if (format == "json") {
        ordered_json doc;
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) {
            ordered_json r;
            r["k"] = row.k;
            r["test_cases"] = row.test_cases;
            r["ufp"] = row.ufp;
            r["nfp"] = row.nfp;
            r["llp"] = row.llp;
            r["etime_ms"] = stable_time ? 0.0 : row.etime_ms;
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        doc["skipped_inputs"] = report.skipped_inputs;
        doc["k_longest"] = report.k_longest ? ordered_json(*report.k_longest) : ordered_json();
        doc["k_saturation"] =
            report.k_saturation ? ordered_json(*report.k_saturation) : ordered_json();
        return doc.dump(2) + "\n";
    }
    throw UnsupportedFormat("reports export as csv or json, not " + format);
}

CampaignReport import_report(const std::string& bytes, const std::string& format) {
    CampaignReport report;
    if (format == "csv") {
        std::istringstream in(bytes);
        std::string line;
        if (!std::getline(in, line) || line != kReportCsvHeader)
            throw UnsupportedFormat("report CSV must start with '" +
                                    std::string(kReportCsvHeader) + "'");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            CampaignRow row;
            std::istringstream cells(line);
            std::string cell;
            auto next = [&]() {
                if (!std::getline(cells, cell, ','))
                    throw UnsupportedFormat("short report CSV row: " + line);
                return cell;
            };
            row.k = std::stoll(next());
            row.test_cases = std::stoll(next());
            row.ufp = std::stoll(next());
            row.nfp = std::stoll(next());
            row.llp = std::stoll(next());
            row.etime_ms = std::stod(next());
            report.rows.push_back(row);
        }
        return report;
    }
    if (format == "json") {
        ordered_json doc;
        try {
            doc = ordered_json::parse(bytes);
        } catch (const ordered_json::parse_error& e) {
            throw UnsupportedFormat(std::string("invalid report JSON: ") + e.what());
        }
        for (const auto& r : doc.value("rows", ordered_json::array())) {
            CampaignRow row;
            row.k = r.value("k", std::int64_t{0});
            row.test_cases = r.value("test_cases", std::int64_t{0});
            row.ufp = r.value("ufp", std::int64_t{0});
            row.nfp = r.value("nfp", std::int64_t{0});
            row.llp = r.value("llp", std::int64_t{0});
            row.etime_ms = r.value("etime_ms", 0.0);
            report.rows.push_back(row);
        }
        report.skipped_inputs = doc.value("skipped_inputs", std::int64_t{0});
        if (doc.contains("k_longest") && !doc["k_longest"].is_null())
            report.k_longest = doc["k_longest"].get<std::int64_t>();
        if (doc.contains("k_saturation") && !doc["k_saturation"].is_null())
            report.k_saturation = doc["k_saturation"].get<std::int64_t>();
        return report;
    }
    throw UnsupportedFormat("reports import from csv or json, not " + format);
}

void HeuristicStore::upsert(const HeuristicEntry& entry, const std::string& source) {
    if (source != "predicted" && source != "measured")
        throw ConfigError("heuristic source must be predicted or measured");
    HeuristicRow row;
    row.construct = entry.construct;
    row.dims = entry.dims;
    row.source = source;
    row.k_l = entry.k_l;
    row.k_s = entry.k_s;
    row.l_max = entry.l_max;
    for (auto& existing : rows) {
        if (existing.construct == row.construct && existing.dims == row.dims &&
            existing.source == row.source) {
            existing = std::move(row);
            return;
        }
    }
    rows.push_back(std::move(row));
}

const HeuristicRow* HeuristicStore::find(const std::string& construct,
                                         const std::vector<std::int64_t>& dims,
                                         const std::string& source) const {
    for (const auto& row : rows)
        if (row.construct == construct && row.dims == dims && row.source == source) return &row;
    return nullptr;
}

std::string export_heuristics(const HeuristicStore& store, const std::string& format) {
    if (format == "json") {
        ordered_json doc;
        ordered_json rows = ordered_json::array();
        for (const auto& row : store.rows) {
            ordered_json r;
            r["construct"] = row.construct;
            r["dims"] = row.dims;
            r["source"] = row.source;
            r["k_l"] = row.k_l;
            r["k_s"] = row.k_s ? ordered_json(*row.k_s) : ordered_json();
            r["l_max"] = row.l_max;
            rows.push_back(std::move(r));
        }
        doc["rows"] = std::move(rows);
        return doc.dump(2) + "\n";
    }
    if (format == "csv") {
        std::ostringstream out;
        out << "construct,dims,source,k_l,k_s,l_max\n";
        for (const auto& row : store.rows) {
            out << row.construct << ",";
            for (std::size_t i = 0; i < row.dims.size(); ++i)
                out << (i ? "x" : "") << row.dims[i];
            out << "," << row.source << "," << row.k_l << ",";
            if (row.k_s) out << *row.k_s;
            out << "," << row.l_max << "\n";
        }
        return out.str();
    }
    throw UnsupportedFormat("heuristics export as json or csv, not " + format);
}

HeuristicStore import_heuristics(const std::string& bytes, const std::string& format) {
    HeuristicStore store;
    if (format == "json") {
        ordered_json doc;
        try {
            doc = ordered_json::parse(bytes);
        } catch (const ordered_json::parse_error& e) {
            throw UnsupportedFormat(std::string("invalid heuristics JSON: ") + e.what());
        }
        for (const auto& r : doc.value("rows", ordered_json::array())) {
            HeuristicRow row;
            row.construct = r.value("construct", "");
            row.dims = r.value("dims", std::vector<std::int64_t>{});
            row.source = r.value("source", "");
            row.k_l = r.value("k_l", std::int64_t{0});
            if (r.contains("k_s") && !r["k_s"].is_null())
                row.k_s = r["k_s"].get<std::int64_t>();
            row.l_max = r.value("l_max", std::int64_t{0});
            store.rows.push_back(std::move(row));
        }
        return store;
    }
    if (format == "csv") {
        std::istringstream in(bytes);
        std::string line;
        if (!std::getline(in, line) || line != "construct,dims,source,k_l,k_s,l_max")
            throw UnsupportedFormat("heuristics CSV header mismatch");
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream cells(line);
            std::string construct, dims, source, k_l, k_s, l_max;
            std::getline(cells, construct, ',');
            std::getline(cells, dims, ',');
            std::getline(cells, source, ',');
            std::getline(cells, k_l, ',');
            std::getline(cells, k_s, ',');
            std::getline(cells, l_max, ',');
            HeuristicRow row;
            row.construct = construct;
            std::istringstream dim_cells(dims);
            std::string dim;
            while (std::getline(dim_cells, dim, 'x'))
                if (!dim.empty()) row.dims.push_back(std::stoll(dim));
            row.source = source;
            row.k_l = std::stoll(k_l);
            if (!k_s.empty()) row.k_s = std::stoll(k_s);
            row.l_max = std::stoll(l_max);
            store.rows.push_back(std::move(row));
        }
        return store;
    }
    throw UnsupportedFormat("heuristics import from json or csv, not " + format);
}

}  // namespace pathgen
