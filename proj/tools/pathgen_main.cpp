#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pathgen/campaign.hpp"
#include "pathgen/errors.hpp"
#include "pathgen/interpreter.hpp"
#include "pathgen/oracle.hpp"
#include "pathgen/subject.hpp"
#include "pathgen/suite.hpp"
#include "pathgen/trace.hpp"

namespace {

using namespace pathgen;
using nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << bytes;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> values;
    std::istringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ','))
        if (!cell.empty()) values.push_back(std::stoll(cell));
    return values;
}

// Flags shared by explore and oracle; empty string means "not given".
struct CampaignFlags {
    std::string config_path;
    std::int64_t domain = -1;
    std::string max_size;
    std::int64_t k_max = -1;
    int batch = -1;
    std::int64_t seed = -1;
    int window = -1;
    std::string stop;
    std::int64_t step_budget = -1;
    int workers = -1;
    bool stable_time = false;
};

CampaignConfig build_config(const CampaignFlags& flags, const InputSchema& schema) {
    CampaignConfig config;
    if (!flags.config_path.empty()) config = config_from_json(read_file(flags.config_path));
    if (flags.domain >= 0) config.domain = flags.domain;
    if (!flags.max_size.empty()) {
        std::vector<std::int64_t> caps = parse_int_list(flags.max_size);
        std::vector<std::string> axes = schema.free_size_names();
        if (caps.size() == 1) {
            config.max_size.clear();
            config.max_size_all = caps[0];
        } else if (caps.size() == axes.size()) {
            config.max_size.clear();
            for (std::size_t i = 0; i < axes.size(); ++i) config.max_size[axes[i]] = caps[i];
        } else {
            throw ConfigError("--max-size takes one value or one per size axis (" +
                              std::to_string(axes.size()) + ")");
        }
    }
    if (flags.k_max >= 0) config.k_max = flags.k_max;
    if (flags.batch >= 0) config.batch = flags.batch;
    if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.window >= 0) config.stop.window = flags.window;
    if (!flags.stop.empty()) {
        if (flags.stop == "saturation") config.stop.type = StopRule::Type::Saturation;
        else if (flags.stop == "longest-path") config.stop.type = StopRule::Type::LongestPath;
        else if (flags.stop == "k-max") config.stop.type = StopRule::Type::KMax;
        else throw ConfigError("--stop must be saturation, longest-path, or k-max");
    }
    if (flags.step_budget >= 0) config.step_budget = flags.step_budget;
    if (flags.workers >= 0) config.workers = flags.workers;
    return config;
}

ordered_json config_provenance(const CampaignConfig& config, const InputSchema& schema) {
    ordered_json doc;
    doc["domain"] = config.domain;
    if (config.max_size.empty()) {
        doc["max_size"] = config.max_size_all;
    } else {
        ordered_json caps = ordered_json::object();
        for (const auto& [axis, cap] : config.max_size) caps[axis] = cap;
        doc["max_size"] = std::move(caps);
    }
    doc["k_max"] = config.k_max;
    doc["batch"] = config.batch;
    doc["seed"] = config.seed;
    doc["shape_mode"] =
        config.shape_mode == CampaignConfig::ShapeMode::CostBudget ? "cost-budget" : "fixed";
    ordered_json stop;
    switch (config.stop.type) {
        case StopRule::Type::Saturation: stop["type"] = "saturation"; break;
        case StopRule::Type::LongestPath: stop["type"] = "longest-path"; break;
        case StopRule::Type::KMax: stop["type"] = "k-max"; break;
    }
    stop["window"] = config.stop.window;
    doc["stop_rule"] = std::move(stop);
    doc["step_budget"] = config.step_budget;
    doc["schema_digest"] = schema_digest(schema);
    return doc;
}

std::string not_reached_or(const std::optional<std::int64_t>& value) {
    return value ? std::to_string(*value) : "not-reached";
}

int cmd_run(const std::string& subject_path, const std::string& input_text,
            const std::string& input_file, std::int64_t step_budget) {
    Subject subject = load_subject(subject_path);
    std::string text = input_text;
    if (!input_file.empty()) text = read_file(input_file);
    if (text.empty()) throw ConfigError("run needs --input or --input-file");
    InputVector input = input_from_json(ordered_json::parse(text), &subject.program);
    ExecResult result = execute(subject.program, subject.table, input, step_budget);
    if (result.status == ExecStatus::BudgetExceeded) {
        std::cerr << "step budget exceeded after " << result.trace.steps_used
                  << " steps; partial path: " << render_trace(result.trace, subject.table)
                  << "\n";
        return 3;
    }
    if (result.status == ExecStatus::RuntimeFault) {
        std::cerr << "runtime fault: " << result.fault
                  << "; partial path: " << render_trace(result.trace, subject.table) << "\n";
        return 3;
    }
    std::cout << render_trace(result.trace, subject.table) << "\n";
    return 0;
}

int cmd_explore(const std::string& subject_path, const CampaignFlags& flags,
                const std::string& out_dir) {
    Subject subject = load_subject(subject_path);
    CampaignConfig config = build_config(flags, subject.schema);
    auto [report, set] = run_campaign(subject.program, subject.table, subject.schema, config);

    ordered_json provenance = config_provenance(config, subject.schema);
    TestSuite suite = extract_suite(set, subject.name, subject.program, subject.table, provenance,
                                    config.seed, config.step_budget);

    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/report.csv", export_report(report, "csv", flags.stable_time));
    write_file(out_dir + "/suite.json", export_suite(suite, "json"));

    std::cout << "subject=" << subject.name << " rows=" << report.rows.size()
              << " test_cases=" << (report.rows.empty() ? 0 : report.rows.back().test_cases)
              << " ufp=" << set.size() << " llp=" << set.max_length()
              << " skipped=" << report.skipped_inputs << "\n";
    std::cout << "k_L=" << not_reached_or(report.k_longest)
              << " k_S=" << not_reached_or(report.k_saturation) << "\n";
    return 0;
}

int cmd_oracle(const std::string& subject_path, const std::string& shape_text, std::int64_t domain,
               std::int64_t cap, std::int64_t step_budget, const std::string& out_dir) {
    Subject subject = load_subject(subject_path);
    Shape shape = parse_int_list(shape_text);
    PathSet set = enumerate_feasible_paths(subject.program, subject.table, subject.schema, shape,
                                           domain, cap, step_budget);
    auto [longest_key, longest_len] = longest_feasible_path(subject.program, subject.table,
                                                            subject.schema, shape, domain, cap,
                                                            step_budget);
    ordered_json provenance;
    provenance["mode"] = "oracle";
    provenance["domain"] = domain;
    provenance["shape"] = shape;
    provenance["schema_digest"] = schema_digest(subject.schema);
    TestSuite suite = extract_suite(set, subject.name, subject.program, subject.table, provenance,
                                    0, step_budget);
    std::filesystem::create_directories(out_dir);
    write_file(out_dir + "/oracle.json", export_suite(suite, "json"));
    std::cout << "subject=" << subject.name << " paths=" << set.size()
              << " longest_len=" << longest_len << " longest=\"" << longest_key << "\"\n";
    return 0;
}

int cmd_predict(const std::string& construct, const std::string& dims_text) {
    HeuristicEntry entry = predict(construct, parse_int_list(dims_text));
    std::cout << "k_L=" << entry.k_l << " k_S="
              << (entry.k_s ? std::to_string(*entry.k_s) : "undefined")
              << " l_max=" << entry.l_max << "\n";
    return 0;
}

int cmd_suite(const std::string& subject_path, const std::string& suite_path,
              std::int64_t step_budget) {
    Subject subject = load_subject(subject_path);
    TestSuite suite = import_suite(read_file(suite_path), &subject.program);
    validate_suite(suite, subject.program, subject.table, step_budget);
    std::cout << "suite ok: " << suite.entries.size() << " entries replayed\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& inputs, const std::string& out_dir) {
    if (inputs.empty()) throw ConfigError("report needs at least one --in CSV");
    std::filesystem::create_directories(out_dir);
    std::ostringstream merged;
    merged << "source," << kReportCsvHeader << "\n";
    for (const auto& path : inputs) {
        CampaignReport report = import_report(read_file(path), "csv");
        std::string stem = std::filesystem::path(path).stem().string();
        std::ostringstream ufp, nfp;
        ufp << "k,ufp\n";
        nfp << "k,nfp\n";
        for (const auto& row : report.rows) {
            ufp << row.k << "," << row.ufp << "\n";
            nfp << row.k << "," << row.nfp << "\n";
            merged << stem << "," << row.k << "," << row.test_cases << "," << row.ufp << ","
                   << row.nfp << "," << row.llp << "," << row.etime_ms << "\n";
        }
        write_file(out_dir + "/" + stem + "_ufp.csv", ufp.str());
        write_file(out_dir + "/" + stem + "_nfp.csv", nfp.str());
    }
    write_file(out_dir + "/merged.csv", merged.str());
    std::cout << "wrote plot data for " << inputs.size() << " report(s) to " << out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path exploration workbench for branch-traced subject programs"};
    app.require_subcommand(1);

    std::string subject_path, input_text, input_file, out_dir, shape_text, construct, dims_text,
        suite_path;
    std::vector<std::string> report_inputs;
    std::int64_t oracle_domain = 3;
    std::int64_t oracle_cap = kDefaultOracleCap;
    std::int64_t run_budget = kDefaultStepBudget;
    CampaignFlags flags;

    CLI::App* run = app.add_subcommand("run", "Execute one input and print its path string");
    run->add_option("subject", subject_path, "subject .tp file")->required();
    run->add_option("--input", input_text, "input bindings as inline JSON");
    run->add_option("--input-file", input_file, "file with input bindings JSON");
    run->add_option("--step-budget", run_budget, "interpreter step budget");

    CLI::App* explore = app.add_subcommand("explore", "Run a campaign; write report + suite");
    explore->add_option("subject", subject_path, "subject .tp file")->required();
    explore->add_option("--config", flags.config_path, "campaign config JSON file");
    explore->add_option("--domain", flags.domain, "element domain [0, D)");
    explore->add_option("--max-size", flags.max_size, "size cap, one value or per-axis list");
    explore->add_option("--max-k", flags.k_max, "iteration budget ceiling");
    explore->add_option("--batch", flags.batch, "inputs per k step");
    explore->add_option("--seed", flags.seed, "campaign seed");
    explore->add_option("--window", flags.window, "saturation window W");
    explore->add_option("--stop", flags.stop, "stop rule: saturation | longest-path | k-max");
    explore->add_option("--step-budget", flags.step_budget, "interpreter step budget");
    explore->add_option("--workers", flags.workers, "parallel workers per step");
    explore->add_flag("--stable-time", flags.stable_time, "zero the etime column");
    explore->add_option("--out", out_dir, "output directory")->required();

    CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive path set for one shape");
    oracle->add_option("subject", subject_path, "subject .tp file")->required();
    oracle->add_option("--shape", shape_text, "comma list, one value per size axis")->required();
    oracle->add_option("--domain", oracle_domain, "element domain [0, d)");
    oracle->add_option("--cap", oracle_cap, "max product-space size");
    oracle->add_option("--step-budget", run_budget, "interpreter step budget");
    oracle->add_option("--out", out_dir, "output directory")->required();

    CLI::App* predict_cmd = app.add_subcommand("predict", "Closed-form k_L / k_S / l_max");
    predict_cmd->add_option("construct", construct, "linear | bubble | matrix | merge")
        ->required();
    predict_cmd->add_option("--dims", dims_text, "comma list of sizes")->required();

    CLI::App* suite_cmd = app.add_subcommand("suite", "Replay-validate a stored suite");
    suite_cmd->add_option("subject", subject_path, "subject .tp file")->required();
    suite_cmd->add_option("--suite", suite_path, "suite JSON file")->required();
    suite_cmd->add_option("--step-budget", run_budget, "interpreter step budget");

    CLI::App* report_cmd = app.add_subcommand("report", "Merge report CSVs into plot data");
    report_cmd->add_option("--in", report_inputs, "report CSV file(s)")->required();
    report_cmd->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (run->parsed()) return cmd_run(subject_path, input_text, input_file, run_budget);
        if (explore->parsed()) return cmd_explore(subject_path, flags, out_dir);
        if (oracle->parsed())
            return cmd_oracle(subject_path, shape_text, oracle_domain, oracle_cap, run_budget,
                              out_dir);
        if (predict_cmd->parsed()) return cmd_predict(construct, dims_text);
        if (suite_cmd->parsed()) return cmd_suite(subject_path, suite_path, run_budget);
        if (report_cmd->parsed()) return cmd_report(report_inputs, out_dir);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const UnknownConstruct& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
