#include "pathgen/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "pathgen/errors.hpp"
#include "pathgen/rng.hpp"
#include "pathgen/sampler.hpp"
#include "pathgen/trace.hpp"

namespace pathgen {

namespace {

// Keeps probe draws out of the per-step input streams.
constexpr std::uint64_t kProbeStreamTag = 0x9d8c3b4ef1a25e37ULL;

constexpr std::int64_t kMaxGridShapes = 200'000;

void validate_config(const CampaignConfig& config) {
    std::vector<std::string> problems;
    if (config.domain < 1) problems.push_back("domain must be positive");
    if (config.k_max < 0) problems.push_back("k_max must be >= 0");
    if (config.batch < 1) problems.push_back("batch must be positive");
    if (config.seed == 0) {
        // seed 0 is fine for the generator; nothing to check
    }
    if (config.stop.window < 1) problems.push_back("stop window must be >= 1");
    if (config.step_budget < 1) problems.push_back("step_budget must be positive");
    if (config.workers < 1) problems.push_back("workers must be >= 1");
    if (config.probes_per_shape < 1) problems.push_back("probes_per_shape must be >= 1");
    if (config.max_size_all < 0) problems.push_back("max_size must be >= 0");
    for (const auto& [name, cap] : config.max_size)
        if (cap < 0) problems.push_back("max_size for '" + name + "' must be >= 0");
    if (!problems.empty()) {
        std::string joined = "invalid campaign config:";
        for (const auto& p : problems) joined += " " + p + ";";
        throw ConfigError(joined);
    }
}

}  // namespace

CampaignConfig config_from_json(const std::string& json_text) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    CampaignConfig config;
    for (const auto& [key, value] : doc.items()) {
        if (key == "domain") config.domain = value.get<std::int64_t>();
        else if (key == "max_size") {
            if (value.is_number_integer()) {
                config.max_size_all = value.get<std::int64_t>();
            } else if (value.is_object()) {
                for (const auto& [axis, cap] : value.items())
                    config.max_size[axis] = cap.get<std::int64_t>();
            } else {
                throw ConfigError("max_size must be an integer or an object of axis caps");
            }
        } else if (key == "k_max") config.k_max = value.get<std::int64_t>();
        else if (key == "batch") config.batch = value.get<int>();
        else if (key == "seed") config.seed = value.get<std::uint64_t>();
        else if (key == "shape_mode") {
            std::string mode = value.get<std::string>();
            if (mode == "cost-budget") config.shape_mode = CampaignConfig::ShapeMode::CostBudget;
            else if (mode == "fixed") config.shape_mode = CampaignConfig::ShapeMode::Fixed;
            else throw ConfigError("shape_mode must be cost-budget or fixed");
        } else if (key == "fixed_shape") {
            config.fixed_shape = value.get<Shape>();
        } else if (key == "stop_rule") {
            if (!value.is_object()) throw ConfigError("stop_rule must be an object");
            std::string type = value.value("type", "saturation");
            if (type == "saturation") config.stop.type = StopRule::Type::Saturation;
            else if (type == "longest-path") config.stop.type = StopRule::Type::LongestPath;
            else if (type == "k-max") config.stop.type = StopRule::Type::KMax;
            else throw ConfigError("stop_rule.type must be saturation, longest-path, or k-max");
            config.stop.window = value.value("window", 3);
        } else if (key == "step_budget") config.step_budget = value.get<std::int64_t>();
        else if (key == "workers") config.workers = value.get<int>();
        else if (key == "include_faulty_paths") config.include_faulty_paths = value.get<bool>();
        else if (key == "probes_per_shape") config.probes_per_shape = value.get<int>();
        else throw ConfigError("unknown config key '" + key + "'");
    }
    validate_config(config);
    return config;
}

std::vector<ShapeInfo> probe_shapes(const Program& program, const DecisionTable& table,
                                    const InputSchema& schema, const CampaignConfig& config) {
    validate_config(config);
    std::vector<Shape> grid;
    if (config.shape_mode == CampaignConfig::ShapeMode::Fixed) {
        if (config.fixed_shape.size() != schema.free_size_names().size())
            throw ConfigError("fixed_shape arity does not match the schema's free size params");
        grid.push_back(config.fixed_shape);
    } else {
        std::vector<std::string> axes = schema.free_size_names();
        std::vector<std::int64_t> caps;
        std::int64_t count = 1;
        for (const auto& axis : axes) {
            auto it = config.max_size.find(axis);
            std::int64_t cap = it != config.max_size.end() ? it->second : config.max_size_all;
            caps.push_back(cap);
            if (count > kMaxGridShapes / (cap + 1))
                throw ConfigError("shape grid exceeds " + std::to_string(kMaxGridShapes) +
                                  " shapes; lower max_size");
            count *= cap + 1;
        }
        Shape shape(axes.size(), 0);
        for (;;) {
            grid.push_back(shape);
            std::size_t i = shape.size();
            bool done = shape.empty();
            while (i > 0) {
                --i;
                if (++shape[i] <= caps[i]) break;
                shape[i] = 0;
                if (i == 0) done = true;
            }
            if (done) break;
        }
    }

    // Cost a shape by probing: a few deterministic draws, worst observed
    // trace cost. Exact for subjects whose loop trip counts depend only on
    // sizes; an under-probe for data-driven trip counts only delays when a
    // shape is admitted, never breaks correctness.
    std::vector<ShapeInfo> probed;
    for (std::size_t ordinal = 0; ordinal < grid.size(); ++ordinal) {
        std::int64_t cost = -1;
        for (int p = 0; p < config.probes_per_shape; ++p) {
            SplitMix64 rng(stream_seed(config.seed ^ kProbeStreamTag, ordinal, static_cast<std::uint64_t>(p)));
            try {
                InputVector input = sample_input(schema, grid[ordinal], config.domain, rng);
                ExecResult result = execute(program, table, input, config.step_budget);
                if (result.ok())
                    cost = std::max<std::int64_t>(cost, trace_cost(result.trace, table));
            } catch (const InfeasibleConstraint&) {
                break;  // no draw exists for this shape at this domain
            }
        }
        if (cost >= 0) probed.push_back({grid[ordinal], cost});
    }
    return probed;
}

std::vector<ShapeInfo> shapes_for_budget(const std::vector<ShapeInfo>& grid, std::int64_t k) {
    std::vector<ShapeInfo> admissible;
    for (const auto& info : grid)
        if (info.cost <= k) admissible.push_back(info);
    return admissible;
}

namespace {

struct DrawResult {
    bool valid = false;
    std::string key;
    InputVector input;
    int length = 0;
    int cost = 0;
};

}  // namespace

std::pair<CampaignReport, PathSet> run_campaign(const Program& program, const DecisionTable& table,
                                                const InputSchema& schema,
                                                const CampaignConfig& config) {
    validate_config(config);
    std::vector<ShapeInfo> grid = probe_shapes(program, table, schema, config);
    std::int64_t grid_max_cost = 0;
    for (const auto& info : grid) grid_max_cost = std::max(grid_max_cost, info.cost);

    CampaignReport report;
    PathSet set;
    std::int64_t test_cases = 0;
    const int B = config.batch;

    for (std::int64_t k = 0; k <= config.k_max; ++k) {
        auto started = std::chrono::steady_clock::now();
        std::vector<ShapeInfo> admissible = shapes_for_budget(grid, k);

        std::vector<DrawResult> results(static_cast<std::size_t>(B));
        std::int64_t skipped_here = 0;
        if (!admissible.empty()) {
            // Most expensive shape, ties to the lexicographically largest
            // dims, takes at least half the batch so the frontier is never
            // starved; the rest round-robins, rotated by k so narrow
            // batches still cycle through every shape over time.
            std::size_t largest = 0;
            for (std::size_t i = 1; i < admissible.size(); ++i) {
                if (admissible[i].cost > admissible[largest].cost ||
                    (admissible[i].cost == admissible[largest].cost &&
                     admissible[i].shape > admissible[largest].shape))
                    largest = i;
            }
            int guaranteed = (B + 1) / 2;
            std::vector<const Shape*> plan(static_cast<std::size_t>(B));
            for (int i = 0; i < B; ++i) {
                if (i < guaranteed) {
                    plan[static_cast<std::size_t>(i)] = &admissible[largest].shape;
                } else {
                    std::size_t j =
                        (static_cast<std::size_t>(k) + static_cast<std::size_t>(i - guaranteed)) %
                        admissible.size();
                    plan[static_cast<std::size_t>(i)] = &admissible[j].shape;
                }
            }

            auto run_range = [&](int begin, int end) {
                for (int i = begin; i < end; ++i) {
                    SplitMix64 rng(stream_seed(config.seed, static_cast<std::uint64_t>(k),
                                               static_cast<std::uint64_t>(i)));
                    DrawResult& out = results[static_cast<std::size_t>(i)];
                    InputVector input;
                    try {
                        input = sample_input(schema, *plan[static_cast<std::size_t>(i)],
                                             config.domain, rng);
                    } catch (const InfeasibleConstraint&) {
                        continue;
                    }
                    ExecResult exec = execute(program, table, input, config.step_budget);
                    bool usable = exec.ok() || (config.include_faulty_paths &&
                                                exec.status == ExecStatus::RuntimeFault);
                    if (!usable) continue;
                    out.valid = true;
                    out.key = render_trace(exec.trace, table);
                    out.input = std::move(input);
                    out.length = trace_length(exec.trace);
                    out.cost = trace_cost(exec.trace, table);
                }
            };

            if (config.workers == 1) {
                run_range(0, B);
            } else {
                std::vector<std::thread> pool;
                int per = (B + config.workers - 1) / config.workers;
                for (int w = 0; w < config.workers; ++w) {
                    int begin = w * per;
                    int end = std::min(B, begin + per);
                    if (begin >= end) break;
                    pool.emplace_back(run_range, begin, end);
                }
                for (auto& t : pool) t.join();
            }

            test_cases += B;
        }

        // Merge in draw order: the representative input of a path is the
        // lowest (k, index) that produced it, independent of worker count.
        std::int64_t nfp = 0;
        for (const auto& result : results) {
            if (!result.valid) {
                if (!admissible.empty()) ++skipped_here;
                continue;
            }
            if (set.insert(result.key, result.input, k, result.length, result.cost)) ++nfp;
        }
        report.skipped_inputs += skipped_here;

        CampaignRow row;
        row.k = k;
        row.test_cases = test_cases;
        row.ufp = static_cast<std::int64_t>(set.size());
        row.nfp = nfp;
        row.llp = set.max_length();
        row.etime_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - started)
                           .count();
        report.rows.push_back(row);

        if (config.stop.type == StopRule::Type::KMax || k < grid_max_cost) continue;
        int W = config.stop.window;
        auto n = static_cast<std::int64_t>(report.rows.size());
        if (n < W) continue;
        if (config.stop.type == StopRule::Type::Saturation) {
            bool quiet = true;
            for (std::int64_t i = n - W; i < n; ++i)
                if (report.rows[static_cast<std::size_t>(i)].nfp != 0) quiet = false;
            if (quiet) break;
        } else {  // LongestPath: the plateau must hold for W confirming rows
            std::int64_t llp = report.rows.back().llp;
            std::int64_t first = 0;
            while (report.rows[static_cast<std::size_t>(first)].llp < llp) ++first;
            if (n - 1 - first >= W) break;
        }
    }

    report.k_longest = detect_k_longest(report);
    report.k_saturation = detect_k_saturation(report, config.stop.window);
    return {std::move(report), std::move(set)};
}

std::optional<std::int64_t> detect_k_longest(const CampaignReport& report) {
    const auto& rows = report.rows;
    if (rows.size() < 2) return std::nullopt;
    std::int64_t final_llp = rows.back().llp;
    if (rows[rows.size() - 2].llp != final_llp) return std::nullopt;  // still rising
    for (const auto& row : rows)
        if (row.llp == final_llp) return row.k;
    return std::nullopt;
}

std::optional<std::int64_t> detect_k_saturation(const CampaignReport& report, int window) {
    if (window < 1) throw ConfigError("window must be >= 1");
    const auto& rows = report.rows;
    std::optional<std::int64_t> k_longest = detect_k_longest(report);
    auto n = static_cast<std::int64_t>(rows.size());
    for (std::int64_t s = 0; s + window <= n; ++s) {
        bool quiet = true;
        for (std::int64_t i = s; i < s + window; ++i)
            if (rows[static_cast<std::size_t>(i)].nfp != 0) {
                quiet = false;
                break;
            }
        if (!quiet) continue;
        std::int64_t k = rows[static_cast<std::size_t>(s)].k;
        if (k_longest && k <= *k_longest) continue;
        return k;
    }
    return std::nullopt;
}

}  // namespace pathgen
