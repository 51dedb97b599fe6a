#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "pathgen/campaign.hpp"
#include "pathgen/errors.hpp"
#include "pathgen/pathset.hpp"

#include "test_support.hpp"

using namespace pathgen;

namespace {

struct Mini {
    Program program;
    DecisionTable table;
    InputSchema schema;
};

Mini mini(const std::string& source, const std::string& schema_json) {
    Mini m{parse(source), {}, schema_from_json(schema_json)};
    m.table = assign_labels(m.program);
    validate_schema(m.program, m.schema);
    return m;
}

CampaignReport synthetic(std::vector<std::int64_t> nfp, std::vector<std::int64_t> llp) {
    CampaignReport report;
    std::int64_t ufp = 0;
    for (std::size_t i = 0; i < nfp.size(); ++i) {
        CampaignRow row;
        row.k = static_cast<std::int64_t>(i);
        ufp += nfp[i];
        row.test_cases = static_cast<std::int64_t>(100 * (i + 1));
        row.ufp = ufp;
        row.nfp = nfp[i];
        row.llp = llp[i];
        report.rows.push_back(row);
    }
    return report;
}

void check_row_invariants(const CampaignReport& report, const PathSet& set) {
    std::int64_t prev_ufp = 0;
    std::int64_t prev_llp = 0;
    for (const auto& row : report.rows) {
        CHECK(row.ufp >= prev_ufp);
        CHECK(row.nfp == row.ufp - prev_ufp);
        CHECK(row.llp >= prev_llp);
        prev_ufp = row.ufp;
        prev_llp = row.llp;
    }
    if (!report.rows.empty()) {
        CHECK(report.rows.back().ufp == static_cast<std::int64_t>(set.size()));
        CHECK(report.rows.back().llp == set.max_length());
    }
}

}  // namespace

TEST_CASE("path set deduplicates and keeps the first writer") {
    PathSet set;
    InputVector first = testsupport::linear_input({1, 2}, 9);
    InputVector second = testsupport::linear_input({3, 4}, 9);
    CHECK(set.insert("a -b a -b -a", first, 2, 5, 2));
    CHECK_FALSE(set.insert("a -b a -b -a", second, 3, 5, 2));
    CHECK(set.insert("a b a -b -a", second, 3, 5, 2));
    CHECK(set.size() == 2);
    CHECK(set.contains("a -b a -b -a"));
    CHECK_FALSE(set.contains("-a"));
    CHECK(set.max_length() == 5);

    const PathRecord* record = set.find("a -b a -b -a");
    REQUIRE(record != nullptr);
    CHECK(record->first_k == 2);
    CHECK(record->first_input == first);  // the losing insert left no mark
    CHECK(set.records()[0].key == "a -b a -b -a");
    CHECK(set.sorted_keys() == std::vector<std::string>{"a -b a -b -a", "a b a -b -a"});
}

TEST_CASE("probing prices every grid shape by its longest-path cost") {
    Subject linear = testsupport::load("linear_search");
    CampaignConfig config;
    config.domain = 10;
    config.max_size_all = 3;
    std::vector<ShapeInfo> grid = probe_shapes(linear.program, linear.table, linear.schema, config);
    REQUIRE(grid.size() == 4);
    for (std::int64_t n = 0; n <= 3; ++n) {
        CHECK(grid[static_cast<std::size_t>(n)].shape == Shape{n});
        CHECK(grid[static_cast<std::size_t>(n)].cost == n);
    }

    CHECK(shapes_for_budget(grid, 2).size() == 3);
    CHECK(shapes_for_budget(grid, 0).size() == 1);
    CHECK(shapes_for_budget(grid, 99).size() == 4);
}

TEST_CASE("shapes that cannot satisfy their constraints drop out of the grid") {
    Subject linear = testsupport::load("linear_search");
    CampaignConfig config;
    config.domain = 3;  // distinct arrays longer than 3 cannot exist
    config.max_size_all = 5;
    std::vector<ShapeInfo> grid = probe_shapes(linear.program, linear.table, linear.schema, config);
    REQUIRE(grid.size() == 4);
    CHECK(grid.back().shape == Shape{3});
}

TEST_CASE("matrix probing covers the full axis grid with exact costs") {
    Subject matrix = testsupport::load("matrix_mult");
    CampaignConfig config;
    config.max_size = {{"m", 2}, {"n", 2}, {"q", 2}};
    std::vector<ShapeInfo> grid = probe_shapes(matrix.program, matrix.table, matrix.schema, config);
    CHECK(grid.size() == 27);
    for (const auto& info : grid)
        CHECK(info.cost == info.shape[0] * info.shape[1] * info.shape[2]);
}

TEST_CASE("campaign rows keep the running-count invariants") {
    Subject linear = testsupport::load("linear_search");
    CampaignConfig config;
    config.domain = 10;
    config.max_size_all = 3;
    config.batch = 50;
    config.seed = 1;
    config.k_max = 6;
    config.stop.type = StopRule::Type::KMax;
    auto [report, set] = run_campaign(linear.program, linear.table, linear.schema, config);

    REQUIRE(report.rows.size() == 7);
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(report.rows[i].k == static_cast<std::int64_t>(i));
        CHECK(report.rows[i].test_cases == static_cast<std::int64_t>(50 * (i + 1)));
    }
    check_row_invariants(report, set);
    CHECK(report.rows[3].llp == 7);  // the size-3 shape enters exactly at k = 3
    CHECK(report.k_longest == 3);
}

TEST_CASE("worker count never changes campaign results") {
    Subject merge = testsupport::load("merge_sorted");
    CampaignConfig config;
    config.domain = 3;
    config.max_size = {{"n1", 2}, {"n2", 2}};
    config.batch = 40;
    config.seed = 5;
    config.k_max = 8;
    config.stop.type = StopRule::Type::KMax;

    auto [r1, s1] = run_campaign(merge.program, merge.table, merge.schema, config);
    config.workers = 4;
    auto [r4, s4] = run_campaign(merge.program, merge.table, merge.schema, config);

    REQUIRE(r1.rows.size() == r4.rows.size());
    for (std::size_t i = 0; i < r1.rows.size(); ++i) {
        CHECK(r1.rows[i].test_cases == r4.rows[i].test_cases);
        CHECK(r1.rows[i].ufp == r4.rows[i].ufp);
        CHECK(r1.rows[i].nfp == r4.rows[i].nfp);
        CHECK(r1.rows[i].llp == r4.rows[i].llp);
    }
    REQUIRE(s1.size() == s4.size());
    for (std::size_t i = 0; i < s1.size(); ++i) {
        CHECK(s1.records()[i].key == s4.records()[i].key);
        CHECK(s1.records()[i].first_k == s4.records()[i].first_k);
        CHECK(s1.records()[i].first_input == s4.records()[i].first_input);
    }
    CHECK(r1.skipped_inputs == r4.skipped_inputs);
}

TEST_CASE("the seed picks the representative inputs") {
    Subject linear = testsupport::load("linear_search");
    CampaignConfig config;
    config.domain = 500;
    config.max_size_all = 3;
    config.batch = 10;
    config.k_max = 3;
    config.stop.type = StopRule::Type::KMax;

    config.seed = 1;
    auto [r1, s1] = run_campaign(linear.program, linear.table, linear.schema, config);
    config.seed = 2;
    auto [r2, s2] = run_campaign(linear.program, linear.table, linear.schema, config);

    const PathRecord* empty1 = s1.find("-a");
    const PathRecord* empty2 = s2.find("-a");
    REQUIRE(empty1 != nullptr);  // the empty-array path shows up at k = 0 either way
    REQUIRE(empty2 != nullptr);
    CHECK_FALSE(empty1->first_input == empty2->first_input);  // z is drawn per seed
}

TEST_CASE("a fixed shape stays idle until its cost fits the budget") {
    Subject matrix = testsupport::load("matrix_mult");
    CampaignConfig config;
    config.shape_mode = CampaignConfig::ShapeMode::Fixed;
    config.fixed_shape = {2, 2, 2};
    config.batch = 16;
    config.k_max = 12;
    config.stop.type = StopRule::Type::KMax;
    auto [report, set] = run_campaign(matrix.program, matrix.table, matrix.schema, config);

    REQUIRE(report.rows.size() == 13);
    CHECK(report.rows[7].test_cases == 0);  // nothing admissible below the shape cost
    CHECK(report.rows[8].test_cases == 16);
    CHECK(report.rows[12].test_cases == 80);
    CHECK(report.rows[8].nfp == 1);
    CHECK(report.rows[8].llp == 21);
    CHECK(set.size() == 1);
    CHECK(report.k_longest == 8);
    CHECK(report.k_saturation == 9);

    config.fixed_shape = {2, 2};
    CHECK_THROWS_AS(run_campaign(matrix.program, matrix.table, matrix.schema, config),
                    ConfigError);
}

TEST_CASE("a linear campaign walks one level per budget step") {
    Subject linear = testsupport::load("linear_search");
    CampaignConfig config;
    config.domain = 100000;  // misses dominate; each shape lands its path on admission
    config.max_size_all = 5;
    config.batch = 100;
    config.seed = 1;
    config.k_max = 40;
    auto [report, set] = run_campaign(linear.program, linear.table, linear.schema, config);

    REQUIRE(report.rows.size() == 9);  // saturation window 3 closes at k = 8
    for (std::size_t k = 0; k <= 5; ++k) {
        CHECK(report.rows[k].nfp == 1);
        CHECK(report.rows[k].llp == std::int64_t(2 * k + 1));
    }
    CHECK(set.size() == 6);
    CHECK(report.k_longest == 5);
    CHECK(report.k_saturation == 6);
    check_row_invariants(report, set);
}

TEST_CASE("saturation stop rides out cost gaps in the shape grid") {
    Subject bubble = testsupport::load("bubble_sort");
    CampaignConfig config;
    config.domain = 20;
    config.max_size_all = 5;
    config.batch = 20;
    config.seed = 1;
    config.k_max = 100;
    auto [report, set] = run_campaign(bubble.program, bubble.table, bubble.schema, config);

    // Shape costs are 0, 0, 1, 3, 6, 10: nothing new can appear at k = 7..9,
    // yet the size-5 shape is still waiting at k = 10.
    CHECK(report.rows[7].nfp == 0);
    CHECK(report.rows[8].nfp == 0);
    CHECK(report.rows[9].nfp == 0);
    CHECK(report.rows[10].nfp == 1);
    CHECK(report.rows.back().k == 13);  // three quiet confirmations after saturation
    CHECK(set.size() == 5);
    CHECK(set.max_length() == 29);
    CHECK(report.k_longest == 10);
    CHECK(report.k_saturation == 11);
    check_row_invariants(report, set);
}

TEST_CASE("longest-path stop ends once the plateau is confirmed") {
    Subject bubble = testsupport::load("bubble_sort");
    CampaignConfig config;
    config.domain = 20;
    config.max_size_all = 5;
    config.batch = 20;
    config.seed = 1;
    config.k_max = 100;
    config.stop.type = StopRule::Type::LongestPath;
    auto [report, set] = run_campaign(bubble.program, bubble.table, bubble.schema, config);
    CHECK(report.rows.back().k == 13);  // plateau at 10 plus three confirming rows
    CHECK(report.k_longest == 10);
}

TEST_CASE("longest-path plateau detection on crafted reports") {
    CHECK(detect_k_longest(synthetic({1, 1, 1, 0, 0}, {1, 3, 5, 5, 5})) == 2);
    CHECK(detect_k_longest(synthetic({1, 1, 1}, {1, 3, 5})) == std::nullopt);  // still rising
    CHECK(detect_k_longest(synthetic({1}, {4})) == std::nullopt);              // nothing confirms
    CHECK(detect_k_longest(synthetic({1, 0, 0}, {6, 6, 6})) == 0);
}

TEST_CASE("saturation detection on crafted reports") {
    CHECK(detect_k_saturation(synthetic({1, 1, 1, 0, 0, 0}, {1, 5, 5, 5, 5, 5}), 3) == 3);
    CHECK(detect_k_saturation(synthetic({1, 0, 1, 0, 0}, {5, 5, 5, 5, 5}), 3) == std::nullopt);
    CHECK(detect_k_saturation(synthetic({1, 0, 0}, {5, 5, 5}), 3) == std::nullopt);

    // A quiet stretch before the longest path has even appeared does not
    // count; the first run past the plateau does.
    CampaignReport gapped =
        synthetic({1, 0, 0, 0, 1, 0, 0, 0, 0}, {1, 1, 1, 1, 9, 9, 9, 9, 9});
    CHECK(detect_k_saturation(gapped, 3) == 5);
    CHECK(detect_k_longest(gapped) == 4);

    CHECK_THROWS_AS(detect_k_saturation(synthetic({0}, {1}), 0), ConfigError);
}

TEST_CASE("faulting runs are skipped unless partial paths are requested") {
    Mini m = mini("fn g(x: int) { if (x < 1) { x = 1 / (x - x); } return x; }",
                  R"({"params": [{"name": "x", "kind": "scalar"}]})");
    CampaignConfig config;
    config.domain = 3;
    config.batch = 30;
    config.seed = 1;
    config.k_max = 2;
    config.stop.type = StopRule::Type::KMax;

    auto [strict_report, strict_set] = run_campaign(m.program, m.table, m.schema, config);
    CHECK(strict_set.sorted_keys() == std::vector<std::string>{"-a"});
    CHECK(strict_report.skipped_inputs > 0);

    config.include_faulty_paths = true;
    auto [loose_report, loose_set] = run_campaign(m.program, m.table, m.schema, config);
    CHECK(loose_set.sorted_keys() == std::vector<std::string>{"-a", "a"});
    CHECK(loose_report.skipped_inputs == 0);
}

TEST_CASE("config documents parse with strict keys and validation") {
    CampaignConfig config = config_from_json(R"({
        "domain": 40,
        "max_size": {"n1": 2, "n2": 3},
        "k_max": 77,
        "batch": 9,
        "seed": 12,
        "shape_mode": "cost-budget",
        "stop_rule": {"type": "longest-path", "window": 5},
        "step_budget": 1234,
        "workers": 3,
        "include_faulty_paths": true,
        "probes_per_shape": 2
    })");
    CHECK(config.domain == 40);
    CHECK(config.max_size.at("n2") == 3);
    CHECK(config.k_max == 77);
    CHECK(config.batch == 9);
    CHECK(config.seed == 12);
    CHECK(config.stop.type == StopRule::Type::LongestPath);
    CHECK(config.stop.window == 5);
    CHECK(config.step_budget == 1234);
    CHECK(config.workers == 3);
    CHECK(config.include_faulty_paths);
    CHECK(config.probes_per_shape == 2);

    CHECK(config_from_json(R"({"max_size": 7})").max_size_all == 7);
    CHECK(config_from_json(R"({"stop_rule": {"type": "saturation"}})").stop.window == 3);
    CHECK(config_from_json(R"({"shape_mode": "fixed", "fixed_shape": [2, 2, 2]})").fixed_shape ==
          Shape{2, 2, 2});

    CHECK_THROWS_AS(config_from_json(R"({"domains": 9})"), ConfigError);  // unknown key
    CHECK_THROWS_AS(config_from_json(R"({"batch": 0})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"workers": 0})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"domain": 0})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"stop_rule": {"type": "sideways"}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"max_size": -1})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
}
