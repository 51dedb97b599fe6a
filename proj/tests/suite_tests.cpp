#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "pathgen/campaign.hpp"
#include "pathgen/errors.hpp"
#include "pathgen/suite.hpp"

#include "test_support.hpp"

using namespace pathgen;
using nlohmann::ordered_json;

namespace {

std::pair<TestSuite, Subject> small_bubble_suite() {
    Subject subject = testsupport::load("bubble_sort");
    CampaignConfig config;
    config.domain = 9;
    config.max_size_all = 3;
    config.batch = 10;
    config.seed = 4;
    config.k_max = 4;
    config.stop.type = StopRule::Type::KMax;
    auto [report, set] = run_campaign(subject.program, subject.table, subject.schema, config);
    ordered_json provenance;
    provenance["seed"] = 4;
    provenance["schema_digest"] = schema_digest(subject.schema);
    TestSuite suite =
        extract_suite(set, subject.name, subject.program, subject.table, provenance, 4);
    return {std::move(suite), std::move(subject)};
}

}  // namespace

TEST_CASE("suites carry one replayable entry per unique path") {
    auto [suite, subject] = small_bubble_suite();
    CHECK(suite.subject == "bubble_sort");
    CHECK(suite.seed == 4);
    CHECK(suite.schema_digest == schema_digest(subject.schema));
    REQUIRE(suite.entries.size() == 3);  // lengths 0/1, 2, and 3, each one sorted path
    CHECK(suite.entries[0].path == "-a");
    CHECK(suite.entries[0].first_k == 0);
    CHECK_NOTHROW(validate_suite(suite, subject.program, subject.table));
}

TEST_CASE("a suite whose stored input stopped reproducing its path is rejected") {
    auto [suite, subject] = small_bubble_suite();
    for (auto& entry : suite.entries) {
        if (entry.path != "a b -c -b -a") continue;
        entry.input.bindings[0].second.elems = {5, 1};  // now needs a swap
    }
    CHECK_THROWS_AS(validate_suite(suite, subject.program, subject.table), ReplayMismatch);
}

TEST_CASE("extracting from a poisoned path set fails the replay gate") {
    Program program = parse("fn f(x: int) { if (x > 0) { return 1; } return 0; }");
    DecisionTable table = assign_labels(program);
    PathSet set;
    InputVector zero;
    zero.bindings.emplace_back("x", Value::make_scalar(0));
    set.insert("a", zero, 0, 1, 0);  // x = 0 actually takes the other side
    CHECK_THROWS_AS(extract_suite(set, "f", program, table, ordered_json::object(), 1),
                    ReplayMismatch);
}

TEST_CASE("suite export round-trips byte for byte") {
    auto [suite, subject] = small_bubble_suite();
    std::string bytes = export_suite(suite, "json");
    TestSuite back = import_suite(bytes, &subject.program);
    CHECK(export_suite(back, "json") == bytes);
    CHECK(back.entries.size() == suite.entries.size());
    CHECK(back.config == suite.config);

    ordered_json doc = ordered_json::parse(bytes);
    CHECK(doc["subject"] == "bubble_sort");
    CHECK(doc["entries"][0]["path"] == "-a");
    CHECK(doc["entries"][0]["input"].contains("b"));

    CHECK_THROWS_AS(export_suite(suite, "csv"), UnsupportedFormat);
    CHECK_THROWS_AS(import_suite("nonsense", nullptr), UnsupportedFormat);
}

TEST_CASE("input values serialize by kind") {
    InputVector input = testsupport::matrix_input(2, 2, 1);
    ordered_json doc = input_to_json(input);
    CHECK(doc["a"] == ordered_json::parse("[[1, 2], [3, 4]]"));
    CHECK(doc["c"] == ordered_json::parse("[[0], [0]]"));
    CHECK(doc["m"] == 2);

    Subject matrix = testsupport::load("matrix_mult");
    InputVector back = input_from_json(doc, &matrix.program);
    CHECK(back == input);

    // Flat lists are arrays unless the program says otherwise.
    ordered_json flat = ordered_json::parse(R"({"a": [3, 1], "d": 2, "z": 1})");
    Subject linear = testsupport::load("linear_search");
    InputVector array_input = input_from_json(flat, &linear.program);
    CHECK(array_input.find("a")->kind == ParamKind::Array);
    CHECK(array_input.find("a")->elems == std::vector<std::int64_t>{3, 1});

    CHECK_THROWS_AS(input_from_json(ordered_json::parse(R"({"a": [[1], [2, 3]]})"), nullptr),
                    UnsupportedFormat);  // ragged
    CHECK_THROWS_AS(input_from_json(ordered_json::parse(R"({"a": "text"})"), nullptr),
                    UnsupportedFormat);
    CHECK_THROWS_AS(input_from_json(ordered_json::parse("[1]"), nullptr), UnsupportedFormat);
}

TEST_CASE("an empty matrix round-trips through its program kind") {
    Subject matrix = testsupport::load("matrix_mult");
    InputVector input;
    input.bindings.emplace_back("a", Value::make_matrix(0, 2, {}));
    ordered_json doc = input_to_json(input);
    CHECK(doc["a"] == ordered_json::array());

    InputVector back = input_from_json(doc, &matrix.program);
    CHECK(back.find("a")->kind == ParamKind::Matrix);
    CHECK(back.find("a")->elems.empty());

    InputVector untyped = input_from_json(doc, nullptr);
    CHECK(untyped.find("a")->kind == ParamKind::Array);  // nothing says matrix without the program
}

TEST_CASE("report CSV uses the fixed header and shortest float form") {
    CampaignReport report;
    report.rows.push_back({0, 20, 1, 1, 1, 1.5});
    report.rows.push_back({1, 40, 3, 2, 5, 1250.0});
    CHECK(export_report(report, "csv") ==
          "k,test_cases,ufp,nfp,llp,etime_ms\n"
          "0,20,1,1,1,1.5\n"
          "1,40,3,2,5,1250\n");
    CHECK(export_report(report, "csv", true) ==
          "k,test_cases,ufp,nfp,llp,etime_ms\n"
          "0,20,1,1,1,0\n"
          "1,40,3,2,5,0\n");

    CampaignReport back = import_report(export_report(report, "csv"), "csv");
    REQUIRE(back.rows.size() == 2);
    CHECK(back.rows[1].test_cases == 40);
    CHECK(back.rows[1].etime_ms == 1250.0);

    CHECK_THROWS_AS(import_report("k,ufp\n1,2\n", "csv"), UnsupportedFormat);
    CHECK_THROWS_AS(export_report(report, "xml"), UnsupportedFormat);
    CHECK_THROWS_AS(import_report("{}", "xml"), UnsupportedFormat);
}

TEST_CASE("report JSON keeps detections, including absent ones") {
    CampaignReport report;
    report.rows.push_back({0, 10, 1, 1, 3, 0.25});
    report.skipped_inputs = 7;
    report.k_longest = 4;

    std::string bytes = export_report(report, "json");
    CampaignReport back = import_report(bytes, "json");
    CHECK(back.skipped_inputs == 7);
    CHECK(back.k_longest == 4);
    CHECK_FALSE(back.k_saturation.has_value());
    CHECK(back.rows[0].etime_ms == 0.25);
    CHECK(export_report(back, "json") == bytes);
}

TEST_CASE("the heuristic ledger upserts by construct, dims, and source") {
    HeuristicStore store;
    store.upsert(predict("matrix", {2, 2, 2}), "predicted");
    HeuristicEntry measured;
    measured.construct = "merge";
    measured.dims = {2, 2};
    measured.k_l = 4;
    measured.l_max = 10;
    store.upsert(measured, "measured");
    REQUIRE(store.rows.size() == 2);

    HeuristicEntry revised = predict("matrix", {2, 2, 2});
    revised.k_l = 99;
    store.upsert(revised, "predicted");
    REQUIRE(store.rows.size() == 2);  // replaced in place, not appended
    CHECK(store.find("matrix", {2, 2, 2}, "predicted")->k_l == 99);
    CHECK(store.find("matrix", {2, 2, 2}, "measured") == nullptr);

    CHECK_THROWS_AS(store.upsert(measured, "guessed"), ConfigError);
}

TEST_CASE("heuristics serialize to CSV with x-joined dims and empty unknowns") {
    HeuristicStore store;
    store.upsert(predict("matrix", {2, 2, 2}), "predicted");
    HeuristicEntry measured;
    measured.construct = "merge";
    measured.dims = {2, 2};
    measured.k_l = 4;
    measured.l_max = 10;
    store.upsert(measured, "measured");

    std::string csv = export_heuristics(store, "csv");
    CHECK(csv ==
          "construct,dims,source,k_l,k_s,l_max\n"
          "matrix,2x2x2,predicted,8,9,21\n"
          "merge,2x2,measured,4,,10\n");
    HeuristicStore from_csv = import_heuristics(csv, "csv");
    CHECK(from_csv.rows == store.rows);

    std::string json_bytes = export_heuristics(store, "json");
    HeuristicStore from_json = import_heuristics(json_bytes, "json");
    CHECK(from_json.rows == store.rows);
    CHECK(export_heuristics(from_json, "json") == json_bytes);

    CHECK_THROWS_AS(import_heuristics("dims,construct\n", "csv"), UnsupportedFormat);
    CHECK_THROWS_AS(export_heuristics(store, "toml"), UnsupportedFormat);
}
