#include <doctest.h>

#include <string>

#include "pathgen/ast.hpp"
#include "pathgen/decision_table.hpp"
#include "pathgen/errors.hpp"

#include "test_support.hpp"

using namespace pathgen;

TEST_CASE("base26 labels run a..z, aa, ab, ...") {
    CHECK(base26_label(0) == "a");
    CHECK(base26_label(1) == "b");
    CHECK(base26_label(25) == "z");
    CHECK(base26_label(26) == "aa");
    CHECK(base26_label(27) == "ab");
    CHECK(base26_label(51) == "az");
    CHECK(base26_label(52) == "ba");
    CHECK(base26_label(701) == "zz");
    CHECK(base26_label(702) == "aaa");
}

TEST_CASE("subject programs parse with the expected params and decisions") {
    Subject linear = testsupport::load("linear_search");
    CHECK(linear.program.name == "linear_search");
    REQUIRE(linear.program.params.size() == 3);
    CHECK(linear.program.params[0].kind == ParamKind::Array);
    CHECK(linear.program.params[1].kind == ParamKind::Scalar);
    CHECK(count_decision_stmts(linear.program) == 2);

    CHECK(count_decision_stmts(testsupport::load("bubble_sort").program) == 3);
    CHECK(count_decision_stmts(testsupport::load("matrix_mult").program) == 3);
    CHECK(count_decision_stmts(testsupport::load("merge_sorted").program) == 4);
}

TEST_CASE("decision labels follow source order with depth and loop kind") {
    Subject bubble = testsupport::load("bubble_sort");
    const auto& entries = bubble.table.entries;
    REQUIRE(entries.size() == 3);

    CHECK(entries[0].label == "a");
    CHECK(entries[0].kind == DecisionKind::Loop);
    CHECK(entries[0].nesting_depth == 0);
    CHECK_FALSE(entries[0].innermost_loop);  // contains the inner for

    CHECK(entries[1].label == "b");
    CHECK(entries[1].kind == DecisionKind::Loop);
    CHECK(entries[1].nesting_depth == 1);
    CHECK(entries[1].innermost_loop);

    CHECK(entries[2].label == "c");
    CHECK(entries[2].kind == DecisionKind::Branch);
    CHECK(entries[2].nesting_depth == 2);
    CHECK_FALSE(entries[2].innermost_loop);
}

TEST_CASE("sequential loops are each innermost") {
    Subject merge = testsupport::load("merge_sorted");
    const auto& entries = merge.table.entries;
    REQUIRE(entries.size() == 4);
    CHECK(entries[0].label == "a");
    CHECK(entries[0].innermost_loop);  // the merge walk holds a branch, not a loop
    CHECK(entries[1].kind == DecisionKind::Branch);
    CHECK(entries[2].label == "c");
    CHECK(entries[2].innermost_loop);
    CHECK(entries[3].label == "d");
    CHECK(entries[3].innermost_loop);
    CHECK(entries[2].nesting_depth == 0);
}

TEST_CASE("labels continue past z for decision-heavy programs") {
    std::string source = "fn wide(x: int) {\n";
    for (int i = 0; i < 28; ++i)
        source += "    if (x > " + std::to_string(i) + ") {\n        x = " + std::to_string(i) +
                  ";\n    }\n";
    source += "}\n";
    Program program = parse(source);
    DecisionTable table = assign_labels(program);
    REQUIRE(table.entries.size() == 28);
    CHECK(table.entries[25].label == "z");
    CHECK(table.entries[26].label == "aa");
    CHECK(table.entries[27].label == "ab");
    CHECK(table.find_label("ab") != nullptr);
    CHECK(table.find_label("ac") == nullptr);
}

TEST_CASE("pretty print is a fixed point and keeps the decision structure") {
    for (const char* stem : {"linear_search", "bubble_sort", "matrix_mult", "merge_sorted"}) {
        Subject subject = testsupport::load(stem);
        std::string once = pretty_print(subject.program);
        Program reparsed = parse(once);
        CHECK(pretty_print(reparsed) == once);
        CHECK(assign_labels(reparsed).entries.size() == subject.table.entries.size());
        CHECK(reparsed.slot_count == subject.program.slot_count);
    }
}

TEST_CASE("pretty print normalizes spacing and drops redundant parens") {
    Program program = parse("fn f(x:int){let y=(x+1)*2;if((y>0)&&(x<9)){y=y-(1-x);}return y;}");
    std::string text = pretty_print(program);
    CHECK(text ==
          "fn f(x: int) {\n"
          "    let y = (x + 1) * 2;\n"
          "    if (y > 0 && x < 9) {\n"
          "        y = y - (1 - x);\n"
          "    }\n"
          "    return y;\n"
          "}\n");
}

TEST_CASE("bare let and bare return parse") {
    Program program = parse("fn f() { let x; return; }");
    REQUIRE(program.body.size() == 2);
    CHECK(program.body[0]->value == nullptr);
    CHECK(program.body[1]->value == nullptr);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse("fn f(x: int) {\n    x = 1\n}\n");
        FAIL("missing semicolon accepted");
    } catch (const ParseError& e) {
        CHECK(e.pos().line == 3);
        CHECK(std::string(e.what()).find("3:") == 0);
        CHECK_FALSE(e.expected().empty());
    }
    CHECK_THROWS_AS(parse("fn f() { @ }"), ParseError);
    CHECK_THROWS_AS(parse("fn f() { let x = 1; "), ParseError);  // unterminated block
    CHECK_THROWS_AS(parse("fn f() { let while = 1; }"), ParseError);
    CHECK_THROWS_AS(parse("fn f(x: int) { x = 1 & 1; }"), ParseError);  // no bitwise ops
    CHECK_THROWS_AS(parse("fn f(x: int) { x = 99999999999999999999; }"), ParseError);
    CHECK_THROWS_AS(parse("fn f(x: int) { x = 12abc; }"), ParseError);
}

TEST_CASE("semantic errors: calls, scoping, and subscript arity") {
    CHECK_THROWS_AS(parse("fn f(x: int) { x = g(1); }"), SemanticError);
    CHECK_THROWS_AS(parse("fn f(x: int) { g(1); }"), SemanticError);
    CHECK_THROWS_AS(parse("fn f() { x = 1; }"), SemanticError);           // undeclared
    CHECK_THROWS_AS(parse("fn f() { let x; let x; }"), SemanticError);    // shadow in scope
    CHECK_THROWS_AS(parse("fn f(x: int) { let y = x[0]; }"), SemanticError);
    CHECK_THROWS_AS(parse("fn f(a: int[]) { let y = a[0][1]; }"), SemanticError);
    CHECK_THROWS_AS(parse("fn f(a: int[][]) { let y = a[0]; }"), SemanticError);
    CHECK_THROWS_AS(parse("fn f(a: int[]) { return a; }"), SemanticError);  // array as value
    CHECK_THROWS_AS(parse("fn f(a: int[], a: int) { }"), SemanticError);    // duplicate param
}

TEST_CASE("lexer skips comments and tracks positions through them") {
    Program program = parse("fn f() {\n    // nothing here\n    let x = 2; // tail\n}\n");
    REQUIRE(program.body.size() == 1);
    CHECK(program.body[0]->pos.line == 3);
}

TEST_CASE("a block opens a scope; an inner let may reuse an outer name nowhere") {
    // Reuse in a nested block is still a redeclaration of a visible name.
    CHECK_THROWS_AS(parse("fn f() { let x; if (x > 0) { let x; } }"), SemanticError);
}
