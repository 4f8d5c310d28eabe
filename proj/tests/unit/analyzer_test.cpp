#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "idp/dataset.hpp"
#include "idp/error.hpp"
#include "idp/java/analyzer.hpp"

using namespace idp;
using idp::java::analyze_source;

namespace {

java::AnalyzedMethod only_method(const std::string& body) {
    const auto a = analyze_source("class T {\n" + body + "\n}\n", "T.java", "p");
    REQUIRE(a.methods.size() == 1);
    return a.methods[0];
}

const java::AnalyzedMethod& find(const std::vector<java::AnalyzedMethod>& ms, const std::string& name) {
    for (const auto& m : ms) {
        if (m.identity.method_name == name) {
            return m;
        }
    }
    FAIL("method not found: " << name);
    return ms.front();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("method enumeration") {
    const auto two = analyze_source("class A { private int id; A() { id = 0; } int getId() { return id; } }", "A.java",
                                    "p");
    CHECK(two.methods.size() == 2);

    const auto iface = analyze_source("interface I { void a(); int b(String s); }", "I.java", "p");
    CHECK(iface.methods.empty());

    const auto nested = analyze_source("class Outer { static class Inner { void f() { g(); } } }", "Outer.java", "p");
    REQUIRE(nested.methods.size() == 1);
    CHECK(nested.methods[0].identity.type_name == "Outer.Inner");
}

TEST_CASE("method chaining depth") {
    CHECK(only_method("String a() { return getId().toString(); }").metrics.max_chaining == 2);
    CHECK(only_method("String a() { return getId().toString().subString(1); }").metrics.max_chaining == 3);
    CHECK(only_method("int a() { int x = 1; return x; }").metrics.max_chaining == 0);
}

TEST_CASE("local variables and complexity") {
    const auto m = only_method("int a() { int x = 1; return x; }");
    CHECK(m.metrics.unique_variable_ids == 1);
    CHECK(m.metrics.cyclomatic_complexity == 1);
    CHECK(m.metrics.count(ConstructKind::Assignment) == 0);

    const auto branchy = only_method(R"(int b(int v) {
        if (v > 0 && v < 10) { return 1; } else if (v == 0) { return 0; }
        for (int i = 0; i < v; i++) { v -= i; }
        return v > 5 ? 2 : 3;
    })");
    // 1 + 2 ifs + 1 loop + 1 ternary + 1 &&
    CHECK(branchy.metrics.cyclomatic_complexity == 6);
    CHECK(branchy.metrics.count(ConstructKind::IfCondition) == 2);
    CHECK(branchy.metrics.count(ConstructKind::ElseBlock) == 1);
    CHECK(branchy.metrics.count(ConstructKind::Loop) == 1);
    CHECK(branchy.metrics.count(ConstructKind::Assignment) == 1);
    CHECK(branchy.metrics.count(ConstructKind::ReturnStatement) == 3);
    CHECK(branchy.metrics.max_nesting == 1);
}

TEST_CASE("category flags") {
    const auto ts = only_method("private String name; public String toString() { return name; }");
    CHECK(ts.categories.is_to_string);
    CHECK(ts.categories.is_getter);

    const auto a = analyze_source("class D { static final int DEFAULT = 1; void f(int a) { f(a, DEFAULT); } "
                                  "void f(int a, int b) { g(a + b); } void run() {} }",
                                  "D.java", "p");
    REQUIRE(a.methods.size() == 3);
    const auto& delegating = a.methods[0].identity.param_signature.size() == 1 ? a.methods[0] : a.methods[1];
    CHECK(delegating.categories.is_delegation);
    CHECK(find(a.methods, "run").categories.is_empty);
}

TEST_CASE("lambdas exclude the method with a diagnostic") {
    const auto a = analyze_source("class L { void f() { Runnable r = () -> g(); r.run(); } void g() {} }", "L.java", "p");
    CHECK(a.methods.size() == 1);
    CHECK(a.diagnostics.size() == 1);
}

TEST_CASE("malformed source raises a parse error with a location") {
    try {
        analyze_source("class Broken { void f( { }", "Broken.java", "p");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.file() == "Broken.java");
        CHECK(e.line() == 1);
        CHECK(e.module() == "java-analyzer");
    }
}

TEST_CASE("golden corpus") {
    const std::filesystem::path fixtures(IDP_FIXTURE_DIR);
    const auto analysis = java::analyze_project(fixtures / "java_corpus", {}, "corpus");
    CHECK(analysis.skipped_files.empty());
    CHECK(analysis.files_analyzed == 5);

    Dataset rows;
    for (const auto& m : analysis.methods) {
        rows.push_back({m.identity, m.metrics, m.categories, false, Snapshot::Current});
    }
    std::stringstream out;
    write_csv(out, rows);
    CHECK(out.str() == slurp(fixtures / "java_corpus_golden.csv"));

    REQUIRE(rows.size() >= 30);
    std::array<bool, kConstructKindCount> construct_seen{};
    std::array<bool, kCategoryCount> category_seen{};
    std::array<bool, 4> chaining_seen{};
    for (const auto& r : rows) {
        for (const auto kind : all_construct_kinds()) {
            construct_seen[static_cast<std::size_t>(kind)] |= r.metrics.count(kind) > 0;
        }
        for (std::size_t c = 0; c < kCategoryCount; ++c) {
            category_seen[c] |= category_value(r.categories, c);
        }
        if (r.metrics.max_chaining < 4) {
            chaining_seen[static_cast<std::size_t>(r.metrics.max_chaining)] = true;
        }
    }
    CHECK(std::all_of(construct_seen.begin(), construct_seen.end(), [](bool b) { return b; }));
    CHECK(std::all_of(category_seen.begin(), category_seen.end(), [](bool b) { return b; }));
    CHECK(std::all_of(chaining_seen.begin(), chaining_seen.end(), [](bool b) { return b; }));
}

TEST_CASE("source selection globs") {
    const std::filesystem::path root = std::filesystem::path(IDP_FIXTURE_DIR) / "java_corpus";
    const auto all = java::select_sources(root, {});
    CHECK(all.size() == 5);
    const auto shop = java::select_sources(root, {{"**/shop/*.java"}, {"**/Pricing.java"}});
    CHECK(shop == std::vector<std::string>{"src/main/java/shop/Account.java", "src/main/java/shop/Inventory.java"});
}
