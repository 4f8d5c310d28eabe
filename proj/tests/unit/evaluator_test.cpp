#include <doctest.h>

#include <array>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "idp/error.hpp"
#include "idp/evaluator.hpp"
#include "idp/report.hpp"
#include "idp/synthetic.hpp"

using namespace idp;

namespace {

PipelineConfig desk_config() {
    PipelineConfig cfg;
    cfg.mining.min_support = 0.05;
    cfg.mining.min_confidence = 0.85;
    cfg.mining.max_antecedent_len = 2;
    cfg.seed = 7;
    return cfg;
}

MethodPrediction prediction(const std::string& name, bool faulty, bool lfr, std::int64_t sloc) {
    MethodPrediction p;
    p.identity.method_name = name;
    p.faulty = faulty;
    p.predicted_lfr = lfr;
    p.sloc = sloc;
    return p;
}

/// Generated trivial methods are the only ones without branching.
bool trivial(const MethodRecord& r) { return r.metrics.cyclomatic_complexity == 1; }

} // namespace

TEST_CASE("fdr reproduces the worked values") {
    CHECK(compute_fdr(0.40, 0.10).value == 4.0);
    CHECK(compute_fdr(0.286, 0.041).value == doctest::Approx(6.9756).epsilon(1e-4));
    CHECK(compute_fdr(0.138, 0.041).value == doctest::Approx(3.3659).epsilon(1e-4));
    const auto inf = compute_fdr(0.3, 0.0);
    CHECK(inf.kind == FdrKind::Infinite);
    CHECK(std::isinf(inf.value));
    CHECK(compute_fdr(0.0, 0.0) == FdrValue{0.0, FdrKind::ZeroOverZero});
    CHECK(fdr_flag(FdrKind::ZeroOverZero) == "zero_over_zero");
}

TEST_CASE("median") {
    CHECK(median({4.3, 5.7, 10.9}) == 5.7);
    CHECK(median({1.0, 2.0, 4.0, 10.0}) == 3.0);
    CHECK(std::isinf(median({1.0, INFINITY, INFINITY})));
    CHECK_THROWS(median({}));
}

TEST_CASE("stratified folds") {
    std::array<bool, 101> faulty{};
    for (std::size_t i = 0; i < 10; ++i) {
        faulty[i * 7] = true;
    }
    const std::span<const bool> f(faulty.data(), 100);
    const auto parts = stratified_kfold(f, 10, 3);
    REQUIRE(parts.size() == 10);
    std::set<std::size_t> all;
    for (const auto& p : parts) {
        CHECK(p.size() == 10);
        CHECK(std::count_if(p.begin(), p.end(), [&](std::size_t i) { return faulty[i]; }) == 1);
        all.insert(p.begin(), p.end());
    }
    CHECK(all.size() == 100);
    CHECK(stratified_kfold(f, 10, 3) == parts);

    const auto odd = stratified_kfold(faulty, 10, 3);
    CHECK(std::count_if(odd.begin(), odd.end(), [](const auto& p) { return p.size() == 11; }) == 1);
    CHECK(std::count_if(odd.begin(), odd.end(), [](const auto& p) { return p.size() == 10; }) == 9);

    CHECK_THROWS_AS(stratified_kfold(f.first(50), 10, 3), TooFewMinority);
}

TEST_CASE("summarize counts the confusion matrix") {
    // 10 methods: 3 faulty. LFR = 4 methods, 1 of them faulty.
    std::vector<MethodPrediction> p;
    p.push_back(prediction("a", false, true, 2));
    p.push_back(prediction("b", false, true, 2));
    p.push_back(prediction("c", false, true, 4));
    p.push_back(prediction("d", true, true, 2));
    p.push_back(prediction("e", true, false, 20));
    p.push_back(prediction("f", true, false, 30));
    for (const char* n : {"g", "h", "i", "j"}) {
        p.push_back(prediction(n, false, false, 10));
    }
    const auto r = summarize("p", "strict", "pooled", p, 3);
    CHECK(r.methods == 10);
    CHECK(r.faulty == 3);
    CHECK(r.lfr_methods == 4);
    CHECK(r.lfr_method_fraction == doctest::Approx(0.4));
    CHECK(r.lfr_sloc == 10);
    CHECK(r.lfr_sloc_fraction == doctest::Approx(0.1));
    CHECK(r.faulty_in_lfr == 1);
    CHECK(r.faulty_in_lfr_fraction == doctest::Approx(0.25));
    CHECK(r.matched_fault_fraction == doctest::Approx(1.0 / 3.0));
    CHECK(r.precision == doctest::Approx(0.75));
    CHECK(r.recall == doctest::Approx(3.0 / 7.0));
    CHECK(r.fdr_methods.value == doctest::Approx(1.2));

    for (auto& x : p) {
        x.predicted_lfr = false;
    }
    const auto none = summarize("p", "strict", "pooled", p, 0);
    CHECK(none.lfr_method_fraction == 0.0);
    CHECK(none.precision == 0.0);
    CHECK(none.fdr_methods.kind == FdrKind::ZeroOverZero);
}

TEST_CASE("folds keep identities together") {
    const auto rows = generate_synthetic_project("p", SyntheticConfig{.methods = 400, .seed = 4});
    const auto folds = assign_folds(rows, 10, 1);
    REQUIRE(folds.size() == rows.size());
    std::map<MethodIdentity, std::size_t> fold_of;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto [it, inserted] = fold_of.emplace(rows[i].identity, folds[i]);
        CHECK(it->second == folds[i]);
    }
}

TEST_CASE("within-project evaluation aggregates folds") {
    ProjectData project{"small", generate_synthetic_project("small", SyntheticConfig{.methods = 900, .seed = 31})};
    const auto report = evaluate_within_project(project, desk_config(), 5);
    REQUIRE(report.rows.size() == 2);
    REQUIRE(report.fold_rows.size() == 10);
    for (const auto& row : report.rows) {
        double faulty_in_lfr = 0;
        double methods = 0;
        for (const auto& f : report.fold_rows) {
            if (f.variant == row.variant) {
                faulty_in_lfr += f.faulty_in_lfr;
                methods += f.methods;
            }
        }
        CHECK(row.faulty_in_lfr == faulty_in_lfr);
        CHECK(row.methods == methods);
        for (const double v : {row.lfr_method_fraction, row.lfr_sloc_fraction, row.faulty_in_lfr_fraction,
                               row.matched_fault_fraction, row.precision, row.recall}) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    for (std::size_t i = 0; i < 5; ++i) {
        const auto& strict = report.fold_rows[i];
        const auto& lenient = report.fold_rows[5 + i];
        CHECK(strict.variant == "strict");
        CHECK(lenient.variant == "lenient");
        CHECK(strict.lfr_method_fraction <= lenient.lfr_method_fraction);
    }
}

TEST_CASE("fault-free trivial methods give an infinite fdr") {
    auto rows = generate_synthetic_project("clean", SyntheticConfig{.methods = 900, .trivial_share = 0.4, .seed = 8});
    std::erase_if(rows, [](const MethodRecord& r) { return r.faulty && trivial(r); });
    // Single-item rules at full confidence describe exactly the branch-free
    // population; longer antecedents also find clean pockets of complex methods.
    auto cfg = desk_config();
    cfg.mining.min_support = 0.1;
    cfg.mining.min_confidence = 1.0;
    cfg.mining.max_antecedent_len = 1;
    const auto report = evaluate_within_project({"clean", rows}, cfg, 5);
    const auto& strict = report.rows[0];
    CHECK(strict.lfr_methods > 0);
    CHECK(strict.matched_fault_fraction == 0.0);
    CHECK(strict.fdr_methods.kind == FdrKind::Infinite);
}

TEST_CASE("cross-project evaluation trains on the other projects") {
    const auto corpus = generate_synthetic_corpus(2, 3);
    const auto report = evaluate_cross_project(corpus, corpus[1].name, desk_config());
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].project == corpus[1].name);
    CHECK(report.rows[0].methods == static_cast<double>(labeled_identities(corpus[1].rows).size()));
    CHECK_THROWS_AS(evaluate_cross_project(corpus, "missing", desk_config()), Error);
    CHECK_THROWS_AS(evaluate_projects(std::span(corpus).first(1), "cross", desk_config(), 10), Error);
    CHECK_THROWS_AS(evaluate_projects(corpus, "sideways", desk_config(), 10), Error);
}

TEST_CASE("report summary rows and round trips") {
    ScopeResult r;
    r.project = "p";
    r.variant = "strict";
    r.scope = "pooled";
    r.methods = 100;
    r.lfr_methods = 30;
    r.lfr_method_fraction = 0.3;
    r.matched_fault_fraction = 0.05;
    r.fdr_methods = compute_fdr(0.3, 0.05);
    r.fdr_sloc = compute_fdr(0.1, 0.0);
    const std::vector<ScopeResult> rows = {r};

    const auto summary = summary_rows(rows);
    REQUIRE(summary.size() == 2);
    for (auto s : summary) {
        CHECK((s.scope == "median" || s.scope == "mean"));
        s.scope = "pooled";
        s.project = "p";
        CHECK(s == r);
    }

    std::stringstream csv;
    write_report_csv(csv, rows, {{"seed", 1}});
    const auto back = read_report_csv(csv);
    REQUIRE(back.size() == 3);
    CHECK(back[0] == r);
    CHECK(scope_from_json(scope_to_json(r)) == r);
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(INFINITY) == "inf");
}

TEST_CASE("emit_report writes every requested format") {
    const auto dir = std::filesystem::temp_directory_path() / "idp-emit-test";
    std::filesystem::remove_all(dir);
    EvaluationReport report;
    report.mode = "cross";
    ScopeResult r;
    r.project = "p";
    r.variant = "strict";
    r.scope = "pooled";
    r.fdr_methods = compute_fdr(0.0, 0.0);
    r.fdr_sloc = compute_fdr(0.0, 0.0);
    report.rows = {r};
    const auto paths = emit_report(report, dir, {"csv", "json", "markdown"}, {{"seed", 1}}, true);
    for (const auto& p : paths) {
        CHECK(std::filesystem::exists(p));
    }
    CHECK(std::filesystem::exists(dir / "report.csv"));
    CHECK(std::filesystem::exists(dir / "report.json"));
    CHECK(std::filesystem::exists(dir / "report.md"));
    std::ifstream md(dir / "report.md");
    const std::string text((std::istreambuf_iterator<char>(md)), std::istreambuf_iterator<char>());
    CHECK(text.find("0 (0/0)") != std::string::npos);
    std::filesystem::remove_all(dir);
}
