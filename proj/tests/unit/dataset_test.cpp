#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "idp/dataset.hpp"
#include "idp/discretization.hpp"
#include "idp/error.hpp"
#include "idp/synthetic.hpp"
#include "support/oracles.hpp"

using namespace idp;

namespace {

MethodIdentity identity(const std::string& name) {
    MethodIdentity id;
    id.project = "p";
    id.file_path = "src/A.java";
    id.type_name = "A";
    id.method_name = name;
    return id;
}

Instance faulty_instance(const std::string& name, std::initializer_list<std::size_t> items, std::int64_t sloc) {
    Instance inst;
    inst.identity = identity(name);
    for (const auto i : items) {
        inst.items.items.set(i);
    }
    inst.items.vocabulary_id = Vocabulary::standard().fingerprint();
    inst.faulty = true;
    inst.snapshot = Snapshot::Faulty;
    inst.sloc = sloc;
    return inst;
}

Instance current_instance(const std::string& name) {
    Instance inst;
    inst.identity = identity(name);
    inst.items.items.set(Vocabulary::standard().label_item());
    inst.items.vocabulary_id = Vocabulary::standard().fingerprint();
    inst.sloc = 4;
    return inst;
}

} // namespace

TEST_CASE("tertile boundaries") {
    const auto exact = fit_tertiles({1, 1, 1, 2, 2, 2, 3, 3, 3});
    CHECK(exact.class1_upper == 1);
    CHECK(exact.class2_upper == 2);

    const auto skewed = fit_tertiles({1, 1, 1, 1, 1, 1, 2, 3, 4});
    CHECK(skewed.class1_upper == 1);
    for (int i = 0; i < 6; ++i) {
        CHECK(skewed.classify(1) == 1);
    }
    CHECK(skewed.class2_upper == 1);
    CHECK(skewed.classify(2) == 3);

    const auto flat = fit_tertiles({5, 5, 5, 5});
    CHECK(flat.classify(5) == 1);
    CHECK_THROWS_AS(fit_tertiles({1, 2}), Error);
}

TEST_CASE("tertile fit matches the counting definition") {
    Rng rng(8);
    for (int round = 0; round < 200; ++round) {
        std::vector<std::int64_t> values(3 + rng.below(60));
        const auto range = 1 + rng.below(12);
        for (auto& v : values) {
            v = static_cast<std::int64_t>(rng.below(range));
        }
        CHECK(fit_tertiles(values) == oracle::counted_tertiles(values));
    }
}

TEST_CASE("degenerate metrics fit with a warning") {
    Dataset rows = generate_synthetic_project("p", SyntheticConfig{.methods = 30, .seed = 3});
    for (auto& r : rows) {
        r.metrics.max_chaining = 2;
    }
    const auto fit = fit_discretization(rows);
    CHECK(fit.warnings.size() == 1);
    CHECK(fit.model.classify(TertileMetric::MaxChaining, 2) == 1);
    CHECK(DiscretizationModel::from_json(fit.model.to_json()) == fit.model);
}

TEST_CASE("itemize maps metrics to items") {
    const auto& vocab = Vocabulary::standard();
    MethodRecord r;
    r.metrics.sloc = 3;
    r.metrics.cyclomatic_complexity = 1;
    r.metrics.count(ConstructKind::MethodInvocation) = 2;
    r.metrics.count(ConstructKind::Assignment) = 1;
    r.categories.is_setter = true;
    const DiscretizationModel model({TertileBounds{3, 10}, TertileBounds{1, 3}, TertileBounds{0, 1},
                                     TertileBounds{0, 1}, TertileBounds{1, 4}});
    const auto names = item_names(itemize(r, model).items, vocab);
    auto has = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    CHECK(has("SlocLowestThird"));
    CHECK(has("NoLoops"));
    CHECK(has("IsSetter"));
    CHECK(has("NotFaulty"));
    CHECK_FALSE(has("NoMethodInvocations"));
    CHECK_FALSE(has("NoAssignments"));
    CHECK_FALSE(has("IsGetter"));

    r.faulty = true;
    CHECK_FALSE(itemize(r, model).not_faulty(vocab));
    CHECK(vocab.size() == kStandardVocabularySize);
    CHECK(vocab.size() == 50);
}

TEST_CASE("consolidation votes per attribute") {
    const std::size_t no_loops = Vocabulary::no_construct_item(ConstructKind::Loop);
    const std::size_t sloc1 = Vocabulary::tertile_item(TertileMetric::Sloc, 1);
    const std::size_t sloc3 = Vocabulary::tertile_item(TertileMetric::Sloc, 3);

    const auto three = consolidate_faulty(std::vector{faulty_instance("f", {no_loops, sloc1}, 3),
                                                      faulty_instance("f", {no_loops, sloc1}, 5),
                                                      faulty_instance("f", {sloc1}, 9)});
    REQUIRE(three.size() == 1);
    CHECK(three[0].items.items.test(no_loops));
    CHECK(three[0].sloc == 5);

    const auto single = faulty_instance("g", {sloc3}, 7);
    const auto passthrough = consolidate_faulty(std::vector{single});
    REQUIRE(passthrough.size() == 1);
    CHECK(passthrough[0].items == single.items);

    const auto tie = consolidate_faulty(std::vector{faulty_instance("h", {sloc1}, 2), faulty_instance("h", {sloc3}, 8)});
    REQUIRE(tie.size() == 1);
    CHECK(tie[0].items.items.test(sloc3));
    CHECK_FALSE(tie[0].items.items.test(sloc1));
    CHECK(tie[0].sloc == 8);
}

TEST_CASE("unify replaces current rows by faulty ones") {
    const std::vector<Instance> all = {current_instance("a"), current_instance("b"), current_instance("c")};
    const auto b_faulty = faulty_instance("b", {}, 6);

    auto out = unify(all, std::vector{b_faulty});
    REQUIRE(out.instances.size() == 3);
    CHECK(out.instances[1] == b_faulty);
    CHECK_FALSE(out.instances[0].faulty);
    CHECK(out.warnings.empty());

    CHECK(unify(all, std::vector<Instance>{}).instances == all);

    out = unify(std::vector{current_instance("a")}, std::vector{faulty_instance("z", {}, 2)});
    REQUIRE(out.instances.size() == 2);
    CHECK(out.instances[1].faulty);
    CHECK(out.warnings.size() == 1);
}

TEST_CASE("metrics csv round trip and schema errors") {
    const auto rows = generate_synthetic_project("round", SyntheticConfig{.methods = 60, .seed = 11});
    std::stringstream buf;
    write_csv(buf, rows, "note");
    CHECK(buf.str().rfind("# note\n", 0) == 0);
    CHECK(read_csv(buf) == rows);

    std::stringstream missing;
    auto cols = csv_columns();
    cols.erase(std::find(cols.begin(), cols.end(), "faulty"));
    for (std::size_t i = 0; i < cols.size(); ++i) {
        missing << (i ? "," : "") << cols[i];
    }
    missing << "\n";
    try {
        read_csv(missing);
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("faulty") != std::string::npos);
    }

    std::stringstream bad_value;
    write_csv(bad_value, std::span(rows).first(1));
    std::string text = bad_value.str();
    text.replace(text.rfind(",current,"), 9, ",later,");
    std::stringstream reread(text);
    CHECK_THROWS_AS(read_csv(reread), SchemaError);
}

TEST_CASE("externally written csv is accepted") {
    const auto rows = read_csv(std::filesystem::path(IDP_FIXTURE_DIR) / "external_metrics.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].identity.param_signature == std::vector<std::string>{"String", "int"});
    CHECK(rows[1].faulty);
    CHECK(rows[1].snapshot == Snapshot::Faulty);
    CHECK(rows[2].categories.is_getter);
    CHECK(rows[2].metrics.sloc == 1);
}

TEST_CASE("unified rows keep faulty rows and never-faulty current rows") {
    const auto rows = generate_synthetic_project("u", SyntheticConfig{.methods = 200, .seed = 2});
    const auto unified = unified_rows(rows);
    const auto labeled = labeled_identities(rows);
    std::size_t faulty_rows = 0;
    for (const auto& r : rows) {
        faulty_rows += r.faulty ? 1 : 0;
    }
    std::size_t clean_ids = 0;
    for (const auto& [id, faulty] : labeled) {
        clean_ids += faulty ? 0 : 1;
    }
    CHECK(unified.size() == faulty_rows + clean_ids);
}
