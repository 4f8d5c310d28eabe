#include <doctest.h>

#include "idp/error.hpp"
#include "idp/lfr_classifier.hpp"
#include "support/oracles.hpp"

using namespace idp;

namespace {

AssociationRule rule(std::initializer_list<std::size_t> antecedent, double conf, double sup, std::size_t label = 4) {
    AssociationRule r;
    for (const auto i : antecedent) {
        r.antecedent.set(i);
    }
    r.consequent = label;
    r.confidence = conf;
    r.support = sup;
    return r;
}

Instance instance(const Vocabulary& vocab, std::initializer_list<std::size_t> items, bool faulty) {
    Instance inst;
    for (const auto i : items) {
        inst.items.items.set(i);
    }
    inst.items.items.set(vocab.label_item(), !faulty);
    inst.items.vocabulary_id = vocab.fingerprint();
    inst.faulty = faulty;
    return inst;
}

ItemVector vector_of(const Vocabulary& vocab, std::initializer_list<std::size_t> items) {
    ItemVector v;
    for (const auto i : items) {
        v.items.set(i);
    }
    v.vocabulary_id = vocab.fingerprint();
    return v;
}

} // namespace

TEST_CASE("order_rules sorts by confidence, then support") {
    const auto vocab = oracle::flat_vocabulary(4);
    const auto ordered = order_rules({rule({0}, 0.99, 0.2), rule({1}, 0.95, 0.4), rule({2}, 0.99, 0.3)}, vocab);
    REQUIRE(ordered.size() == 3);
    CHECK(ordered[0].antecedent.test(2));
    CHECK(ordered[1].antecedent.test(0));
    CHECK(ordered[2].antecedent.test(1));

    CHECK(order_rules({rule({1}, 0.9, 0.1)}, vocab).size() == 1);
}

TEST_CASE("order_rules breaks full ties by size, then item names") {
    const auto vocab = oracle::flat_vocabulary(4);
    const auto ordered =
        order_rules({rule({2, 3}, 0.9, 0.2), rule({1}, 0.9, 0.2), rule({0, 3}, 0.9, 0.2), rule({0}, 0.9, 0.2)}, vocab);
    CHECK(antecedent_names(ordered[0], vocab) == std::vector<std::string>{"I0"});
    CHECK(antecedent_names(ordered[1], vocab) == std::vector<std::string>{"I1"});
    CHECK(antecedent_names(ordered[2], vocab) == std::vector<std::string>{"I0", "I3"});
    CHECK(antecedent_names(ordered[3], vocab) == std::vector<std::string>{"I2", "I3"});
}

TEST_CASE("select_prefix stops before the rule that breaches the budget") {
    const auto vocab = oracle::flat_vocabulary(4);
    const std::size_t label = vocab.label_item();
    const std::vector<AssociationRule> rules = {rule({0}, 0.99, 0.3, label), rule({1}, 0.98, 0.3, label),
                                                rule({2}, 0.97, 0.3, label), rule({3}, 0.96, 0.3, label)};
    // 40 faulty methods, budget 0.05 -> 2 faulty allowed.
    std::vector<Instance> training;
    for (int i = 0; i < 40; ++i) {
        training.push_back(instance(vocab, {}, true));
    }
    training[0] = instance(vocab, {0}, true);
    training[1] = instance(vocab, {1}, true);
    training[2] = instance(vocab, {2}, true);
    for (int i = 0; i < 20; ++i) {
        training.push_back(instance(vocab, {0, 1, 2, 3}, false));
    }
    const auto sel = select_prefix(rules, training, 0.05, vocab);
    CHECK(sel.n == 2);
    CHECK(sel.matched_faulty == 2);
    CHECK(sel.total_faulty == 40);
    CHECK(sel.matched_total == 22);
    CHECK(sel.n == oracle::scan_prefix(rules, training, 0.05));
}

TEST_CASE("select_prefix budget arithmetic and edge cases") {
    const auto vocab = oracle::flat_vocabulary(2);
    const std::size_t label = vocab.label_item();
    std::vector<AssociationRule> rules;
    for (int i = 0; i < 10; ++i) {
        rules.push_back(rule({0}, 0.9, 0.1, label));
    }
    std::vector<Instance> training;
    for (int i = 0; i < 200; ++i) {
        training.push_back(instance(vocab, {1}, true));
    }
    // rules matching no faulty method -> every rule is kept
    CHECK(select_prefix(rules, training, 0.025, vocab).n == rules.size());

    // 0.025 * 200 = 5 faulty methods may be covered
    std::vector<AssociationRule> distinct;
    for (std::size_t i = 0; i < 8; ++i) {
        training[i] = instance(vocab, {0}, true);
    }
    distinct.push_back(rule({0}, 0.9, 0.1, label));
    auto sel = select_prefix(distinct, training, 0.025, vocab);
    CHECK(sel.n == 0);
    CHECK(sel.no_admissible_rules);
    for (std::size_t i = 5; i < 8; ++i) {
        training[i] = instance(vocab, {1}, true);
    }
    sel = select_prefix(distinct, training, 0.025, vocab);
    CHECK(sel.n == 1);
    CHECK(sel.matched_faulty == 5);

    std::vector<Instance> clean = {instance(vocab, {0}, false)};
    CHECK_THROWS_AS(select_prefix(distinct, clean, 0.025, vocab), Error);
}

TEST_CASE("select_prefix agrees with the prefix scan on random fixtures") {
    Rng rng(404);
    for (int round = 0; round < 40; ++round) {
        auto f = oracle::random_prefix_fixture(rng);
        for (const double budget : {0.025, 0.05, 0.2}) {
            const auto sel = select_prefix(f.rules, f.training, budget, f.vocabulary);
            CHECK(sel.n == oracle::scan_prefix(f.rules, f.training, budget));
            CHECK(sel.matched_faulty == oracle::faulty_matched_by_prefix(f.rules, sel.n, f.training));
        }
    }
}

TEST_CASE("classify honours the prefix boundary") {
    const auto vocab = oracle::flat_vocabulary(4);
    const std::size_t label = vocab.label_item();
    const std::vector<AssociationRule> rules = {rule({0, 1}, 0.99, 0.3, label), rule({2}, 0.98, 0.3, label),
                                                rule({3}, 0.97, 0.3, label)};
    const LfrClassifier none(rules, 0, Variant::Strict, 0.025, vocab);
    CHECK(none.classify(vector_of(vocab, {0, 1, 2, 3})) == Prediction::NotClassified);

    const LfrClassifier two(rules, 2, Variant::Lenient, 0.05, vocab);
    CHECK(two.classify(vector_of(vocab, {0, 1})) == Prediction::LowFaultRisk);
    CHECK(two.matched_rule(vector_of(vocab, {0, 1})) == 0U);
    CHECK(two.classify(vector_of(vocab, {0})) == Prediction::NotClassified);
    CHECK(two.classify(vector_of(vocab, {3})) == Prediction::NotClassified);
    CHECK(two.matched_rule(vector_of(vocab, {2, 3})) == 1U);
    // the label item plays no part in matching
    CHECK(two.classify(vector_of(vocab, {2, label})) == Prediction::LowFaultRisk);

    ItemVector foreign = vector_of(vocab, {0, 1});
    foreign.vocabulary_id = Vocabulary::standard().fingerprint();
    CHECK_THROWS_AS(two.classify(foreign), VocabularyMismatch);
}

TEST_CASE("classifier json round trip and vocabulary check") {
    const auto& vocab = Vocabulary::standard();
    std::vector<AssociationRule> rules;
    for (std::size_t i = 0; i < 3; ++i) {
        AssociationRule r;
        r.antecedent.set(Vocabulary::category_item_index(i));
        r.consequent = vocab.label_item();
        r.confidence = 0.99 - 0.01 * static_cast<double>(i);
        r.support = 0.2;
        r.rule_count = 20;
        r.antecedent_count = 20;
        rules.push_back(r);
    }
    const LfrClassifier c(rules, 2, Variant::Lenient, 0.05);
    const auto j = c.to_json();
    CHECK(j.at("n") == 2);
    CHECK(j.at("variant") == "lenient");
    const auto back = LfrClassifier::from_json(j);
    CHECK(back.n() == 2);
    CHECK(back.variant() == Variant::Lenient);
    CHECK(back.ordered_rules() == rules);

    auto tampered = j;
    tampered["vocabulary"][0] = "SomethingElse";
    CHECK_THROWS_AS(LfrClassifier::from_json(tampered), VocabularyMismatch);
    CHECK_THROWS_AS(variant_from_name("medium"), ConfigError);
}
