#include <doctest.h>

#include "idp/error.hpp"
#include "idp/rule_miner.hpp"
#include "support/oracles.hpp"

using namespace idp;

namespace {

ItemMask mask(std::initializer_list<std::size_t> items) {
    ItemMask m;
    for (const auto i : items) {
        m.set(i);
    }
    return m;
}

AssociationRule rule(std::initializer_list<std::size_t> antecedent, double conf, double sup = 0.2) {
    AssociationRule r;
    r.antecedent = mask(antecedent);
    r.consequent = 4;
    r.confidence = conf;
    r.support = sup;
    return r;
}

} // namespace

TEST_CASE("support counts containing transactions") {
    const std::vector<ItemMask> db = {mask({0, 1}), mask({0}), mask({0, 2}), mask({1})};
    CHECK(support(ItemMask{}, db) == 1.0);
    CHECK(support(mask({0}), db) == 0.75);
    CHECK(support(mask({0, 1}), db) == 0.25);
    CHECK_THROWS_AS(support(mask({0}), std::span<const ItemMask>{}), EmptyDatabase);
}

TEST_CASE("confidence of an antecedent towards the label") {
    // antecedent {0} in 4 transactions, 3 with the consequent 4
    const std::vector<ItemMask> db = {mask({0, 4}), mask({0, 4}), mask({0, 4}), mask({0}), mask({1, 4})};
    CHECK(confidence(mask({0}), 4, db) == 0.75);
    CHECK_THROWS_AS(confidence(mask({3}), 4, db), ZeroAntecedentSupport);

    const std::vector<ItemMask> all_label = {mask({0, 4}), mask({1, 4}), mask({0, 1, 4})};
    CHECK(confidence(mask({0}), 4, all_label) == 1.0);
    CHECK(confidence(mask({0, 1}), 4, all_label) == 1.0);
}

TEST_CASE("mine finds a constructed rule and respects min_support") {
    const auto vocab = oracle::flat_vocabulary(3);
    // X = item 0 in 6 of 10, always with NotFaulty (item 3)
    std::vector<ItemMask> db;
    for (int i = 0; i < 6; ++i) {
        db.push_back(mask({0, 3}));
    }
    for (int i = 0; i < 4; ++i) {
        db.push_back(mask({1}));
    }
    MiningConfig cfg;
    cfg.min_support = 0.5;
    cfg.min_confidence = 0.9;
    const auto result = mine(db, cfg, 3, vocab);
    REQUIRE(result.rules.size() == 1);
    CHECK(result.rules[0].antecedent == mask({0}));
    CHECK(result.rules[0].support == doctest::Approx(0.6));
    CHECK(result.rules[0].confidence == 1.0);

    // best rule support 0.4: admitted at 0.4, excluded at 0.45. Thresholds
    // above 0.5 are rejected outright since no rule can exceed that after
    // balancing.
    std::vector<ItemMask> db40 = {mask({0, 3}), mask({0, 3}), mask({1}), mask({1}), mask({2})};
    cfg.min_support = 0.4;
    CHECK_FALSE(mine(db40, cfg, 3, vocab).rules.empty());
    cfg.min_support = 0.45;
    CHECK(mine(db40, cfg, 3, vocab).rules.empty());
    cfg.min_support = 0.6;
    CHECK_THROWS_AS(mine(db40, cfg, 3, vocab), ConfigError);
    cfg.min_support = 0.1;
    CHECK_THROWS_AS(mine(std::vector<ItemMask>{}, cfg, 3, vocab), EmptyDatabase);
}

TEST_CASE("mine equals the power-set enumeration") {
    Rng rng(91);
    for (int round = 0; round < 40; ++round) {
        const std::size_t items = 2 + rng.below(7);
        const auto vocab = oracle::flat_vocabulary(items);
        const auto db = oracle::random_transactions(rng, items, 20 + rng.below(100));
        MiningConfig cfg;
        cfg.min_support = 0.02 + 0.3 * rng.unit();
        cfg.min_confidence = 0.3 + 0.7 * rng.unit();
        cfg.max_antecedent_len = 1 + rng.below(items);
        const auto expected = oracle::sorted_by_antecedent(oracle::brute_force_rules(db, items, cfg));
        const auto got = oracle::sorted_by_antecedent(mine(db, cfg, items, vocab).rules);
        CHECK(got == expected);
    }
}

TEST_CASE("prune_redundant keeps strictly better specializations") {
    const auto equal = prune_redundant(std::vector{rule({0}, 0.96), rule({0, 1}, 0.96)});
    REQUIRE(equal.size() == 1);
    CHECK(equal[0].antecedent == mask({0}));

    CHECK(prune_redundant(std::vector{rule({0}, 0.95), rule({0, 1}, 0.99)}).size() == 2);
    // domination through a non-immediate subset
    CHECK(prune_redundant(std::vector{rule({0}, 0.97), rule({0, 1, 2}, 0.96)}).size() == 1);
}

TEST_CASE("prune_redundant equals the pairwise check on random rule sets") {
    Rng rng(17);
    for (int round = 0; round < 60; ++round) {
        std::vector<AssociationRule> rules;
        std::vector<ItemMask> seen;
        const std::size_t count = 1 + rng.below(30);
        while (rules.size() < count) {
            AssociationRule r;
            const std::size_t len = 1 + rng.below(4);
            while (r.antecedent.count() < len) {
                r.antecedent.set(rng.below(6));
            }
            if (std::find(seen.begin(), seen.end(), r.antecedent) != seen.end()) {
                continue;
            }
            seen.push_back(r.antecedent);
            r.consequent = 6;
            r.confidence = 0.8 + 0.05 * static_cast<double>(rng.below(5));
            rules.push_back(r);
        }
        CHECK(prune_redundant(rules) == oracle::pairwise_prune(rules));
    }
}

TEST_CASE("mine_non_redundant equals mine followed by pruning") {
    Rng rng(5);
    for (int round = 0; round < 30; ++round) {
        const std::size_t items = 3 + rng.below(6);
        const auto vocab = oracle::flat_vocabulary(items);
        const auto db = oracle::random_transactions(rng, items, 50 + rng.below(150));
        MiningConfig cfg;
        cfg.min_support = 0.02 + 0.2 * rng.unit();
        cfg.min_confidence = 0.4 + 0.6 * rng.unit();
        cfg.max_antecedent_len = 1 + rng.below(items);
        const auto full = mine(db, cfg, items, vocab);
        auto pruned = prune_redundant(full.rules);
        sort_canonical(pruned, vocab);
        CHECK(mine_non_redundant(db, cfg, items, vocab).rules == pruned);
    }
}

TEST_CASE("mining config validation and json round trip") {
    MiningConfig cfg;
    cfg.min_support = 0.7;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.min_support = 0.1;
    cfg.min_confidence = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.min_confidence = 0.9;
    cfg.max_antecedent_len = 3;
    CHECK_NOTHROW(cfg.validate());
    const auto back = mining_config_from_json(mining_config_to_json(cfg));
    CHECK(back.min_support == cfg.min_support);
    CHECK(back.min_confidence == cfg.min_confidence);
    CHECK(back.max_antecedent_len == 3);

    const auto& vocab = Vocabulary::standard();
    AssociationRule r;
    r.antecedent.set(Vocabulary::no_construct_item(ConstructKind::Loop));
    r.antecedent.set(Vocabulary::tertile_item(TertileMetric::Sloc, 1));
    r.consequent = vocab.label_item();
    r.support = 0.3;
    r.confidence = 0.97;
    r.rule_count = 30;
    r.antecedent_count = 31;
    CHECK(rule_from_json(rule_to_json(r, vocab), vocab) == r);
}
