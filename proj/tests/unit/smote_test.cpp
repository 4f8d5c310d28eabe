#include <doctest.h>

#include "idp/error.hpp"
#include "idp/smote.hpp"
#include "support/oracles.hpp"

using namespace idp;

namespace {

/// Random vectors over the standard vocabulary: one class per tertile
/// attribute and random binary items.
std::vector<ItemVector> random_vectors(Rng& rng, std::size_t faulty, std::size_t clean) {
    const auto& vocab = Vocabulary::standard();
    std::vector<ItemVector> out;
    for (std::size_t i = 0; i < faulty + clean; ++i) {
        ItemVector v;
        v.vocabulary_id = vocab.fingerprint();
        for (const auto& attr : vocab.attributes()) {
            if (attr.first == vocab.label_item()) {
                continue;
            }
            if (attr.width == 3) {
                v.items.set(attr.first + rng.below(3));
            } else {
                v.items.set(attr.first, rng.coin());
            }
        }
        v.items.set(vocab.label_item(), i >= faulty);
        out.push_back(v);
    }
    return out;
}

std::size_t count_faulty(const std::vector<ItemVector>& vs) {
    std::size_t n = 0;
    for (const auto& v : vs) {
        n += v.not_faulty(Vocabulary::standard()) ? 0 : 1;
    }
    return n;
}

} // namespace

TEST_CASE("10 faulty and 90 clean balance to 20 and 20") {
    Rng rng(1);
    const auto input = random_vectors(rng, 10, 90);
    const auto out = balance(input, BalanceConfig{.rng_seed = 4});
    CHECK(out.vectors.size() == 40);
    CHECK(count_faulty(out.vectors) == 20);
    CHECK(out.synthetic == 10);
    CHECK(out.majority_kept == 20);
    CHECK_FALSE(out.imbalance_unachievable);
    CHECK(out.minority_fraction() == 0.5);
}

TEST_CASE("balanced input stays balanced") {
    Rng rng(2);
    const auto input = random_vectors(rng, 30, 30);
    const auto out = balance(input, BalanceConfig{});
    CHECK(out.unchanged);
    CHECK(out.vectors == input);
}

TEST_CASE("identical minority vectors give identical synthetic vectors") {
    Rng rng(3);
    auto input = random_vectors(rng, 8, 50);
    for (std::size_t i = 1; i < 8; ++i) {
        input[i] = input[0];
    }
    const auto out = balance(input, BalanceConfig{});
    for (std::size_t i = 0; i < out.minority_original + out.synthetic; ++i) {
        CHECK(out.vectors[i] == input[0]);
    }
}

TEST_CASE("synthetic attributes come from the seed or its neighbours") {
    const auto& vocab = Vocabulary::standard();
    Rng rng(12);
    const auto input = random_vectors(rng, 25, 200);
    const std::vector<ItemVector> minority(input.begin(), input.begin() + 25);
    const auto out = balance(input, BalanceConfig{.rng_seed = 99});
    REQUIRE(out.synthetic == 25);
    for (std::size_t s = 0; s < out.synthetic; ++s) {
        const auto& syn = out.vectors[out.minority_original + s];
        bool from_some_seed = false;
        for (std::size_t seed = 0; seed < minority.size() && !from_some_seed; ++seed) {
            auto sources = nearest_neighbors(minority, seed, 5, vocab);
            sources.push_back(seed);
            bool all_attrs = true;
            for (const auto& attr : vocab.attributes()) {
                bool found = false;
                for (const auto src : sources) {
                    bool same = true;
                    for (std::size_t k = 0; k < attr.width; ++k) {
                        same = same && syn.items.test(attr.first + k) == minority[src].items.test(attr.first + k);
                    }
                    found = found || same;
                }
                all_attrs = all_attrs && found;
            }
            from_some_seed = all_attrs;
        }
        CHECK(from_some_seed);
    }
}

TEST_CASE("balance is deterministic per seed") {
    Rng rng(21);
    const auto input = random_vectors(rng, 20, 150);
    const auto a = balance(input, BalanceConfig{.rng_seed = 5});
    const auto b = balance(input, BalanceConfig{.rng_seed = 5});
    const auto c = balance(input, BalanceConfig{.rng_seed = 6});
    CHECK(a.vectors == b.vectors);
    CHECK(a.vectors != c.vectors);
}

TEST_CASE("too small a majority pool is recorded") {
    Rng rng(7);
    const auto input = random_vectors(rng, 40, 60);
    const auto out = balance(input, BalanceConfig{});
    CHECK(out.imbalance_unachievable);
    CHECK(out.majority_kept == 60);
    CHECK(out.vectors.size() == 140);
}

TEST_CASE("balance preconditions") {
    Rng rng(9);
    CHECK_THROWS_AS(balance(random_vectors(rng, 5, 80), BalanceConfig{}), InsufficientMinority);
    CHECK_NOTHROW(balance(random_vectors(rng, 6, 80), BalanceConfig{}));
    CHECK_THROWS_AS(balance(random_vectors(rng, 10, 0), BalanceConfig{}), InsufficientMinority);
    CHECK_THROWS_AS(balance(random_vectors(rng, 10, 80), BalanceConfig{.k_neighbors = 0}), ConfigError);
    CHECK_THROWS_AS(balance(random_vectors(rng, 10, 80), BalanceConfig{.percent_over = 0}), ConfigError);
}

TEST_CASE("nearest neighbours order by distance then position") {
    const auto vocab = oracle::flat_vocabulary(4);
    auto v = [&](std::initializer_list<std::size_t> items) {
        ItemVector out;
        for (const auto i : items) {
            out.items.set(i);
        }
        return out;
    };
    const std::vector<ItemVector> pool = {v({0, 1}), v({0, 1, 2, 3}), v({0}), v({1}), v({0, 1, 4})};
    CHECK(hamming_distance(pool[0].items, pool[4].items, vocab) == 0);
    CHECK(nearest_neighbors(pool, 0, 3, vocab) == std::vector<std::size_t>{4, 2, 3});
}
