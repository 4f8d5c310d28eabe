#include "idp/smote.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "idp/error.hpp"
#include "idp/rng.hpp"

namespace idp {

namespace {

constexpr std::uint64_t kSeedStream = 1;
constexpr std::uint64_t kUndersampleStream = 2;
constexpr std::uint64_t kRemainderStream = 3;

ItemVector synthesize(const ItemVector& seed, const ItemVector& neighbor, const Vocabulary& vocabulary, Rng& rng) {
    ItemVector out = seed;
    for (const auto& attr : vocabulary.attributes()) {
        if (attr.first == vocabulary.label_item() || !rng.coin()) {
            continue;
        }
        for (std::size_t k = 0; k < attr.width; ++k) {
            out.items.set(attr.first + k, neighbor.items.test(attr.first + k));
        }
    }
    return out;
}

} // namespace

void BalanceConfig::validate() const {
    if (!(percent_over > 0.0) || !std::isfinite(percent_over)) {
        throw ConfigError("smote percent_over must be > 0");
    }
    if (!(percent_under > 0.0) || !std::isfinite(percent_under)) {
        throw ConfigError("smote percent_under must be > 0");
    }
    if (k_neighbors < 1) {
        throw ConfigError("smote k_neighbors must be >= 1");
    }
}

std::size_t hamming_distance(const ItemMask& a, const ItemMask& b, const Vocabulary& vocabulary) {
    const ItemMask keep = vocabulary.label_mask();
    return static_cast<std::size_t>(std::popcount((a.word(0) ^ b.word(0)) & ~keep.word(0)) +
                                    std::popcount((a.word(1) ^ b.word(1)) & ~keep.word(1)));
}

std::vector<std::size_t> nearest_neighbors(std::span<const ItemVector> pool, std::size_t seed, std::size_t k,
                                           const Vocabulary& vocabulary) {
    std::vector<std::pair<std::size_t, std::size_t>> dist;
    dist.reserve(pool.size());
    for (std::size_t j = 0; j < pool.size(); ++j) {
        if (j != seed) {
            dist.emplace_back(hamming_distance(pool[seed].items, pool[j].items, vocabulary), j);
        }
    }
    const std::size_t take = std::min(k, dist.size());
    std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(take), dist.end());
    std::vector<std::size_t> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) {
        out.push_back(dist[i].second);
    }
    return out;
}

BalanceResult balance(std::span<const ItemVector> training, const BalanceConfig& cfg, const Vocabulary& vocabulary) {
    cfg.validate();
    std::vector<ItemVector> faulty;
    std::vector<ItemVector> clean;
    for (const auto& v : training) {
        (v.not_faulty(vocabulary) ? clean : faulty).push_back(v);
    }

    BalanceResult result;
    result.minority_is_faulty = faulty.size() <= clean.size();
    const auto& minority = result.minority_is_faulty ? faulty : clean;
    const auto& majority = result.minority_is_faulty ? clean : faulty;
    result.minority_original = minority.size();
    result.majority_original = majority.size();

    if (minority.size() < cfg.k_neighbors + 1) {
        throw InsufficientMinority("minority class has " + std::to_string(minority.size()) +
                                   " vectors; SMOTE with k = " + std::to_string(cfg.k_neighbors) + " needs at least " +
                                   std::to_string(cfg.k_neighbors + 1));
    }
    if (majority.empty()) {
        throw InsufficientMinority("majority class is empty");
    }
    if (faulty.size() == clean.size()) {
        result.vectors.assign(training.begin(), training.end());
        result.majority_kept = majority.size();
        result.unchanged = true;
        return result;
    }

    const std::size_t m = minority.size();
    const auto n_syn = static_cast<std::size_t>(std::floor(static_cast<double>(m) * cfg.percent_over / 100.0));
    const std::size_t per_seed = n_syn / m;
    const std::size_t remainder = n_syn - per_seed * m;

    // Seeds that contribute one extra synthetic vector.
    std::vector<std::size_t> extra(m, 0);
    if (remainder > 0) {
        std::vector<std::size_t> order(m);
        std::iota(order.begin(), order.end(), 0);
        Rng rng(derive_seed(cfg.rng_seed, kRemainderStream, 0));
        rng.shuffle(order);
        for (std::size_t i = 0; i < remainder; ++i) {
            extra[order[i]] = 1;
        }
    }

    result.vectors = minority;
    result.vectors.reserve(m + n_syn + majority.size());
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t count = per_seed + extra[i];
        if (count == 0) {
            continue;
        }
        const auto neighbors = nearest_neighbors(minority, i, cfg.k_neighbors, vocabulary);
        Rng rng(derive_seed(cfg.rng_seed, kSeedStream, i));
        for (std::size_t s = 0; s < count; ++s) {
            const auto& nb = minority[neighbors[rng.below(neighbors.size())]];
            result.vectors.push_back(synthesize(minority[i], nb, vocabulary, rng));
        }
    }
    result.synthetic = n_syn;

    const auto target = static_cast<std::size_t>(std::floor(static_cast<double>(n_syn) * cfg.percent_under / 100.0));
    if (target >= majority.size()) {
        result.imbalance_unachievable = target > majority.size();
        result.vectors.insert(result.vectors.end(), majority.begin(), majority.end());
        result.majority_kept = majority.size();
        return result;
    }
    std::vector<std::size_t> order(majority.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(cfg.rng_seed, kUndersampleStream, 0));
    rng.shuffle(order);
    order.resize(target);
    std::sort(order.begin(), order.end());
    for (const auto idx : order) {
        result.vectors.push_back(majority[idx]);
    }
    result.majority_kept = target;
    return result;
}

} // namespace idp
