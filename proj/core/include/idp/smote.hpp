#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "idp/items.hpp"

namespace idp {

struct BalanceConfig {
    double percent_over = 100.0;
    double percent_under = 200.0;
    std::size_t k_neighbors = 5;
    std::uint64_t rng_seed = 0;

    /// Throws ConfigError unless percent_over > 0, percent_under > 0, k >= 1.
    void validate() const;
};

struct BalanceResult {
    /// Original minority vectors, then synthetic ones, then the kept majority
    /// vectors in input order.
    std::vector<ItemVector> vectors;
    std::size_t minority_original = 0;
    std::size_t synthetic = 0;
    std::size_t majority_original = 0;
    std::size_t majority_kept = 0;
    bool minority_is_faulty = true;
    /// Set when the majority pool was smaller than the undersampling target;
    /// every majority vector is then kept.
    bool imbalance_unachievable = false;
    /// Input already had equal class counts and was returned unchanged.
    bool unchanged = false;

    double minority_fraction() const {
        return vectors.empty() ? 0.0
                               : static_cast<double>(minority_original + synthetic) / static_cast<double>(vectors.size());
    }
};

/// SMOTE for binary item vectors. For each minority seed, synthetic vectors
/// take every attribute (a tertile triple or a single item) from either the
/// seed or one of its k nearest minority neighbours (Hamming distance over
/// non-label items, ties by position). The majority class is undersampled
/// uniformly without replacement to percent_under% of the synthetic count.
///
/// Throws InsufficientMinority when the minority class has fewer than k + 1
/// vectors or the majority class is empty.
BalanceResult balance(std::span<const ItemVector> training, const BalanceConfig& cfg,
                      const Vocabulary& vocabulary = Vocabulary::standard());

/// Hamming distance over all items except the label.
std::size_t hamming_distance(const ItemMask& a, const ItemMask& b, const Vocabulary& vocabulary);

/// Indices of the k nearest vectors to `pool[seed]` within `pool`, excluding
/// the seed itself, ordered by (distance, index).
std::vector<std::size_t> nearest_neighbors(std::span<const ItemVector> pool, std::size_t seed, std::size_t k,
                                           const Vocabulary& vocabulary);

} // namespace idp
