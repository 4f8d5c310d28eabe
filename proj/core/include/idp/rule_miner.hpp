#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idp/item_mask.hpp"
#include "idp/items.hpp"

namespace idp {

/// antecedent -> {consequent}. Counts are kept next to the fractions so that
/// ties compare exactly.
struct AssociationRule {
    ItemMask antecedent;
    std::size_t consequent = 0;
    double support = 0.0;
    double confidence = 0.0;
    std::size_t rule_count = 0;        // transactions containing antecedent and consequent
    std::size_t antecedent_count = 0;  // transactions containing the antecedent

    bool operator==(const AssociationRule&) const = default;
};

struct MiningConfig {
    double min_support = 0.10;
    double min_confidence = 0.95;
    std::size_t max_antecedent_len = 8;

    /// Throws ConfigError unless 0 < min_support <= 0.5, 0 < min_confidence <= 1
    /// and max_antecedent_len >= 1.
    void validate() const;
};

/// `count / total >= threshold`, with a small tolerance so that thresholds
/// written as decimals (0.1 of 30 transactions) admit the exact boundary.
/// Miner and test oracles share this comparison.
bool meets_threshold(std::size_t count, std::size_t total, double threshold);

/// Fraction of transactions containing `itemset`. Throws EmptyDatabase.
double support(const ItemMask& itemset, std::span<const ItemMask> transactions);

/// support(antecedent + consequent) / support(antecedent). Throws
/// EmptyDatabase or ZeroAntecedentSupport.
double confidence(const ItemMask& antecedent, std::size_t consequent, std::span<const ItemMask> transactions);

struct MiningResult {
    std::vector<AssociationRule> rules;  // canonical order
    std::vector<std::string> warnings;
    std::size_t itemsets_examined = 0;   // frequent itemsets kept across all levels
};

/// Level-wise Apriori over antecedents X (consequent excluded) with
/// support(X + consequent) >= min_support. Returns every rule with
/// confidence >= min_confidence and 1 <= |X| <= max_antecedent_len.
/// Throws EmptyDatabase.
MiningResult mine(std::span<const ItemMask> transactions, const MiningConfig& cfg, std::size_t consequent,
                  const Vocabulary& vocabulary = Vocabulary::standard());

/// Same result as prune_redundant(mine(...).rules), computed without
/// materializing redundant rules. Only itemsets that are generators (every
/// immediate nonempty subset occurs in strictly more transactions) can head
/// a non-redundant rule, and generators are closed under taking subsets, so
/// the search stays inside them.
MiningResult mine_non_redundant(std::span<const ItemMask> transactions, const MiningConfig& cfg,
                                std::size_t consequent, const Vocabulary& vocabulary = Vocabulary::standard());

/// Removes every rule r for which another rule in `rules` has a strictly
/// smaller antecedent and confidence >= confidence(r). Order is preserved.
std::vector<AssociationRule> prune_redundant(std::span<const AssociationRule> rules);

/// Confidence desc, support desc, antecedent size asc, then the sorted item
/// names compared lexicographically.
bool canonical_less(const AssociationRule& a, const AssociationRule& b, const Vocabulary& vocabulary);
void sort_canonical(std::vector<AssociationRule>& rules, const Vocabulary& vocabulary);

/// Sorted item names of the antecedent.
std::vector<std::string> antecedent_names(const AssociationRule& rule, const Vocabulary& vocabulary);

nlohmann::json rule_to_json(const AssociationRule& rule, const Vocabulary& vocabulary);
AssociationRule rule_from_json(const nlohmann::json& j, const Vocabulary& vocabulary);

nlohmann::json mining_config_to_json(const MiningConfig& cfg);
MiningConfig mining_config_from_json(const nlohmann::json& j);

} // namespace idp
