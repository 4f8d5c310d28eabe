#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idp/dataset.hpp"
#include "idp/items.hpp"
#include "idp/rule_miner.hpp"

namespace idp {

enum class Variant : std::uint8_t { Strict, Lenient };

std::string_view variant_name(Variant variant);
Variant variant_from_name(std::string_view name);  // throws ConfigError

inline constexpr double kStrictBudget = 0.025;
inline constexpr double kLenientBudget = 0.05;

enum class Prediction : std::uint8_t { LowFaultRisk, NotClassified };

/// Rules in canonical order (confidence desc, support desc, size asc, names).
std::vector<AssociationRule> order_rules(std::vector<AssociationRule> rules,
                                         const Vocabulary& vocabulary = Vocabulary::standard());

struct PrefixSelection {
    std::size_t n = 0;
    std::size_t matched_faulty = 0;  // faulty training methods matched by the top-n rules
    std::size_t matched_total = 0;   // all training methods matched by the top-n rules
    std::size_t total_faulty = 0;
    /// The top rule alone already matches more faulty methods than the budget
    /// allows; the classifier then matches nothing.
    bool no_admissible_rules = false;
};

/// Largest n such that the methods matched by the top-n rules contain at most
/// budget * (faulty methods in `training`) faulty ones. `training` is the
/// unbalanced training data. Throws Error when it holds no faulty method.
PrefixSelection select_prefix(std::span<const AssociationRule> ordered, std::span<const Instance> training,
                              double budget, const Vocabulary& vocabulary = Vocabulary::standard());

/// Position of the first rule whose antecedent is contained in `items`
/// (label item ignored), or nullopt.
std::optional<std::size_t> first_match(std::span<const AssociationRule> ordered, const ItemMask& items,
                                       const Vocabulary& vocabulary = Vocabulary::standard());

class LfrClassifier {
public:
    LfrClassifier() = default;
    LfrClassifier(std::vector<AssociationRule> ordered_rules, std::size_t n, Variant variant, double budget,
                  const Vocabulary& vocabulary = Vocabulary::standard());

    const std::vector<AssociationRule>& ordered_rules() const { return rules_; }
    std::size_t n() const { return n_; }
    Variant variant() const { return variant_; }
    double budget() const { return budget_; }
    std::uint64_t vocabulary_id() const { return vocabulary_id_; }

    /// LowFaultRisk iff one of the top-n antecedents is contained in the
    /// vector. Throws VocabularyMismatch for vectors over another vocabulary.
    Prediction classify(const ItemVector& v) const;
    /// Index of the first matching rule within the top n.
    std::optional<std::size_t> matched_rule(const ItemVector& v) const;

    /// Rule-model JSON plus "n", "variant" and "budget".
    nlohmann::json to_json(const nlohmann::json& config = nlohmann::json::object()) const;
    static LfrClassifier from_json(const nlohmann::json& j);

private:
    std::vector<AssociationRule> rules_;
    std::size_t n_ = 0;
    Variant variant_ = Variant::Strict;
    double budget_ = kStrictBudget;
    const Vocabulary* vocabulary_ = &Vocabulary::standard();
    std::uint64_t vocabulary_id_ = Vocabulary::standard().fingerprint();
};

/// `{"rules": [...], "config": {...}, "vocabulary": [...]}`
nlohmann::json rule_model_to_json(std::span<const AssociationRule> rules, const nlohmann::json& config,
                                  const Vocabulary& vocabulary = Vocabulary::standard());
/// Parses the "rules" array after checking "vocabulary" against `vocabulary`
/// (VocabularyMismatch on any difference).
std::vector<AssociationRule> rule_model_from_json(const nlohmann::json& j,
                                                  const Vocabulary& vocabulary = Vocabulary::standard());

} // namespace idp
