#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idp/dataset.hpp"
#include "idp/discretization.hpp"
#include "idp/lfr_classifier.hpp"
#include "idp/rule_miner.hpp"
#include "idp/smote.hpp"

namespace idp {

/// Everything that shapes a trained model. SMOTE's rng_seed is ignored here;
/// each training scope derives its own from `seed`.
struct PipelineConfig {
    MiningConfig mining;
    BalanceConfig smote;
    bool use_smote = true;
    double budget_strict = kStrictBudget;
    double budget_lenient = kLenientBudget;
    std::uint64_t seed = 0;

    void validate() const;
    double budget(Variant v) const { return v == Variant::Strict ? budget_strict : budget_lenient; }

    nlohmann::json to_json() const;
    /// Missing keys keep their defaults.
    static PipelineConfig from_json(const nlohmann::json& j);
};

struct TrainingSummary {
    std::size_t rows = 0;
    std::size_t instances = 0;
    std::size_t faulty = 0;
    std::size_t transactions = 0;   // after balancing
    std::size_t synthetic = 0;
    bool imbalance_unachievable = false;
    std::size_t rules = 0;
    std::size_t itemsets_examined = 0;
};

struct TrainedModel {
    DiscretizationModel discretization;
    std::vector<AssociationRule> rules;  // canonical order
    PrefixSelection strict;
    PrefixSelection lenient;
    TrainingSummary summary;
    std::vector<std::string> warnings;

    const PrefixSelection& selection(Variant v) const { return v == Variant::Strict ? strict : lenient; }
    LfrClassifier classifier(Variant v, const PipelineConfig& cfg) const;

    /// Rule model + discretization + per-variant n, budgets and training
    /// summary, with `config` echoed under "config".
    nlohmann::json to_json(const PipelineConfig& cfg, const nlohmann::json& config) const;
    static TrainedModel from_json(const nlohmann::json& j, PipelineConfig* cfg_out = nullptr);
};

/// Discretize (fit on these rows) -> itemize/consolidate/unify -> SMOTE ->
/// mine non-redundant rules -> order -> select n for both variants on the
/// unbalanced instances. `scope_seed` seeds SMOTE. Throws TooFewMinority when
/// the rows contain no faulty method.
TrainedModel train_model(std::span<const MethodRecord> rows, const PipelineConfig& cfg, std::uint64_t scope_seed);

struct MethodPrediction {
    MethodIdentity identity;
    bool faulty = false;
    std::int64_t sloc = 0;
    bool predicted_lfr = false;
    std::optional<std::size_t> matched_rule;
};

/// Prepares `rows` with the model's discretization and classifies every
/// resulting instance (identity order).
std::vector<MethodPrediction> predict(const TrainedModel& model, Variant variant, const PipelineConfig& cfg,
                                      std::span<const MethodRecord> rows, std::vector<std::string>* warnings = nullptr);

} // namespace idp
