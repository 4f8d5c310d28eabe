#include "idp/pipeline.hpp"

#include "idp/error.hpp"

namespace idp {

void PipelineConfig::validate() const {
    mining.validate();
    smote.validate();
    for (const double b : {budget_strict, budget_lenient}) {
        if (!(b >= 0.0 && b <= 1.0)) {
            throw ConfigError("classifier budgets must be in [0, 1]");
        }
    }
    if (budget_strict > budget_lenient) {
        throw ConfigError("strict budget must not exceed the lenient budget");
    }
}

nlohmann::json PipelineConfig::to_json() const {
    return {{"min_support", mining.min_support},
            {"min_confidence", mining.min_confidence},
            {"max_antecedent_len", mining.max_antecedent_len},
            {"smote", use_smote},
            {"smote_over", smote.percent_over},
            {"smote_under", smote.percent_under},
            {"smote_k", smote.k_neighbors},
            {"budget_strict", budget_strict},
            {"budget_lenient", budget_lenient},
            {"seed", seed}};
}

PipelineConfig PipelineConfig::from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    try {
        cfg.mining = mining_config_from_json(j);
        cfg.use_smote = j.value("smote", cfg.use_smote);
        cfg.smote.percent_over = j.value("smote_over", cfg.smote.percent_over);
        cfg.smote.percent_under = j.value("smote_under", cfg.smote.percent_under);
        cfg.smote.k_neighbors = j.value("smote_k", cfg.smote.k_neighbors);
        cfg.budget_strict = j.value("budget_strict", cfg.budget_strict);
        cfg.budget_lenient = j.value("budget_lenient", cfg.budget_lenient);
        cfg.seed = j.value("seed", cfg.seed);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid pipeline configuration: ") + e.what());
    }
    return cfg;
}

LfrClassifier TrainedModel::classifier(Variant v, const PipelineConfig& cfg) const {
    return LfrClassifier(rules, selection(v).n, v, cfg.budget(v));
}

namespace {

nlohmann::json selection_json(Variant v, double budget, const PrefixSelection& s) {
    return {{"variant", variant_name(v)},
            {"budget", budget},
            {"n", s.n},
            {"no_admissible_rules", s.no_admissible_rules},
            {"training_matched_faulty", s.matched_faulty},
            {"training_matched_methods", s.matched_total},
            {"training_faulty", s.total_faulty}};
}

PrefixSelection selection_from_json(const nlohmann::json& j, std::size_t rule_count) {
    PrefixSelection s;
    s.n = j.at("n").get<std::size_t>();
    if (s.n > rule_count) {
        throw SchemaError("classifier n exceeds the number of rules");
    }
    s.no_admissible_rules = j.value("no_admissible_rules", false);
    s.matched_faulty = j.value("training_matched_faulty", std::size_t{0});
    s.matched_total = j.value("training_matched_methods", std::size_t{0});
    s.total_faulty = j.value("training_faulty", std::size_t{0});
    return s;
}

} // namespace

nlohmann::json TrainedModel::to_json(const PipelineConfig& cfg, const nlohmann::json& config) const {
    auto j = rule_model_to_json(rules, config);
    j["discretization"] = discretization.to_json();
    j["classifiers"] = {selection_json(Variant::Strict, cfg.budget_strict, strict),
                        selection_json(Variant::Lenient, cfg.budget_lenient, lenient)};
    j["pipeline"] = cfg.to_json();
    j["training"] = {{"rows", summary.rows},
                     {"instances", summary.instances},
                     {"faulty", summary.faulty},
                     {"transactions", summary.transactions},
                     {"synthetic", summary.synthetic},
                     {"imbalance_unachievable", summary.imbalance_unachievable},
                     {"rules", summary.rules},
                     {"itemsets_examined", summary.itemsets_examined}};
    j["warnings"] = warnings;
    return j;
}

TrainedModel TrainedModel::from_json(const nlohmann::json& j, PipelineConfig* cfg_out) {
    TrainedModel m;
    m.rules = rule_model_from_json(j);
    try {
        m.discretization = DiscretizationModel::from_json(j.at("discretization"));
        for (const auto& c : j.at("classifiers")) {
            const auto v = variant_from_name(c.at("variant").get<std::string>());
            (v == Variant::Strict ? m.strict : m.lenient) = selection_from_json(c, m.rules.size());
        }
        if (cfg_out != nullptr) {
            *cfg_out = PipelineConfig::from_json(j.value("pipeline", nlohmann::json::object()));
            for (const auto& c : j.at("classifiers")) {
                const auto v = variant_from_name(c.at("variant").get<std::string>());
                (v == Variant::Strict ? cfg_out->budget_strict : cfg_out->budget_lenient) =
                    c.at("budget").get<double>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed classifier file: ") + e.what());
    }
    m.summary.rules = m.rules.size();
    return m;
}

TrainedModel train_model(std::span<const MethodRecord> rows, const PipelineConfig& cfg, std::uint64_t scope_seed) {
    cfg.validate();
    const auto& vocabulary = Vocabulary::standard();
    TrainedModel model;
    model.summary.rows = rows.size();

    const auto population = unified_rows(rows);
    auto fit = fit_discretization(population);
    model.discretization = fit.model;
    model.warnings = std::move(fit.warnings);

    auto prepared = prepare_instances(rows, model.discretization);
    model.warnings.insert(model.warnings.end(), prepared.warnings.begin(), prepared.warnings.end());
    const auto& instances = prepared.instances;
    model.summary.instances = instances.size();
    for (const auto& inst : instances) {
        model.summary.faulty += inst.faulty ? 1 : 0;
    }
    if (model.summary.faulty == 0) {
        throw TooFewMinority("training data contains no faulty method");
    }

    std::vector<ItemMask> transactions;
    if (cfg.use_smote) {
        std::vector<ItemVector> vectors;
        vectors.reserve(instances.size());
        for (const auto& inst : instances) {
            vectors.push_back(inst.items);
        }
        BalanceConfig smote = cfg.smote;
        smote.rng_seed = scope_seed;
        const auto balanced = balance(vectors, smote, vocabulary);
        model.summary.synthetic = balanced.synthetic;
        model.summary.imbalance_unachievable = balanced.imbalance_unachievable;
        if (balanced.imbalance_unachievable) {
            model.warnings.push_back("ImbalanceUnachievable: majority pool too small; achieved minority fraction " +
                                     std::to_string(balanced.minority_fraction()));
        }
        for (const auto& v : balanced.vectors) {
            transactions.push_back(v.items);
        }
    } else {
        for (const auto& inst : instances) {
            transactions.push_back(inst.items.items);
        }
    }
    model.summary.transactions = transactions.size();

    auto mined = mine_non_redundant(transactions, cfg.mining, vocabulary.label_item(), vocabulary);
    model.warnings.insert(model.warnings.end(), mined.warnings.begin(), mined.warnings.end());
    model.rules = order_rules(std::move(mined.rules), vocabulary);
    model.summary.rules = model.rules.size();
    model.summary.itemsets_examined = mined.itemsets_examined;

    model.strict = select_prefix(model.rules, instances, cfg.budget_strict, vocabulary);
    model.lenient = select_prefix(model.rules, instances, cfg.budget_lenient, vocabulary);
    for (const auto v : {Variant::Strict, Variant::Lenient}) {
        if (model.selection(v).no_admissible_rules) {
            model.warnings.push_back("NoAdmissibleRules: the top rule alone exceeds the " +
                                     std::string(variant_name(v)) + " budget; the classifier matches nothing");
        }
    }
    return model;
}

std::vector<MethodPrediction> predict(const TrainedModel& model, Variant variant, const PipelineConfig& cfg,
                                      std::span<const MethodRecord> rows, std::vector<std::string>* warnings) {
    auto prepared = prepare_instances(rows, model.discretization);
    if (warnings != nullptr) {
        warnings->insert(warnings->end(), prepared.warnings.begin(), prepared.warnings.end());
    }
    const auto classifier = model.classifier(variant, cfg);
    std::vector<MethodPrediction> out;
    out.reserve(prepared.instances.size());
    for (const auto& inst : prepared.instances) {
        MethodPrediction p;
        p.identity = inst.identity;
        p.faulty = inst.faulty;
        p.sloc = inst.sloc;
        p.matched_rule = classifier.matched_rule(inst.items);
        p.predicted_lfr = p.matched_rule.has_value();
        out.push_back(std::move(p));
    }
    return out;
}

} // namespace idp
