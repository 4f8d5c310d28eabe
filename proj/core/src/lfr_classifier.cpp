#include "idp/lfr_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "idp/error.hpp"

namespace idp {

std::string_view variant_name(Variant variant) { return variant == Variant::Strict ? "strict" : "lenient"; }

Variant variant_from_name(std::string_view name) {
    if (name == "strict") {
        return Variant::Strict;
    }
    if (name == "lenient") {
        return Variant::Lenient;
    }
    throw ConfigError("unknown classifier variant '" + std::string(name) + "'");
}

std::vector<AssociationRule> order_rules(std::vector<AssociationRule> rules, const Vocabulary& vocabulary) {
    sort_canonical(rules, vocabulary);
    return rules;
}

std::optional<std::size_t> first_match(std::span<const AssociationRule> ordered, const ItemMask& items,
                                       const Vocabulary& vocabulary) {
    const ItemMask masked = items.without(vocabulary.label_item());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (masked.contains(ordered[i].antecedent)) {
            return i;
        }
    }
    return std::nullopt;
}

PrefixSelection select_prefix(std::span<const AssociationRule> ordered, std::span<const Instance> training,
                              double budget, const Vocabulary& vocabulary) {
    if (!(budget >= 0.0 && budget <= 1.0)) {
        throw ConfigError("classifier budget must be in [0, 1]");
    }
    PrefixSelection sel;
    std::vector<std::size_t> faulty_hits;  // first-match position of each matched faulty method
    std::vector<std::size_t> all_hits;
    for (const auto& inst : training) {
        sel.total_faulty += inst.faulty ? 1 : 0;
        const auto hit = first_match(ordered, inst.items.items, vocabulary);
        if (!hit) {
            continue;
        }
        all_hits.push_back(*hit);
        if (inst.faulty) {
            faulty_hits.push_back(*hit);
        }
    }
    if (sel.total_faulty == 0) {
        throw Error("lfr-classifier", "prefix selection needs at least one faulty training method");
    }
    const auto allowed =
        static_cast<std::size_t>(std::floor(budget * static_cast<double>(sel.total_faulty) + 1e-9));
    std::sort(faulty_hits.begin(), faulty_hits.end());
    // Adding rule faulty_hits[allowed] would match allowed + 1 faulty methods.
    sel.n = faulty_hits.size() > allowed ? faulty_hits[allowed] : ordered.size();
    sel.no_admissible_rules = sel.n == 0 && !ordered.empty();
    for (const auto h : faulty_hits) {
        sel.matched_faulty += h < sel.n ? 1 : 0;
    }
    for (const auto h : all_hits) {
        sel.matched_total += h < sel.n ? 1 : 0;
    }
    return sel;
}

LfrClassifier::LfrClassifier(std::vector<AssociationRule> ordered_rules, std::size_t n, Variant variant,
                             double budget, const Vocabulary& vocabulary)
    : rules_(std::move(ordered_rules)), n_(std::min(n, rules_.size())), variant_(variant), budget_(budget),
      vocabulary_(&vocabulary), vocabulary_id_(vocabulary.fingerprint()) {}

std::optional<std::size_t> LfrClassifier::matched_rule(const ItemVector& v) const {
    if (v.vocabulary_id != vocabulary_id_) {
        throw VocabularyMismatch("item vector vocabulary does not match the classifier's");
    }
    return first_match(std::span(rules_).first(n_), v.items, *vocabulary_);
}

Prediction LfrClassifier::classify(const ItemVector& v) const {
    return matched_rule(v) ? Prediction::LowFaultRisk : Prediction::NotClassified;
}

nlohmann::json LfrClassifier::to_json(const nlohmann::json& config) const {
    auto j = rule_model_to_json(rules_, config, *vocabulary_);
    j["n"] = n_;
    j["variant"] = variant_name(variant_);
    j["budget"] = budget_;
    return j;
}

LfrClassifier LfrClassifier::from_json(const nlohmann::json& j) {
    const auto& vocabulary = Vocabulary::standard();
    auto rules = rule_model_from_json(j, vocabulary);
    try {
        const auto n = j.at("n").get<std::size_t>();
        if (n > rules.size()) {
            throw SchemaError("classifier n exceeds the number of rules");
        }
        return LfrClassifier(std::move(rules), n, variant_from_name(j.at("variant").get<std::string>()),
                             j.at("budget").get<double>(), vocabulary);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed classifier: ") + e.what());
    }
}

nlohmann::json rule_model_to_json(std::span<const AssociationRule> rules, const nlohmann::json& config,
                                  const Vocabulary& vocabulary) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rules) {
        arr.push_back(rule_to_json(r, vocabulary));
    }
    return {{"rules", std::move(arr)}, {"config", config}, {"vocabulary", vocabulary.names()}};
}

std::vector<AssociationRule> rule_model_from_json(const nlohmann::json& j, const Vocabulary& vocabulary) {
    if (!j.contains("vocabulary") || !j.contains("rules")) {
        throw SchemaError("rule model needs 'rules' and 'vocabulary'");
    }
    if (j.at("vocabulary").get<std::vector<std::string>>() != vocabulary.names()) {
        throw VocabularyMismatch("rule model vocabulary differs from this build's item vocabulary");
    }
    std::vector<AssociationRule> rules;
    for (const auto& r : j.at("rules")) {
        rules.push_back(rule_from_json(r, vocabulary));
    }
    return rules;
}

} // namespace idp
