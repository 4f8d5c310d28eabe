#include "idp/rule_miner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

#include "idp/error.hpp"

namespace idp {

namespace {

constexpr double kNoRule = -1.0;

using Tidset = std::vector<std::uint64_t>;

std::size_t count_bits(const Tidset& t) {
    std::size_t n = 0;
    for (const auto w : t) {
        n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
}

std::size_t count_and(const Tidset& a, const Tidset& b) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        n += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
    }
    return n;
}

struct Node {
    std::vector<std::uint8_t> items;  // ascending
    ItemMask mask;
    Tidset tids;
    std::size_t count_all = 0;
    std::size_t count_rule = 0;
    /// Largest confidence among rules whose antecedent is a nonempty subset
    /// of this itemset (itself included); kNoRule when there is none.
    double best_up = kNoRule;
};

AssociationRule make_rule(const Node& n, std::size_t consequent, std::size_t total) {
    AssociationRule r;
    r.antecedent = n.mask;
    r.consequent = consequent;
    r.rule_count = n.count_rule;
    r.antecedent_count = n.count_all;
    r.support = static_cast<double>(n.count_rule) / static_cast<double>(total);
    r.confidence = static_cast<double>(n.count_rule) / static_cast<double>(n.count_all);
    return r;
}

MiningResult run_apriori(std::span<const ItemMask> transactions, const MiningConfig& cfg, std::size_t consequent,
                         const Vocabulary& vocabulary, bool non_redundant) {
    cfg.validate();
    if (transactions.empty()) {
        throw EmptyDatabase();
    }
    if (consequent >= ItemMask::kCapacity) {
        throw Error("rule-miner", "consequent item out of range");
    }
    const std::size_t total = transactions.size();
    const std::size_t words = (total + 63) / 64;

    std::vector<Tidset> item_tids(ItemMask::kCapacity, Tidset(words, 0));
    for (std::size_t t = 0; t < total; ++t) {
        transactions[t].for_each([&](std::size_t i) { item_tids[i][t >> 6] |= std::uint64_t{1} << (t & 63); });
    }
    const Tidset& target = item_tids[consequent];

    MiningResult result;
    std::vector<Node> level;
    for (std::size_t i = 0; i < ItemMask::kCapacity; ++i) {
        if (i == consequent) {
            continue;
        }
        const std::size_t cr = count_and(item_tids[i], target);
        if (cr == 0 || !meets_threshold(cr, total, cfg.min_support)) {
            continue;
        }
        Node n;
        n.items = {static_cast<std::uint8_t>(i)};
        n.mask.set(i);
        n.tids = item_tids[i];
        n.count_all = count_bits(n.tids);
        n.count_rule = cr;
        level.push_back(std::move(n));
    }

    for (std::size_t k = 1; !level.empty(); ++k) {
        result.itemsets_examined += level.size();
        for (auto& n : level) {
            const bool is_rule = meets_threshold(n.count_rule, n.count_all, cfg.min_confidence);
            const double conf = static_cast<double>(n.count_rule) / static_cast<double>(n.count_all);
            if (is_rule && (!non_redundant || conf > n.best_up)) {
                result.rules.push_back(make_rule(n, consequent, total));
            }
            if (is_rule) {
                n.best_up = std::max(n.best_up, conf);
            }
        }
        if (k == cfg.max_antecedent_len) {
            result.warnings.push_back(std::to_string(level.size()) + " frequent itemset(s) reached the antecedent " +
                                      "length cap of " + std::to_string(k) + "; longer rules were not explored");
            break;
        }

        std::unordered_map<ItemMask, std::size_t, ItemMaskHash> index;
        index.reserve(level.size() * 2);
        for (std::size_t i = 0; i < level.size(); ++i) {
            index.emplace(level[i].mask, i);
        }

        std::vector<Node> next;
        std::size_t group_start = 0;
        while (group_start < level.size()) {
            std::size_t group_end = group_start + 1;
            while (group_end < level.size() &&
                   std::equal(level[group_start].items.begin(), level[group_start].items.end() - 1,
                              level[group_end].items.begin())) {
                ++group_end;
            }
            for (std::size_t a = group_start; a < group_end; ++a) {
                for (std::size_t b = a + 1; b < group_end; ++b) {
                    const Node& na = level[a];
                    const Node& nb = level[b];
                    const ItemMask mask = na.mask | nb.mask;

                    // every k-subset must survive the previous level
                    double best_sub = std::max(na.best_up, nb.best_up);
                    std::size_t min_sub_all = std::min(na.count_all, nb.count_all);
                    bool ok = true;
                    for (std::size_t drop = 0; drop + 1 < k && ok; ++drop) {
                        const auto it = index.find(mask.without(na.items[drop]));
                        if (it == index.end()) {
                            ok = false;
                            break;
                        }
                        best_sub = std::max(best_sub, level[it->second].best_up);
                        min_sub_all = std::min(min_sub_all, level[it->second].count_all);
                    }
                    if (!ok) {
                        continue;
                    }

                    Tidset tids(words);
                    for (std::size_t w = 0; w < words; ++w) {
                        tids[w] = na.tids[w] & nb.tids[w];
                    }
                    const std::size_t cr = count_and(tids, target);
                    if (cr == 0 || !meets_threshold(cr, total, cfg.min_support)) {
                        continue;
                    }
                    const std::size_t ca = count_bits(tids);
                    if (non_redundant && ca == min_sub_all) {
                        continue;  // not a generator
                    }
                    Node n;
                    n.items = na.items;
                    n.items.push_back(nb.items.back());
                    n.mask = mask;
                    n.tids = std::move(tids);
                    n.count_all = ca;
                    n.count_rule = cr;
                    n.best_up = best_sub;
                    next.push_back(std::move(n));
                }
            }
            group_start = group_end;
        }
        level = std::move(next);
    }
    sort_canonical(result.rules, vocabulary);
    return result;
}

} // namespace

void MiningConfig::validate() const {
    if (!(min_support > 0.0 && min_support <= 0.5)) {
        throw ConfigError("min_support must be in (0, 0.5], got " + std::to_string(min_support));
    }
    if (!(min_confidence > 0.0 && min_confidence <= 1.0)) {
        throw ConfigError("min_confidence must be in (0, 1], got " + std::to_string(min_confidence));
    }
    if (max_antecedent_len < 1) {
        throw ConfigError("max_antecedent_len must be >= 1");
    }
}

bool meets_threshold(std::size_t count, std::size_t total, double threshold) {
    return static_cast<double>(count) >= threshold * static_cast<double>(total) - 1e-9;
}

double support(const ItemMask& itemset, std::span<const ItemMask> transactions) {
    if (transactions.empty()) {
        throw EmptyDatabase();
    }
    const auto hits = std::count_if(transactions.begin(), transactions.end(),
                                    [&](const ItemMask& t) { return t.contains(itemset); });
    return static_cast<double>(hits) / static_cast<double>(transactions.size());
}

double confidence(const ItemMask& antecedent, std::size_t consequent, std::span<const ItemMask> transactions) {
    if (transactions.empty()) {
        throw EmptyDatabase();
    }
    ItemMask both = antecedent;
    both.set(consequent);
    std::size_t ant = 0;
    std::size_t rule = 0;
    for (const auto& t : transactions) {
        if (t.contains(antecedent)) {
            ++ant;
            rule += t.test(consequent) ? 1 : 0;
        }
    }
    if (ant == 0) {
        throw ZeroAntecedentSupport();
    }
    return static_cast<double>(rule) / static_cast<double>(ant);
}

MiningResult mine(std::span<const ItemMask> transactions, const MiningConfig& cfg, std::size_t consequent,
                  const Vocabulary& vocabulary) {
    return run_apriori(transactions, cfg, consequent, vocabulary, false);
}

MiningResult mine_non_redundant(std::span<const ItemMask> transactions, const MiningConfig& cfg,
                                std::size_t consequent, const Vocabulary& vocabulary) {
    return run_apriori(transactions, cfg, consequent, vocabulary, true);
}

std::vector<AssociationRule> prune_redundant(std::span<const AssociationRule> rules) {
    std::unordered_map<ItemMask, double, ItemMaskHash> conf_of;
    for (const auto& r : rules) {
        auto [it, inserted] = conf_of.emplace(r.antecedent, r.confidence);
        if (!inserted) {
            it->second = std::max(it->second, r.confidence);
        }
    }
    // best_below(X): highest confidence over rules with antecedent a nonempty
    // proper subset of X.
    std::unordered_map<ItemMask, double, ItemMaskHash> memo;
    std::function<double(const ItemMask&)> best_below = [&](const ItemMask& x) -> double {
        if (const auto it = memo.find(x); it != memo.end()) {
            return it->second;
        }
        double best = kNoRule;
        if (x.count() > 1) {
            x.for_each([&](std::size_t i) {
                const ItemMask z = x.without(i);
                if (const auto c = conf_of.find(z); c != conf_of.end()) {
                    best = std::max(best, c->second);
                }
                best = std::max(best, best_below(z));
            });
        }
        memo.emplace(x, best);
        return best;
    };

    constexpr std::size_t kMemoLimit = 20;
    std::vector<AssociationRule> out;
    for (const auto& r : rules) {
        bool redundant = false;
        if (r.antecedent.count() <= kMemoLimit) {
            redundant = best_below(r.antecedent) >= r.confidence;
        } else {
            for (const auto& o : rules) {
                if (o.antecedent != r.antecedent && r.antecedent.contains(o.antecedent) && !o.antecedent.empty() &&
                    o.confidence >= r.confidence) {
                    redundant = true;
                    break;
                }
            }
        }
        if (!redundant) {
            out.push_back(r);
        }
    }
    return out;
}

std::vector<std::string> antecedent_names(const AssociationRule& rule, const Vocabulary& vocabulary) {
    auto names = item_names(rule.antecedent, vocabulary);
    std::sort(names.begin(), names.end());
    return names;
}

bool canonical_less(const AssociationRule& a, const AssociationRule& b, const Vocabulary& vocabulary) {
    if (a.confidence != b.confidence) {
        return a.confidence > b.confidence;
    }
    if (a.support != b.support) {
        return a.support > b.support;
    }
    const auto sa = a.antecedent.count();
    const auto sb = b.antecedent.count();
    if (sa != sb) {
        return sa < sb;
    }
    return antecedent_names(a, vocabulary) < antecedent_names(b, vocabulary);
}

void sort_canonical(std::vector<AssociationRule>& rules, const Vocabulary& vocabulary) {
    struct Keyed {
        AssociationRule rule;
        std::vector<std::string> names;
    };
    std::vector<Keyed> keyed;
    keyed.reserve(rules.size());
    for (auto& r : rules) {
        auto names = antecedent_names(r, vocabulary);
        keyed.push_back({std::move(r), std::move(names)});
    }
    std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
        if (a.rule.confidence != b.rule.confidence) {
            return a.rule.confidence > b.rule.confidence;
        }
        if (a.rule.support != b.rule.support) {
            return a.rule.support > b.rule.support;
        }
        if (a.names.size() != b.names.size()) {
            return a.names.size() < b.names.size();
        }
        return a.names < b.names;
    });
    for (std::size_t i = 0; i < rules.size(); ++i) {
        rules[i] = std::move(keyed[i].rule);
    }
}

nlohmann::json rule_to_json(const AssociationRule& rule, const Vocabulary& vocabulary) {
    return {{"antecedent", antecedent_names(rule, vocabulary)},
            {"consequent", vocabulary.name(rule.consequent)},
            {"support", rule.support},
            {"confidence", rule.confidence},
            {"rule_count", rule.rule_count},
            {"antecedent_count", rule.antecedent_count}};
}

AssociationRule rule_from_json(const nlohmann::json& j, const Vocabulary& vocabulary) {
    AssociationRule r;
    try {
        for (const auto& name : j.at("antecedent")) {
            const auto idx = vocabulary.index_of(name.get<std::string>());
            if (!idx) {
                throw VocabularyMismatch("rule item '" + name.get<std::string>() + "' is not in the vocabulary");
            }
            r.antecedent.set(*idx);
        }
        const auto cons = vocabulary.index_of(j.at("consequent").get<std::string>());
        if (!cons) {
            throw VocabularyMismatch("rule consequent '" + j.at("consequent").get<std::string>() +
                                     "' is not in the vocabulary");
        }
        r.consequent = *cons;
        r.support = j.at("support").get<double>();
        r.confidence = j.at("confidence").get<double>();
        r.rule_count = j.value("rule_count", std::size_t{0});
        r.antecedent_count = j.value("antecedent_count", std::size_t{0});
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed rule: ") + e.what());
    }
    return r;
}

nlohmann::json mining_config_to_json(const MiningConfig& cfg) {
    return {{"min_support", cfg.min_support},
            {"min_confidence", cfg.min_confidence},
            {"max_antecedent_len", cfg.max_antecedent_len}};
}

MiningConfig mining_config_from_json(const nlohmann::json& j) {
    MiningConfig cfg;
    cfg.min_support = j.value("min_support", cfg.min_support);
    cfg.min_confidence = j.value("min_confidence", cfg.min_confidence);
    cfg.max_antecedent_len = j.value("max_antecedent_len", cfg.max_antecedent_len);
    return cfg;
}

} // namespace idp
