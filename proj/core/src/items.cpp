#include "idp/items.hpp"

#include <stdexcept>

#include "idp/dataset.hpp"
#include "idp/discretization.hpp"

namespace idp {

namespace {

constexpr std::size_t kTertileBlock = kTertileMetricCount * 3;
constexpr std::size_t kNoBlock = kConstructKindCount + 2;

std::uint64_t fnv1a(const std::vector<std::string>& names) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& name : names) {
        for (const char c : name) {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        h ^= 0xFF;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Vocabulary build_standard() {
    std::vector<std::string> names;
    std::vector<Attribute> attributes;
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        const auto noun = std::string(tertile_metric_noun(static_cast<TertileMetric>(m)));
        attributes.push_back({names.size(), 3});
        names.push_back(noun + "LowestThird");
        names.push_back(noun + "MiddleThird");
        names.push_back(noun + "HighestThird");
    }
    for (const auto kind : all_construct_kinds()) {
        attributes.push_back({names.size(), 1});
        names.push_back("No" + std::string(construct_noun(kind)));
    }
    attributes.push_back({names.size(), 1});
    names.emplace_back("NoAllConditions");
    attributes.push_back({names.size(), 1});
    names.emplace_back("NoAllArithmetic");
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        attributes.push_back({names.size(), 1});
        names.emplace_back(category_item(c));
    }
    attributes.push_back({names.size(), 1});
    names.emplace_back("NotFaulty");
    return Vocabulary(std::move(names), std::move(attributes));
}

} // namespace

Vocabulary::Vocabulary(std::vector<std::string> names, std::vector<Attribute> attributes)
    : names_(std::move(names)), attributes_(std::move(attributes)), fingerprint_(fnv1a(names_)) {
    if (names_.empty() || names_.size() > ItemMask::kCapacity) {
        throw std::invalid_argument("vocabulary size must be in [1, 128]");
    }
}

const Vocabulary& Vocabulary::standard() {
    static const Vocabulary vocabulary = build_standard();
    return vocabulary;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

ItemMask Vocabulary::label_mask() const {
    ItemMask mask;
    mask.set(label_item());
    return mask;
}

std::size_t Vocabulary::tertile_item(TertileMetric metric, int tertile_class) {
    return static_cast<std::size_t>(metric) * 3 + static_cast<std::size_t>(tertile_class - 1);
}

std::size_t Vocabulary::no_construct_item(ConstructKind kind) { return kTertileBlock + static_cast<std::size_t>(kind); }

std::size_t Vocabulary::no_all_conditions_item() { return kTertileBlock + kConstructKindCount; }

std::size_t Vocabulary::no_all_arithmetic_item() { return kTertileBlock + kConstructKindCount + 1; }

std::size_t Vocabulary::category_item_index(std::size_t category) { return kTertileBlock + kNoBlock + category; }

ItemVector itemize(const MethodRecord& record, const DiscretizationModel& model) {
    const auto& vocabulary = Vocabulary::standard();
    ItemVector v;
    v.vocabulary_id = vocabulary.fingerprint();
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        const auto metric = static_cast<TertileMetric>(m);
        v.items.set(Vocabulary::tertile_item(metric, model.classify(metric, tertile_value(record.metrics, metric))));
    }
    for (const auto kind : all_construct_kinds()) {
        v.items.set(Vocabulary::no_construct_item(kind), record.metrics.count(kind) == 0);
    }
    v.items.set(Vocabulary::no_all_conditions_item(), record.metrics.all_conditions() == 0);
    v.items.set(Vocabulary::no_all_arithmetic_item(), record.metrics.all_arithmetic() == 0);
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
        v.items.set(Vocabulary::category_item_index(c), category_value(record.categories, c));
    }
    v.items.set(vocabulary.label_item(), !record.faulty);
    return v;
}

std::vector<std::string> item_names(const ItemMask& mask, const Vocabulary& vocabulary) {
    std::vector<std::string> out;
    mask.for_each([&](std::size_t i) { out.push_back(vocabulary.name(i)); });
    return out;
}

} // namespace idp
