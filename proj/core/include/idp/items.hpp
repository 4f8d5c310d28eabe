#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "idp/item_mask.hpp"
#include "idp/metrics.hpp"

namespace idp {

class DiscretizationModel;
struct MethodRecord;

/// A group of items that together encode one attribute: three tertile
/// classes (exactly one set) or a single binary item.
struct Attribute {
    std::size_t first = 0;
    std::size_t width = 1;
};

/// The global, fixed-order item vocabulary:
///   5 tertile metrics x {LowestThird, MiddleThird, HighestThird}
///   No<Construct> for the 26 constructs plus NoAllConditions, NoAllArithmetic
///   the 6 category flags
///   NotFaulty (the label item)
class Vocabulary {
public:
    static const Vocabulary& standard();

    /// A vocabulary over arbitrary names; the last name is the label item.
    explicit Vocabulary(std::vector<std::string> names, std::vector<Attribute> attributes);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t item) const { return names_.at(item); }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    const std::vector<Attribute>& attributes() const { return attributes_; }
    std::size_t label_item() const { return names_.size() - 1; }
    ItemMask label_mask() const;

    /// Stable hash of the item names in order.
    std::uint64_t fingerprint() const { return fingerprint_; }

    // Item positions in the standard vocabulary.
    static std::size_t tertile_item(TertileMetric metric, int tertile_class);
    static std::size_t no_construct_item(ConstructKind kind);
    static std::size_t no_all_conditions_item();
    static std::size_t no_all_arithmetic_item();
    static std::size_t category_item_index(std::size_t category);

private:
    std::vector<std::string> names_;
    std::vector<Attribute> attributes_;
    std::uint64_t fingerprint_ = 0;
};

inline constexpr std::size_t kStandardVocabularySize = 5 * 3 + (kConstructKindCount + 2) + kCategoryCount + 1;

/// A method as a transaction over the vocabulary. The label item (NotFaulty)
/// is part of `items`.
struct ItemVector {
    ItemMask items;
    std::uint64_t vocabulary_id = 0;

    bool not_faulty(const Vocabulary& vocabulary) const { return items.test(vocabulary.label_item()); }

    bool operator==(const ItemVector&) const = default;
};

ItemVector itemize(const MethodRecord& record, const DiscretizationModel& model);

/// Names of the set items, in vocabulary order.
std::vector<std::string> item_names(const ItemMask& mask, const Vocabulary& vocabulary);

} // namespace idp
