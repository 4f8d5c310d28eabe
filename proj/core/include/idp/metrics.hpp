#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idp {

/// Identifies one method within a project snapshot. The tuple
/// (file_path, type_name, method_name, param_signature) is unique per project.
struct MethodIdentity {
    std::string project;
    std::string file_path;
    std::string type_name;   // enclosing type chain, e.g. "Outer.Inner" or "Outer$1"
    std::string method_name;
    std::vector<std::string> param_signature;  // declared parameter types, generics erased
    bool is_constructor = false;

    std::string joined_signature() const;

    auto operator<=>(const MethodIdentity&) const = default;
    bool operator==(const MethodIdentity&) const = default;
};

/// Split a `;`-joined parameter signature. The empty string yields no params.
std::vector<std::string> split_signature(std::string_view joined);

/// Language constructs counted per method.
enum class ConstructKind : std::uint8_t {
    MethodInvocation,
    IfCondition,
    ElseBlock,
    SwitchCaseBlock,
    TernaryOperation,
    Loop,
    TryBlock,
    CatchClause,
    FinallyBlock,
    ThrowStatement,
    ReturnStatement,
    CastExpression,
    InstanceofExpression,
    NullLiteral,
    NullCheck,
    ArithmeticInfixOp,
    Incrementation,
    Decrementation,
    LogicalOperator,
    ComparisonOperator,
    Assignment,
    ArrayAccess,
    ArrayCreation,
    ObjectCreation,
    StringLiteral,
    AnonymousClass,
};

inline constexpr std::size_t kConstructKindCount = 26;

/// Stable column name for a construct, e.g. "method_invocations".
std::string_view construct_column(ConstructKind kind);
/// Plural CamelCase noun used for item names, e.g. "MethodInvocations".
std::string_view construct_noun(ConstructKind kind);
std::optional<ConstructKind> construct_from_column(std::string_view column);

constexpr std::array<ConstructKind, kConstructKindCount> all_construct_kinds() {
    std::array<ConstructKind, kConstructKindCount> kinds{};
    for (std::size_t i = 0; i < kConstructKindCount; ++i) {
        kinds[i] = static_cast<ConstructKind>(i);
    }
    return kinds;
}

using ConstructCounts = std::array<std::int64_t, kConstructKindCount>;

struct RawMetrics {
    std::int64_t sloc = 0;
    std::int64_t cyclomatic_complexity = 0;
    std::int64_t max_nesting = 0;
    std::int64_t max_chaining = 0;
    std::int64_t unique_variable_ids = 0;
    ConstructCounts construct_counts{};

    std::int64_t count(ConstructKind kind) const { return construct_counts[static_cast<std::size_t>(kind)]; }
    std::int64_t& count(ConstructKind kind) { return construct_counts[static_cast<std::size_t>(kind)]; }

    std::int64_t all_conditions() const {
        return count(ConstructKind::IfCondition) + count(ConstructKind::SwitchCaseBlock) +
               count(ConstructKind::TernaryOperation);
    }
    std::int64_t all_arithmetic() const {
        return count(ConstructKind::Incrementation) + count(ConstructKind::Decrementation) +
               count(ConstructKind::ArithmeticInfixOp);
    }

    bool operator==(const RawMetrics&) const = default;
};

/// The five metrics that are discretized into tertile classes.
enum class TertileMetric : std::uint8_t { Sloc, CyclomaticComplexity, MaxNesting, MaxChaining, UniqueVariableIds };
inline constexpr std::size_t kTertileMetricCount = 5;

std::string_view tertile_metric_key(TertileMetric metric);   // "sloc", "cc", ...
std::string_view tertile_metric_noun(TertileMetric metric);  // "Sloc", "Cc", ...
std::int64_t tertile_value(const RawMetrics& metrics, TertileMetric metric);

struct CategoryFlags {
    bool is_constructor = false;
    bool is_getter = false;
    bool is_setter = false;
    bool is_empty = false;
    bool is_delegation = false;
    bool is_to_string = false;

    bool operator==(const CategoryFlags&) const = default;
};

inline constexpr std::size_t kCategoryCount = 6;
std::string_view category_column(std::size_t index);  // "is_constructor", ...
std::string_view category_item(std::size_t index);    // "IsConstructor", ...
bool category_value(const CategoryFlags& flags, std::size_t index);
bool& category_value(CategoryFlags& flags, std::size_t index);

} // namespace idp
