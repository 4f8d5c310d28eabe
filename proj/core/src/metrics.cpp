#include "idp/metrics.hpp"

#include <utility>

namespace idp {

namespace {

struct ConstructNames {
    std::string_view column;
    std::string_view noun;
};

constexpr std::array<ConstructNames, kConstructKindCount> kConstructNames{{
    {"method_invocations", "MethodInvocations"},
    {"if_conditions", "IfConditions"},
    {"else_blocks", "ElseBlocks"},
    {"switch_case_blocks", "SwitchCaseBlocks"},
    {"ternary_operations", "TernaryOperations"},
    {"loops", "Loops"},
    {"try_blocks", "TryBlocks"},
    {"catch_clauses", "CatchClauses"},
    {"finally_blocks", "FinallyBlocks"},
    {"throw_statements", "ThrowStatements"},
    {"return_statements", "ReturnStatements"},
    {"cast_expressions", "CastExpressions"},
    {"instanceof_expressions", "InstanceofExpressions"},
    {"null_literals", "NullLiterals"},
    {"null_checks", "NullChecks"},
    {"arithmetic_infix_ops", "ArithmeticInfixOps"},
    {"incrementations", "Incrementations"},
    {"decrementations", "Decrementations"},
    {"logical_operators", "LogicalOperators"},
    {"comparison_operators", "ComparisonOperators"},
    {"assignments", "Assignments"},
    {"array_accesses", "ArrayAccesses"},
    {"array_creations", "ArrayCreations"},
    {"object_creations", "ObjectCreations"},
    {"string_literals", "StringLiterals"},
    {"anonymous_classes", "AnonymousClasses"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, kCategoryCount> kCategoryNames{{
    {"is_constructor", "IsConstructor"},
    {"is_getter", "IsGetter"},
    {"is_setter", "IsSetter"},
    {"is_empty", "IsEmpty"},
    {"is_delegation", "IsDelegation"},
    {"is_to_string", "IsToString"},
}};

} // namespace

std::string MethodIdentity::joined_signature() const {
    std::string out;
    for (std::size_t i = 0; i < param_signature.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += param_signature[i];
    }
    return out;
}

std::vector<std::string> split_signature(std::string_view joined) {
    std::vector<std::string> parts;
    if (joined.empty()) {
        return parts;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = joined.find(';', start);
        parts.emplace_back(joined.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

std::string_view construct_column(ConstructKind kind) { return kConstructNames[static_cast<std::size_t>(kind)].column; }

std::string_view construct_noun(ConstructKind kind) { return kConstructNames[static_cast<std::size_t>(kind)].noun; }

std::optional<ConstructKind> construct_from_column(std::string_view column) {
    for (std::size_t i = 0; i < kConstructKindCount; ++i) {
        if (kConstructNames[i].column == column) {
            return static_cast<ConstructKind>(i);
        }
    }
    return std::nullopt;
}

std::string_view tertile_metric_key(TertileMetric metric) {
    switch (metric) {
    case TertileMetric::Sloc: return "sloc";
    case TertileMetric::CyclomaticComplexity: return "cc";
    case TertileMetric::MaxNesting: return "max_nesting";
    case TertileMetric::MaxChaining: return "max_chaining";
    case TertileMetric::UniqueVariableIds: return "unique_vars";
    }
    return {};
}

std::string_view tertile_metric_noun(TertileMetric metric) {
    switch (metric) {
    case TertileMetric::Sloc: return "Sloc";
    case TertileMetric::CyclomaticComplexity: return "Cc";
    case TertileMetric::MaxNesting: return "MaxNesting";
    case TertileMetric::MaxChaining: return "MaxChaining";
    case TertileMetric::UniqueVariableIds: return "UniqueVars";
    }
    return {};
}

std::int64_t tertile_value(const RawMetrics& metrics, TertileMetric metric) {
    switch (metric) {
    case TertileMetric::Sloc: return metrics.sloc;
    case TertileMetric::CyclomaticComplexity: return metrics.cyclomatic_complexity;
    case TertileMetric::MaxNesting: return metrics.max_nesting;
    case TertileMetric::MaxChaining: return metrics.max_chaining;
    case TertileMetric::UniqueVariableIds: return metrics.unique_variable_ids;
    }
    return 0;
}

std::string_view category_column(std::size_t index) { return kCategoryNames.at(index).first; }

std::string_view category_item(std::size_t index) { return kCategoryNames.at(index).second; }

bool category_value(const CategoryFlags& flags, std::size_t index) {
    return category_value(const_cast<CategoryFlags&>(flags), index);
}

bool& category_value(CategoryFlags& flags, std::size_t index) {
    switch (index) {
    case 0: return flags.is_constructor;
    case 1: return flags.is_getter;
    case 2: return flags.is_setter;
    case 3: return flags.is_empty;
    case 4: return flags.is_delegation;
    default: return flags.is_to_string;
    }
}

} // namespace idp
