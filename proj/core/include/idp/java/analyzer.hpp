#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "idp/java/parser.hpp"
#include "idp/metrics.hpp"

namespace idp::java {

/// One method or constructor declaration with a body.
struct MethodSpan {
    MethodIdentity identity;
    const Node* declaration = nullptr;  // Method or Constructor node, owned by the ParsedUnit
    std::size_t first_token = 0;        // first modifier/type token (annotations excluded)
    std::size_t last_token = 0;         // closing brace of the body
};

/// Every non-abstract method and constructor in source order, including those
/// declared in nested, local and anonymous types. Anonymous types are named
/// `<enclosing>$<n>`, local types `<enclosing>$<n><Name>`, with `n` counted per
/// enclosing type in source order.
std::vector<MethodSpan> enumerate_methods(const ParsedUnit& unit, std::string_view project);

/// Raw metrics of one method body. Bodies of nested anonymous or local
/// classes belong to their own methods and are not descended into.
RawMetrics compute_raw_metrics(const ParsedUnit& unit, const MethodSpan& method);

CategoryFlags classify_categories(const MethodSpan& method);

/// True if the body contains a lambda expression outside nested types.
bool contains_lambda(const MethodSpan& method);

struct AnalyzedMethod {
    MethodIdentity identity;
    RawMetrics metrics;
    CategoryFlags categories;

    bool operator==(const AnalyzedMethod&) const = default;
};

struct Diagnostic {
    std::string file_path;
    int line = 0;
    std::string message;
};

struct FileAnalysis {
    std::vector<AnalyzedMethod> methods;
    std::vector<Diagnostic> diagnostics;  // methods excluded from the result
};

/// Parses and analyzes one compilation unit. Throws ParseError.
FileAnalysis analyze_source(std::string source, const std::string& file_path, std::string_view project);

struct ProjectAnalysis {
    std::vector<AnalyzedMethod> methods;     // sorted by identity
    std::vector<Diagnostic> diagnostics;     // excluded methods
    std::vector<Diagnostic> skipped_files;   // files rejected by the parser
    std::size_t files_analyzed = 0;
};

struct SourceSelection {
    std::vector<std::string> include = {"**/*.java"};
    std::vector<std::string> exclude;
};

/// Relative paths (generic format, sorted) of files under `root` selected by
/// the include/exclude globs.
std::vector<std::string> select_sources(const std::filesystem::path& root, const SourceSelection& selection);

/// Analyzes every selected file under `root`. Files that fail to parse are
/// recorded in `skipped_files`; results are merged in identity order, so the
/// output does not depend on `jobs`.
ProjectAnalysis analyze_project(const std::filesystem::path& root, const SourceSelection& selection,
                                std::string_view project, unsigned jobs = 1);

} // namespace idp::java
