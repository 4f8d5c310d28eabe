#pragma once

#include <memory>
#include <string>
#include <vector>

#include "idp/java/ast.hpp"
#include "idp/java/lexer.hpp"

namespace idp::java {

/// A parsed compilation unit. Owns the source text so token views stay valid.
struct ParsedUnit {
    std::string file_path;
    std::unique_ptr<const std::string> source;
    std::vector<Token> tokens;
    NodePtr root;
};

/// Parses a Java compilation unit (Java 7 plus lambdas and method references,
/// which are kept in the tree so callers can reject them). Throws ParseError.
ParsedUnit parse_compilation_unit(std::string source, std::string file_path);

/// Removes type arguments from a type name: "Map<K, List<V>>[]" -> "Map[]".
std::string erase_type_arguments(const std::string& type);

} // namespace idp::java
