#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace idp::java {

enum class TokenKind : std::uint8_t {
    Identifier,
    Keyword,
    IntLiteral,
    FloatLiteral,
    CharLiteral,
    StringLiteral,
    BooleanLiteral,
    NullLiteral,
    Punct,
    End,
};

struct Token {
    TokenKind kind = TokenKind::End;
    std::string_view text;
    int line = 0;
    int column = 0;
    std::size_t offset = 0;

    bool is(std::string_view punct_or_keyword) const {
        return (kind == TokenKind::Punct || kind == TokenKind::Keyword) && text == punct_or_keyword;
    }
    bool is_identifier() const { return kind == TokenKind::Identifier; }
    std::size_t end_offset() const { return offset + text.size(); }
};

/// Tokenizes a Java compilation unit. Comments and whitespace are dropped.
/// `>>` and `>>>` are emitted as separate `>` tokens so generic type argument
/// lists close naturally; the parser rejoins adjacent `>` for shift operators.
/// The returned tokens view into `source`, which must outlive them. The last
/// token is always End. Throws ParseError on malformed input.
std::vector<Token> tokenize(std::string_view source, const std::string& file_path);

bool is_java_keyword(std::string_view word);

} // namespace idp::java
