#include "idp/java/lexer.hpp"

#include <algorithm>
#include <array>

#include "idp/error.hpp"

namespace idp::java {

namespace {

constexpr std::array<std::string_view, 50> kKeywords{
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",       "catch",    "char",
    "class",    "const",      "continue",  "default",   "do",        "double",     "else",     "enum",
    "extends",  "final",      "finally",   "float",     "for",       "goto",       "if",       "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",     "new",      "package",
    "private",  "protected",  "public",    "return",    "short",     "static",     "strictfp", "super",
    "switch",   "synchronized", "this",    "throw",     "throws",    "transient",  "try",      "void",
    "volatile", "while",
};

// Longest match first within each leading character.
constexpr std::array<std::string_view, 48> kPuncts{
    ">>>=", "<<=", ">>=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "+=", "-=",
    "*=",   "/=",  "&=",  "|=",  "^=", "%=", "<<", "(",  ")",  "{",  "}",  "[",  "]",  ";",  ",",  ".",
    "@",    "=",   ">",   "<",   "!",  "~",  "?",  ":",  "+",  "-",  "*",  "/",  "%",  "&",  "|",  "^",
};

bool ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' ||
           static_cast<unsigned char>(c) >= 0x80;
}

bool ident_part(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_hex(char c) { return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F'); }

class Lexer {
public:
    Lexer(std::string_view src, const std::string& path) : src_(src), path_(path) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_trivia();
            if (pos_ >= src_.size()) {
                out.push_back(Token{TokenKind::End, {}, line_, column(), pos_});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    int column() const { return static_cast<int>(pos_ - line_start_) + 1; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path_, line_, column(), msg); }

    void newline() {
        ++line_;
        line_start_ = pos_;
    }

    void skip_trivia() {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == '\n') {
                ++pos_;
                newline();
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f') {
                ++pos_;
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    ++pos_;
                }
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
                pos_ += 2;
                while (true) {
                    if (pos_ + 1 >= src_.size()) {
                        fail("unterminated block comment");
                    }
                    if (src_[pos_] == '*' && src_[pos_ + 1] == '/') {
                        pos_ += 2;
                        break;
                    }
                    if (src_[pos_] == '\n') {
                        ++pos_;
                        newline();
                    } else {
                        ++pos_;
                    }
                }
            } else if (static_cast<unsigned char>(c) == 0xEF && src_.substr(pos_, 3) == "\xEF\xBB\xBF") {
                pos_ += 3;  // UTF-8 byte order mark
            } else {
                return;
            }
        }
    }

    Token make(TokenKind kind, std::size_t start, int line, int col) const {
        return Token{kind, src_.substr(start, pos_ - start), line, col, start};
    }

    Token next() {
        const std::size_t start = pos_;
        const int line = line_;
        const int col = column();
        const char c = src_[pos_];

        if (ident_start(c)) {
            while (pos_ < src_.size() && ident_part(src_[pos_])) {
                ++pos_;
            }
            const auto word = src_.substr(start, pos_ - start);
            TokenKind kind = TokenKind::Identifier;
            if (word == "true" || word == "false") {
                kind = TokenKind::BooleanLiteral;
            } else if (word == "null") {
                kind = TokenKind::NullLiteral;
            } else if (is_java_keyword(word)) {
                kind = TokenKind::Keyword;
            }
            return make(kind, start, line, col);
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            return number(start, line, col);
        }
        if (c == '"') {
            quoted('"');
            return make(TokenKind::StringLiteral, start, line, col);
        }
        if (c == '\'') {
            quoted('\'');
            return make(TokenKind::CharLiteral, start, line, col);
        }
        for (const auto p : kPuncts) {
            if (src_.compare(pos_, p.size(), p) == 0) {
                pos_ += p.size();
                return make(TokenKind::Punct, start, line, col);
            }
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Token number(std::size_t start, int line, int col) {
        bool is_float = false;
        if (src_[pos_] == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'x' || src_[pos_ + 1] == 'X')) {
            pos_ += 2;
            while (pos_ < src_.size() && (is_hex(src_[pos_]) || src_[pos_] == '_')) {
                ++pos_;
            }
            // hexadecimal floating point
            if (pos_ < src_.size() && (src_[pos_] == '.' || src_[pos_] == 'p' || src_[pos_] == 'P')) {
                is_float = true;
                if (src_[pos_] == '.') {
                    ++pos_;
                    while (pos_ < src_.size() && (is_hex(src_[pos_]) || src_[pos_] == '_')) {
                        ++pos_;
                    }
                }
                exponent('p', 'P');
            }
        } else if (src_[pos_] == '0' && pos_ + 1 < src_.size() && (src_[pos_ + 1] == 'b' || src_[pos_ + 1] == 'B')) {
            pos_ += 2;
            while (pos_ < src_.size() && (src_[pos_] == '0' || src_[pos_] == '1' || src_[pos_] == '_')) {
                ++pos_;
            }
        } else {
            digits();
            if (pos_ < src_.size() && src_[pos_] == '.' && !(pos_ + 1 < src_.size() && src_[pos_ + 1] == '.')) {
                is_float = true;
                ++pos_;
                digits();
            }
            if (exponent('e', 'E')) {
                is_float = true;
            }
        }
        if (pos_ < src_.size()) {
            const char s = src_[pos_];
            if (s == 'l' || s == 'L') {
                ++pos_;
            } else if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
                ++pos_;
                is_float = true;
            }
        }
        if (pos_ < src_.size() && ident_part(src_[pos_])) {
            fail("malformed numeric literal");
        }
        return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, start, line, col);
    }

    void digits() {
        while (pos_ < src_.size() && (is_digit(src_[pos_]) || src_[pos_] == '_')) {
            ++pos_;
        }
    }

    bool exponent(char lower, char upper) {
        if (pos_ < src_.size() && (src_[pos_] == lower || src_[pos_] == upper)) {
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) {
                ++pos_;
            }
            if (pos_ >= src_.size() || !is_digit(src_[pos_])) {
                fail("malformed exponent");
            }
            digits();
            return true;
        }
        return false;
    }

    void quoted(char quote) {
        ++pos_;
        while (true) {
            if (pos_ >= src_.size() || src_[pos_] == '\n') {
                fail(quote == '"' ? "unterminated string literal" : "unterminated character literal");
            }
            const char c = src_[pos_];
            if (c == '\\') {
                pos_ += 2;
                continue;
            }
            ++pos_;
            if (c == quote) {
                return;
            }
        }
    }

    std::string_view src_;
    const std::string& path_;
    std::size_t pos_ = 0;
    std::size_t line_start_ = 0;
    int line_ = 1;
};

} // namespace

bool is_java_keyword(std::string_view word) {
    return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view source, const std::string& file_path) {
    return Lexer(source, file_path).run();
}

} // namespace idp::java
