#include "idp/java/parser.hpp"

#include <algorithm>
#include <array>
#include <string_view>

#include "idp/error.hpp"

namespace idp::java {

namespace {

constexpr std::array<std::string_view, 8> kPrimitiveTypes{"boolean", "byte", "char", "short",
                                                          "int",     "long", "float", "double"};

constexpr std::array<std::string_view, 12> kModifiers{
    "public", "protected", "private", "static",   "abstract", "final",
    "native", "synchronized", "transient", "volatile", "strictfp", "default",
};

constexpr std::array<std::string_view, 12> kAssignOps{"=",  "+=", "-=", "*=",  "/=",  "%=",
                                                      "&=", "|=", "^=", "<<=", ">>=", ">>>="};

bool is_primitive(const Token& t) {
    return t.kind == TokenKind::Keyword &&
           std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), t.text) != kPrimitiveTypes.end();
}

bool is_modifier(const Token& t) {
    return t.kind == TokenKind::Keyword && std::find(kModifiers.begin(), kModifiers.end(), t.text) != kModifiers.end();
}

bool is_literal(const Token& t) {
    switch (t.kind) {
    case TokenKind::IntLiteral:
    case TokenKind::FloatLiteral:
    case TokenKind::CharLiteral:
    case TokenKind::StringLiteral:
    case TokenKind::BooleanLiteral:
    case TokenKind::NullLiteral: return true;
    default: return false;
    }
}

LiteralKind literal_kind(const Token& t) {
    switch (t.kind) {
    case TokenKind::IntLiteral: return LiteralKind::Int;
    case TokenKind::FloatLiteral: return LiteralKind::Float;
    case TokenKind::CharLiteral: return LiteralKind::Char;
    case TokenKind::StringLiteral: return LiteralKind::String;
    case TokenKind::BooleanLiteral: return LiteralKind::Boolean;
    default: return LiteralKind::Null;
    }
}

// Binary operator precedence; higher binds tighter. 0 means "not a binary operator".
int binary_level(std::string_view op) {
    if (op == "||") return 1;
    if (op == "&&") return 2;
    if (op == "|") return 3;
    if (op == "^") return 4;
    if (op == "&") return 5;
    if (op == "==" || op == "!=") return 6;
    if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof") return 7;
    if (op == "<<" || op == ">>" || op == ">>>") return 8;
    if (op == "+" || op == "-") return 9;
    if (op == "*" || op == "/" || op == "%") return 10;
    return 0;
}

class Parser {
public:
    Parser(const std::vector<Token>& tokens, const std::string& path) : t_(tokens), path_(path) {}

    NodePtr compilation_unit() {
        auto unit = start(NodeKind::CompilationUnit);
        // package declaration, possibly annotated
        {
            const std::size_t save = p_;
            while (at("@") && !peek(1).is("interface")) {
                annotation();
            }
            if (accept("package")) {
                qualified_name();
                expect(";");
            } else {
                p_ = save;
            }
        }
        while (at("import")) {
            ++p_;
            accept("static");
            identifier();
            while (accept(".")) {
                if (!accept("*")) {
                    identifier();
                }
            }
            expect(";");
        }
        while (peek().kind != TokenKind::End) {
            if (accept(";")) {
                continue;
            }
            const std::size_t decl_start = modifiers();
            unit->kids.push_back(type_declaration(decl_start));
        }
        return finish(std::move(unit));
    }

private:
    // ---- token helpers ---------------------------------------------------

    const Token& peek(std::size_t k = 0) const { return t_[std::min(p_ + k, t_.size() - 1)]; }
    const Token& tok(std::size_t i) const { return t_[std::min(i, t_.size() - 1)]; }
    bool at(std::string_view s) const { return peek().is(s); }

    bool accept(std::string_view s) {
        if (at(s)) {
            ++p_;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& message) const {
        const Token& t = peek();
        const std::string found = t.kind == TokenKind::End ? "end of file" : "'" + std::string(t.text) + "'";
        throw ParseError(path_, t.line, t.column, message + ", found " + found);
    }

    const Token& expect(std::string_view s) {
        if (!at(s)) {
            fail("expected '" + std::string(s) + "'");
        }
        return t_[p_++];
    }

    std::string identifier() {
        if (!peek().is_identifier()) {
            fail("expected identifier");
        }
        return std::string(t_[p_++].text);
    }

    NodePtr start(NodeKind kind) const {
        auto n = std::make_unique<Node>(kind);
        const Token& t = peek();
        n->line = t.line;
        n->column = t.column;
        n->first_token = p_;
        return n;
    }

    NodePtr finish(NodePtr n) const {
        n->last_token = p_ == 0 ? 0 : p_ - 1;
        return n;
    }

    bool adjacent(std::size_t i) const { return tok(i).end_offset() == tok(i + 1).offset; }

    // ---- lookahead scanners (never throw, never consume) -----------------

    bool scan_type_arguments(std::size_t& i) const {
        if (!tok(i).is("<")) {
            return false;
        }
        int depth = 0;
        do {
            const Token& t = tok(i);
            if (t.is("<")) {
                ++depth;
            } else if (t.is(">")) {
                --depth;
            } else if (!(t.is_identifier() || is_primitive(t) || t.is("?") || t.is("extends") || t.is("super") ||
                         t.is(",") || t.is(".") || t.is("[") || t.is("]") || t.is("&"))) {
                return false;
            }
            ++i;
        } while (depth > 0);
        return true;
    }

    bool scan_type(std::size_t& i) const {
        if (is_primitive(tok(i))) {
            ++i;
        } else if (tok(i).is_identifier()) {
            ++i;
            if (tok(i).is("<") && !scan_type_arguments(i)) {
                return false;
            }
            while (tok(i).is(".") && tok(i + 1).is_identifier()) {
                i += 2;
                if (tok(i).is("<") && !scan_type_arguments(i)) {
                    return false;
                }
            }
        } else {
            return false;
        }
        while (tok(i).is("[") && tok(i + 1).is("]")) {
            i += 2;
        }
        return true;
    }

    std::size_t skip_annotations_and_modifiers(std::size_t i) const {
        while (true) {
            if (tok(i).is("@") && !tok(i + 1).is("interface")) {
                ++i;
                while (tok(i).is_identifier() || tok(i).is(".")) {
                    ++i;
                }
                if (tok(i).is("(")) {
                    i = matching(i, "(", ")") + 1;
                }
            } else if (tok(i).is("final")) {
                ++i;
            } else {
                return i;
            }
        }
    }

    std::size_t matching(std::size_t i, std::string_view open, std::string_view close) const {
        int depth = 0;
        while (tok(i).kind != TokenKind::End) {
            if (tok(i).is(open)) {
                ++depth;
            } else if (tok(i).is(close)) {
                if (--depth == 0) {
                    return i;
                }
            }
            ++i;
        }
        return i;
    }

    /// `Type Identifier` followed by a declarator continuation.
    bool local_var_decl_ahead(bool allow_colon) const {
        std::size_t i = skip_annotations_and_modifiers(p_);
        if (!scan_type(i) || !tok(i).is_identifier()) {
            return false;
        }
        const Token& next = tok(i + 1);
        return next.is("=") || next.is(";") || next.is(",") || next.is("[") || (allow_colon && next.is(":"));
    }

    bool lambda_ahead() const {
        if (peek().is_identifier() && peek(1).is("->")) {
            return true;
        }
        if (at("(")) {
            const std::size_t close = matching(p_, "(", ")");
            return tok(close + 1).is("->");
        }
        return false;
    }

    bool cast_ahead() const {
        std::size_t i = p_ + 1;
        if (is_primitive(tok(i))) {
            return scan_type(i) && tok(i).is(")");
        }
        if (!scan_type(i)) {
            return false;
        }
        while (tok(i).is("&")) {
            ++i;
            if (!scan_type(i)) {
                return false;
            }
        }
        if (!tok(i).is(")")) {
            return false;
        }
        const Token& n = tok(i + 1);
        return n.is_identifier() || is_literal(n) || n.is("(") || n.is("!") || n.is("~") || n.is("this") ||
               n.is("super") || n.is("new") || is_primitive(n);
    }

    // ---- names, types, annotations ---------------------------------------

    std::string qualified_name() {
        std::string name = identifier();
        while (at(".") && peek(1).is_identifier()) {
            ++p_;
            name += '.';
            name += identifier();
        }
        return name;
    }

    void annotation() {
        expect("@");
        qualified_name();
        if (at("(")) {
            p_ = matching(p_, "(", ")") + 1;
        }
    }

    /// Consumes modifiers and annotations; returns the index of the first
    /// modifier keyword (or of the next token when there is none), so
    /// declaration spans exclude leading annotations.
    std::size_t modifiers() {
        std::size_t first = 0;
        bool seen = false;
        while (true) {
            if (at("@") && !peek(1).is("interface")) {
                annotation();
            } else if (is_modifier(peek()) && !(at("default") && (peek(1).is(":") || peek(1).is("->")))) {
                if (!seen) {
                    first = p_;
                    seen = true;
                }
                ++p_;
            } else {
                break;
            }
        }
        return seen ? first : p_;
    }

    std::string type_arguments() {
        std::string out = "<";
        expect("<");
        if (at(">")) {
            ++p_;
            return "<>";
        }
        while (true) {
            while (at("@")) {
                annotation();
            }
            if (accept("?")) {
                out += '?';
                if (accept("extends")) {
                    out += " extends " + type();
                } else if (accept("super")) {
                    out += " super " + type();
                }
            } else {
                out += type();
            }
            if (accept(",")) {
                out += ',';
                continue;
            }
            expect(">");
            out += '>';
            return out;
        }
    }

    std::string type() {
        while (at("@")) {
            annotation();
        }
        std::string out;
        if (is_primitive(peek()) || at("void")) {
            out = std::string(t_[p_++].text);
        } else {
            out = identifier();
            if (at("<")) {
                out += type_arguments();
            }
            while (at(".") && peek(1).is_identifier()) {
                ++p_;
                out += '.';
                out += identifier();
                if (at("<")) {
                    out += type_arguments();
                }
            }
        }
        while (at("[") && peek(1).is("]")) {
            p_ += 2;
            out += "[]";
        }
        return out;
    }

    void skip_type_parameters() {
        if (!at("<")) {
            return;
        }
        int depth = 0;
        do {
            if (peek().kind == TokenKind::End) {
                fail("unterminated type parameter list");
            }
            if (at("<")) {
                ++depth;
            } else if (at(">")) {
                --depth;
            }
            ++p_;
        } while (depth > 0);
    }

    // ---- declarations ----------------------------------------------------

    NodePtr type_declaration(std::size_t decl_start) {
        auto decl = start(NodeKind::TypeDecl);
        decl->first_token = decl_start;
        if (accept("class")) {
            decl->subkind = static_cast<std::uint8_t>(TypeDeclKind::Class);
            decl->text = identifier();
            skip_type_parameters();
            if (accept("extends")) {
                type();
            }
            if (accept("implements")) {
                type_list();
            }
            class_body(*decl);
        } else if (accept("interface")) {
            decl->subkind = static_cast<std::uint8_t>(TypeDeclKind::Interface);
            decl->text = identifier();
            skip_type_parameters();
            if (accept("extends")) {
                type_list();
            }
            class_body(*decl);
        } else if (accept("enum")) {
            decl->subkind = static_cast<std::uint8_t>(TypeDeclKind::Enum);
            decl->text = identifier();
            if (accept("implements")) {
                type_list();
            }
            enum_body(*decl);
        } else if (at("@") && peek(1).is("interface")) {
            p_ += 2;
            decl->subkind = static_cast<std::uint8_t>(TypeDeclKind::Annotation);
            decl->text = identifier();
            class_body(*decl);
        } else {
            fail("expected type declaration");
        }
        return finish(std::move(decl));
    }

    void type_list() {
        type();
        while (accept(",")) {
            type();
        }
    }

    void class_body(Node& decl) {
        expect("{");
        while (!accept("}")) {
            if (peek().kind == TokenKind::End) {
                fail("expected '}'");
            }
            if (auto member = member_declaration(decl.text)) {
                decl.kids.push_back(std::move(member));
            }
        }
    }

    void enum_body(Node& decl) {
        expect("{");
        while (!at(";") && !at("}")) {
            auto constant = start(NodeKind::EnumConstant);
            while (at("@")) {
                annotation();
            }
            constant->text = identifier();
            if (at("(")) {
                arguments(*constant);
            }
            if (at("{")) {
                auto body = start(NodeKind::TypeDecl);
                body->subkind = static_cast<std::uint8_t>(TypeDeclKind::Anonymous);
                class_body(*body);
                constant->extra = finish(std::move(body));
            }
            decl.kids.push_back(finish(std::move(constant)));
            if (!accept(",")) {
                break;
            }
        }
        if (accept(";")) {
            while (!at("}")) {
                if (peek().kind == TokenKind::End) {
                    fail("expected '}'");
                }
                if (auto member = member_declaration(decl.text)) {
                    decl.kids.push_back(std::move(member));
                }
            }
        }
        expect("}");
    }

    NodePtr member_declaration(const std::string& /*enclosing*/) {
        if (accept(";")) {
            return nullptr;
        }
        if (at("{") || (at("static") && peek(1).is("{"))) {
            auto init = start(NodeKind::Initializer);
            accept("static");
            init->extra = block();
            return finish(std::move(init));
        }
        const std::size_t decl_start = modifiers();
        if (at("class") || at("interface") || at("enum") || (at("@") && peek(1).is("interface"))) {
            return type_declaration(decl_start);
        }
        skip_type_parameters();
        if (peek().is_identifier() && peek(1).is("(")) {
            auto ctor = start(NodeKind::Constructor);
            ctor->first_token = decl_start;
            ctor->text = identifier();
            method_rest(*ctor);
            return finish(std::move(ctor));
        }
        const std::size_t type_pos = p_;
        std::string member_type = type();
        if (peek().is_identifier() && peek(1).is("(")) {
            auto method = start(NodeKind::Method);
            method->first_token = decl_start;
            method->line = tok(type_pos).line;
            method->type = std::move(member_type);
            method->text = identifier();
            method_rest(*method);
            return finish(std::move(method));
        }
        auto field = start(NodeKind::Field);
        field->first_token = decl_start;
        field->type = member_type;
        declarators(*field, member_type);
        expect(";");
        return finish(std::move(field));
    }

    void method_rest(Node& method) {
        expect("(");
        if (!at(")")) {
            do {
                method.kids.push_back(parameter());
            } while (accept(","));
        }
        expect(")");
        while (at("[") && peek(1).is("]")) {
            p_ += 2;
            method.type += "[]";
        }
        if (accept("throws")) {
            type_list();
        }
        if (at("{")) {
            method.extra = block();
        } else if (accept("default")) {
            skip_until_semicolon();
            expect(";");
        } else {
            expect(";");
        }
    }

    void skip_until_semicolon() {
        int depth = 0;
        while (peek().kind != TokenKind::End) {
            if (at("(") || at("{")) {
                ++depth;
            } else if (at(")") || at("}")) {
                --depth;
            } else if (at(";") && depth == 0) {
                return;
            }
            ++p_;
        }
    }

    NodePtr parameter() {
        auto param = start(NodeKind::Parameter);
        while (at("@") || at("final")) {
            if (at("@")) {
                annotation();
            } else {
                ++p_;
            }
        }
        param->type = type();
        if (accept("...")) {
            param->type += "...";
        }
        param->text = identifier();
        while (at("[") && peek(1).is("]")) {
            p_ += 2;
            param->type += "[]";
        }
        return finish(std::move(param));
    }

    void declarators(Node& owner, const std::string& base_type) {
        do {
            auto d = start(NodeKind::Declarator);
            d->type = base_type;
            d->text = identifier();
            while (at("[") && peek(1).is("]")) {
                p_ += 2;
                d->type += "[]";
            }
            if (accept("=")) {
                d->kids.push_back(variable_initializer());
            }
            owner.kids.push_back(finish(std::move(d)));
        } while (accept(","));
    }

    NodePtr variable_initializer() { return at("{") ? array_initializer() : expression(); }

    NodePtr array_initializer() {
        auto init = start(NodeKind::ArrayInit);
        expect("{");
        while (!at("}")) {
            init->kids.push_back(variable_initializer());
            if (!accept(",")) {
                break;
            }
        }
        expect("}");
        return finish(std::move(init));
    }

    // ---- statements ------------------------------------------------------

    NodePtr block() {
        auto b = start(NodeKind::Block);
        expect("{");
        while (!at("}")) {
            if (peek().kind == TokenKind::End) {
                fail("expected '}'");
            }
            b->kids.push_back(block_statement());
        }
        expect("}");
        return finish(std::move(b));
    }

    NodePtr block_statement() {
        {
            std::size_t i = p_;
            while (tok(i).is("@") || is_modifier(tok(i))) {
                if (tok(i).is("@")) {
                    if (tok(i + 1).is("interface")) {
                        break;
                    }
                    ++i;
                    while (tok(i).is_identifier() || tok(i).is(".")) {
                        ++i;
                    }
                    if (tok(i).is("(")) {
                        i = matching(i, "(", ")") + 1;
                    }
                } else {
                    ++i;
                }
            }
            if (tok(i).is("class") || tok(i).is("interface") || tok(i).is("enum") ||
                (tok(i).is("@") && tok(i + 1).is("interface"))) {
                auto local = start(NodeKind::LocalClassDecl);
                const std::size_t decl_start = modifiers();
                local->extra = type_declaration(decl_start);
                return finish(std::move(local));
            }
        }
        if (local_var_decl_ahead(false)) {
            auto decl = local_var_decl();
            expect(";");
            decl->last_token = p_ - 1;
            return decl;
        }
        return statement();
    }

    NodePtr local_var_decl() {
        auto decl = start(NodeKind::LocalVarDecl);
        while (at("@") || at("final")) {
            if (at("@")) {
                annotation();
            } else {
                ++p_;
            }
        }
        decl->type = type();
        declarators(*decl, decl->type);
        return finish(std::move(decl));
    }

    NodePtr statement() {
        const Token& t = peek();
        if (t.is("{")) {
            return block();
        }
        if (t.is(";")) {
            auto e = start(NodeKind::Empty);
            ++p_;
            return finish(std::move(e));
        }
        if (t.is_identifier() && peek(1).is(":")) {
            auto labeled = start(NodeKind::Labeled);
            labeled->text = identifier();
            expect(":");
            labeled->kids.push_back(statement());
            return finish(std::move(labeled));
        }
        if (t.kind == TokenKind::Keyword) {
            if (t.text == "if") return if_statement();
            if (t.text == "for") return for_statement();
            if (t.text == "while") {
                auto w = start(NodeKind::While);
                ++p_;
                w->kids.push_back(paren_expression());
                w->kids.push_back(statement());
                return finish(std::move(w));
            }
            if (t.text == "do") {
                auto d = start(NodeKind::Do);
                ++p_;
                d->kids.push_back(statement());
                expect("while");
                d->kids.push_back(paren_expression());
                expect(";");
                return finish(std::move(d));
            }
            if (t.text == "try") return try_statement();
            if (t.text == "switch") return switch_statement();
            if (t.text == "return" || t.text == "throw") {
                auto r = start(t.text == "return" ? NodeKind::Return : NodeKind::Throw);
                ++p_;
                if (!at(";")) {
                    r->kids.push_back(expression());
                }
                expect(";");
                return finish(std::move(r));
            }
            if (t.text == "break" || t.text == "continue") {
                auto b = start(t.text == "break" ? NodeKind::Break : NodeKind::Continue);
                ++p_;
                if (peek().is_identifier()) {
                    b->text = identifier();
                }
                expect(";");
                return finish(std::move(b));
            }
            if (t.text == "synchronized") {
                auto s = start(NodeKind::Synchronized);
                ++p_;
                s->kids.push_back(paren_expression());
                s->kids.push_back(block());
                return finish(std::move(s));
            }
            if (t.text == "assert") {
                auto a = start(NodeKind::Assert);
                ++p_;
                a->kids.push_back(expression());
                if (accept(":")) {
                    a->kids.push_back(expression());
                }
                expect(";");
                return finish(std::move(a));
            }
        }
        auto stmt = start(NodeKind::ExpressionStatement);
        stmt->kids.push_back(expression());
        expect(";");
        return finish(std::move(stmt));
    }

    NodePtr paren_expression() {
        expect("(");
        auto e = expression();
        expect(")");
        return e;
    }

    NodePtr if_statement() {
        auto s = start(NodeKind::If);
        expect("if");
        s->kids.push_back(paren_expression());
        s->kids.push_back(statement());
        if (accept("else")) {
            s->kids.push_back(statement());
        }
        return finish(std::move(s));
    }

    NodePtr for_statement() {
        const std::size_t begin = p_;
        expect("for");
        expect("(");
        if (local_var_decl_ahead(true)) {
            // distinguish for-each by the ':' after the variable name
            std::size_t i = skip_annotations_and_modifiers(p_);
            scan_type(i);
            if (tok(i + 1).is(":")) {
                p_ = begin;
                auto s = start(NodeKind::ForEach);
                p_ += 2;
                s->kids.push_back(parameter());
                expect(":");
                s->kids.push_back(expression());
                expect(")");
                s->kids.push_back(statement());
                return finish(std::move(s));
            }
        }
        p_ = begin;
        auto s = start(NodeKind::For);
        p_ += 2;
        NodePtr init;
        if (!at(";")) {
            init = start(NodeKind::Block);
            if (local_var_decl_ahead(false)) {
                init->kids.push_back(local_var_decl());
            } else {
                do {
                    auto e = start(NodeKind::ExpressionStatement);
                    e->kids.push_back(expression());
                    init->kids.push_back(finish(std::move(e)));
                } while (accept(","));
            }
            init = finish(std::move(init));
        }
        expect(";");
        NodePtr cond;
        if (!at(";")) {
            cond = expression();
        }
        expect(";");
        NodePtr update;
        if (!at(")")) {
            update = start(NodeKind::Block);
            do {
                auto e = start(NodeKind::ExpressionStatement);
                e->kids.push_back(expression());
                update->kids.push_back(finish(std::move(e)));
            } while (accept(","));
            update = finish(std::move(update));
        }
        expect(")");
        s->kids.push_back(std::move(init));
        s->kids.push_back(std::move(cond));
        s->kids.push_back(std::move(update));
        s->kids.push_back(statement());
        return finish(std::move(s));
    }

    NodePtr try_statement() {
        auto s = start(NodeKind::Try);
        expect("try");
        if (accept("(")) {
            while (!at(")")) {
                auto res = start(NodeKind::Resource);
                if (local_var_decl_ahead(false)) {
                    res->kids.push_back(local_var_decl());
                } else {
                    res->kids.push_back(expression());
                }
                s->kids.push_back(finish(std::move(res)));
                if (!accept(";")) {
                    break;
                }
            }
            expect(")");
        }
        s->kids.push_back(block());
        bool handled = false;
        while (at("catch")) {
            auto c = start(NodeKind::Catch);
            ++p_;
            expect("(");
            auto param = start(NodeKind::Parameter);
            while (at("@") || at("final")) {
                if (at("@")) {
                    annotation();
                } else {
                    ++p_;
                }
            }
            param->type = type();
            while (accept("|")) {
                param->type += '|' + type();
            }
            param->text = identifier();
            c->kids.push_back(finish(std::move(param)));
            expect(")");
            c->kids.push_back(block());
            s->kids.push_back(finish(std::move(c)));
            handled = true;
        }
        if (at("finally")) {
            auto f = start(NodeKind::Finally);
            ++p_;
            f->kids.push_back(block());
            s->kids.push_back(finish(std::move(f)));
            handled = true;
        }
        if (!handled && s->kids.front()->kind != NodeKind::Resource) {
            fail("expected 'catch' or 'finally'");
        }
        return finish(std::move(s));
    }

    NodePtr switch_statement() {
        auto s = start(NodeKind::Switch);
        expect("switch");
        s->kids.push_back(paren_expression());
        expect("{");
        while (!accept("}")) {
            if (peek().kind == TokenKind::End) {
                fail("expected '}'");
            }
            if (at("case")) {
                auto label = start(NodeKind::SwitchLabel);
                ++p_;
                label->text = "case";
                label->kids.push_back(conditional());
                expect(":");
                s->kids.push_back(finish(std::move(label)));
            } else if (at("default") && peek(1).is(":")) {
                auto label = start(NodeKind::SwitchLabel);
                p_ += 2;
                label->text = "default";
                s->kids.push_back(finish(std::move(label)));
            } else {
                s->kids.push_back(block_statement());
            }
        }
        return finish(std::move(s));
    }

    // ---- expressions -----------------------------------------------------

    NodePtr expression() {
        if (lambda_ahead()) {
            return lambda();
        }
        auto lhs = conditional();
        for (const auto op : kAssignOps) {
            if (at(op)) {
                auto a = std::make_unique<Node>(NodeKind::Assign);
                a->line = lhs->line;
                a->column = lhs->column;
                a->first_token = lhs->first_token;
                a->text = std::string(op);
                ++p_;
                a->kids.push_back(std::move(lhs));
                a->kids.push_back(expression());
                return finish(std::move(a));
            }
        }
        return lhs;
    }

    NodePtr lambda() {
        auto l = start(NodeKind::Lambda);
        if (peek().is_identifier()) {
            auto param = start(NodeKind::Parameter);
            param->text = identifier();
            l->kids.push_back(finish(std::move(param)));
        } else {
            expect("(");
            while (!at(")")) {
                auto param = start(NodeKind::Parameter);
                while (at("final") || at("@")) {
                    if (at("@")) {
                        annotation();
                    } else {
                        ++p_;
                    }
                }
                std::size_t i = p_;
                if (scan_type(i) && tok(i).is_identifier()) {
                    param->type = type();
                }
                param->text = identifier();
                l->kids.push_back(finish(std::move(param)));
                if (!accept(",")) {
                    break;
                }
            }
            expect(")");
        }
        expect("->");
        l->kids.push_back(at("{") ? block() : expression());
        return finish(std::move(l));
    }

    NodePtr conditional() {
        auto cond = binary(1);
        if (!at("?")) {
            return cond;
        }
        auto c = std::make_unique<Node>(NodeKind::Conditional);
        c->line = cond->line;
        c->column = cond->column;
        c->first_token = cond->first_token;
        ++p_;
        c->kids.push_back(std::move(cond));
        c->kids.push_back(expression());
        expect(":");
        c->kids.push_back(lambda_ahead() ? lambda() : conditional());
        return finish(std::move(c));
    }

    /// Current binary operator and the number of tokens it spans.
    std::pair<std::string, std::size_t> binary_operator() const {
        const Token& t = peek();
        if (t.is(">")) {
            if (peek(1).is(">") && adjacent(p_)) {
                if (peek(2).is(">") && adjacent(p_ + 1)) {
                    return {">>>", 3};
                }
                return {">>", 2};
            }
            return {">", 1};
        }
        if (t.kind == TokenKind::Punct || t.is("instanceof")) {
            if (binary_level(t.text) > 0) {
                return {std::string(t.text), 1};
            }
        }
        return {{}, 0};
    }

    NodePtr binary(int min_level) {
        auto lhs = unary();
        while (true) {
            auto [op, width] = binary_operator();
            const int level = width == 0 ? 0 : binary_level(op);
            if (level == 0 || level < min_level) {
                return lhs;
            }
            p_ += width;
            if (op == "instanceof") {
                auto n = std::make_unique<Node>(NodeKind::Instanceof);
                n->line = lhs->line;
                n->column = lhs->column;
                n->first_token = lhs->first_token;
                accept("final");
                n->type = type();
                n->kids.push_back(std::move(lhs));
                lhs = finish(std::move(n));
                continue;
            }
            auto n = std::make_unique<Node>(NodeKind::Binary);
            n->line = lhs->line;
            n->column = lhs->column;
            n->first_token = lhs->first_token;
            n->text = op;
            n->kids.push_back(std::move(lhs));
            n->kids.push_back(binary(level + 1));
            lhs = finish(std::move(n));
        }
    }

    NodePtr unary() {
        const Token& t = peek();
        if (t.is("++") || t.is("--") || t.is("+") || t.is("-") || t.is("!") || t.is("~")) {
            auto u = start(NodeKind::Unary);
            u->text = std::string(t.text);
            ++p_;
            u->kids.push_back(unary());
            return finish(std::move(u));
        }
        if (t.is("(") && !lambda_ahead() && cast_ahead()) {
            auto c = start(NodeKind::Cast);
            ++p_;
            c->type = type();
            while (accept("&")) {
                c->type += '&' + type();
            }
            expect(")");
            c->kids.push_back(lambda_ahead() ? lambda() : unary());
            return finish(std::move(c));
        }
        auto e = primary();
        while (at("++") || at("--")) {
            auto post = std::make_unique<Node>(NodeKind::Postfix);
            post->line = e->line;
            post->column = e->column;
            post->first_token = e->first_token;
            post->text = std::string(peek().text);
            ++p_;
            post->kids.push_back(std::move(e));
            e = finish(std::move(post));
        }
        return e;
    }

    void arguments(Node& owner) {
        expect("(");
        if (!at(")")) {
            do {
                owner.kids.push_back(expression());
            } while (accept(","));
        }
        expect(")");
    }

    NodePtr wrap(NodeKind kind, NodePtr target) const {
        auto n = std::make_unique<Node>(kind);
        n->line = target->line;
        n->column = target->column;
        n->first_token = target->first_token;
        n->target = std::move(target);
        return n;
    }

    static std::string qualified_text(const Node& n) {
        if (n.kind == NodeKind::Name) {
            return n.text;
        }
        if (n.kind == NodeKind::FieldAccess && n.target) {
            return qualified_text(*n.target) + "." + n.text;
        }
        return n.text;
    }

    NodePtr primary() {
        NodePtr e = primary_head();
        return selectors(std::move(e));
    }

    NodePtr primary_head() {
        const Token& t = peek();
        if (is_literal(t)) {
            auto lit = start(NodeKind::Literal);
            lit->text = std::string(t.text);
            lit->subkind = static_cast<std::uint8_t>(literal_kind(t));
            ++p_;
            return finish(std::move(lit));
        }
        if (t.is("this")) {
            if (peek(1).is("(")) {
                auto call = start(NodeKind::ExplicitConstructorCall);
                call->text = "this";
                ++p_;
                arguments(*call);
                return finish(std::move(call));
            }
            auto n = start(NodeKind::This);
            n->text = "this";
            ++p_;
            return finish(std::move(n));
        }
        if (t.is("super")) {
            if (peek(1).is("(")) {
                auto call = start(NodeKind::ExplicitConstructorCall);
                call->text = "super";
                ++p_;
                arguments(*call);
                return finish(std::move(call));
            }
            auto n = start(NodeKind::Super);
            n->text = "super";
            ++p_;
            if (!at(".") && !at("::")) {
                fail("expected '.' or '::' after 'super'");
            }
            return finish(std::move(n));
        }
        if (t.is("new")) {
            return creator(nullptr);
        }
        if (t.is("(")) {
            auto paren = start(NodeKind::Paren);
            ++p_;
            paren->kids.push_back(expression());
            expect(")");
            return finish(std::move(paren));
        }
        if (is_primitive(t) || t.is("void")) {
            auto lit = start(NodeKind::ClassLiteral);
            lit->type = type();
            if (at("::")) {
                lit->kind = NodeKind::Name;
                lit->text = lit->type;
                return finish(std::move(lit));
            }
            expect(".");
            expect("class");
            return finish(std::move(lit));
        }
        if (t.is_identifier()) {
            if (peek(1).is("(")) {
                auto call = start(NodeKind::MethodCall);
                call->text = identifier();
                arguments(*call);
                return finish(std::move(call));
            }
            auto name = start(NodeKind::Name);
            name->text = identifier();
            return finish(std::move(name));
        }
        fail("expected expression");
    }

    NodePtr selectors(NodePtr e) {
        while (true) {
            if (at(".")) {
                ++p_;
                if (at("new")) {
                    e = creator(std::move(e));
                } else if (at("this")) {
                    auto n = wrap(NodeKind::This, std::move(e));
                    n->text = "this";
                    ++p_;
                    e = finish(std::move(n));
                } else if (at("class")) {
                    auto n = std::make_unique<Node>(NodeKind::ClassLiteral);
                    n->line = e->line;
                    n->column = e->column;
                    n->first_token = e->first_token;
                    n->type = qualified_text(*e);
                    ++p_;
                    e = finish(std::move(n));
                } else if (at("super")) {
                    ++p_;
                    if (at("(")) {
                        auto call = wrap(NodeKind::ExplicitConstructorCall, std::move(e));
                        call->text = "super";
                        arguments(*call);
                        e = finish(std::move(call));
                    } else {
                        auto n = wrap(NodeKind::Super, std::move(e));
                        n->text = "super";
                        e = finish(std::move(n));
                    }
                } else {
                    if (at("<")) {
                        type_arguments();
                    }
                    const std::string name = identifier();
                    if (at("(")) {
                        auto call = wrap(NodeKind::MethodCall, std::move(e));
                        call->text = name;
                        arguments(*call);
                        e = finish(std::move(call));
                    } else {
                        auto field = wrap(NodeKind::FieldAccess, std::move(e));
                        field->text = name;
                        e = finish(std::move(field));
                    }
                }
            } else if (at("[")) {
                if (peek(1).is("]")) {
                    std::string type_text = qualified_text(*e);
                    while (at("[") && peek(1).is("]")) {
                        p_ += 2;
                        type_text += "[]";
                    }
                    auto n = std::make_unique<Node>(NodeKind::ClassLiteral);
                    n->line = e->line;
                    n->column = e->column;
                    n->first_token = e->first_token;
                    n->type = type_text;
                    if (at("::")) {
                        n->kind = NodeKind::Name;
                        n->text = type_text;
                        e = finish(std::move(n));
                        continue;
                    }
                    expect(".");
                    expect("class");
                    e = finish(std::move(n));
                    continue;
                }
                auto access = wrap(NodeKind::ArrayAccess, std::move(e));
                ++p_;
                access->kids.push_back(expression());
                expect("]");
                e = finish(std::move(access));
            } else if (at("::")) {
                ++p_;
                auto ref = wrap(NodeKind::MethodRef, std::move(e));
                if (at("<")) {
                    type_arguments();
                }
                if (accept("new")) {
                    ref->text = "new";
                } else {
                    ref->text = identifier();
                }
                e = finish(std::move(ref));
            } else if (at("<") && e->kind == NodeKind::Name && generic_type_method_ref_ahead()) {
                std::string type_text = e->text + type_arguments();
                e->text = type_text;
            } else {
                return e;
            }
        }
    }

    bool generic_type_method_ref_ahead() const {
        std::size_t i = p_;
        return scan_type_arguments(i) && tok(i).is("::");
    }

    NodePtr creator(NodePtr outer) {
        auto n = outer ? wrap(NodeKind::New, std::move(outer)) : start(NodeKind::New);
        expect("new");
        if (at("<")) {
            type_arguments();
        }
        while (at("@")) {
            annotation();
        }
        std::string created;
        if (is_primitive(peek())) {
            created = std::string(t_[p_++].text);
        } else {
            created = identifier();
            if (at("<")) {
                created += type_arguments();
            }
            while (at(".") && peek(1).is_identifier()) {
                ++p_;
                created += '.';
                created += identifier();
                if (at("<")) {
                    created += type_arguments();
                }
            }
        }
        if (at("[")) {
            n->kind = NodeKind::NewArray;
            while (at("[")) {
                ++p_;
                if (accept("]")) {
                    created += "[]";
                } else {
                    n->kids.push_back(expression());
                    expect("]");
                }
            }
            n->type = created;
            if (at("{")) {
                n->extra = array_initializer();
            }
            return finish(std::move(n));
        }
        n->type = created;
        arguments(*n);
        if (at("{")) {
            auto body = start(NodeKind::TypeDecl);
            body->subkind = static_cast<std::uint8_t>(TypeDeclKind::Anonymous);
            class_body(*body);
            n->extra = finish(std::move(body));
        }
        return finish(std::move(n));
    }

    const std::vector<Token>& t_;
    const std::string& path_;
    std::size_t p_ = 0;
};

} // namespace

ParsedUnit parse_compilation_unit(std::string source, std::string file_path) {
    ParsedUnit unit;
    unit.file_path = std::move(file_path);
    unit.source = std::make_unique<const std::string>(std::move(source));
    unit.tokens = tokenize(*unit.source, unit.file_path);
    unit.root = Parser(unit.tokens, unit.file_path).compilation_unit();
    return unit;
}

std::string erase_type_arguments(const std::string& type) {
    std::string out;
    int depth = 0;
    for (const char c : type) {
        if (c == '<') {
            ++depth;
        } else if (c == '>') {
            --depth;
        } else if (depth == 0) {
            out += c;
        }
    }
    return out;
}

} // namespace idp::java
