#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace idp::java {

enum class NodeKind : std::uint8_t {
    // declarations
    CompilationUnit,
    TypeDecl,
    Method,
    Constructor,
    Field,
    Initializer,
    EnumConstant,
    Parameter,
    Declarator,
    // statements
    Block,
    LocalVarDecl,
    LocalClassDecl,
    If,
    For,
    ForEach,
    While,
    Do,
    Try,
    Resource,
    Catch,
    Finally,
    Switch,
    SwitchLabel,
    Return,
    Break,
    Continue,
    Throw,
    Synchronized,
    Labeled,
    ExpressionStatement,
    Empty,
    Assert,
    ExplicitConstructorCall,
    // expressions
    Assign,
    Conditional,
    Binary,
    Instanceof,
    Unary,
    Postfix,
    Cast,
    Literal,
    Name,
    FieldAccess,
    MethodCall,
    New,
    NewArray,
    ArrayInit,
    ArrayAccess,
    This,
    Super,
    ClassLiteral,
    Paren,
    MethodRef,
    Lambda,
};

enum class TypeDeclKind : std::uint8_t { Class, Interface, Enum, Annotation, Anonymous };

enum class LiteralKind : std::uint8_t { Int, Float, Char, String, Boolean, Null };

struct Node;
using NodePtr = std::unique_ptr<Node>;

/// Generic syntax tree node. Slot usage per kind:
///   Method/Constructor: text = name, type = return type, kids = Parameters, extra = body (null if abstract)
///   Parameter/Declarator: text = name, type = declared type, kids[0] = initializer (Declarator, optional)
///   TypeDecl: text = simple name ("" if anonymous), kids = members
///   If: kids = cond, then, [else];  For: kids = init, cond, update, body (entries may be null)
///   ForEach: kids = variable (Parameter), iterable, body;  While: cond, body;  Do: body, cond
///   Try: kids = resources..., block, catches..., [finally];  Catch: kids = param, block
///   Switch: kids = selector, then SwitchLabel and statements in source order
///   MethodCall: text = name, target = receiver (optional), kids = arguments
///   FieldAccess: text = field, target = receiver;  ArrayAccess: target = array, kids[0] = index
///   New: type = created type, target = outer instance (optional), kids = args, extra = anonymous body
///   NewArray: type = element type, kids = dimension expressions, extra = initializer (optional)
///   Binary/Assign/Unary/Postfix: text = operator;  Cast/Instanceof: type = target type
///   ExplicitConstructorCall: text = "this" | "super", target = qualifier (optional), kids = args
///   Lambda: kids = parameters..., body (last)
struct Node {
    NodeKind kind;
    std::string text;
    std::string type;
    int line = 0;
    int column = 0;
    std::uint8_t subkind = 0;  // TypeDeclKind or LiteralKind
    std::size_t first_token = 0;
    std::size_t last_token = 0;
    NodePtr target;
    NodePtr extra;
    std::vector<NodePtr> kids;

    explicit Node(NodeKind k) : kind(k) {}

    TypeDeclKind decl_kind() const { return static_cast<TypeDeclKind>(subkind); }
    LiteralKind literal_kind() const { return static_cast<LiteralKind>(subkind); }
};

} // namespace idp::java
