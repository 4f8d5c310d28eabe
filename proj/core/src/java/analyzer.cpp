#include "idp/java/analyzer.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "idp/error.hpp"
#include "idp/glob.hpp"
#include "idp/parallel.hpp"

namespace idp::java {

namespace {

const Node* unparen(const Node* n) {
    while (n != nullptr && n->kind == NodeKind::Paren && !n->kids.empty()) {
        n = n->kids.front().get();
    }
    return n;
}

bool is_null_literal(const Node* n) {
    n = unparen(n);
    return n != nullptr && n->kind == NodeKind::Literal && n->literal_kind() == LiteralKind::Null;
}

bool is_unqualified_this(const Node* n) { return n != nullptr && n->kind == NodeKind::This && !n->target; }

// ---- enumeration --------------------------------------------------------

class Enumerator {
public:
    Enumerator(const ParsedUnit& unit, std::string_view project) : unit_(unit), project_(project) {}

    std::vector<MethodSpan> run() {
        for (const auto& decl : unit_.root->kids) {
            visit_type(*decl, decl->text);
        }
        return std::move(out_);
    }

private:
    struct Scope {
        std::string name;
        int counter = 0;
    };

    void visit_type(const Node& decl, const std::string& name) {
        Scope scope{name};
        for (const auto& member : decl.kids) {
            visit_member(*member, scope);
        }
    }

    void visit_member(const Node& m, Scope& scope) {
        switch (m.kind) {
        case NodeKind::TypeDecl: visit_type(m, scope.name + "." + m.text); break;
        case NodeKind::Method:
        case NodeKind::Constructor:
            if (m.extra) {
                record(m, scope);
                walk(*m.extra, scope);
            }
            break;
        case NodeKind::EnumConstant:
            for (const auto& arg : m.kids) {
                walk(*arg, scope);
            }
            if (m.extra) {
                visit_type(*m.extra, scope.name + "$" + std::to_string(++scope.counter));
            }
            break;
        default: walk(m, scope); break;
        }
    }

    // Finds anonymous and local types in source order.
    void walk(const Node& n, Scope& scope) {
        if (n.kind == NodeKind::New && n.extra) {
            if (n.target) {
                walk(*n.target, scope);
            }
            for (const auto& k : n.kids) {
                if (k) {
                    walk(*k, scope);
                }
            }
            visit_type(*n.extra, scope.name + "$" + std::to_string(++scope.counter));
            return;
        }
        if (n.kind == NodeKind::LocalClassDecl && n.extra) {
            visit_type(*n.extra, scope.name + "$" + std::to_string(++scope.counter) + n.extra->text);
            return;
        }
        if (n.target) {
            walk(*n.target, scope);
        }
        for (const auto& k : n.kids) {
            if (k) {
                walk(*k, scope);
            }
        }
        if (n.extra) {
            walk(*n.extra, scope);
        }
    }

    void record(const Node& m, const Scope& scope) {
        MethodSpan span;
        span.identity.project = std::string(project_);
        span.identity.file_path = unit_.file_path;
        span.identity.type_name = scope.name;
        span.identity.method_name = m.text;
        span.identity.is_constructor = m.kind == NodeKind::Constructor;
        for (const auto& param : m.kids) {
            span.identity.param_signature.push_back(erase_type_arguments(param->type));
        }
        span.declaration = &m;
        span.first_token = m.first_token;
        span.last_token = m.last_token;
        out_.push_back(std::move(span));
    }

    const ParsedUnit& unit_;
    std::string_view project_;
    std::vector<MethodSpan> out_;
};

// ---- metrics ------------------------------------------------------------

class MetricVisitor {
public:
    RawMetrics run(const Node& body) {
        scope(body, 0);
        metrics_.cyclomatic_complexity = 1 + decisions_;
        metrics_.max_nesting = max_nesting_;
        metrics_.max_chaining = max_chaining_;
        metrics_.unique_variable_ids = static_cast<std::int64_t>(variables_.size());
        return metrics_;
    }

private:
    void bump(ConstructKind kind) { ++metrics_.count(kind); }

    // Statements of a construct body entered at `depth`.
    void scope(const Node& s, std::int64_t depth) {
        max_nesting_ = std::max(max_nesting_, depth);
        if (s.kind == NodeKind::Block) {
            for (const auto& k : s.kids) {
                statement(*k, depth);
            }
        } else {
            statement(s, depth);
        }
    }

    void declarators(const Node& decl) {
        for (const auto& d : decl.kids) {
            variables_.insert(d->text);
            for (const auto& init : d->kids) {
                expr(init.get());
            }
        }
    }

    void statement(const Node& s, std::int64_t depth) {
        switch (s.kind) {
        case NodeKind::Block: scope(s, depth + 1); break;
        case NodeKind::LocalVarDecl: declarators(s); break;
        case NodeKind::If:
            bump(ConstructKind::IfCondition);
            ++decisions_;
            expr(s.kids[0].get());
            scope(*s.kids[1], depth + 1);
            if (s.kids.size() > 2) {
                bump(ConstructKind::ElseBlock);
                if (s.kids[2]->kind == NodeKind::If) {
                    statement(*s.kids[2], depth);
                } else {
                    scope(*s.kids[2], depth + 1);
                }
            }
            break;
        case NodeKind::For:
            bump(ConstructKind::Loop);
            ++decisions_;
            if (s.kids[0]) {
                for (const auto& k : s.kids[0]->kids) {
                    statement(*k, depth);
                }
            }
            expr(s.kids[1].get());
            if (s.kids[2]) {
                for (const auto& k : s.kids[2]->kids) {
                    statement(*k, depth);
                }
            }
            scope(*s.kids[3], depth + 1);
            break;
        case NodeKind::ForEach:
            bump(ConstructKind::Loop);
            ++decisions_;
            variables_.insert(s.kids[0]->text);
            expr(s.kids[1].get());
            scope(*s.kids[2], depth + 1);
            break;
        case NodeKind::While:
            bump(ConstructKind::Loop);
            ++decisions_;
            expr(s.kids[0].get());
            scope(*s.kids[1], depth + 1);
            break;
        case NodeKind::Do:
            bump(ConstructKind::Loop);
            ++decisions_;
            scope(*s.kids[0], depth + 1);
            expr(s.kids[1].get());
            break;
        case NodeKind::Try:
            bump(ConstructKind::TryBlock);
            for (const auto& k : s.kids) {
                switch (k->kind) {
                case NodeKind::Resource:
                    if (k->kids[0]->kind == NodeKind::LocalVarDecl) {
                        declarators(*k->kids[0]);
                    } else {
                        expr(k->kids[0].get());
                    }
                    break;
                case NodeKind::Catch:
                    bump(ConstructKind::CatchClause);
                    ++decisions_;
                    variables_.insert(k->kids[0]->text);
                    scope(*k->kids[1], depth + 1);
                    break;
                case NodeKind::Finally:
                    bump(ConstructKind::FinallyBlock);
                    scope(*k->kids[0], depth + 1);
                    break;
                default: scope(*k, depth + 1); break;
                }
            }
            break;
        case NodeKind::Switch:
            expr(s.kids[0].get());
            max_nesting_ = std::max(max_nesting_, depth + 1);
            for (std::size_t i = 1; i < s.kids.size(); ++i) {
                const Node& k = *s.kids[i];
                if (k.kind == NodeKind::SwitchLabel) {
                    if (k.text == "case") {
                        bump(ConstructKind::SwitchCaseBlock);
                        ++decisions_;
                        expr(k.kids[0].get());
                    }
                } else {
                    statement(k, depth + 1);
                }
            }
            break;
        case NodeKind::Return:
            bump(ConstructKind::ReturnStatement);
            for (const auto& k : s.kids) {
                expr(k.get());
            }
            break;
        case NodeKind::Throw:
            bump(ConstructKind::ThrowStatement);
            expr(s.kids[0].get());
            break;
        case NodeKind::Synchronized:
            expr(s.kids[0].get());
            scope(*s.kids[1], depth + 1);
            break;
        case NodeKind::Labeled: statement(*s.kids[0], depth); break;
        case NodeKind::ExpressionStatement:
        case NodeKind::Assert:
            for (const auto& k : s.kids) {
                expr(k.get());
            }
            break;
        default: break;  // empty, break, continue, local class declarations
        }
    }

    // Receivers that look like type names (`Math.max`, `System.out`) are not variables.
    void qualifier(const Node* n) {
        if (n != nullptr && n->kind == NodeKind::Name && !n->text.empty() && n->text[0] >= 'A' && n->text[0] <= 'Z') {
            return;
        }
        expr(n);
    }

    static std::int64_t chain_length(const Node& call) {
        if (call.kind != NodeKind::MethodCall) {
            return 1;
        }
        const Node* receiver = unparen(call.target.get());
        if (receiver != nullptr && receiver->kind == NodeKind::MethodCall) {
            return 1 + chain_length(*receiver);
        }
        return 1;
    }

    void binary(const Node& e) {
        const std::string& op = e.text;
        if (op == "&&" || op == "||") {
            bump(ConstructKind::LogicalOperator);
            ++decisions_;
        } else if (op == "==" || op == "!=" || op == "<" || op == ">" || op == "<=" || op == ">=") {
            bump(ConstructKind::ComparisonOperator);
            if ((op == "==" || op == "!=") && (is_null_literal(e.kids[0].get()) || is_null_literal(e.kids[1].get()))) {
                bump(ConstructKind::NullCheck);
            }
        } else if (op == "+" || op == "-" || op == "*" || op == "/" || op == "%") {
            bump(ConstructKind::ArithmeticInfixOp);
        }
    }

    void expr(const Node* e) {
        if (e == nullptr) {
            return;
        }
        switch (e->kind) {
        case NodeKind::Literal:
            if (e->literal_kind() == LiteralKind::String) {
                bump(ConstructKind::StringLiteral);
            } else if (e->literal_kind() == LiteralKind::Null) {
                bump(ConstructKind::NullLiteral);
            }
            return;
        case NodeKind::Name: variables_.insert(e->text); return;
        case NodeKind::FieldAccess:
            if (is_unqualified_this(e->target.get())) {
                variables_.insert(e->text);
            } else {
                qualifier(e->target.get());
            }
            return;
        case NodeKind::MethodCall:
            bump(ConstructKind::MethodInvocation);
            max_chaining_ = std::max(max_chaining_, chain_length(*e));
            qualifier(e->target.get());
            break;
        case NodeKind::ExplicitConstructorCall:
            bump(ConstructKind::MethodInvocation);
            max_chaining_ = std::max<std::int64_t>(max_chaining_, 1);
            qualifier(e->target.get());
            break;
        case NodeKind::New:
            bump(ConstructKind::ObjectCreation);
            if (e->extra) {
                bump(ConstructKind::AnonymousClass);
            }
            expr(e->target.get());
            break;
        case NodeKind::NewArray:
            bump(ConstructKind::ArrayCreation);
            expr(e->extra.get());
            break;
        case NodeKind::ArrayAccess:
            bump(ConstructKind::ArrayAccess);
            expr(e->target.get());
            break;
        case NodeKind::Assign: bump(ConstructKind::Assignment); break;
        case NodeKind::Conditional:
            bump(ConstructKind::TernaryOperation);
            ++decisions_;
            break;
        case NodeKind::Binary: binary(*e); break;
        case NodeKind::Instanceof: bump(ConstructKind::InstanceofExpression); break;
        case NodeKind::Unary:
        case NodeKind::Postfix:
            if (e->text == "++") {
                bump(ConstructKind::Incrementation);
            } else if (e->text == "--") {
                bump(ConstructKind::Decrementation);
            } else if (e->text == "!") {
                bump(ConstructKind::LogicalOperator);
            }
            break;
        case NodeKind::Cast: bump(ConstructKind::CastExpression); break;
        case NodeKind::MethodRef: qualifier(e->target.get()); return;
        case NodeKind::This:
        case NodeKind::Super:
        case NodeKind::ClassLiteral:
        case NodeKind::Lambda: return;
        default: break;
        }
        for (const auto& k : e->kids) {
            expr(k.get());
        }
    }

    RawMetrics metrics_;
    std::int64_t decisions_ = 0;
    std::int64_t max_nesting_ = 0;
    std::int64_t max_chaining_ = 0;
    std::set<std::string> variables_;
};

bool has_lambda(const Node& n) {
    if (n.kind == NodeKind::Lambda) {
        return true;
    }
    if (n.kind == NodeKind::TypeDecl || n.kind == NodeKind::LocalClassDecl) {
        return false;
    }
    if (n.kind == NodeKind::New) {
        // the anonymous body (extra) belongs to other methods
        if (n.target && has_lambda(*n.target)) {
            return true;
        }
        return std::any_of(n.kids.begin(), n.kids.end(), [](const NodePtr& k) { return k && has_lambda(*k); });
    }
    if (n.target && has_lambda(*n.target)) {
        return true;
    }
    if (n.extra && has_lambda(*n.extra)) {
        return true;
    }
    return std::any_of(n.kids.begin(), n.kids.end(), [](const NodePtr& k) { return k && has_lambda(*k); });
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("java-analyzer", "cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::vector<MethodSpan> enumerate_methods(const ParsedUnit& unit, std::string_view project) {
    return Enumerator(unit, project).run();
}

RawMetrics compute_raw_metrics(const ParsedUnit& unit, const MethodSpan& method) {
    RawMetrics metrics = MetricVisitor().run(*method.declaration->extra);
    std::set<int> lines;
    for (std::size_t i = method.first_token; i <= method.last_token && i < unit.tokens.size(); ++i) {
        lines.insert(unit.tokens[i].line);
    }
    metrics.sloc = static_cast<std::int64_t>(lines.size());
    return metrics;
}

CategoryFlags classify_categories(const MethodSpan& method) {
    const Node& decl = *method.declaration;
    CategoryFlags flags;
    flags.is_constructor = method.identity.is_constructor;
    flags.is_to_string = !flags.is_constructor && decl.text == "toString" && decl.kids.empty();

    std::set<std::string> params;
    for (const auto& p : decl.kids) {
        params.insert(p->text);
    }
    std::vector<const Node*> statements;
    for (const auto& s : decl.extra->kids) {
        if (s->kind != NodeKind::Empty) {
            statements.push_back(s.get());
        }
    }
    flags.is_empty = statements.empty();
    if (statements.size() != 1) {
        return flags;
    }
    const Node& only = *statements.front();

    auto is_field_ref = [&](const Node* n) {
        n = unparen(n);
        if (n == nullptr) {
            return false;
        }
        if (n->kind == NodeKind::Name) {
            return params.count(n->text) == 0;
        }
        return n->kind == NodeKind::FieldAccess && is_unqualified_this(n->target.get());
    };

    if (only.kind == NodeKind::Return && !only.kids.empty()) {
        flags.is_getter = is_field_ref(only.kids[0].get());
    }
    if (only.kind == NodeKind::ExpressionStatement) {
        const Node* e = unparen(only.kids[0].get());
        if (e->kind == NodeKind::Assign && e->text == "=") {
            const Node* rhs = unparen(e->kids[1].get());
            flags.is_setter = is_field_ref(e->kids[0].get()) && rhs->kind == NodeKind::Name && params.count(rhs->text) > 0;
        }
    }
    if ((only.kind == NodeKind::ExpressionStatement || only.kind == NodeKind::Return) && !only.kids.empty()) {
        const Node* call = unparen(only.kids[0].get());
        const bool same_name =
            (call->kind == NodeKind::MethodCall && call->text == decl.text) ||
            (flags.is_constructor && call->kind == NodeKind::ExplicitConstructorCall && call->text == "this");
        if (same_name && call->kids.size() > params.size()) {
            std::set<std::string> passed;
            for (const auto& arg : call->kids) {
                const Node* a = unparen(arg.get());
                if (a->kind == NodeKind::Name) {
                    passed.insert(a->text);
                }
            }
            flags.is_delegation =
                std::all_of(params.begin(), params.end(), [&](const std::string& p) { return passed.count(p) > 0; });
        }
    }
    return flags;
}

bool contains_lambda(const MethodSpan& method) {
    return method.declaration->extra && has_lambda(*method.declaration->extra);
}

FileAnalysis analyze_source(std::string source, const std::string& file_path, std::string_view project) {
    const ParsedUnit unit = parse_compilation_unit(std::move(source), file_path);
    FileAnalysis out;
    for (const auto& span : enumerate_methods(unit, project)) {
        if (contains_lambda(span)) {
            out.diagnostics.push_back({file_path, span.declaration->line,
                                       "method " + span.identity.type_name + "." + span.identity.method_name +
                                           " contains a lambda expression; excluded"});
            continue;
        }
        out.methods.push_back({span.identity, compute_raw_metrics(unit, span), classify_categories(span)});
    }
    return out;
}

std::vector<std::string> select_sources(const std::filesystem::path& root, const SourceSelection& selection) {
    for (const auto& g : selection.include) {
        validate_glob(g);
    }
    for (const auto& g : selection.exclude) {
        validate_glob(g);
    }
    if (!std::filesystem::is_directory(root)) {
        throw Error("java-analyzer", "source root is not a directory: " + root.string());
    }
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const std::string rel = entry.path().lexically_relative(root).generic_string();
        const auto matches = [&](const std::string& g) { return glob_match(g, rel); };
        if (std::any_of(selection.include.begin(), selection.include.end(), matches) &&
            std::none_of(selection.exclude.begin(), selection.exclude.end(), matches)) {
            files.push_back(rel);
        }
    }
    std::sort(files.begin(), files.end());
    return files;
}

ProjectAnalysis analyze_project(const std::filesystem::path& root, const SourceSelection& selection,
                                std::string_view project, unsigned jobs) {
    const auto files = select_sources(root, selection);
    struct Slot {
        FileAnalysis analysis;
        std::optional<Diagnostic> failure;
    };
    std::vector<Slot> slots(files.size());
    parallel_for(files.size(), jobs, [&](std::size_t i) {
        try {
            slots[i].analysis = analyze_source(read_file(root / files[i]), files[i], project);
        } catch (const ParseError& e) {
            slots[i].failure = Diagnostic{files[i], e.line(), e.what()};
        }
    });
    ProjectAnalysis out;
    for (auto& slot : slots) {
        if (slot.failure) {
            out.skipped_files.push_back(*slot.failure);
            continue;
        }
        ++out.files_analyzed;
        std::move(slot.analysis.methods.begin(), slot.analysis.methods.end(), std::back_inserter(out.methods));
        std::move(slot.analysis.diagnostics.begin(), slot.analysis.diagnostics.end(),
                  std::back_inserter(out.diagnostics));
    }
    std::sort(out.methods.begin(), out.methods.end(),
              [](const AnalyzedMethod& a, const AnalyzedMethod& b) { return a.identity < b.identity; });
    return out;
}

} // namespace idp::java
