#include "idp/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "idp/rng.hpp"

namespace idp {

namespace {

enum class Kind { Getter, Setter, Empty, Delegation, Constructor, ToString, Complex };

const std::array<std::string, 8> kTypes = {"int", "String", "long", "boolean", "Object", "List", "double", "Map"};

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
}

/// Number of successes in `trials` draws with probability p.
std::int64_t binomial(Rng& rng, std::int64_t trials, double p) {
    std::int64_t n = 0;
    for (std::int64_t i = 0; i < trials; ++i) {
        n += rng.unit() < p ? 1 : 0;
    }
    return n;
}

void set(RawMetrics& m, ConstructKind k, std::int64_t v) { m.count(k) = v; }

RawMetrics trivial_metrics(Kind kind, std::size_t params, Rng& rng, CategoryFlags& cat) {
    RawMetrics m;
    m.cyclomatic_complexity = 1;
    switch (kind) {
    case Kind::Getter:
        cat.is_getter = true;
        m.sloc = rng.below(4) == 0 ? 1 : 3;
        m.unique_variable_ids = 1;
        set(m, ConstructKind::ReturnStatement, 1);
        break;
    case Kind::Setter:
        cat.is_setter = true;
        m.sloc = rng.below(4) == 0 ? 1 : 3;
        m.unique_variable_ids = 2;
        set(m, ConstructKind::Assignment, 1);
        break;
    case Kind::Empty:
        cat.is_empty = true;
        m.sloc = uniform(rng, 1, 2);
        break;
    case Kind::Delegation:
        cat.is_delegation = true;
        m.sloc = 3;
        m.unique_variable_ids = static_cast<std::int64_t>(params);
        m.max_chaining = 1;
        set(m, ConstructKind::MethodInvocation, 1);
        set(m, ConstructKind::ReturnStatement, rng.coin() ? 1 : 0);
        if (rng.below(3) == 0) {
            set(m, ConstructKind::NullLiteral, 1);
        }
        break;
    case Kind::Constructor: {
        cat.is_constructor = true;
        const auto assigns = static_cast<std::int64_t>(params);
        m.sloc = 2 + assigns;
        m.unique_variable_ids = 2 * assigns;
        set(m, ConstructKind::Assignment, assigns);
        if (rng.below(3) == 0) {
            m.sloc += 1;
            m.max_chaining = 1;
            set(m, ConstructKind::MethodInvocation, 1);
        }
        if (assigns == 1 && m.max_chaining == 0) {
            cat.is_setter = true;
        }
        break;
    }
    case Kind::ToString: {
        cat.is_to_string = true;
        m.sloc = 3;
        const auto parts = uniform(rng, 1, 3);
        m.unique_variable_ids = parts;
        set(m, ConstructKind::ReturnStatement, 1);
        set(m, ConstructKind::StringLiteral, parts);
        set(m, ConstructKind::ArithmeticInfixOp, 2 * parts - 1);
        break;
    }
    case Kind::Complex: break;
    }
    return m;
}

RawMetrics complex_metrics(Rng& rng, CategoryFlags& cat, bool constructor) {
    cat.is_constructor = constructor;
    RawMetrics m;
    // Heavy-tailed size: 10 .. ~150 lines, always with some branching.
    const double u = rng.unit();
    m.sloc = 10 + static_cast<std::int64_t>(std::floor(std::exp(u * 5.0) - 1.0));
    const std::int64_t lines = m.sloc;
    const std::int64_t statements = std::max<std::int64_t>(2, lines * 3 / 4);

    const auto ifs = 2 + binomial(rng, statements, 0.15);
    const auto loops = binomial(rng, statements, 0.1);
    const bool has_switch = rng.below(8) == 0;
    const auto cases = has_switch ? uniform(rng, 2, 6) : 0;
    const bool has_try = rng.below(5) == 0;
    const auto catches = has_try ? uniform(rng, 1, 2) : 0;
    const auto ternaries = binomial(rng, statements, 0.03);
    const auto logical = binomial(rng, ifs + loops, 0.35);
    const auto short_circuit = binomial(rng, logical, 0.8);
    const auto invocations = binomial(rng, statements, 0.6) + 1;

    set(m, ConstructKind::IfCondition, ifs);
    set(m, ConstructKind::ElseBlock, 1 + binomial(rng, ifs - 1, 0.5));
    set(m, ConstructKind::SwitchCaseBlock, cases);
    set(m, ConstructKind::TernaryOperation, ternaries);
    set(m, ConstructKind::Loop, loops);
    set(m, ConstructKind::TryBlock, has_try ? 1 : 0);
    set(m, ConstructKind::CatchClause, catches);
    set(m, ConstructKind::FinallyBlock, has_try && rng.below(3) == 0 ? 1 : 0);
    set(m, ConstructKind::ThrowStatement, binomial(rng, ifs, 0.2));
    set(m, ConstructKind::ReturnStatement, constructor ? 0 : 1 + binomial(rng, ifs, 0.3));
    set(m, ConstructKind::CastExpression, binomial(rng, statements, 0.1));
    set(m, ConstructKind::InstanceofExpression, binomial(rng, ifs, 0.1));
    const auto null_checks = binomial(rng, ifs, 0.3);
    set(m, ConstructKind::NullCheck, null_checks);
    set(m, ConstructKind::NullLiteral, null_checks + binomial(rng, statements, 0.03));
    set(m, ConstructKind::ArithmeticInfixOp, binomial(rng, statements, 0.3));
    set(m, ConstructKind::Incrementation, loops + binomial(rng, statements, 0.05));
    set(m, ConstructKind::Decrementation, binomial(rng, statements, 0.02));
    set(m, ConstructKind::LogicalOperator, logical);
    set(m, ConstructKind::ComparisonOperator, ifs + loops + ternaries + binomial(rng, statements, 0.05));
    set(m, ConstructKind::Assignment, 1 + binomial(rng, statements, 0.35));
    set(m, ConstructKind::ArrayAccess, binomial(rng, statements, 0.1));
    set(m, ConstructKind::ArrayCreation, binomial(rng, statements, 0.02));
    const auto anonymous = binomial(rng, statements, 0.01);
    set(m, ConstructKind::AnonymousClass, anonymous);
    set(m, ConstructKind::ObjectCreation, anonymous + binomial(rng, statements, 0.1));
    set(m, ConstructKind::StringLiteral, binomial(rng, statements, 0.2));
    set(m, ConstructKind::MethodInvocation, invocations);

    m.cyclomatic_complexity = 1 + ifs + loops + cases + catches + ternaries + short_circuit;
    const std::int64_t blocks = ifs + loops + (has_switch ? 1 : 0) + (has_try ? 1 : 0);
    m.max_nesting = std::min<std::int64_t>(blocks, uniform(rng, 1, 4));
    m.max_chaining = std::min<std::int64_t>(invocations, uniform(rng, 1, 4));
    m.unique_variable_ids = 1 + lines / 4 + static_cast<std::int64_t>(rng.below(4));
    return m;
}

/// Small edit applied to a faulty-state row of a re-fixed method.
RawMetrics perturb(RawMetrics m, Rng& rng) {
    if (m.sloc > 4) {
        m.sloc += uniform(rng, -2, 2);
    }
    if (m.count(ConstructKind::IfCondition) > 0 && rng.coin()) {
        m.count(ConstructKind::IfCondition) -= 1;
        m.cyclomatic_complexity -= 1;
    }
    return m;
}

} // namespace

Dataset generate_synthetic_project(const std::string& name, const SyntheticConfig& cfg) {
    Rng rng(cfg.seed);
    const double complex_rate = std::min(1.0, cfg.trivial_fault_rate * cfg.fault_rate_ratio);
    Dataset rows;
    rows.reserve(cfg.methods + cfg.methods / 4);
    const std::size_t per_class = 12;
    for (std::size_t i = 0; i < cfg.methods; ++i) {
        const std::size_t cls = i / per_class;
        MethodIdentity id;
        id.project = name;
        id.type_name = "Type" + std::to_string(cls);
        id.file_path = "src/main/java/" + name + "/pkg" + std::to_string(cls % 17) + "/" + id.type_name + ".java";

        const bool trivial = rng.unit() < cfg.trivial_share;
        Kind kind = Kind::Complex;
        if (trivial) {
            const auto pick = rng.below(100);
            kind = pick < 35   ? Kind::Getter
                   : pick < 60 ? Kind::Setter
                   : pick < 70 ? Kind::Empty
                   : pick < 82 ? Kind::Delegation
                   : pick < 94 ? Kind::Constructor
                               : Kind::ToString;
        }
        std::size_t params = 0;
        switch (kind) {
        case Kind::Setter: params = 1; break;
        case Kind::Delegation:
        case Kind::Constructor: params = 1 + rng.below(3); break;
        case Kind::Complex: params = rng.below(4); break;
        default: break;
        }
        for (std::size_t p = 0; p < params; ++p) {
            id.param_signature.push_back(kTypes[rng.below(kTypes.size())]);
        }

        CategoryFlags cat;
        RawMetrics metrics;
        if (kind == Kind::Complex) {
            const bool ctor = rng.below(30) == 0;
            metrics = complex_metrics(rng, cat, ctor);
        } else {
            metrics = trivial_metrics(kind, params, rng, cat);
        }
        id.is_constructor = cat.is_constructor;
        if (cat.is_constructor || kind == Kind::ToString) {
            // one nested type per constructor / toString keeps identities unique
            const std::string inner = "Part" + std::to_string(i);
            id.type_name += "." + inner;
            id.method_name = cat.is_constructor ? inner : "toString";
        } else {
            id.method_name = (kind == Kind::Complex ? "op" : "m") + std::to_string(i);
        }

        const bool faulty = rng.unit() < (trivial ? cfg.trivial_fault_rate : complex_rate);
        rows.push_back({id, metrics, cat, false, Snapshot::Current});
        if (faulty) {
            rows.push_back({id, metrics, cat, true, Snapshot::Faulty});
            if (rng.unit() < cfg.refix_rate) {
                rows.push_back({id, perturb(metrics, rng), cat, true, Snapshot::Faulty});
            }
        }
    }
    return rows;
}

std::vector<ProjectData> generate_synthetic_corpus(std::size_t count, std::uint64_t seed) {
    std::vector<ProjectData> out;
    for (std::size_t p = 0; p < count; ++p) {
        Rng rng(derive_seed(seed, 20, p));
        SyntheticConfig cfg;
        cfg.methods = 1800 + static_cast<std::size_t>(rng.below(401));
        cfg.trivial_share = 0.2 + 0.1 * rng.unit();
        cfg.trivial_fault_rate = 0.01 + 0.01 * rng.unit();
        cfg.seed = derive_seed(seed, 21, p);
        std::string name = "synth-";
        name += static_cast<char>('a' + p % 26);
        if (p >= 26) {
            name += std::to_string(p / 26);
        }
        out.push_back({name, generate_synthetic_project(name, cfg)});
    }
    return out;
}

} // namespace idp
