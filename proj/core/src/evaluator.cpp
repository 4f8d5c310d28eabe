#include "idp/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <set>

#include "idp/error.hpp"
#include "idp/parallel.hpp"
#include "idp/rng.hpp"

namespace idp {

namespace {

constexpr std::uint64_t kProjectStream = 10;
constexpr std::uint64_t kFoldStream = 11;
constexpr std::uint64_t kTrainStream = 12;
constexpr std::uint64_t kCrossStream = 13;

double ratio(double num, double den) { return den > 0 ? num / den : 0.0; }

constexpr std::array<Variant, 2> kVariants = {Variant::Strict, Variant::Lenient};

} // namespace

std::string_view fdr_flag(FdrKind kind) {
    switch (kind) {
    case FdrKind::Finite: return "";
    case FdrKind::Infinite: return "infinite";
    case FdrKind::ZeroOverZero: return "zero_over_zero";
    }
    return "";
}

FdrValue compute_fdr(double lfr_fraction, double matched_fault_fraction) {
    if (matched_fault_fraction == 0.0) {
        if (lfr_fraction == 0.0) {
            return {0.0, FdrKind::ZeroOverZero};
        }
        return {std::numeric_limits<double>::infinity(), FdrKind::Infinite};
    }
    return {lfr_fraction / matched_fault_fraction, FdrKind::Finite};
}

double median(std::vector<double> values) {
    if (values.empty()) {
        throw Error("evaluator", "median of an empty set");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    if (std::isinf(values[mid - 1]) || std::isinf(values[mid])) {
        return values[mid];
    }
    return (values[mid - 1] + values[mid]) / 2.0;
}

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const bool> faulty, std::size_t k,
                                                       std::uint64_t seed) {
    if (k < 2) {
        throw ConfigError("cross-validation needs at least 2 folds");
    }
    std::vector<std::size_t> pos;
    std::vector<std::size_t> neg;
    for (std::size_t i = 0; i < faulty.size(); ++i) {
        (faulty[i] ? pos : neg).push_back(i);
    }
    if (pos.size() < k || neg.size() < k) {
        throw TooFewMinority("stratified " + std::to_string(k) + "-fold split needs at least " + std::to_string(k) +
                             " faulty and " + std::to_string(k) + " non-faulty methods, got " +
                             std::to_string(pos.size()) + " and " + std::to_string(neg.size()));
    }
    Rng rng(seed);
    rng.shuffle(pos);
    rng.shuffle(neg);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t next = 0;
    for (const auto* group : {&pos, &neg}) {
        for (const auto idx : *group) {
            folds[next % k].push_back(idx);
            ++next;
        }
    }
    for (auto& f : folds) {
        std::sort(f.begin(), f.end());
    }
    return folds;
}

ScopeResult summarize(std::string project, std::string variant, std::string scope,
                      std::span<const MethodPrediction> predictions, double n) {
    ScopeResult r;
    r.project = std::move(project);
    r.variant = std::move(variant);
    r.scope = std::move(scope);
    r.n = n;
    double total_sloc = 0;
    double nonfaulty_lfr = 0;
    for (const auto& p : predictions) {
        r.methods += 1;
        r.faulty += p.faulty ? 1 : 0;
        total_sloc += static_cast<double>(p.sloc);
        if (p.predicted_lfr) {
            r.lfr_methods += 1;
            r.lfr_sloc += static_cast<double>(p.sloc);
            r.faulty_in_lfr += p.faulty ? 1 : 0;
            nonfaulty_lfr += p.faulty ? 0 : 1;
        }
    }
    r.lfr_method_fraction = ratio(r.lfr_methods, r.methods);
    r.lfr_sloc_fraction = ratio(r.lfr_sloc, total_sloc);
    r.faulty_in_lfr_fraction = ratio(r.faulty_in_lfr, r.lfr_methods);
    r.matched_fault_fraction = ratio(r.faulty_in_lfr, r.faulty);
    r.precision = ratio(nonfaulty_lfr, r.lfr_methods);
    r.recall = ratio(nonfaulty_lfr, r.methods - r.faulty);
    r.fdr_methods = compute_fdr(r.lfr_method_fraction, r.matched_fault_fraction);
    r.fdr_sloc = compute_fdr(r.lfr_sloc_fraction, r.matched_fault_fraction);
    return r;
}

void EvaluationReport::append(EvaluationReport&& other) {
    if (mode.empty()) {
        mode = other.mode;
    }
    std::move(other.rows.begin(), other.rows.end(), std::back_inserter(rows));
    std::move(other.fold_rows.begin(), other.fold_rows.end(), std::back_inserter(fold_rows));
    std::move(other.predictions.begin(), other.predictions.end(), std::back_inserter(predictions));
    std::move(other.warnings.begin(), other.warnings.end(), std::back_inserter(warnings));
}

std::uint64_t project_seed(std::uint64_t master, std::string_view project) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : project) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return derive_seed(master, kProjectStream, h);
}

std::vector<std::size_t> assign_folds(std::span<const MethodRecord> rows, std::size_t k, std::uint64_t seed) {
    const auto labeled = labeled_identities(rows);
    // std::vector<bool> is not contiguous, so the flags go into a plain array.
    std::unique_ptr<bool[]> flags(new bool[labeled.size()]);
    for (std::size_t i = 0; i < labeled.size(); ++i) {
        flags[i] = labeled[i].second;
    }
    const auto folds = stratified_kfold(std::span<const bool>(flags.get(), labeled.size()), k, seed);
    std::map<MethodIdentity, std::size_t> fold_of;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        for (const auto idx : folds[f]) {
            fold_of.emplace(labeled[idx].first, f);
        }
    }
    std::vector<std::size_t> out;
    out.reserve(rows.size());
    for (const auto& r : rows) {
        out.push_back(fold_of.at(r.identity));
    }
    return out;
}

EvaluationReport evaluate_within_project(const ProjectData& project, const PipelineConfig& cfg, std::size_t folds,
                                         unsigned jobs) {
    cfg.validate();
    const std::uint64_t pseed = project_seed(cfg.seed, project.name);
    const auto fold_of = assign_folds(project.rows, folds, derive_seed(pseed, kFoldStream, 0));

    struct FoldOutput {
        std::array<std::vector<MethodPrediction>, 2> predictions;
        std::array<std::size_t, 2> n{};
        std::vector<std::string> warnings;
    };
    std::vector<FoldOutput> outputs(folds);
    parallel_for(folds, jobs, [&](std::size_t f) {
        std::vector<MethodRecord> train;
        std::vector<MethodRecord> test;
        for (std::size_t i = 0; i < project.rows.size(); ++i) {
            (fold_of[i] == f ? test : train).push_back(project.rows[i]);
        }
        auto& out = outputs[f];
        const auto model = train_model(train, cfg, derive_seed(pseed, kTrainStream, f));
        for (const auto& w : model.warnings) {
            out.warnings.push_back(project.name + " fold " + std::to_string(f) + ": " + w);
        }
        for (std::size_t v = 0; v < kVariants.size(); ++v) {
            out.predictions[v] = predict(model, kVariants[v], cfg, test);
            out.n[v] = model.selection(kVariants[v]).n;
        }
    });

    EvaluationReport report;
    report.mode = "within";
    for (std::size_t v = 0; v < kVariants.size(); ++v) {
        const std::string vname(variant_name(kVariants[v]));
        std::vector<MethodPrediction> pooled;
        double n_sum = 0;
        for (std::size_t f = 0; f < folds; ++f) {
            const auto& preds = outputs[f].predictions[v];
            report.fold_rows.push_back(summarize(project.name, vname, "fold-" + std::to_string(f), preds,
                                                 static_cast<double>(outputs[f].n[v])));
            n_sum += static_cast<double>(outputs[f].n[v]);
            for (const auto& p : preds) {
                report.predictions.push_back({vname, f, p});
            }
            pooled.insert(pooled.end(), preds.begin(), preds.end());
        }
        report.rows.push_back(summarize(project.name, vname, "pooled", pooled, n_sum / static_cast<double>(folds)));
    }
    for (auto& out : outputs) {
        std::move(out.warnings.begin(), out.warnings.end(), std::back_inserter(report.warnings));
    }
    return report;
}

EvaluationReport evaluate_cross_project(std::span<const ProjectData> projects, std::string_view target,
                                        const PipelineConfig& cfg) {
    cfg.validate();
    if (projects.size() < 2) {
        throw ConfigError("cross-project evaluation needs at least 2 projects");
    }
    const ProjectData* test = nullptr;
    std::vector<MethodRecord> train;
    for (const auto& p : projects) {
        if (p.name == target) {
            test = &p;
        } else {
            train.insert(train.end(), p.rows.begin(), p.rows.end());
        }
    }
    if (test == nullptr) {
        throw ConfigError("target project '" + std::string(target) + "' is not among the inputs");
    }
    const std::uint64_t pseed = project_seed(cfg.seed, target);
    const auto model = train_model(train, cfg, derive_seed(pseed, kCrossStream, 0));

    EvaluationReport report;
    report.mode = "cross";
    for (const auto& w : model.warnings) {
        report.warnings.push_back(std::string(target) + " (cross): " + w);
    }
    for (const auto v : kVariants) {
        const std::string vname(variant_name(v));
        std::vector<std::string> warnings;
        const auto preds = predict(model, v, cfg, test->rows, &warnings);
        report.rows.push_back(summarize(test->name, vname, "pooled", preds, static_cast<double>(model.selection(v).n)));
        for (const auto& p : preds) {
            report.predictions.push_back({vname, 0, p});
        }
    }
    return report;
}

EvaluationReport evaluate_projects(std::span<const ProjectData> projects, std::string_view mode,
                                   const PipelineConfig& cfg, std::size_t folds, unsigned jobs) {
    std::set<std::string> names;
    for (const auto& p : projects) {
        if (!names.insert(p.name).second) {
            throw ConfigError("duplicate project name '" + p.name + "'");
        }
    }
    std::vector<EvaluationReport> parts(projects.size());
    if (mode == "within") {
        if (projects.empty()) {
            throw ConfigError("within-project evaluation needs at least 1 project");
        }
        for (std::size_t i = 0; i < projects.size(); ++i) {
            parts[i] = evaluate_within_project(projects[i], cfg, folds, jobs);
        }
    } else if (mode == "cross") {
        if (projects.size() < 2) {
            throw ConfigError("cross-project evaluation needs at least 2 projects");
        }
        parallel_for(projects.size(), jobs,
                     [&](std::size_t i) { parts[i] = evaluate_cross_project(projects, projects[i].name, cfg); });
    } else {
        throw ConfigError("unknown evaluation mode '" + std::string(mode) + "' (expected within|cross)");
    }
    EvaluationReport report;
    report.mode = std::string(mode);
    for (auto& p : parts) {
        report.append(std::move(p));
    }
    return report;
}

} // namespace idp
