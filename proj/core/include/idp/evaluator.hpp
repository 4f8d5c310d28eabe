#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "idp/dataset.hpp"
#include "idp/lfr_classifier.hpp"
#include "idp/pipeline.hpp"

namespace idp {

enum class FdrKind : std::uint8_t { Finite, Infinite, ZeroOverZero };

struct FdrValue {
    double value = 0.0;  // +inf for Infinite, 0 for ZeroOverZero
    FdrKind kind = FdrKind::Finite;

    bool operator==(const FdrValue&) const = default;
};

std::string_view fdr_flag(FdrKind kind);  // "", "infinite", "zero_over_zero"

/// lfr_fraction / matched_fault_fraction. x/0 is infinite; 0/0 is reported
/// as 0 and flagged.
FdrValue compute_fdr(double lfr_fraction, double matched_fault_fraction);

/// Median of the values; the mean of the two middle values for even sizes.
/// Infinite values sort last. Throws on empty input.
double median(std::vector<double> values);

/// Deals the indices into k partitions: faulty and non-faulty indices are
/// shuffled separately, then dealt round-robin (faulty first) into one
/// running sequence, so partition sizes and per-partition faulty counts each
/// differ by at most one. Each partition is sorted ascending. Throws
/// TooFewMinority when either class has fewer than k members.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const bool> faulty, std::size_t k,
                                                       std::uint64_t seed);

/// One report row: a project (pooled over its held-out predictions) or a
/// single fold, for one classifier variant. Counts are stored as doubles so
/// median/mean summary rows share the type.
struct ScopeResult {
    std::string project;
    std::string variant;
    std::string scope;  // "pooled", "fold-<i>", "median", "mean"
    double methods = 0;
    double faulty = 0;
    double n = 0;  // selected prefix length (mean over folds for pooled rows)
    double lfr_methods = 0;
    double lfr_method_fraction = 0;
    double lfr_sloc = 0;
    double lfr_sloc_fraction = 0;
    double faulty_in_lfr = 0;
    double faulty_in_lfr_fraction = 0;   // faults in LFR / LFR size
    double matched_fault_fraction = 0;   // faults in LFR / all faults
    double precision = 0;                // non-faulty LFR / LFR
    double recall = 0;                   // non-faulty LFR / non-faulty
    FdrValue fdr_methods;
    FdrValue fdr_sloc;

    bool operator==(const ScopeResult&) const = default;
};

/// Fills every count and ratio from held-out predictions. Empty
/// denominators give 0 for fractions, precision and recall.
ScopeResult summarize(std::string project, std::string variant, std::string scope,
                      std::span<const MethodPrediction> predictions, double n);

struct PredictionRecord {
    std::string variant;
    std::size_t fold = 0;
    MethodPrediction prediction;
};

struct EvaluationReport {
    std::string mode;  // "within" or "cross"
    std::vector<ScopeResult> rows;       // one per project and variant
    std::vector<ScopeResult> fold_rows;  // within mode only
    std::vector<PredictionRecord> predictions;
    std::vector<std::string> warnings;

    void append(EvaluationReport&& other);
};

struct ProjectData {
    std::string name;
    Dataset rows;
};

/// Seed of one project's scope: independent of list order.
std::uint64_t project_seed(std::uint64_t master, std::string_view project);

/// Fold of every row; rows of one identity share a fold.
std::vector<std::size_t> assign_folds(std::span<const MethodRecord> rows, std::size_t k, std::uint64_t seed);

/// Stratified k-fold cross-validation on one project: each fold trains the
/// full pipeline on the other folds and classifies the held-out methods.
EvaluationReport evaluate_within_project(const ProjectData& project, const PipelineConfig& cfg, std::size_t folds,
                                         unsigned jobs = 1);

/// Trains once on every project except `target` and classifies the target.
EvaluationReport evaluate_cross_project(std::span<const ProjectData> projects, std::string_view target,
                                        const PipelineConfig& cfg);

/// Runs evaluate_within_project for each project, or leave-one-out
/// evaluate_cross_project for each target, merging rows in input order.
EvaluationReport evaluate_projects(std::span<const ProjectData> projects, std::string_view mode,
                                   const PipelineConfig& cfg, std::size_t folds, unsigned jobs = 1);

} // namespace idp
