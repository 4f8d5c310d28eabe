#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idp/evaluator.hpp"

namespace idp {

/// Shortest decimal that reads back to the same double; "inf" for +inf.
std::string format_number(double v);

/// Median and mean rows per variant, or per (project, variant) when
/// `per_project`; groups in order of first appearance.
std::vector<ScopeResult> summary_rows(std::span<const ScopeResult> rows, bool per_project = false);

std::vector<std::string> report_columns();

/// `# run_config=<json>` line, header, the rows, then their summary rows.
void write_report_csv(std::ostream& out, std::span<const ScopeResult> rows, const nlohmann::json& config,
                      bool per_project_summary = false);
/// Reads every data row back, summary rows included.
std::vector<ScopeResult> read_report_csv(std::istream& in);

nlohmann::json scope_to_json(const ScopeResult& r);
ScopeResult scope_from_json(const nlohmann::json& j);

/// `{"config", "mode", "rows", "summary", "folds", "warnings"}`
nlohmann::json report_to_json(const EvaluationReport& report, const nlohmann::json& config);

void write_report_markdown(std::ostream& out, std::span<const ScopeResult> rows, const nlohmann::json& config);

/// identity columns, variant, predicted_lfr, faulty, matched_rule_index
/// (empty when no rule matched).
void write_predictions_csv(std::ostream& out, std::span<const PredictionRecord> predictions,
                           const nlohmann::json& config);

/// Writes report.<fmt> for each requested format (csv, json, markdown), plus
/// folds.csv (with per-project fold medians) in within mode and predictions.csv when `dump_predictions`.
/// Returns the written paths.
std::vector<std::filesystem::path> emit_report(const EvaluationReport& report, const std::filesystem::path& dir,
                                               const std::vector<std::string>& formats, const nlohmann::json& config,
                                               bool dump_predictions = true);

} // namespace idp
