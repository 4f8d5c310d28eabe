#include "idp/report.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "idp/csv.hpp"
#include "idp/error.hpp"

namespace idp {

namespace {

using Field = double ScopeResult::*;

struct NumericColumn {
    const char* name;
    const char* title;  // markdown header
    Field field;
};

constexpr std::array<NumericColumn, 12> kNumeric = {{
    {"methods", "Methods", &ScopeResult::methods},
    {"faulty", "Faulty", &ScopeResult::faulty},
    {"n", "n", &ScopeResult::n},
    {"lfr_methods", "#LFR", &ScopeResult::lfr_methods},
    {"lfr_method_fraction", "%LFR methods", &ScopeResult::lfr_method_fraction},
    {"lfr_sloc", "LFR SLOC", &ScopeResult::lfr_sloc},
    {"lfr_sloc_fraction", "%LFR SLOC", &ScopeResult::lfr_sloc_fraction},
    {"faulty_in_lfr", "#faulty-in-LFR", &ScopeResult::faulty_in_lfr},
    {"faulty_in_lfr_fraction", "%faulty-in-LFR", &ScopeResult::faulty_in_lfr_fraction},
    {"matched_fault_fraction", "%faults matched", &ScopeResult::matched_fault_fraction},
    {"precision", "Precision", &ScopeResult::precision},
    {"recall", "Recall", &ScopeResult::recall},
}};

double parse_number(const std::string& s, const std::string& column) {
    if (s == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    double v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
        throw SchemaError("report column '" + column + "' expects a number, got '" + s + "'");
    }
    return v;
}

FdrKind kind_from_flag(const std::string& flag) {
    if (flag.empty()) {
        return FdrKind::Finite;
    }
    if (flag == "infinite") {
        return FdrKind::Infinite;
    }
    if (flag == "zero_over_zero") {
        return FdrKind::ZeroOverZero;
    }
    throw SchemaError("unknown FDR flag '" + flag + "'");
}

FdrValue aggregate_fdr(const std::vector<double>& values, bool use_median) {
    double v = 0;
    if (use_median) {
        v = median(values);
    } else {
        for (const double x : values) {
            v += x;
        }
        v /= static_cast<double>(values.size());
    }
    return {v, std::isinf(v) ? FdrKind::Infinite : FdrKind::Finite};
}

nlohmann::json number_json(double v) {
    if (std::isinf(v)) {
        return "inf";
    }
    return v;
}

double number_from_json(const nlohmann::json& j) {
    if (j.is_string()) {
        return parse_number(j.get<std::string>(), "json");
    }
    return j.get<double>();
}

void open_for_write(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path, std::ios::binary);
    if (!out) {
        throw Error("evaluator", "cannot open '" + path.string() + "' for writing");
    }
}

} // namespace

std::string format_number(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0";
    }
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::vector<ScopeResult> summary_rows(std::span<const ScopeResult> rows, bool per_project) {
    std::vector<std::pair<std::string, std::string>> groups;
    auto key = [&](const ScopeResult& r) { return std::make_pair(per_project ? r.project : std::string(), r.variant); };
    for (const auto& r : rows) {
        if (std::find(groups.begin(), groups.end(), key(r)) == groups.end()) {
            groups.push_back(key(r));
        }
    }
    std::vector<ScopeResult> out;
    for (const auto& group : groups) {
        std::vector<const ScopeResult*> members;
        for (const auto& r : rows) {
            if (key(r) == group) {
                members.push_back(&r);
            }
        }
        for (const bool use_median : {true, false}) {
            ScopeResult s;
            s.scope = use_median ? "median" : "mean";
            s.project = per_project ? group.first : s.scope;
            s.variant = group.second;
            for (const auto& col : kNumeric) {
                std::vector<double> values;
                for (const auto* m : members) {
                    values.push_back(m->*col.field);
                }
                s.*col.field = aggregate_fdr(values, use_median).value;
            }
            std::vector<double> fm;
            std::vector<double> fs;
            for (const auto* m : members) {
                fm.push_back(m->fdr_methods.value);
                fs.push_back(m->fdr_sloc.value);
            }
            s.fdr_methods = aggregate_fdr(fm, use_median);
            s.fdr_sloc = aggregate_fdr(fs, use_median);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<std::string> report_columns() {
    std::vector<std::string> cols = {"project", "variant", "scope"};
    for (const auto& c : kNumeric) {
        cols.emplace_back(c.name);
    }
    for (const char* c : {"fdr_methods", "fdr_sloc", "fdr_methods_flag", "fdr_sloc_flag"}) {
        cols.emplace_back(c);
    }
    return cols;
}

void write_report_csv(std::ostream& out, std::span<const ScopeResult> rows, const nlohmann::json& config,
                      bool per_project_summary) {
    out << "# run_config=" << config.dump() << '\n';
    csv::write_row(out, report_columns());
    auto emit = [&](const ScopeResult& r) {
        std::vector<std::string> f = {r.project, r.variant, r.scope};
        for (const auto& c : kNumeric) {
            f.push_back(format_number(r.*c.field));
        }
        f.push_back(format_number(r.fdr_methods.value));
        f.push_back(format_number(r.fdr_sloc.value));
        f.emplace_back(fdr_flag(r.fdr_methods.kind));
        f.emplace_back(fdr_flag(r.fdr_sloc.kind));
        csv::write_row(out, f);
    };
    for (const auto& r : rows) {
        emit(r);
    }
    if (!rows.empty()) {
        for (const auto& s : summary_rows(rows, per_project_summary)) {
            emit(s);
        }
    }
}

std::vector<ScopeResult> read_report_csv(std::istream& in) {
    std::size_t line = 0;
    const auto header = csv::read_row(in, line);
    const auto cols = report_columns();
    if (!header || *header != cols) {
        throw SchemaError("report CSV header does not match the report schema");
    }
    std::vector<ScopeResult> out;
    while (auto row = csv::read_row(in, line)) {
        if (row->size() != cols.size()) {
            throw SchemaError("report CSV row " + std::to_string(line) + " has the wrong field count");
        }
        ScopeResult r;
        r.project = (*row)[0];
        r.variant = (*row)[1];
        r.scope = (*row)[2];
        std::size_t i = 3;
        for (const auto& c : kNumeric) {
            r.*c.field = parse_number((*row)[i], c.name);
            ++i;
        }
        r.fdr_methods.value = parse_number((*row)[i++], "fdr_methods");
        r.fdr_sloc.value = parse_number((*row)[i++], "fdr_sloc");
        r.fdr_methods.kind = kind_from_flag((*row)[i++]);
        r.fdr_sloc.kind = kind_from_flag((*row)[i++]);
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json scope_to_json(const ScopeResult& r) {
    nlohmann::json j = {{"project", r.project}, {"variant", r.variant}, {"scope", r.scope}};
    for (const auto& c : kNumeric) {
        j[c.name] = number_json(r.*c.field);
    }
    j["fdr_methods"] = number_json(r.fdr_methods.value);
    j["fdr_sloc"] = number_json(r.fdr_sloc.value);
    j["fdr_methods_flag"] = fdr_flag(r.fdr_methods.kind);
    j["fdr_sloc_flag"] = fdr_flag(r.fdr_sloc.kind);
    return j;
}

ScopeResult scope_from_json(const nlohmann::json& j) {
    ScopeResult r;
    try {
        r.project = j.at("project").get<std::string>();
        r.variant = j.at("variant").get<std::string>();
        r.scope = j.at("scope").get<std::string>();
        for (const auto& c : kNumeric) {
            r.*c.field = number_from_json(j.at(c.name));
        }
        r.fdr_methods = {number_from_json(j.at("fdr_methods")),
                         kind_from_flag(j.at("fdr_methods_flag").get<std::string>())};
        r.fdr_sloc = {number_from_json(j.at("fdr_sloc")), kind_from_flag(j.at("fdr_sloc_flag").get<std::string>())};
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed report row: ") + e.what());
    }
    return r;
}

nlohmann::json report_to_json(const EvaluationReport& report, const nlohmann::json& config) {
    auto rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back(scope_to_json(r));
    }
    auto summary = nlohmann::json::array();
    if (!report.rows.empty()) {
        for (const auto& s : summary_rows(report.rows)) {
            summary.push_back(scope_to_json(s));
        }
    }
    auto folds = nlohmann::json::array();
    for (const auto& r : report.fold_rows) {
        folds.push_back(scope_to_json(r));
    }
    return {{"config", config},   {"mode", report.mode},         {"rows", std::move(rows)},
            {"summary", summary}, {"folds", std::move(folds)}, {"warnings", report.warnings}};
}

void write_report_markdown(std::ostream& out, std::span<const ScopeResult> rows, const nlohmann::json& config) {
    out << "<!-- run_config=" << config.dump() << " -->\n\n";
    out << "| Project | Variant |";
    for (const auto& c : kNumeric) {
        out << ' ' << c.title << " |";
    }
    out << " FDR (methods) | FDR (SLOC) |\n|---|---|";
    for (std::size_t i = 0; i < kNumeric.size(); ++i) {
        out << "---:|";
    }
    out << "---:|---:|\n";
    auto cell = [](double v) {
        if (std::isinf(v)) {
            return std::string("∞");
        }
        std::array<char, 32> buf{};
        // counts (and their medians) stay integral; means and ratios get 3 decimals
        const int digits = v == std::floor(v) && std::fabs(v) < 1e15 ? 0 : 3;
        const auto [end, ec] =
            std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
        return std::string(buf.data(), end);
    };
    auto fdr_cell = [&](const FdrValue& f) {
        return f.kind == FdrKind::ZeroOverZero ? std::string("0 (0/0)") : cell(f.value);
    };
    auto emit = [&](const ScopeResult& r) {
        out << "| " << r.project << " | " << r.variant << " |";
        for (const auto& c : kNumeric) {
            out << ' ' << cell(r.*c.field) << " |";
        }
        out << ' ' << fdr_cell(r.fdr_methods) << " | " << fdr_cell(r.fdr_sloc) << " |\n";
    };
    for (const auto& r : rows) {
        emit(r);
    }
    if (!rows.empty()) {
        for (const auto& s : summary_rows(rows)) {
            emit(s);
        }
    }
}

void write_predictions_csv(std::ostream& out, std::span<const PredictionRecord> predictions,
                           const nlohmann::json& config) {
    out << "# run_config=" << config.dump() << '\n';
    csv::write_row(out, {"project", "file_path", "type_name", "method_name", "param_signature", "variant", "fold",
                         "predicted_lfr", "faulty", "matched_rule_index"});
    for (const auto& rec : predictions) {
        const auto& p = rec.prediction;
        csv::write_row(out, {p.identity.project, p.identity.file_path, p.identity.type_name, p.identity.method_name,
                             p.identity.joined_signature(), rec.variant, std::to_string(rec.fold),
                             p.predicted_lfr ? "1" : "0", p.faulty ? "1" : "0",
                             p.matched_rule ? std::to_string(*p.matched_rule) : std::string()});
    }
}

std::vector<std::filesystem::path> emit_report(const EvaluationReport& report, const std::filesystem::path& dir,
                                               const std::vector<std::string>& formats, const nlohmann::json& config,
                                               bool dump_predictions) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> written;
    for (const auto& fmt : formats) {
        std::ofstream out;
        if (fmt == "csv") {
            written.push_back(dir / "report.csv");
            open_for_write(out, written.back());
            write_report_csv(out, report.rows, config);
        } else if (fmt == "json") {
            written.push_back(dir / "report.json");
            open_for_write(out, written.back());
            out << report_to_json(report, config).dump(2) << '\n';
        } else if (fmt == "markdown" || fmt == "md") {
            written.push_back(dir / "report.md");
            open_for_write(out, written.back());
            write_report_markdown(out, report.rows, config);
        } else {
            throw ConfigError("unknown report format '" + fmt + "' (expected csv|json|markdown)");
        }
    }
    if (!report.fold_rows.empty()) {
        written.push_back(dir / "folds.csv");
        std::ofstream out;
        open_for_write(out, written.back());
        write_report_csv(out, report.fold_rows, config, true);
    }
    if (dump_predictions) {
        written.push_back(dir / "predictions.csv");
        std::ofstream out;
        open_for_write(out, written.back());
        write_predictions_csv(out, report.predictions, config);
    }
    return written;
}

} // namespace idp
