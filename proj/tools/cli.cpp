#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "idp/dataset.hpp"
#include "idp/error.hpp"
#include "idp/evaluator.hpp"
#include "idp/glob.hpp"
#include "idp/java/analyzer.hpp"
#include "idp/parallel.hpp"
#include "idp/pipeline.hpp"
#include "idp/report.hpp"
#include "idp/rng.hpp"
#include "idp/synthetic.hpp"

namespace idp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

/// Seed stream of the single training scope of `idp train`.
constexpr std::uint64_t kTrainStream = 20;

/// Effective settings of one run: defaults, then the config file, then flags.
struct RunConfig {
    PipelineConfig pipeline;
    std::size_t folds = 10;
    unsigned jobs = 0;  // 0 = all cores
    std::vector<std::string> include = {"**/*.java"};
    std::vector<std::string> exclude;
    std::vector<std::string> formats = {"csv", "json", "markdown"};
    bool predictions = true;

    /// Everything that can change an output byte. `jobs` is left out on
    /// purpose: results do not depend on it.
    json echo() const {
        auto j = pipeline.to_json();
        j["folds"] = folds;
        j["include"] = include;
        j["exclude"] = exclude;
        return j;
    }
};

/// Command-line overrides; unset means "keep what the file or default says".
struct Flags {
    std::optional<std::string> config_file;
    std::optional<double> min_support;
    std::optional<double> min_confidence;
    std::optional<std::size_t> max_antecedent_len;
    std::optional<double> budget_strict;
    std::optional<double> budget_lenient;
    std::optional<std::size_t> folds;
    std::optional<std::uint64_t> seed;
    std::optional<double> smote_over;
    std::optional<double> smote_under;
    std::optional<std::size_t> smote_k;
    bool no_smote = false;
    std::optional<unsigned> jobs;
    std::vector<std::string> include;
    std::vector<std::string> exclude;
    std::vector<std::string> formats;
    bool no_predictions = false;
};

const std::set<std::string> kConfigKeys = {
    "min_support", "min_confidence", "max_antecedent_len", "smote",   "smote_over", "smote_under",
    "smote_k",     "budget_strict",  "budget_lenient",     "seed",    "folds",      "jobs",
    "include",     "exclude",        "formats",            "predictions"};

json read_json_file(const fs::path& path, const std::string& what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cli", "cannot open " + what + " '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

RunConfig resolve(const Flags& f) {
    RunConfig rc;
    if (f.config_file) {
        const auto j = read_json_file(*f.config_file, "config file");
        if (!j.is_object()) {
            throw ConfigError(*f.config_file + ": expected a JSON object");
        }
        for (const auto& [key, value] : j.items()) {
            if (kConfigKeys.count(key) == 0) {
                throw ConfigError(*f.config_file + ": unknown key '" + key + "'");
            }
        }
        rc.pipeline = PipelineConfig::from_json(j);
        try {
            rc.folds = j.value("folds", rc.folds);
            rc.jobs = j.value("jobs", rc.jobs);
            rc.include = j.value("include", rc.include);
            rc.exclude = j.value("exclude", rc.exclude);
            rc.formats = j.value("formats", rc.formats);
            rc.predictions = j.value("predictions", rc.predictions);
        } catch (const json::exception& e) {
            throw ConfigError(*f.config_file + ": " + e.what());
        }
    }
    auto& p = rc.pipeline;
    if (f.min_support) p.mining.min_support = *f.min_support;
    if (f.min_confidence) p.mining.min_confidence = *f.min_confidence;
    if (f.max_antecedent_len) p.mining.max_antecedent_len = *f.max_antecedent_len;
    if (f.budget_strict) p.budget_strict = *f.budget_strict;
    if (f.budget_lenient) p.budget_lenient = *f.budget_lenient;
    if (f.seed) p.seed = *f.seed;
    if (f.smote_over) p.smote.percent_over = *f.smote_over;
    if (f.smote_under) p.smote.percent_under = *f.smote_under;
    if (f.smote_k) p.smote.k_neighbors = *f.smote_k;
    if (f.no_smote) p.use_smote = false;
    if (f.folds) rc.folds = *f.folds;
    if (f.jobs) rc.jobs = *f.jobs;
    if (!f.include.empty()) rc.include = f.include;
    if (!f.exclude.empty()) rc.exclude = f.exclude;
    if (!f.formats.empty()) rc.formats = f.formats;
    if (f.no_predictions) rc.predictions = false;

    p.validate();
    if (rc.folds < 2) {
        throw ConfigError("folds must be at least 2");
    }
    for (const auto& g : rc.include) validate_glob(g);
    for (const auto& g : rc.exclude) validate_glob(g);
    for (const auto& fmt : rc.formats) {
        if (fmt != "csv" && fmt != "json" && fmt != "markdown") {
            throw ConfigError("unknown report format '" + fmt + "' (expected csv, json or markdown)");
        }
    }
    if (rc.jobs == 0) {
        rc.jobs = default_jobs();
    }
    return rc;
}

void add_pipeline_flags(CLI::App& cmd, Flags& f) {
    cmd.add_option("--config", f.config_file, "JSON config file; flags override its values");
    cmd.add_option("--min-support", f.min_support, "minimum rule support (0, 0.5]");
    cmd.add_option("--min-confidence", f.min_confidence, "minimum rule confidence (0, 1]");
    cmd.add_option("--max-antecedent-len", f.max_antecedent_len, "longest antecedent explored");
    cmd.add_option("--budget-strict", f.budget_strict, "fault budget of the strict classifier");
    cmd.add_option("--budget-lenient", f.budget_lenient, "fault budget of the lenient classifier");
    cmd.add_option("--seed", f.seed, "master seed");
    cmd.add_option("--smote-over", f.smote_over, "SMOTE oversampling percentage");
    cmd.add_option("--smote-under", f.smote_under, "SMOTE undersampling percentage");
    cmd.add_option("--smote-k", f.smote_k, "SMOTE nearest neighbours");
    cmd.add_flag("--no-smote", f.no_smote, "mine on the unbalanced training set");
    cmd.add_option("--jobs", f.jobs, "worker threads (default: all cores)");
}

void warn(std::ostream& err, const std::string& message) { err << "warning: " << message << '\n'; }

void warn_all(std::ostream& err, const std::vector<std::string>& messages) {
    for (const auto& m : messages) {
        warn(err, m);
    }
}

std::string config_comment(const json& echo) { return "run_config=" + echo.dump(); }

Dataset read_all(const std::vector<std::string>& csvs) {
    Dataset rows;
    for (const auto& path : csvs) {
        auto part = read_csv(fs::path(path));
        rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return rows;
}

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) {
        fs::create_directories(file.parent_path());
    }
}

// ---- extract ---------------------------------------------------------------

struct ExtractArgs {
    std::string source_root;
    std::string out;
    std::optional<std::string> labels;
    std::optional<std::string> project;
};

void cmd_extract(const ExtractArgs& a, const RunConfig& rc, std::ostream& err) {
    const fs::path root(a.source_root);
    if (!fs::is_directory(root)) {
        throw Error("cli", "source root '" + a.source_root + "' is not a directory");
    }
    const std::string project =
        a.project ? *a.project : fs::weakly_canonical(root).filename().string();
    const java::SourceSelection selection{rc.include, rc.exclude};
    const auto analysis = java::analyze_project(root, selection, project, rc.jobs);

    if (analysis.files_analyzed == 0 && analysis.skipped_files.empty()) {
        warn(err, "no source files selected under '" + a.source_root + "'");
    }
    for (const auto& d : analysis.skipped_files) {
        warn(err, "skipped " + d.file_path + ": " + d.message);
    }
    for (const auto& d : analysis.diagnostics) {
        warn(err, d.file_path + ":" + std::to_string(d.line) + ": " + d.message);
    }
    if (!analysis.skipped_files.empty()) {
        warn(err, std::to_string(analysis.skipped_files.size()) + " of " +
                      std::to_string(analysis.files_analyzed + analysis.skipped_files.size()) +
                      " file(s) could not be parsed and were skipped");
    }

    // Labels match on identity without the project column, which a label
    // file may omit.
    std::set<MethodIdentity> faulty;
    if (a.labels) {
        for (auto id : read_label_file(*a.labels)) {
            id.project.clear();
            faulty.insert(std::move(id));
        }
    }
    Dataset rows;
    std::set<MethodIdentity> unmatched = faulty;
    for (const auto& m : analysis.methods) {
        rows.push_back({m.identity, m.metrics, m.categories, false, Snapshot::Current});
        auto key = m.identity;
        key.project.clear();
        key.is_constructor = false;
        if (faulty.count(key) != 0) {
            // The analyzed tree stands in for the faulty state of labeled methods.
            rows.push_back({m.identity, m.metrics, m.categories, true, Snapshot::Faulty});
            unmatched.erase(key);
        }
    }
    for (const auto& id : unmatched) {
        warn(err, "label not found in the source tree: " + id.file_path + " " + id.type_name + "." + id.method_name +
                      "(" + id.joined_signature() + ")");
    }
    if (!unmatched.empty()) {
        warn(err, std::to_string(unmatched.size()) + " labeled method(s) were not found in the source tree");
    }

    json echo = rc.echo();
    echo["command"] = "extract";
    echo["project"] = project;
    echo["source_root"] = a.source_root;
    echo["labels"] = a.labels ? json(*a.labels) : json(nullptr);
    ensure_parent(a.out);
    write_csv(fs::path(a.out), rows, config_comment(echo));
}

// ---- train -----------------------------------------------------------------

void cmd_train(const std::vector<std::string>& csvs, const std::string& out, const RunConfig& rc,
               std::ostream& err) {
    const auto rows = read_all(csvs);
    const auto model = train_model(rows, rc.pipeline, derive_seed(rc.pipeline.seed, kTrainStream, 0));
    warn_all(err, model.warnings);
    for (const auto v : {Variant::Strict, Variant::Lenient}) {
        if (model.selection(v).no_admissible_rules) {
            warn(err, std::string(variant_name(v)) + " classifier: no admissible rules (n = 0)");
        }
    }
    json echo = rc.echo();
    echo["command"] = "train";
    echo["inputs"] = csvs;
    ensure_parent(out);
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        throw Error("cli", "cannot write '" + out + "'");
    }
    f << model.to_json(rc.pipeline, echo).dump(2) << '\n';
}

// ---- predict ---------------------------------------------------------------

void cmd_predict(const std::string& model_path, const std::string& target, const std::string& out,
                 const std::string& variant, std::ostream& err) {
    PipelineConfig cfg;
    const auto model = TrainedModel::from_json(read_json_file(model_path, "classifier"), &cfg);
    const auto rows = read_csv(fs::path(target));

    std::vector<Variant> variants;
    if (variant == "both") {
        variants = {Variant::Strict, Variant::Lenient};
    } else {
        variants = {variant_from_name(variant)};
    }
    std::vector<PredictionRecord> records;
    std::vector<std::string> warnings;
    for (const auto v : variants) {
        for (auto& p : predict(model, v, cfg, rows, v == variants.front() ? &warnings : nullptr)) {
            records.push_back({std::string(variant_name(v)), 0, std::move(p)});
        }
    }
    warn_all(err, warnings);
    json echo = cfg.to_json();
    echo["command"] = "predict";
    echo["classifier"] = model_path;
    echo["target"] = target;
    echo["variant"] = variant;
    ensure_parent(out);
    std::ofstream f(out, std::ios::binary);
    if (!f) {
        throw Error("cli", "cannot write '" + out + "'");
    }
    write_predictions_csv(f, records, echo);
}

// ---- evaluate --------------------------------------------------------------

/// Groups rows by their project column, in order of first appearance.
std::vector<ProjectData> split_projects(Dataset rows) {
    std::vector<ProjectData> projects;
    std::map<std::string, std::size_t> index;
    for (auto& r : rows) {
        auto [it, fresh] = index.try_emplace(r.identity.project, projects.size());
        if (fresh) {
            projects.push_back({r.identity.project, {}});
        }
        projects[it->second].rows.push_back(std::move(r));
    }
    return projects;
}

void cmd_evaluate(const std::vector<std::string>& csvs, const std::string& mode, const std::string& out_dir,
                  const RunConfig& rc, std::ostream& err) {
    const auto projects = split_projects(read_all(csvs));
    if (projects.empty()) {
        throw Error("cli", "no methods in the input CSV(s)");
    }
    if (mode == "cross" && projects.size() < 2) {
        throw ConfigError("cross mode needs at least 2 projects, got " + std::to_string(projects.size()));
    }
    const auto report = evaluate_projects(projects, mode, rc.pipeline, rc.folds, rc.jobs);
    warn_all(err, report.warnings);
    json echo = rc.echo();
    echo["command"] = "evaluate";
    echo["mode"] = mode;
    echo["inputs"] = csvs;
    emit_report(report, out_dir, rc.formats, echo, rc.predictions);
}

// ---- generate --------------------------------------------------------------

void cmd_generate(const std::string& out_dir, std::size_t count, std::uint64_t seed) {
    fs::create_directories(out_dir);
    const json echo = {{"command", "generate"}, {"projects", count}, {"seed", seed}};
    for (const auto& p : generate_synthetic_corpus(count, seed)) {
        write_csv(fs::path(out_dir) / (p.name + ".csv"), p.rows, config_comment(echo));
    }
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& err) {
    CLI::App app{"Inverse defect prediction: find methods with low fault risk"};
    app.name("idp");
    app.require_subcommand(1);
    app.set_version_flag("--version", "idp 0.1.0");

    Flags flags;

    ExtractArgs ex;
    auto* extract = app.add_subcommand("extract", "Compute method metrics of a Java source tree");
    extract->add_option("source_root", ex.source_root, "root of the source tree")->required();
    extract->add_option("-o,--out", ex.out, "metrics CSV to write")->required();
    extract->add_option("--labels", ex.labels, "label CSV: identity columns plus 'faulty'");
    extract->add_option("--project", ex.project, "project name (default: name of the source root)");
    extract->add_option("--include", flags.include, "glob of files to analyze (repeatable)");
    extract->add_option("--exclude", flags.exclude, "glob of files to skip (repeatable)");
    extract->add_option("--config", flags.config_file, "JSON config file; flags override its values");
    extract->add_option("--jobs", flags.jobs, "worker threads (default: all cores)");

    std::vector<std::string> train_csvs;
    std::string train_out;
    auto* train = app.add_subcommand("train", "Train strict and lenient classifiers on labeled CSVs");
    train->add_option("csv", train_csvs, "labeled metrics CSV(s)")->required();
    train->add_option("-o,--out", train_out, "classifier JSON to write")->required();
    add_pipeline_flags(*train, flags);

    std::string model_path;
    std::string target_csv;
    std::string predict_out;
    std::string variant = "both";
    auto* predict_cmd = app.add_subcommand("predict", "Classify the methods of a metrics CSV");
    predict_cmd->add_option("classifier", model_path, "classifier JSON written by 'train'")->required();
    predict_cmd->add_option("target", target_csv, "metrics CSV to classify")->required();
    predict_cmd->add_option("-o,--out", predict_out, "prediction CSV to write")->required();
    predict_cmd->add_option("--variant", variant, "strict, lenient or both")
        ->check(CLI::IsMember({"strict", "lenient", "both"}));

    std::vector<std::string> eval_csvs;
    std::string mode = "within";
    std::string eval_out;
    auto* evaluate = app.add_subcommand("evaluate", "Within-project cross-validation or cross-project evaluation");
    evaluate->add_option("csv", eval_csvs, "metrics CSV(s); rows are grouped by their project column")->required();
    evaluate->add_option("--mode", mode, "within or cross")->check(CLI::IsMember({"within", "cross"}));
    evaluate->add_option("-o,--out", eval_out, "report directory")->required();
    evaluate->add_option("--folds", flags.folds, "cross-validation folds (within mode)");
    evaluate->add_option("--format", flags.formats, "report formats: csv, json, markdown (repeatable)");
    evaluate->add_flag("--no-predictions", flags.no_predictions, "skip the per-method prediction dump");
    add_pipeline_flags(*evaluate, flags);

    std::string gen_out;
    std::size_t gen_count = 6;
    std::uint64_t gen_seed = 1;
    auto* generate = app.add_subcommand("generate", "Write a synthetic labeled corpus, one CSV per project");
    generate->add_option("-o,--out", gen_out, "output directory")->required();
    generate->add_option("--projects", gen_count, "number of projects")->check(CLI::Range(1, 26));
    generate->add_option("--seed", gen_seed, "generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostream& stream = e.get_exit_code() == 0 ? std::cout : err;
        stream << (e.get_exit_code() == 0 ? app.help() : std::string()) << std::flush;
        if (e.get_exit_code() != 0) {
            err << "error: " << e.what() << "\nrun 'idp --help' for usage\n";
            return 2;
        }
        return 0;
    }

    try {
        if (*generate) {
            cmd_generate(gen_out, gen_count, gen_seed);
            return 0;
        }
        if (*predict_cmd) {
            cmd_predict(model_path, target_csv, predict_out, variant, err);
            return 0;
        }
        RunConfig rc;
        try {
            rc = resolve(flags);
        } catch (const Error& e) {
            // Bad globs and thresholds are usage errors: nothing has run yet.
            err << "error [" << e.module() << "]: " << e.what() << '\n';
            return 2;
        }
        if (*extract) {
            cmd_extract(ex, rc, err);
        } else if (*train) {
            cmd_train(train_csvs, train_out, rc, err);
        } else {
            cmd_evaluate(eval_csvs, mode, eval_out, rc, err);
        }
        return 0;
    } catch (const ConfigError& e) {
        err << "error [" << e.module() << "]: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error [" << e.module() << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

} // namespace idp::cli
