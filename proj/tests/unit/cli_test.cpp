#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "idp/csv.hpp"
#include "idp/dataset.hpp"
#include "idp/synthetic.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int rc = 0;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "idp");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream err;
    const int rc = idp::cli::run(static_cast<int>(argv.size()), argv.data(), err);
    return {rc, err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    explicit Scratch(const std::string& name) : dir(fs::temp_directory_path() / ("idp-cli-" + name)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& leaf) const { return (dir / leaf).string(); }
};

std::string write_project(const Scratch& s, const std::string& name, std::size_t methods, std::uint64_t seed) {
    const auto path = s / (name + ".csv");
    idp::write_csv(fs::path(path), idp::generate_synthetic_project(name, {.methods = methods, .seed = seed}));
    return path;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::size_t line = 0;
    while (auto r = idp::csv::read_row(in, line)) {
        rows.push_back(*r);
    }
    return rows;
}

const std::vector<std::string> kDesk = {"--min-support", "0.05", "--min-confidence", "0.85",
                                        "--max-antecedent-len", "2"};

std::vector<std::string> with_desk(std::vector<std::string> args) {
    args.insert(args.end(), kDesk.begin(), kDesk.end());
    return args;
}

} // namespace

TEST_CASE("extract reproduces the golden csv") {
    Scratch s("extract");
    const fs::path fixtures(IDP_FIXTURE_DIR);
    const auto out = s / "corpus.csv";
    const auto r = run({"extract", (fixtures / "java_corpus").string(), "-o", out, "--project", "corpus"});
    REQUIRE(r.rc == 0);
    const auto text = slurp(out);
    REQUIRE(text.rfind("# run_config=", 0) == 0);
    CHECK(text.substr(text.find('\n') + 1) == slurp(fixtures / "java_corpus_golden.csv"));
    // one method uses a lambda
    CHECK(r.err.find("lambda") != std::string::npos);
}

TEST_CASE("extract edge cases") {
    Scratch s("extract-edges");
    fs::create_directories(s.dir / "empty");
    const auto r = run({"extract", s / "empty", "-o", s / "e.csv"});
    CHECK(r.rc == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(idp::read_csv(fs::path(s / "e.csv")).empty());

    CHECK(run({"extract", s / "empty", "-o", s / "g.csv", "--include", "[bad"}).rc == 2);
    CHECK(run({"extract", s / "missing", "-o", s / "m.csv"}).rc != 0);

    fs::create_directories(s.dir / "src");
    std::ofstream(s.dir / "src" / "Bad.java") << "class Bad { void f( { }";
    std::ofstream(s.dir / "src" / "Ok.java") << "class Ok { int get() { return 1; } }";
    const auto skipped = run({"extract", s / "src", "-o", s / "s.csv"});
    CHECK(skipped.rc == 0);
    CHECK(skipped.err.find("Bad.java") != std::string::npos);
    CHECK(idp::read_csv(fs::path(s / "s.csv")).size() == 1);
}

TEST_CASE("extract applies a label file") {
    Scratch s("labels");
    const fs::path fixtures(IDP_FIXTURE_DIR);
    std::ofstream(s / "labels.csv") << "file_path,type_name,method_name,param_signature,faulty\n"
                                       "src/main/java/shop/Account.java,Account,getName,,1\n"
                                       "src/main/java/shop/Gone.java,Gone,x,,1\n";
    const auto r = run({"extract", (fixtures / "java_corpus").string(), "-o", s / "l.csv", "--labels",
                        s / "labels.csv"});
    REQUIRE(r.rc == 0);
    CHECK(r.err.find("Gone") != std::string::npos);
    const auto rows = idp::read_csv(fs::path(s / "l.csv"));
    CHECK(std::count_if(rows.begin(), rows.end(), [](const auto& x) { return x.faulty; }) == 1);
}

TEST_CASE("train writes a usable classifier") {
    Scratch s("train");
    const auto a = write_project(s, "a", 800, 1);
    const auto b = write_project(s, "b", 800, 2);
    const auto model = s / "model.json";
    REQUIRE(run(with_desk({"train", a, b, "-o", model})).rc == 0);
    const auto j = nlohmann::json::parse(slurp(model));
    CHECK(j.at("classifiers").at(0).at("n").get<std::size_t>() >= 1);
    CHECK(j.at("training").at("rows").get<std::size_t>() ==
          idp::read_csv(fs::path(a)).size() + idp::read_csv(fs::path(b)).size());
    CHECK(j.at("config").at("min_support") == 0.05);

    // predicting the training data stays within the budget
    const auto solo = s / "solo.json";
    REQUIRE(run(with_desk({"train", a, "-o", solo})).rc == 0);
    const auto pred = s / "pred.csv";
    REQUIRE(run({"predict", solo, a, "-o", pred, "--variant", "both"}).rc == 0);
    const auto rows = read_rows(pred);
    REQUIRE(rows.size() > 1);
    CHECK(rows[0][5] == "variant");
    for (const auto* variant : {"strict", "lenient"}) {
        double faulty = 0;
        double faulty_lfr = 0;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            if (rows[i][5] == variant && rows[i][8] == "1") {
                faulty += 1;
                faulty_lfr += rows[i][7] == "1" ? 1 : 0;
            }
        }
        const double budget = std::string(variant) == "strict" ? 0.025 : 0.05;
        CHECK(faulty > 0);
        CHECK(faulty_lfr <= std::floor(budget * faulty + 1e-9));
    }
}

TEST_CASE("predict with n = 0 classifies nothing") {
    Scratch s("predict-zero");
    const auto a = write_project(s, "a", 600, 3);
    const auto model = s / "model.json";
    REQUIRE(run(with_desk({"train", a, "-o", model})).rc == 0);
    auto j = nlohmann::json::parse(slurp(model));
    for (auto& c : j["classifiers"]) {
        c["n"] = 0;
    }
    std::ofstream(s / "zero.json") << j.dump();
    REQUIRE(run({"predict", s / "zero.json", a, "-o", s / "p.csv"}).rc == 0);
    const auto rows = read_rows(s / "p.csv");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i][7] == "0");
    }

    j["vocabulary"][3] = "Renamed";
    std::ofstream(s / "bad.json") << j.dump();
    const auto mismatch = run({"predict", s / "bad.json", a, "-o", s / "q.csv"});
    CHECK(mismatch.rc == 1);
    CHECK(mismatch.err.find("lfr-classifier") != std::string::npos);
}

TEST_CASE("pipeline errors carry their module") {
    Scratch s("errors");
    auto rows = idp::generate_synthetic_project("clean", {.methods = 200, .seed = 1});
    std::erase_if(rows, [](const idp::MethodRecord& r) { return r.faulty; });
    idp::write_csv(fs::path(s / "clean.csv"), rows);
    const auto r = run({"train", s / "clean.csv", "-o", s / "m.json"});
    CHECK(r.rc == 1);
    CHECK(r.err.find("[evaluator]") != std::string::npos);

    std::ofstream(s / "cut.csv") << "project,file_path\np,A.java\n";
    const auto schema = run({"train", s / "cut.csv", "-o", s / "m.json"});
    CHECK(schema.rc == 1);
    CHECK(schema.err.find("[dataset-builder]") != std::string::npos);
}

TEST_CASE("usage errors") {
    Scratch s("usage");
    const auto a = write_project(s, "a", 300, 1);
    CHECK(run({"evaluate", a, "--mode", "sideways", "-o", s / "r"}).rc == 2);
    CHECK(run({"evaluate", a, "--mode", "within", "-o", s / "r", "--min-support", "0.7"}).rc == 2);
    CHECK(run({"evaluate", a, "--mode", "cross", "-o", s / "r"}).rc == 2);
    CHECK(run({"evaluate", a, "--mode", "within", "-o", s / "r", "--folds", "1"}).rc == 2);
    CHECK(run({"frobnicate"}).rc == 2);

    std::ofstream(s / "cfg.json") << R"({"min_supprt": 0.1})";
    const auto unknown = run({"train", a, "-o", s / "m.json", "--config", s / "cfg.json"});
    CHECK(unknown.rc == 2);
    CHECK(unknown.err.find("min_supprt") != std::string::npos);
}

TEST_CASE("config file values yield to flags") {
    Scratch s("config");
    const auto a = write_project(s, "a", 600, 5);
    std::ofstream(s / "cfg.json") << R"({"min_support": 0.06, "min_confidence": 0.85, "max_antecedent_len": 2,
                                        "seed": 99})";
    REQUIRE(run({"train", a, "-o", s / "m.json", "--config", s / "cfg.json", "--min-support", "0.05"}).rc == 0);
    const auto j = nlohmann::json::parse(slurp(s / "m.json"));
    CHECK(j.at("config").at("min_support") == 0.05);
    CHECK(j.at("config").at("min_confidence") == 0.85);
    CHECK(j.at("config").at("seed") == 99);
}

TEST_CASE("evaluate writes reports that reproduce byte for byte") {
    Scratch s("evaluate");
    std::vector<std::string> inputs;
    for (int i = 0; i < 3; ++i) {
        inputs.push_back(write_project(s, std::string(1, static_cast<char>('a' + i)), 500, 10 + i));
    }
    auto args = inputs;
    args.insert(args.begin(), "evaluate");
    for (const auto& x : {"--mode", "cross", "--seed", "4"}) {
        args.emplace_back(x);
    }
    args = with_desk(args);
    auto first = args;
    first.insert(first.end(), {"-o", s / "r1"});
    auto second = args;
    second.insert(second.end(), {"-o", s / "r2", "--jobs", "2"});
    REQUIRE(run(first).rc == 0);
    REQUIRE(run(second).rc == 0);
    for (const auto* f : {"report.csv", "report.json", "report.md", "predictions.csv"}) {
        CHECK(slurp(s.dir / "r1" / f) == slurp(s.dir / "r2" / f));
    }
    const auto report = nlohmann::json::parse(slurp(s.dir / "r1" / "report.json"));
    CHECK(report.at("rows").size() == 6);
    CHECK(report.at("config").at("seed") == 4);
}
