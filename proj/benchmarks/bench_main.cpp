#include <benchmark/benchmark.h>

#include <filesystem>

#include "idp/dataset.hpp"
#include "idp/java/analyzer.hpp"
#include "idp/pipeline.hpp"
#include "idp/rule_miner.hpp"
#include "idp/smote.hpp"
#include "idp/synthetic.hpp"

namespace {

using namespace idp;

std::vector<ItemVector> itemized_project(std::size_t methods) {
    const auto rows = generate_synthetic_project("bench", {.methods = methods, .seed = 1});
    const auto fit = fit_discretization(unified_rows(rows));
    std::vector<ItemVector> out;
    for (const auto& inst : prepare_instances(rows, fit.model).instances) {
        out.push_back(inst.items);
    }
    return out;
}

void BM_Smote(benchmark::State& state) {
    const auto vectors = itemized_project(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(balance(vectors, BalanceConfig{.rng_seed = 3}));
    }
}
BENCHMARK(BM_Smote)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_MineNonRedundant(benchmark::State& state) {
    const auto balanced = balance(itemized_project(2000), BalanceConfig{.rng_seed = 3});
    std::vector<ItemMask> transactions;
    for (const auto& v : balanced.vectors) {
        transactions.push_back(v.items);
    }
    MiningConfig cfg;
    cfg.min_support = 0.05;
    cfg.min_confidence = 0.85;
    cfg.max_antecedent_len = static_cast<std::size_t>(state.range(0));
    const auto label = Vocabulary::standard().label_item();
    for (auto _ : state) {
        benchmark::DoNotOptimize(mine_non_redundant(transactions, cfg, label));
    }
}
BENCHMARK(BM_MineNonRedundant)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MineThenPrune(benchmark::State& state) {
    const auto balanced = balance(itemized_project(2000), BalanceConfig{.rng_seed = 3});
    std::vector<ItemMask> transactions;
    for (const auto& v : balanced.vectors) {
        transactions.push_back(v.items);
    }
    MiningConfig cfg;
    cfg.min_support = 0.05;
    cfg.min_confidence = 0.85;
    cfg.max_antecedent_len = static_cast<std::size_t>(state.range(0));
    const auto label = Vocabulary::standard().label_item();
    for (auto _ : state) {
        benchmark::DoNotOptimize(prune_redundant(mine(transactions, cfg, label).rules));
    }
}
BENCHMARK(BM_MineThenPrune)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_TrainModel(benchmark::State& state) {
    const auto rows = generate_synthetic_project("bench", {.methods = 2000, .seed = 1});
    PipelineConfig cfg;
    cfg.mining.min_support = 0.05;
    cfg.mining.min_confidence = 0.85;
    cfg.mining.max_antecedent_len = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(train_model(rows, cfg, 11));
    }
}
BENCHMARK(BM_TrainModel)->Unit(benchmark::kMillisecond);

void BM_AnalyzeCorpus(benchmark::State& state) {
    const std::filesystem::path root = std::filesystem::path(IDP_FIXTURE_DIR) / "java_corpus";
    for (auto _ : state) {
        benchmark::DoNotOptimize(java::analyze_project(root, {}, "corpus"));
    }
}
BENCHMARK(BM_AnalyzeCorpus)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
