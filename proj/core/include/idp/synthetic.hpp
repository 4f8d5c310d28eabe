#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "idp/dataset.hpp"
#include "idp/evaluator.hpp"

namespace idp {

/// Shape of one generated project. Trivial methods are getters, setters,
/// empty methods, delegations, simple constructors and toString methods with
/// one-line bodies; everything else is a larger method with control flow.
struct SyntheticConfig {
    std::size_t methods = 2000;
    double trivial_share = 0.5;
    double trivial_fault_rate = 0.015;
    double fault_rate_ratio = 10.0;  // complex fault rate / trivial fault rate
    /// Chance that a faulty method was fixed twice (two faulty-state rows).
    double refix_rate = 0.15;
    std::uint64_t seed = 0;
};

/// Rows of one project: a current-state row for every method plus one or
/// two faulty-state rows per faulty method. Every row satisfies the metric
/// invariants (derived counts, chaining vs invocations, CC >= 1).
Dataset generate_synthetic_project(const std::string& name, const SyntheticConfig& cfg);

/// `count` projects named "synth-a", "synth-b", ... with project-specific
/// sizes (about 2000 methods) and rates derived from `seed`.
std::vector<ProjectData> generate_synthetic_corpus(std::size_t count, std::uint64_t seed);

} // namespace idp
