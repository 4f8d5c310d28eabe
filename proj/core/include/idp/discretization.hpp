#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "idp/metrics.hpp"

namespace idp {

struct MethodRecord;

/// Upper bounds of tertile classes 1 and 2; class 3 is everything above.
struct TertileBounds {
    std::int64_t class1_upper = 0;
    std::int64_t class2_upper = 0;

    /// Class 1, 2 or 3 for `value`.
    int classify(std::int64_t value) const {
        if (value <= class1_upper) {
            return 1;
        }
        return value <= class2_upper ? 2 : 3;
    }

    bool operator==(const TertileBounds&) const = default;
};

/// Sorts `values` and takes the values at the end of the first and second
/// third. Every occurrence of a boundary value falls into the lower class, so
/// class 1 holds at least a third of the values. Requires at least 3 values.
TertileBounds fit_tertiles(std::vector<std::int64_t> values);

class DiscretizationModel {
public:
    DiscretizationModel() = default;
    explicit DiscretizationModel(std::array<TertileBounds, kTertileMetricCount> bounds) : bounds_(bounds) {}

    const TertileBounds& bounds(TertileMetric metric) const { return bounds_[static_cast<std::size_t>(metric)]; }
    int classify(TertileMetric metric, std::int64_t value) const { return bounds(metric).classify(value); }

    /// `{ "sloc": {"class1_upper": x, "class2_upper": y}, ... }`
    nlohmann::json to_json() const;
    static DiscretizationModel from_json(const nlohmann::json& j);

    bool operator==(const DiscretizationModel&) const = default;

private:
    std::array<TertileBounds, kTertileMetricCount> bounds_{};
};

struct DiscretizationFit {
    DiscretizationModel model;
    /// One entry per metric with a single distinct value (DegenerateDistribution);
    /// such metrics map every method to class 1.
    std::vector<std::string> warnings;
};

/// Fits one model over all given records (typically every training project).
/// Throws Error when fewer than 3 records are given.
DiscretizationFit fit_discretization(std::span<const MethodRecord> records);

} // namespace idp
