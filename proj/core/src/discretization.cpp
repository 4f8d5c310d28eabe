#include "idp/discretization.hpp"

#include <algorithm>

#include "idp/dataset.hpp"
#include "idp/error.hpp"

namespace idp {

TertileBounds fit_tertiles(std::vector<std::int64_t> values) {
    if (values.size() < 3) {
        throw Error("dataset-builder", "tertile discretization needs at least 3 values");
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    // 1-based positions ceil(n/3) and ceil(2n/3)
    const std::size_t first_end = (n + 2) / 3;
    const std::size_t second_end = (2 * n + 2) / 3;
    // Every occurrence of the boundary value lands in the lower class because
    // classification is by value (<= upper bound).
    return TertileBounds{values[first_end - 1], values[second_end - 1]};
}

nlohmann::json DiscretizationModel::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        const auto& b = bounds_[m];
        j[std::string(tertile_metric_key(static_cast<TertileMetric>(m)))] = {{"class1_upper", b.class1_upper},
                                                                             {"class2_upper", b.class2_upper}};
    }
    return j;
}

DiscretizationModel DiscretizationModel::from_json(const nlohmann::json& j) {
    std::array<TertileBounds, kTertileMetricCount> bounds{};
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        const std::string key(tertile_metric_key(static_cast<TertileMetric>(m)));
        if (!j.contains(key)) {
            throw SchemaError("discretization model is missing metric '" + key + "'");
        }
        const auto& entry = j.at(key);
        if (!entry.contains("class1_upper") || !entry.contains("class2_upper")) {
            throw SchemaError("discretization model entry '" + key + "' needs class1_upper and class2_upper");
        }
        bounds[m] = TertileBounds{entry.at("class1_upper").get<std::int64_t>(),
                                  entry.at("class2_upper").get<std::int64_t>()};
        if (bounds[m].class1_upper > bounds[m].class2_upper) {
            throw SchemaError("discretization model entry '" + key + "' has class1_upper > class2_upper");
        }
    }
    return DiscretizationModel(bounds);
}

DiscretizationFit fit_discretization(std::span<const MethodRecord> records) {
    if (records.size() < 3) {
        throw Error("dataset-builder", "discretization needs at least 3 records, got " + std::to_string(records.size()));
    }
    DiscretizationFit fit;
    std::array<TertileBounds, kTertileMetricCount> bounds{};
    for (std::size_t m = 0; m < kTertileMetricCount; ++m) {
        const auto metric = static_cast<TertileMetric>(m);
        std::vector<std::int64_t> values;
        values.reserve(records.size());
        for (const auto& r : records) {
            values.push_back(tertile_value(r.metrics, metric));
        }
        const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
        if (*lo == *hi) {
            fit.warnings.push_back("DegenerateDistribution: metric '" + std::string(tertile_metric_key(metric)) +
                                   "' has the single value " + std::to_string(*lo) + "; all methods map to class 1");
        }
        bounds[m] = fit_tertiles(std::move(values));
    }
    fit.model = DiscretizationModel(bounds);
    return fit;
}

} // namespace idp
