#include "mdlgbg/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "mdlgbg/errors.hpp"

namespace mdlgbg {

NormalizationRecord bounding_box(const Dataset& dataset) {
    validate(dataset);
    const std::size_t d = dataset.d();
    NormalizationRecord rec;
    rec.min.assign(dataset.values.row(0).begin(), dataset.values.row(0).end());
    rec.max = rec.min;
    for (std::size_t i = 1; i < dataset.n(); ++i) {
        auto x = dataset.values.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            rec.min[j] = std::min(rec.min[j], x[j]);
            rec.max[j] = std::max(rec.max[j], x[j]);
        }
    }
    for (std::size_t j = 0; j < d; ++j) {
        if (rec.max[j] == rec.min[j]) rec.constant_features.push_back(j);
    }
    return rec;
}

std::pair<Dataset, NormalizationRecord> minmax_normalize(const Dataset& dataset) {
    NormalizationRecord rec = bounding_box(dataset);
    Dataset out = dataset;
    const std::size_t d = dataset.d();
    for (std::size_t i = 0; i < out.n(); ++i) {
        auto x = out.values.row(i);
        for (std::size_t j = 0; j < d; ++j) {
            const double range = rec.max[j] - rec.min[j];
            // Clamp guards the last ulp; endpoints already map to exactly 0 and 1.
            x[j] = range > 0.0 ? std::clamp((x[j] - rec.min[j]) / range, 0.0, 1.0) : 0.0;
        }
    }
    return {std::move(out), std::move(rec)};
}

double background_log_volume(const NormalizationRecord& record, bool normalized) {
    if (normalized) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j < record.min.size(); ++j) {
        acc += std::log(std::max(record.max[j] - record.min[j], kRangeFloor));
    }
    return acc;
}

}  // namespace mdlgbg
