#ifndef MDLGBG_PREPROCESS_HPP
#define MDLGBG_PREPROCESS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "mdlgbg/types.hpp"

namespace mdlgbg {

struct NormalizationRecord {
    std::vector<double> min;
    std::vector<double> max;
    std::vector<std::size_t> constant_features;  // features with max == min
};

// Feature-wise min-max scaling into [0, 1]. Constant features map to 0 so the
// declared dimension is preserved. Throws DataError on non-finite input.
std::pair<Dataset, NormalizationRecord> minmax_normalize(const Dataset& dataset);

// Per-feature ranges of `dataset` without rescaling it.
NormalizationRecord bounding_box(const Dataset& dataset);

inline constexpr double kRangeFloor = 1e-12;

// Log-volume of the background coding box: 0 for normalized data (unit
// hypercube), otherwise the sum of per-feature log ranges floored at 1e-12.
double background_log_volume(const NormalizationRecord& record, bool normalized);

}  // namespace mdlgbg

#endif  // MDLGBG_PREPROCESS_HPP
