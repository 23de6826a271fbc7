#ifndef MDLGBG_METRICS_HPP
#define MDLGBG_METRICS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace mdlgbg {

// Counts of (true class, predicted cluster) pairs. Rows and columns follow the
// first-appearance order of the labels.
struct ContingencyTable {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::size_t> counts;  // rows x cols, row-major
    std::vector<std::size_t> row_sums;
    std::vector<std::size_t> col_sums;
    std::size_t total = 0;

    std::size_t at(std::size_t r, std::size_t c) const { return counts[r * cols + c]; }
};

// Throws std::invalid_argument on a length mismatch.
ContingencyTable contingency_table(std::span<const int> truth, std::span<const int> pred);

// Hubert-Arabie adjusted Rand index.
double ari(std::span<const int> truth, std::span<const int> pred);

// Fraction of samples matched under the best one-to-one cluster/class mapping.
double acc(std::span<const int> truth, std::span<const int> pred);

// Mutual information normalized by the arithmetic mean of the two entropies.
double nmi(std::span<const int> truth, std::span<const int> pred);

// Minimum-cost perfect assignment on a square row-major matrix; returns the
// column assigned to each row.
std::vector<std::size_t> hungarian_assignment(std::span<const double> cost, std::size_t size);

}  // namespace mdlgbg

#endif  // MDLGBG_METRICS_HPP
