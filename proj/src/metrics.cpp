#include "mdlgbg/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace mdlgbg {

namespace {

std::vector<std::size_t> dense_ids(std::span<const int> labels, std::size_t& distinct) {
    std::unordered_map<int, std::size_t> ids;
    std::vector<std::size_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = ids.try_emplace(labels[i], ids.size());
        out[i] = it->second;
    }
    distinct = ids.size();
    return out;
}

double pairs(std::size_t m) {
    const auto x = static_cast<double>(m);
    return x * (x - 1.0) / 2.0;
}

}  // namespace

ContingencyTable contingency_table(std::span<const int> truth, std::span<const int> pred) {
    if (truth.size() != pred.size()) throw std::invalid_argument("label sequences differ in length");
    ContingencyTable t;
    const auto r = dense_ids(truth, t.rows);
    const auto c = dense_ids(pred, t.cols);
    t.counts.assign(t.rows * t.cols, 0);
    t.row_sums.assign(t.rows, 0);
    t.col_sums.assign(t.cols, 0);
    for (std::size_t i = 0; i < truth.size(); ++i) {
        ++t.counts[r[i] * t.cols + c[i]];
        ++t.row_sums[r[i]];
        ++t.col_sums[c[i]];
    }
    t.total = truth.size();
    return t;
}

double ari(std::span<const int> truth, std::span<const int> pred) {
    const auto t = contingency_table(truth, pred);
    if (t.total < 2) throw std::invalid_argument("ari needs at least two samples");
    double index = 0.0;
    for (auto v : t.counts) index += pairs(v);
    double sum_rows = 0.0, sum_cols = 0.0;
    for (auto v : t.row_sums) sum_rows += pairs(v);
    for (auto v : t.col_sums) sum_cols += pairs(v);
    const double expected = sum_rows * sum_cols / pairs(t.total);
    const double max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

std::vector<std::size_t> hungarian_assignment(std::span<const double> cost, std::size_t size) {
    if (cost.size() != size * size) throw std::invalid_argument("hungarian_assignment: matrix is not square");
    // Shortest augmenting path with potentials; rows/cols are 1-based internally.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(size + 1, 0.0), v(size + 1, 0.0);
    std::vector<std::size_t> match(size + 1, 0), way(size + 1, 0);
    for (std::size_t row = 1; row <= size; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::vector<double> minv(size + 1, inf);
        std::vector<bool> used(size + 1, false);
        do {
            used[col0] = true;
            const std::size_t i0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t j = 1; j <= size; ++j) {
                if (used[j]) continue;
                const double cur = cost[(i0 - 1) * size + (j - 1)] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = col0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    col1 = j;
                }
            }
            for (std::size_t j = 0; j <= size; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }
    std::vector<std::size_t> assignment(size, 0);
    for (std::size_t j = 1; j <= size; ++j)
        if (match[j] != 0) assignment[match[j] - 1] = j - 1;
    return assignment;
}

double acc(std::span<const int> truth, std::span<const int> pred) {
    const auto t = contingency_table(truth, pred);
    if (t.total == 0) throw std::invalid_argument("acc needs at least one sample");
    const std::size_t size = std::max(t.rows, t.cols);
    std::vector<double> cost(size * size, 0.0);
    for (std::size_t r = 0; r < t.rows; ++r)
        for (std::size_t c = 0; c < t.cols; ++c) cost[c * size + r] = -static_cast<double>(t.at(r, c));
    // Rows of `cost` are predicted clusters, columns are classes.
    const auto assignment = hungarian_assignment(cost, size);
    std::size_t matched = 0;
    for (std::size_t c = 0; c < t.cols; ++c) {
        const std::size_t r = assignment[c];
        if (r < t.rows) matched += t.at(r, c);
    }
    return static_cast<double>(matched) / static_cast<double>(t.total);
}

double nmi(std::span<const int> truth, std::span<const int> pred) {
    const auto t = contingency_table(truth, pred);
    if (t.total == 0) throw std::invalid_argument("nmi needs at least one sample");
    const double n = static_cast<double>(t.total);
    const double log_n = std::log(n);
    // Each term is written as p * (ln n - ln count) so that identical
    // partitions produce bitwise-equal information and entropy sums.
    auto entropy = [&](const std::vector<std::size_t>& sums) {
        double h = 0.0;
        for (auto s : sums)
            if (s > 0) h += (static_cast<double>(s) / n) * (log_n - std::log(static_cast<double>(s)));
        return h;
    };
    const double h_true = entropy(t.row_sums);
    const double h_pred = entropy(t.col_sums);
    if (h_true == 0.0 && h_pred == 0.0) return 1.0;
    if (h_true == 0.0 || h_pred == 0.0) return 0.0;

    double info = 0.0;
    for (std::size_t r = 0; r < t.rows; ++r) {
        for (std::size_t c = 0; c < t.cols; ++c) {
            const auto nij = t.at(r, c);
            if (nij == 0) continue;
            const double count = static_cast<double>(nij);
            info += (count / n) * ((log_n - std::log(static_cast<double>(t.row_sums[r]))) +
                                   (std::log(count) - std::log(static_cast<double>(t.col_sums[c]))));
        }
    }
    return std::clamp(info / (0.5 * (h_true + h_pred)), 0.0, 1.0);
}

}  // namespace mdlgbg
