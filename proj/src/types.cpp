#include "mdlgbg/types.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mdlgbg/errors.hpp"

namespace mdlgbg {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("Matrix: data size does not match shape");
    }
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) return {};
    const std::size_t cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) {
            throw std::invalid_argument("Matrix::from_rows: ragged input at row " + std::to_string(i));
        }
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

void validate(const Dataset& dataset) {
    if (dataset.n() == 0 || dataset.d() == 0) {
        throw DataError("dataset must have at least one sample and one feature");
    }
    for (std::size_t i = 0; i < dataset.n(); ++i) {
        for (std::size_t j = 0; j < dataset.d(); ++j) {
            if (!std::isfinite(dataset.values(i, j))) {
                throw DataError("non-finite value at sample " + std::to_string(i) + ", feature " +
                                std::to_string(j));
            }
        }
    }
    if (dataset.labels && dataset.labels->size() != dataset.n()) {
        throw DataError("label count " + std::to_string(dataset.labels->size()) +
                        " does not match sample count " + std::to_string(dataset.n()));
    }
}

void BallStats::add(std::span<const double> x) noexcept {
    ++count;
    double sq = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sum[j] += x[j];
        sq += x[j] * x[j];
    }
    sumsq += sq;
}

void BallStats::remove(std::span<const double> x) noexcept {
    --count;
    double sq = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        sum[j] -= x[j];
        sq += x[j] * x[j];
    }
    sumsq -= sq;
}

BallStats stats_of(const Matrix& points, std::span<const SampleIndex> members) {
    BallStats s(points.cols());
    for (auto i : members) s.add(points.row(i));
    return s;
}

BallStats stats_add_point(const BallStats& stats, std::span<const double> x) {
    BallStats out = stats;
    out.add(x);
    return out;
}

BallStats stats_remove_point(const BallStats& stats, std::span<const double> x) {
    BallStats out = stats;
    out.remove(x);
    return out;
}

double stats_sse(const BallStats& stats) noexcept {
    if (stats.count == 0) return 0.0;
    double norm2 = 0.0;
    for (double v : stats.sum) norm2 += v * v;
    return std::max(0.0, stats.sumsq - norm2 / static_cast<double>(stats.count));
}

std::vector<double> ball_center(const BallStats& stats) {
    std::vector<double> c(stats.sum);
    const double inv = 1.0 / static_cast<double>(stats.count);
    for (double& v : c) v *= inv;
    return c;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double diff = a[j] - b[j];
        acc += diff * diff;
    }
    return acc;
}

double distance(std::span<const double> a, std::span<const double> b) noexcept {
    return std::sqrt(squared_distance(a, b));
}

double ball_radius(const Matrix& points, std::span<const SampleIndex> members,
                   std::span<const double> center) {
    double worst = 0.0;
    for (auto i : members) worst = std::max(worst, squared_distance(points.row(i), center));
    return std::sqrt(worst);
}

GranularBall make_ball(const Matrix& points, IndexList members) {
    if (members.empty()) throw std::invalid_argument("make_ball: empty member list");
    std::sort(members.begin(), members.end());
    if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
        throw std::invalid_argument("make_ball: duplicate member index");
    }
    if (members.back() >= points.rows()) throw std::out_of_range("make_ball: member index out of range");
    GranularBall ball;
    ball.stats = stats_of(points, members);
    ball.center = ball_center(ball.stats);
    ball.radius = ball_radius(points, members, ball.center);
    ball.members = std::move(members);
    return ball;
}

const char* model_name(Model model) noexcept {
    switch (model) {
        case Model::M1: return "M1";
        case Model::M2: return "M2";
        case Model::M3: return "M3";
    }
    return "?";
}

}  // namespace mdlgbg
