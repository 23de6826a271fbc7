#ifndef MDLGBG_TYPES_HPP
#define MDLGBG_TYPES_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace mdlgbg {

using SampleIndex = std::size_t;
using IndexList = std::vector<SampleIndex>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Dense row-major n x d matrix of samples.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<double> row(std::size_t i) noexcept {
        return {data_.data() + i * cols_, cols_};
    }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

struct Dataset {
    Matrix values;
    std::optional<std::vector<int>> labels;

    std::size_t n() const noexcept { return values.rows(); }
    std::size_t d() const noexcept { return values.cols(); }
};

// Throws DataError unless n >= 1, d >= 1, every value is finite and labels
// (when present) have length n.
void validate(const Dataset& dataset);

// Sufficient statistics of a point set: count, coordinate sum and the scalar
// sum of squared norms. Only isotropic dispersion is ever derived from them.
struct BallStats {
    std::size_t count = 0;
    std::vector<double> sum;
    double sumsq = 0.0;

    explicit BallStats(std::size_t dim = 0) : sum(dim, 0.0) {}

    std::size_t dim() const noexcept { return sum.size(); }

    void add(std::span<const double> x) noexcept;
    void remove(std::span<const double> x) noexcept;
};

BallStats stats_of(const Matrix& points, std::span<const SampleIndex> members);
BallStats stats_add_point(const BallStats& stats, std::span<const double> x);
BallStats stats_remove_point(const BallStats& stats, std::span<const double> x);

// sumsq - |sum|^2 / count, clamped at zero.
double stats_sse(const BallStats& stats) noexcept;

std::vector<double> ball_center(const BallStats& stats);
double ball_radius(const Matrix& points, std::span<const SampleIndex> members,
                   std::span<const double> center);

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;
double distance(std::span<const double> a, std::span<const double> b) noexcept;

struct GranularBall {
    IndexList members;  // strictly increasing
    BallStats stats;
    std::vector<double> center;
    double radius = 0.0;

    std::size_t size() const noexcept { return members.size(); }
};

// Sorts and deduplicates-checks `members`, then caches statistics, center and
// radius. Throws std::invalid_argument on an empty or duplicated member list.
GranularBall make_ball(const Matrix& points, IndexList members);

enum class Model { M1, M2, M3 };

const char* model_name(Model model) noexcept;

struct SplitCandidate {
    std::size_t cut_position = 0;  // size of the left part along the sorted projection
    double l2 = kInfinity;
    IndexList left_indices;
    IndexList right_indices;
};

struct PeelCandidate {
    std::size_t q = 0;  // residual size
    double l3 = kInfinity;
    IndexList core_indices;
    IndexList residual_indices;
};

struct ModelVerdict {
    Model choice = Model::M1;
    double l1 = 0.0;
    double l2_star = kInfinity;
    double l3_star = kInfinity;
    std::optional<SplitCandidate> split;  // set iff choice == M2
    std::optional<PeelCandidate> peel;    // set iff choice == M3

    std::optional<std::size_t> peel_q() const {
        return peel ? std::optional<std::size_t>(peel->q) : std::nullopt;
    }
    bool abnormal() const noexcept { return choice != Model::M1; }
};

struct TraceRecord {
    std::size_t ball_size = 0;
    ModelVerdict verdict;
};

struct GenerationResult {
    std::vector<GranularBall> stable_balls;
    IndexList residual_pool;        // every index peeled by an M3 decision
    IndexList residual_background;  // residuals never attached to a ball
    std::vector<std::size_t> ownership;  // sample -> stable-ball index
    std::vector<TraceRecord> trace;
    std::size_t n_min = 0;
    std::size_t k0 = 0;
};

}  // namespace mdlgbg

#endif  // MDLGBG_TYPES_HPP
