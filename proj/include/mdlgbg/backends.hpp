#ifndef MDLGBG_BACKENDS_HPP
#define MDLGBG_BACKENDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mdlgbg/types.hpp"

namespace mdlgbg {

enum class Backend { Agglomerative, KMeansPP, None };

// Accepts "ac", "kmeanspp" and "none"; throws ConfigError otherwise.
Backend parse_backend(std::string_view name);
std::string backend_name(Backend backend);

struct BallClustering {
    std::vector<int> ball_labels;
    std::size_t k = 0;
};

struct BackendOptions {
    bool weight_by_size = false;
    std::size_t restarts = 10;
    std::size_t max_iterations = 300;
};

// Stable-ball centers as rows, in ball order.
Matrix ball_centers(const std::vector<GranularBall>& balls);
std::vector<double> ball_sizes(const std::vector<GranularBall>& balls);

// Ward-linkage agglomeration of `centers` down to `k` clusters. Merge ties go
// to the lexicographically smallest pair of lowest member indices. Labels are
// numbered by lowest member index. `weights`, when given, act as cluster masses.
std::vector<int> agglomerative_ward(const Matrix& centers, std::size_t k,
                                    std::span<const double> weights = {});

struct WardMerge {
    std::size_t first_low = 0;   // lowest member of the surviving cluster
    std::size_t second_low = 0;  // lowest member of the absorbed cluster
    double increase = 0.0;
};

struct WardResult {
    std::vector<int> labels;
    std::vector<WardMerge> merges;  // in merge order
};

WardResult ward_linkage(const Matrix& centers, std::size_t k, std::span<const double> weights = {});

struct KMeansFit {
    std::vector<int> labels;
    Matrix centroids;
    double sse = 0.0;
    std::size_t iterations = 0;
};

// Lloyd iterations from the given initial centroids until the assignment stops
// changing or `max_iterations` is hit. An empty cluster takes the point
// farthest from its own centroid.
KMeansFit lloyd(const Matrix& points, Matrix centroids, std::size_t max_iterations,
                std::span<const double> weights = {});

// D^2 seeding followed by Lloyd, best SSE over `restarts` (lowest restart wins
// ties). Labels are renumbered by first appearance.
std::vector<int> kmeanspp(const Matrix& centers, std::size_t k, std::uint64_t seed, std::size_t restarts = 10,
                          std::size_t max_iterations = 300, std::span<const double> weights = {});

// Each ball is its own cluster when there are at most k balls; otherwise the
// centers are clustered by `backend`. Backend::None with more than k balls is a
// ConfigError.
BallClustering cluster_or_passthrough(const std::vector<GranularBall>& stable_balls, std::size_t k,
                                      Backend backend, std::uint64_t seed, const BackendOptions& options = {});

std::vector<int> labels_to_samples(std::span<const std::size_t> ownership, std::span<const int> ball_labels);

// Uniform double in [0, 1) from the top 53 bits of one engine draw.
double uniform01(std::uint64_t bits) noexcept;

}  // namespace mdlgbg

#endif  // MDLGBG_BACKENDS_HPP
