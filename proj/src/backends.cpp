#include "mdlgbg/backends.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "mdlgbg/errors.hpp"

namespace mdlgbg {

Backend parse_backend(std::string_view name) {
    if (name == "ac") return Backend::Agglomerative;
    if (name == "kmeanspp") return Backend::KMeansPP;
    if (name == "none") return Backend::None;
    throw ConfigError("unknown backend '" + std::string(name) + "' (expected ac, kmeanspp or none)");
}

std::string backend_name(Backend backend) {
    switch (backend) {
        case Backend::Agglomerative: return "ac";
        case Backend::KMeansPP: return "kmeanspp";
        case Backend::None: return "none";
    }
    return "none";
}

Matrix ball_centers(const std::vector<GranularBall>& balls) {
    if (balls.empty()) return {};
    Matrix m(balls.size(), balls.front().center.size());
    for (std::size_t b = 0; b < balls.size(); ++b)
        std::copy(balls[b].center.begin(), balls[b].center.end(), m.row(b).begin());
    return m;
}

std::vector<double> ball_sizes(const std::vector<GranularBall>& balls) {
    std::vector<double> w;
    w.reserve(balls.size());
    for (const auto& b : balls) w.push_back(static_cast<double>(b.size()));
    return w;
}

namespace {

double weight_at(std::span<const double> weights, std::size_t i) {
    return weights.empty() ? 1.0 : weights[i];
}

void check_weights(const Matrix& points, std::span<const double> weights) {
    if (!weights.empty() && weights.size() != points.rows())
        throw std::invalid_argument("weights must match the number of points");
}

std::vector<int> relabel_by_first_appearance(const std::vector<int>& labels) {
    std::unordered_map<int, int> remap;
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = remap.try_emplace(labels[i], static_cast<int>(remap.size()));
        out[i] = it->second;
    }
    return out;
}

}  // namespace

WardResult ward_linkage(const Matrix& centers, std::size_t k, std::span<const double> weights) {
    check_weights(centers, weights);
    const std::size_t n = centers.rows();
    const std::size_t d = centers.cols();
    if (k == 0 || k > n) throw std::invalid_argument("ward_linkage: need 1 <= k <= number of centers");

    std::vector<std::vector<double>> mean(n);
    std::vector<double> mass(n);
    std::vector<std::size_t> low(n);
    std::vector<std::size_t> parent(n);
    std::vector<bool> active(n, true);
    for (std::size_t i = 0; i < n; ++i) {
        mean[i].assign(centers.row(i).begin(), centers.row(i).end());
        mass[i] = weight_at(weights, i);
        low[i] = i;
        parent[i] = i;
    }
    auto increase = [&](std::size_t a, std::size_t b) {
        return mass[a] * mass[b] / (mass[a] + mass[b]) * squared_distance(mean[a], mean[b]);
    };

    std::vector<double> cost(n * n, 0.0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) cost[a * n + b] = cost[b * n + a] = increase(a, b);

    // Cluster slots are indexed by their lowest member, so slot order is
    // lowest-member order and the first strict minimum is the tie winner.
    WardResult result;
    for (std::size_t clusters = n; clusters > k; --clusters) {
        std::size_t best_a = n, best_b = n;
        double best = kInfinity;
        for (std::size_t a = 0; a < n; ++a) {
            if (!active[a]) continue;
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!active[b]) continue;
                if (cost[a * n + b] < best) {
                    best = cost[a * n + b];
                    best_a = a;
                    best_b = b;
                }
            }
        }
        const double total = mass[best_a] + mass[best_b];
        for (std::size_t j = 0; j < d; ++j)
            mean[best_a][j] = (mass[best_a] * mean[best_a][j] + mass[best_b] * mean[best_b][j]) / total;
        mass[best_a] = total;
        active[best_b] = false;
        parent[best_b] = best_a;
        result.merges.push_back({low[best_a], low[best_b], best});
        for (std::size_t c = 0; c < n; ++c) {
            if (!active[c] || c == best_a) continue;
            cost[best_a * n + c] = cost[c * n + best_a] = increase(best_a, c);
        }
    }

    std::vector<int> labels(n);
    std::vector<int> slot_label(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t root = i;
        while (parent[root] != root) root = parent[root];
        if (slot_label[root] < 0) slot_label[root] = next++;
        labels[i] = slot_label[root];
    }
    result.labels = std::move(labels);
    return result;
}

std::vector<int> agglomerative_ward(const Matrix& centers, std::size_t k, std::span<const double> weights) {
    return ward_linkage(centers, k, weights).labels;
}

double uniform01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace {

std::vector<int> nearest_centroid(const Matrix& points, const Matrix& centroids) {
    std::vector<int> labels(points.rows(), 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        double best = kInfinity;
        for (std::size_t c = 0; c < centroids.rows(); ++c) {
            const double dd = squared_distance(points.row(i), centroids.row(c));
            if (dd < best) {
                best = dd;
                labels[i] = static_cast<int>(c);
            }
        }
    }
    return labels;
}

void repair_empty_clusters(const Matrix& points, Matrix& centroids, std::vector<int>& labels) {
    const std::size_t k = centroids.rows();
    std::vector<std::size_t> counts(k, 0);
    for (int l : labels) ++counts[static_cast<std::size_t>(l)];
    for (std::size_t c = 0; c < k; ++c) {
        if (counts[c] > 0) continue;
        std::size_t steal = points.rows();
        double worst = -1.0;
        for (std::size_t i = 0; i < points.rows(); ++i) {
            const auto owner = static_cast<std::size_t>(labels[i]);
            if (counts[owner] < 2) continue;
            const double dd = squared_distance(points.row(i), centroids.row(owner));
            if (dd > worst) {
                worst = dd;
                steal = i;
            }
        }
        if (steal == points.rows()) break;
        --counts[static_cast<std::size_t>(labels[steal])];
        labels[steal] = static_cast<int>(c);
        ++counts[c];
        std::copy(points.row(steal).begin(), points.row(steal).end(), centroids.row(c).begin());
    }
}

void update_centroids(const Matrix& points, std::span<const double> weights, const std::vector<int>& labels,
                      Matrix& centroids) {
    const std::size_t k = centroids.rows();
    const std::size_t d = points.cols();
    Matrix sums(k, d, 0.0);
    std::vector<double> mass(k, 0.0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        const double w = weight_at(weights, i);
        mass[c] += w;
        for (std::size_t j = 0; j < d; ++j) sums(c, j) += w * points(i, j);
    }
    for (std::size_t c = 0; c < k; ++c) {
        if (!(mass[c] > 0.0)) continue;
        for (std::size_t j = 0; j < d; ++j) centroids(c, j) = sums(c, j) / mass[c];
    }
}

}  // namespace

KMeansFit lloyd(const Matrix& points, Matrix centroids, std::size_t max_iterations, std::span<const double> weights) {
    check_weights(points, weights);
    KMeansFit fit;
    fit.labels.assign(points.rows(), -1);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        auto labels = nearest_centroid(points, centroids);
        repair_empty_clusters(points, centroids, labels);
        const bool changed = labels != fit.labels;
        fit.labels = std::move(labels);
        update_centroids(points, weights, fit.labels, centroids);
        fit.iterations = it + 1;
        if (!changed) break;
    }
    fit.sse = 0.0;
    for (std::size_t i = 0; i < points.rows(); ++i)
        fit.sse += weight_at(weights, i) *
                   squared_distance(points.row(i), centroids.row(static_cast<std::size_t>(fit.labels[i])));
    fit.centroids = std::move(centroids);
    return fit;
}

namespace {

Matrix dsquared_seeds(const Matrix& points, std::size_t k, std::span<const double> weights, std::mt19937_64& rng) {
    const std::size_t n = points.rows();
    Matrix seeds(k, points.cols());
    auto pick_weighted = [&](const std::vector<double>& mass) {
        double total = 0.0;
        for (double m : mass) total += m;
        if (!(total > 0.0)) return static_cast<std::size_t>(uniform01(rng()) * static_cast<double>(n));
        const double target = uniform01(rng()) * total;
        double acc = 0.0;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mass[i] <= 0.0) continue;
            acc += mass[i];
            last_positive = i;
            if (target < acc) return i;
        }
        return last_positive;
    };

    std::vector<double> mass(n);
    for (std::size_t i = 0; i < n; ++i) mass[i] = weight_at(weights, i);
    std::size_t chosen = pick_weighted(mass);
    std::copy(points.row(chosen).begin(), points.row(chosen).end(), seeds.row(0).begin());

    std::vector<double> nearest(n, kInfinity);
    for (std::size_t c = 1; c < k; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], squared_distance(points.row(i), seeds.row(c - 1)));
            mass[i] = weight_at(weights, i) * nearest[i];
        }
        chosen = pick_weighted(mass);
        std::copy(points.row(chosen).begin(), points.row(chosen).end(), seeds.row(c).begin());
    }
    return seeds;
}

}  // namespace

std::vector<int> kmeanspp(const Matrix& centers, std::size_t k, std::uint64_t seed, std::size_t restarts,
                          std::size_t max_iterations, std::span<const double> weights) {
    check_weights(centers, weights);
    if (k == 0 || k > centers.rows()) throw std::invalid_argument("kmeanspp: need 1 <= k <= number of centers");
    std::mt19937_64 rng(seed);
    std::optional<KMeansFit> best;
    for (std::size_t r = 0; r < std::max<std::size_t>(restarts, 1); ++r) {
        auto fit = lloyd(centers, dsquared_seeds(centers, k, weights, rng), max_iterations, weights);
        if (!best || fit.sse < best->sse) best = std::move(fit);
    }
    return relabel_by_first_appearance(best->labels);
}

BallClustering cluster_or_passthrough(const std::vector<GranularBall>& stable_balls, std::size_t k,
                                      Backend backend, std::uint64_t seed, const BackendOptions& options) {
    if (stable_balls.empty()) throw std::invalid_argument("cluster_or_passthrough: no stable balls");
    if (k == 0) throw ConfigError("cluster count K must be at least 1");
    BallClustering out;
    out.k = k;
    if (stable_balls.size() <= k) {
        out.ball_labels.resize(stable_balls.size());
        for (std::size_t b = 0; b < stable_balls.size(); ++b) out.ball_labels[b] = static_cast<int>(b);
        return out;
    }
    const Matrix centers = ball_centers(stable_balls);
    std::vector<double> weights;
    if (options.weight_by_size) weights = ball_sizes(stable_balls);
    switch (backend) {
        case Backend::Agglomerative:
            out.ball_labels = agglomerative_ward(centers, k, weights);
            break;
        case Backend::KMeansPP:
            out.ball_labels = kmeanspp(centers, k, seed, options.restarts, options.max_iterations, weights);
            break;
        case Backend::None:
            throw ConfigError(std::to_string(stable_balls.size()) + " stable balls exceed K = " + std::to_string(k) +
                              "; choose a clustering backend (ac or kmeanspp)");
    }
    return out;
}

std::vector<int> labels_to_samples(std::span<const std::size_t> ownership, std::span<const int> ball_labels) {
    std::vector<int> out(ownership.size());
    for (std::size_t i = 0; i < ownership.size(); ++i) out[i] = ball_labels[ownership[i]];
    return out;
}

}  // namespace mdlgbg
