#include "mdlgbg/mdl_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace mdlgbg {

namespace {

constexpr double kRadiusFloor = 1e-12;
constexpr int kPowerIterations = 100;
constexpr double kPowerTolerance = 1e-10;

// Member coordinates relative to `origin`. The scans below accumulate
// running sums in this frame so SSE differences do not cancel catastrophically.
Matrix centered_rows(const Matrix& points, std::span<const SampleIndex> members,
                     std::span<const double> origin) {
    Matrix out(members.size(), points.cols());
    for (std::size_t k = 0; k < members.size(); ++k) {
        auto src = points.row(members[k]);
        auto dst = out.row(k);
        for (std::size_t j = 0; j < src.size(); ++j) dst[j] = src[j] - origin[j];
    }
    return out;
}

IndexList sorted_members(std::span<const SampleIndex> members, std::span<const std::size_t> order,
                         std::size_t first, std::size_t last) {
    IndexList out;
    out.reserve(last - first);
    for (std::size_t k = first; k < last; ++k) out.push_back(members[order[k]]);
    std::sort(out.begin(), out.end());
    return out;
}

// Stable order of positions 0..n-1 by key; members are already index-sorted,
// so position order is original-index order.
std::vector<std::size_t> order_by(const std::vector<double>& key) {
    std::vector<std::size_t> order(key.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] < key[b]; });
    return order;
}

}  // namespace

GaussianFit mle_mean_var(const BallStats& stats, std::size_t d, const MdlConfig& config) {
    GaussianFit fit;
    fit.mean = ball_center(stats);
    const double m = static_cast<double>(stats.count);
    fit.variance = std::max(stats_sse(stats) / (static_cast<double>(d) * m), config.variance_floor);
    return fit;
}

double l1_length_from_sse(std::size_t count, double sse, std::size_t d, const MdlConfig& config) {
    const double m = static_cast<double>(count);
    const double dd = static_cast<double>(d);
    const double var = std::max(std::max(sse, 0.0) / (dd * m), config.variance_floor);
    return 0.5 * m * dd * (1.0 + std::log(2.0 * std::numbers::pi * var)) + 0.5 * (dd + 1.0) * std::log(m);
}

double l1_length(const BallStats& stats, std::size_t d, const MdlConfig& config) {
    return l1_length_from_sse(stats.count, stats_sse(stats), d, config);
}

double partition_cost(std::size_t m1, std::size_t m2) {
    const double n = static_cast<double>(m1 + m2);
    if (n == 0.0) return 0.0;
    auto term = [n](std::size_t m) {
        if (m == 0) return 0.0;
        const double p = static_cast<double>(m) / n;
        return -p * std::log(p);
    };
    return n * (term(m1) + term(m2));
}

std::optional<std::vector<double>> first_principal_direction(const Matrix& points,
                                                             std::span<const SampleIndex> members) {
    const std::size_t d = points.cols();
    const std::size_t m = members.size();
    if (m < 2) return std::nullopt;

    std::vector<double> mean(d, 0.0);
    for (auto i : members) {
        auto x = points.row(i);
        for (std::size_t j = 0; j < d; ++j) mean[j] += x[j];
    }
    for (double& v : mean) v /= static_cast<double>(m);

    // Upper triangle accumulated, mirrored afterwards.
    std::vector<double> cov(d * d, 0.0);
    std::vector<double> y(d);
    for (auto i : members) {
        auto x = points.row(i);
        for (std::size_t j = 0; j < d; ++j) y[j] = x[j] - mean[j];
        for (std::size_t a = 0; a < d; ++a) {
            const double ya = y[a];
            if (ya == 0.0) continue;
            for (std::size_t b = a; b < d; ++b) cov[a * d + b] += ya * y[b];
        }
    }
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = a + 1; b < d; ++b) cov[b * d + a] = cov[a * d + b];

    std::size_t start = 0;
    for (std::size_t j = 1; j < d; ++j)
        if (cov[j * d + j] > cov[start * d + start]) start = j;
    if (!(cov[start * d + start] > 0.0)) return std::nullopt;

    std::vector<double> v(d, 0.0);
    v[start] = 1.0;
    std::vector<double> w(d);
    for (int it = 0; it < kPowerIterations; ++it) {
        double norm2 = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            double acc = 0.0;
            for (std::size_t b = 0; b < d; ++b) acc += cov[a * d + b] * v[b];
            w[a] = acc;
            norm2 += acc * acc;
        }
        if (!(norm2 > 0.0)) return std::nullopt;
        const double inv = 1.0 / std::sqrt(norm2);
        double change2 = 0.0;
        for (std::size_t a = 0; a < d; ++a) {
            w[a] *= inv;
            const double diff = w[a] - v[a];
            change2 += diff * diff;
        }
        v.swap(w);
        if (std::sqrt(change2) < kPowerTolerance) break;
    }

    for (double c : v) {
        if (c == 0.0) continue;
        if (c < 0.0)
            for (double& x : v) x = -x;
        break;
    }
    return v;
}

std::optional<std::vector<double>> first_principal_direction(const Matrix& points) {
    IndexList all(points.rows());
    std::iota(all.begin(), all.end(), SampleIndex{0});
    return first_principal_direction(points, all);
}

SplitResult l2_best_split(const GranularBall& ball, const Matrix& points, std::size_t n_min,
                          const MdlConfig& config) {
    SplitResult result;
    const std::size_t n = ball.size();
    const std::size_t d = points.cols();
    if (n < 2 * n_min || n < 2) return result;

    auto direction = first_principal_direction(points, ball.members);
    if (!direction) return result;

    const Matrix y = centered_rows(points, ball.members, ball.center);
    std::vector<double> projection(n);
    for (std::size_t k = 0; k < n; ++k) {
        auto row = y.row(k);
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += row[j] * (*direction)[j];
        projection[k] = acc;
    }
    const auto order = order_by(projection);

    // sse_left[m] covers order[0, m); sse_right[m] covers order[m, n).
    std::vector<double> sse_left(n + 1, 0.0), sse_right(n + 1, 0.0);
    BallStats running(d);
    for (std::size_t m = 1; m <= n; ++m) {
        running.add(y.row(order[m - 1]));
        sse_left[m] = stats_sse(running);
    }
    running = BallStats(d);
    for (std::size_t m = n; m-- > 0;) {
        running.add(y.row(order[m]));
        sse_right[m] = stats_sse(running);
    }

    std::size_t best_cut = 0;
    result.costs.assign(n + 1, kInfinity);
    for (std::size_t m1 = n_min; m1 + n_min <= n; ++m1) {
        const double cost = partition_cost(m1, n - m1) + l1_length_from_sse(m1, sse_left[m1], d, config) +
                            l1_length_from_sse(n - m1, sse_right[m1], d, config);
        result.costs[m1] = cost;
        if (cost < result.l2_star) {
            result.l2_star = cost;
            best_cut = m1;
        }
    }
    if (best_cut == 0) return result;

    SplitCandidate cand;
    cand.cut_position = best_cut;
    cand.l2 = result.l2_star;
    cand.left_indices = sorted_members(ball.members, order, 0, best_cut);
    cand.right_indices = sorted_members(ball.members, order, best_cut, n);
    result.best = std::move(cand);
    return result;
}

double log_ball_volume(std::size_t d, double r) {
    const double dd = static_cast<double>(d);
    const double radius = std::max(r, kRadiusFloor);
    return 0.5 * dd * std::log(std::numbers::pi) - std::lgamma(0.5 * dd + 1.0) + dd * std::log(radius);
}

double log_shell_volume(std::size_t d, double r_out, double r_core) {
    if (r_core >= r_out) return kLogVolumeFloor;
    const double outer = log_ball_volume(d, r_out);
    if (r_core <= 0.0) return outer;
    const double inner = log_ball_volume(d, r_core);
    const double fraction = -std::expm1(inner - outer);  // 1 - V_core / V_out
    if (!(fraction > 0.0)) return kLogVolumeFloor;
    const double value = outer + std::log(fraction);
    return std::isfinite(value) ? value : kLogVolumeFloor;
}

PeelResult l3_best_peel(const GranularBall& ball, const Matrix& points, std::size_t n_min,
                        const MdlConfig& config) {
    PeelResult result;
    const std::size_t n = ball.size();
    const std::size_t d = points.cols();
    // A zero-radius ball has no shell to code residuals in.
    if (n <= n_min || !(ball.radius > 0.0)) return result;

    const Matrix y = centered_rows(points, ball.members, ball.center);
    std::vector<double> dist2(n);
    for (std::size_t k = 0; k < n; ++k) {
        double acc = 0.0;
        for (double v : y.row(k)) acc += v * v;
        dist2[k] = acc;
    }
    const auto order = order_by(dist2);

    const double r_out = 2.0 * ball.radius;
    const double index_cost = std::log(static_cast<double>(std::max<std::size_t>(n, 2)));
    std::size_t best_q = 0;
    result.costs.assign(n + 1, kInfinity);
    BallStats core(d);
    std::vector<double> core_mean(d);
    for (std::size_t s = 1; s < n; ++s) {
        core.add(y.row(order[s - 1]));
        if (s < n_min) continue;
        const std::size_t q = n - s;
        const double inv = 1.0 / static_cast<double>(s);
        for (std::size_t j = 0; j < d; ++j) core_mean[j] = core.sum[j] * inv;
        double worst = 0.0;
        for (std::size_t k = 0; k < s; ++k) worst = std::max(worst, squared_distance(y.row(order[k]), core_mean));
        const double r_core = std::sqrt(worst);
        const double cost = l1_length(core, d, config) +
                            static_cast<double>(q) * log_shell_volume(d, r_out, r_core) + index_cost;
        result.costs[q] = cost;
        // s ascends, so q descends: equal costs move to the smaller q.
        if (cost <= result.l3_star) {
            result.l3_star = cost;
            best_q = q;
        }
    }
    if (best_q == 0) return result;

    PeelCandidate cand;
    cand.q = best_q;
    cand.l3 = result.l3_star;
    cand.core_indices = sorted_members(ball.members, order, 0, n - best_q);
    cand.residual_indices = sorted_members(ball.members, order, n - best_q, n);
    result.best = std::move(cand);
    return result;
}

ModelVerdict select_model(const GranularBall& ball, const Matrix& points, std::size_t n_min,
                          const MdlConfig& config) {
    ModelVerdict verdict;
    verdict.l1 = l1_length(ball.stats, points.cols(), config);
    auto split = l2_best_split(ball, points, n_min, config);
    auto peel = l3_best_peel(ball, points, n_min, config);
    verdict.l2_star = split.l2_star;
    verdict.l3_star = peel.l3_star;

    if (std::min(verdict.l2_star, verdict.l3_star) < verdict.l1) {
        if (verdict.l3_star <= verdict.l2_star) {
            verdict.choice = Model::M3;
            verdict.peel = std::move(peel.best);
        } else {
            verdict.choice = Model::M2;
            verdict.split = std::move(split.best);
        }
    }
    return verdict;
}

}  // namespace mdlgbg
