#include "mdlgbg/generation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace mdlgbg {

std::size_t adaptive_n_min(std::size_t n, std::size_t d) {
    const double root_n = std::sqrt(static_cast<double>(n));
    const double dims = static_cast<double>(d) + 2.0;
    const double scale = root_n / std::log(std::sqrt(dims));
    const auto bound = static_cast<std::size_t>(std::ceil(std::min(scale, dims)));
    return std::max<std::size_t>(2, bound);
}

std::size_t initial_ball_count(std::size_t n) {
    auto k = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    // Correct for sqrt rounding on perfect squares.
    while (k * k > n) --k;
    while ((k + 1) * (k + 1) <= n) ++k;
    return std::max<std::size_t>(1, k);
}

namespace {

SampleIndex farthest_from(std::span<const SampleIndex> subset, const Matrix& points, SampleIndex anchor) {
    SampleIndex best = subset.front();
    double best_d = -1.0;
    for (auto i : subset) {
        const double dd = squared_distance(points.row(i), points.row(anchor));
        if (dd > best_d || (dd == best_d && i < best)) {
            best_d = dd;
            best = i;
        }
    }
    return best;
}

}  // namespace

std::pair<IndexList, IndexList> farthest_point_bisect(std::span<const SampleIndex> subset,
                                                      const Matrix& points) {
    if (subset.size() < 2) throw std::invalid_argument("farthest_point_bisect: need at least two points");
    const std::vector<double> centroid = ball_center(stats_of(points, subset));
    SampleIndex seed = subset.front();
    double seed_d = kInfinity;
    for (auto i : subset) {
        const double dd = squared_distance(points.row(i), centroid);
        if (dd < seed_d || (dd == seed_d && i < seed)) {
            seed_d = dd;
            seed = i;
        }
    }
    const SampleIndex first = farthest_from(subset, points, seed);
    const SampleIndex second = farthest_from(subset, points, first);

    std::pair<IndexList, IndexList> halves;
    for (auto i : subset) {
        const double to_first = squared_distance(points.row(i), points.row(first));
        const double to_second = squared_distance(points.row(i), points.row(second));
        (to_first <= to_second ? halves.first : halves.second).push_back(i);
    }
    std::sort(halves.first.begin(), halves.first.end());
    std::sort(halves.second.begin(), halves.second.end());
    return halves;
}

std::vector<GranularBall> initialize_balls(const Matrix& points, std::size_t k0) {
    struct Part {
        IndexList members;
        double sse = 0.0;
        bool splittable = true;
    };
    auto make_part = [&points](IndexList members) {
        Part part;
        part.sse = stats_sse(stats_of(points, members));
        part.splittable = members.size() >= 2;
        part.members = std::move(members);
        return part;
    };
    std::vector<Part> parts;
    {
        IndexList all(points.rows());
        std::iota(all.begin(), all.end(), SampleIndex{0});
        parts.push_back(make_part(std::move(all)));
    }

    // Largest first; size ties go to the larger SSE, then the lowest member.
    auto before = [](const Part& a, const Part& b) {
        if (a.members.size() != b.members.size()) return a.members.size() > b.members.size();
        if (a.sse != b.sse) return a.sse > b.sse;
        return a.members.front() < b.members.front();
    };
    while (parts.size() < k0) {
        std::size_t pick = parts.size();
        for (std::size_t p = 0; p < parts.size(); ++p) {
            if (!parts[p].splittable) continue;
            if (pick == parts.size() || before(parts[p], parts[pick])) pick = p;
        }
        if (pick == parts.size()) break;

        auto [first, second] = farthest_point_bisect(parts[pick].members, points);
        if (first.empty() || second.empty()) {
            parts[pick].splittable = false;  // all members coincide
            continue;
        }
        parts[pick] = make_part(std::move(first));
        parts.push_back(make_part(std::move(second)));
    }

    std::sort(parts.begin(), parts.end(),
              [](const Part& a, const Part& b) { return a.members.front() < b.members.front(); });
    std::vector<GranularBall> balls;
    balls.reserve(parts.size());
    for (auto& part : parts) balls.push_back(make_ball(points, std::move(part.members)));
    return balls;
}

RegenerationOutcome regenerate(const Matrix& points, std::vector<GranularBall> initial, std::size_t n_min,
                               const MdlConfig& config) {
    RegenerationOutcome out;
    std::deque<GranularBall> queue(std::make_move_iterator(initial.begin()),
                                   std::make_move_iterator(initial.end()));
    while (!queue.empty()) {
        GranularBall ball = std::move(queue.front());
        queue.pop_front();
        ModelVerdict verdict = select_model(ball, points, n_min, config);
        const std::size_t size = ball.size();
        switch (verdict.choice) {
            case Model::M1:
                out.stable_balls.push_back(std::move(ball));
                break;
            case Model::M2:
                queue.push_back(make_ball(points, verdict.split->left_indices));
                queue.push_back(make_ball(points, verdict.split->right_indices));
                break;
            case Model::M3:
                queue.push_back(make_ball(points, verdict.peel->core_indices));
                out.residual_pool.insert(out.residual_pool.end(), verdict.peel->residual_indices.begin(),
                                         verdict.peel->residual_indices.end());
                break;
        }
        out.trace.push_back({size, std::move(verdict)});
    }
    std::sort(out.residual_pool.begin(), out.residual_pool.end());
    return out;
}

double attachment_cost(const BallStats& stats, std::span<const double> x, const MdlConfig& config) {
    const std::size_t d = stats.dim();
    return l1_length(stats_add_point(stats, x), d, config) - l1_length(stats, d, config);
}

ReassignmentResult reassign_residuals(std::span<const SampleIndex> pool,
                                      const std::vector<GranularBall>& stable_balls, const Matrix& points,
                                      double background_log_volume, const MdlConfig& config) {
    ReassignmentResult out;
    for (auto sample : pool) {
        auto x = points.row(sample);
        std::size_t best_ball = stable_balls.size();
        double best_cost = kInfinity;
        for (std::size_t j = 0; j < stable_balls.size(); ++j) {
            const double cost = attachment_cost(stable_balls[j].stats, x, config);
            if (cost < best_cost) {
                best_cost = cost;
                best_ball = j;
            }
        }
        if (best_ball < stable_balls.size() && best_cost <= background_log_volume) {
            out.attachments.push_back({sample, best_ball, best_cost});
        } else {
            out.background.push_back(sample);
        }
    }
    return out;
}

void apply_attachments(std::vector<GranularBall>& balls, const std::vector<Attachment>& attachments,
                       const Matrix& points) {
    if (attachments.empty()) return;
    std::vector<IndexList> extra(balls.size());
    for (const auto& a : attachments) extra.at(a.ball).push_back(a.sample);
    for (std::size_t j = 0; j < balls.size(); ++j) {
        if (extra[j].empty()) continue;
        IndexList members = balls[j].members;
        members.insert(members.end(), extra[j].begin(), extra[j].end());
        balls[j] = make_ball(points, std::move(members));
    }
}

std::vector<std::size_t> assign_samples(const Matrix& points, const std::vector<GranularBall>& stable_balls) {
    if (stable_balls.empty()) throw std::invalid_argument("assign_samples: no stable balls");
    std::vector<std::size_t> owner(points.rows(), 0);
    for (std::size_t i = 0; i < points.rows(); ++i) {
        auto x = points.row(i);
        double best = kInfinity;
        for (std::size_t j = 0; j < stable_balls.size(); ++j) {
            const double dd = squared_distance(x, stable_balls[j].center);
            if (dd < best) {
                best = dd;
                owner[i] = j;
            }
        }
    }
    return owner;
}

GenerationResult generate(const Dataset& dataset, const GenerationConfig& config) {
    validate(dataset);
    const Matrix& points = dataset.values;
    GenerationResult result;
    result.n_min = config.n_min.value_or(adaptive_n_min(dataset.n(), dataset.d()));
    result.k0 = config.k0.value_or(initial_ball_count(dataset.n()));
    if (result.n_min < 2) throw std::invalid_argument("generate: n_min must be at least 2");
    if (result.k0 < 1) throw std::invalid_argument("generate: k0 must be at least 1");

    auto outcome = regenerate(points, initialize_balls(points, result.k0), result.n_min, config.mdl);
    auto reassignment = reassign_residuals(outcome.residual_pool, outcome.stable_balls, points,
                                           config.background_log_volume, config.mdl);
    apply_attachments(outcome.stable_balls, reassignment.attachments, points);

    result.stable_balls = std::move(outcome.stable_balls);
    result.residual_pool = std::move(outcome.residual_pool);
    result.residual_background = std::move(reassignment.background);
    result.trace = std::move(outcome.trace);
    result.ownership = assign_samples(points, result.stable_balls);
    return result;
}

}  // namespace mdlgbg
