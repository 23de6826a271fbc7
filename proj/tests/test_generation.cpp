#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "mdlgbg/generation.hpp"
#include "mdlgbg/preprocess.hpp"
#include "oracles.hpp"

using namespace mdlgbg;

namespace {

Matrix column(std::vector<double> xs) {
    Matrix m(xs.size(), 1);
    for (std::size_t i = 0; i < xs.size(); ++i) m(i, 0) = xs[i];
    return m;
}

IndexList iota_list(std::size_t n) {
    IndexList all(n);
    std::iota(all.begin(), all.end(), 0);
    return all;
}

// Stable balls as sets of point coordinates, independent of sample order.
std::set<std::multiset<std::vector<double>>> point_sets(const std::vector<GranularBall>& balls, const Matrix& m) {
    std::set<std::multiset<std::vector<double>>> out;
    for (const auto& b : balls) {
        std::multiset<std::vector<double>> s;
        for (auto i : b.members) s.emplace(m.row(i).begin(), m.row(i).end());
        out.insert(std::move(s));
    }
    return out;
}

}  // namespace

TEST_CASE("adaptive minimum ball size examples") {
    CHECK(adaptive_n_min(150, 4) == 6);
    CHECK(adaptive_n_min(4, 1) == 3);
    CHECK(adaptive_n_min(1, 10) == 2);
}

TEST_CASE("initial ball count examples") {
    CHECK(initial_ball_count(100) == 10);
    CHECK(initial_ball_count(1) == 1);
    CHECK(initial_ball_count(50) == 7);
    for (std::size_t n = 1; n < 5000; ++n) {
        const auto k = initial_ball_count(n);
        CHECK(k * k <= n);
        CHECK((k + 1) * (k + 1) > n);
    }
}

TEST_CASE("farthest-point bisection examples") {
    const auto m = column({0, 1, 0.4});
    auto [y1, y2] = farthest_point_bisect(iota_list(3), m);
    CHECK(y1 == IndexList{1});
    CHECK(y2 == IndexList{0, 2});

    const auto pair = column({0.2, 0.7});
    auto [a, b] = farthest_point_bisect(iota_list(2), pair);
    CHECK(a.size() == 1);
    CHECK(b.size() == 1);

    // The midpoint is equidistant from both anchors and joins the first half.
    const auto line = column({0, 0.5, 1});
    auto [p, q] = farthest_point_bisect(iota_list(3), line);
    CHECK(p.size() == 2);
    CHECK(std::find(p.begin(), p.end(), 1) != p.end());
    CHECK(q.size() == 1);

    CHECK_THROWS(farthest_point_bisect(IndexList{0}, m));
}

TEST_CASE("initialization examples") {
    auto balls = initialize_balls(column({0.3}), 1);
    REQUIRE(balls.size() == 1);
    CHECK(balls[0].members == IndexList{0});

    std::mt19937_64 rng(1);
    const auto m = oracle::uniform_matrix(100, 3, rng);
    balls = initialize_balls(m, initial_ball_count(100));
    CHECK(balls.size() == 10);
    IndexList seen;
    for (const auto& b : balls) seen.insert(seen.end(), b.members.begin(), b.members.end());
    std::sort(seen.begin(), seen.end());
    CHECK(seen == iota_list(100));

    const auto dup = column({0.1, 0.9, 0.1, 0.9});
    balls = initialize_balls(dup, 2);
    REQUIRE(balls.size() == 2);
    CHECK(balls[0].members == IndexList{0, 2});
    CHECK(balls[1].members == IndexList{1, 3});
}

TEST_CASE("initialization stops when every point coincides") {
    const auto same = column(std::vector<double>(9, 0.5));
    const auto balls = initialize_balls(same, 3);
    std::size_t total = 0;
    for (const auto& b : balls) total += b.size();
    CHECK(total == 9);
    CHECK(balls.size() <= 3);
}

TEST_CASE("identical points stabilize immediately") {
    const Dataset ds{column(std::vector<double>(25, 0.5)), std::nullopt};
    const auto result = generate(ds);
    CHECK_FALSE(result.stable_balls.empty());
    for (const auto& rec : result.trace) CHECK(rec.verdict.choice == Model::M1);
    CHECK(result.residual_pool.empty());
}

TEST_CASE("children are strictly smaller than their parents") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 50 + rng() % 400, d = 1 + rng() % 5;
        const Dataset ds{oracle::uniform_matrix(n, d, rng), std::nullopt};
        const auto result = generate(ds);
        for (const auto& rec : result.trace) {
            const auto& v = rec.verdict;
            if (rec.ball_size <= result.n_min) CHECK(v.choice == Model::M1);
            if (v.split) {
                CHECK(v.split->left_indices.size() < rec.ball_size);
                CHECK(v.split->right_indices.size() < rec.ball_size);
                CHECK(v.split->left_indices.size() + v.split->right_indices.size() == rec.ball_size);
            }
            if (v.peel) {
                CHECK(v.peel->q >= 1);
                CHECK(v.peel->core_indices.size() + v.peel->q == rec.ball_size);
            }
        }
    }
}

TEST_CASE("stable balls and pool partition the samples") {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 30 + rng() % 500, d = 1 + rng() % 8;
        const auto m = oracle::uniform_matrix(n, d, rng);
        const std::size_t n_min = adaptive_n_min(n, d);
        auto outcome = regenerate(m, initialize_balls(m, initial_ball_count(n)), n_min);
        IndexList seen = outcome.residual_pool;
        for (const auto& b : outcome.stable_balls) {
            seen.insert(seen.end(), b.members.begin(), b.members.end());
            if (b.size() > n_min) CHECK(select_model(b, m, n_min).choice == Model::M1);
        }
        std::sort(seen.begin(), seen.end());
        CHECK(seen == iota_list(n));
    }
}

TEST_CASE("generation is deterministic") {
    std::mt19937_64 rng(41);
    const Dataset ds{oracle::uniform_matrix(300, 4, rng), std::nullopt};
    const auto a = generate(ds), b = generate(ds);
    REQUIRE(a.stable_balls.size() == b.stable_balls.size());
    for (std::size_t j = 0; j < a.stable_balls.size(); ++j) CHECK(a.stable_balls[j].members == b.stable_balls[j].members);
    CHECK(a.ownership == b.ownership);
    CHECK(a.residual_pool == b.residual_pool);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t t = 0; t < a.trace.size(); ++t) {
        CHECK(a.trace[t].ball_size == b.trace[t].ball_size);
        CHECK(a.trace[t].verdict.choice == b.trace[t].verdict.choice);
        CHECK(a.trace[t].verdict.l1 == b.trace[t].verdict.l1);
    }
}

TEST_CASE("permuting samples permutes the stable balls") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 200 + rng() % 200, d = 2 + rng() % 3;
        const auto m = oracle::uniform_matrix(n, d, rng);
        IndexList perm = iota_list(n);
        std::shuffle(perm.begin(), perm.end(), rng);
        Matrix p(n, d);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < d; ++j) p(i, j) = m(perm[i], j);
        const auto a = regenerate(m, initialize_balls(m, initial_ball_count(n)), adaptive_n_min(n, d));
        const auto b = regenerate(p, initialize_balls(p, initial_ball_count(n)), adaptive_n_min(n, d));
        CHECK(point_sets(a.stable_balls, m) == point_sets(b.stable_balls, p));
    }
}

TEST_CASE("separated blobs give pure balls") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto ds = oracle::gaussian_blobs({{0, 0}, {10, 0}}, 50, 0.5, seed);
        GenerationConfig cfg;
        cfg.background_log_volume = background_log_volume(bounding_box(ds), false);
        const auto result = generate(Dataset{ds.values, std::nullopt}, cfg);
        CHECK(result.stable_balls.size() >= 2);
        for (const auto& b : result.stable_balls) {
            std::set<int> labels;
            for (auto i : b.members) labels.insert((*ds.labels)[i]);
            CHECK(labels.size() == 1);
        }
    }
}

TEST_CASE("residual reassignment examples") {
    const auto m = column({0, 1, 0.5});
    std::vector<GranularBall> balls{make_ball(m, {0, 1})};
    const double delta = attachment_cost(balls[0].stats, m.row(2));
    CHECK(delta == doctest::Approx(0.5231).epsilon(1e-3));
    auto res = reassign_residuals(IndexList{2}, balls, m, 0.0);
    CHECK(res.attachments.empty());
    CHECK(res.background == IndexList{2});

    // A tight ball absorbs a nearby point at negative marginal cost.
    const auto tight = column({0.5, 0.501, 0.502, 0.503, 0.5015});
    balls = {make_ball(tight, {0, 1, 2, 3})};
    res = reassign_residuals(IndexList{4}, balls, tight, 0.0);
    REQUIRE(res.attachments.size() == 1);
    CHECK(res.attachments[0].ball == 0);
    CHECK(res.attachments[0].cost <= 0.0);

    // A far corner point stays in the background.
    const auto corner = Matrix::from_rows({{0.1, 0.1}, {0.11, 0.1}, {0.1, 0.12}, {0.12, 0.11}, {1, 1}});
    balls = {make_ball(corner, {0, 1, 2, 3})};
    res = reassign_residuals(IndexList{4}, balls, corner, 0.0);
    CHECK(res.background == IndexList{4});

    res = reassign_residuals(IndexList{0}, {}, corner, 0.0);
    CHECK(res.background == IndexList{0});
}

TEST_CASE("ball wins a tie with the background") {
    const auto m = column({0, 1, 0.5});
    std::vector<GranularBall> balls{make_ball(m, {0, 1})};
    const double delta = attachment_cost(balls[0].stats, m.row(2));
    const auto res = reassign_residuals(IndexList{2}, balls, m, delta);
    CHECK(res.attachments.size() == 1);
}

TEST_CASE("ownership by nearest center") {
    const auto m = column({0, 1, 0.3, 0.5});
    std::vector<GranularBall> one{make_ball(m, {0, 1, 2, 3})};
    CHECK(assign_samples(m, one) == std::vector<std::size_t>{0, 0, 0, 0});
    std::vector<GranularBall> two{make_ball(m, {0}), make_ball(m, {1})};
    const auto owner = assign_samples(m, two);
    CHECK(owner[2] == 0);
    CHECK(owner[3] == 0);
    CHECK(owner[1] == 1);
    CHECK_THROWS(assign_samples(m, {}));
}

TEST_CASE("attached residuals refresh their ball") {
    const auto m = column({0.5, 0.501, 0.502, 0.503, 0.7});
    std::vector<GranularBall> balls{make_ball(m, {0, 1, 2, 3})};
    apply_attachments(balls, {{4, 0, 0.0}}, m);
    CHECK(balls[0].members == IndexList{0, 1, 2, 3, 4});
    CHECK(balls[0].center[0] == doctest::Approx((0.5 + 0.501 + 0.502 + 0.503 + 0.7) / 5));
}

TEST_CASE("generation covers every sample") {
    std::mt19937_64 rng(47);
    const Dataset ds{oracle::uniform_matrix(500, 3, rng), std::nullopt};
    const auto r = generate(ds);
    CHECK(r.ownership.size() == 500);
    for (auto o : r.ownership) CHECK(o < r.stable_balls.size());
    CHECK(r.n_min == adaptive_n_min(500, 3));
    CHECK(r.k0 == initial_ball_count(500));
    for (auto i : r.residual_background) CHECK(std::binary_search(r.residual_pool.begin(), r.residual_pool.end(), i));
}
