#ifndef MDLGBG_GENERATION_HPP
#define MDLGBG_GENERATION_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mdlgbg/mdl_models.hpp"
#include "mdlgbg/types.hpp"

namespace mdlgbg {

struct GenerationConfig {
    std::optional<std::size_t> n_min;  // adaptive_n_min(n, d) when unset
    std::optional<std::size_t> k0;     // initial_ball_count(n) when unset
    MdlConfig mdl;
    // Log-volume of the background box; 0 (unit hypercube) for normalized input.
    double background_log_volume = 0.0;
};

// max(2, ceil(min(sqrt(n) / ln(sqrt(d + 2)), d + 2)))
std::size_t adaptive_n_min(std::size_t n, std::size_t d);

// max(1, floor(sqrt(n)))
std::size_t initial_ball_count(std::size_t n);

// Two-anchor farthest-point bisection. The start point is the member nearest
// the subset centroid; the first anchor is the member farthest from it, the
// second the member farthest from the first anchor. Points no farther from the
// first anchor than from the second go to the first half. Nearest/farthest
// ties resolve to the lowest index. Throws std::invalid_argument when
// fewer than two indices are given.
std::pair<IndexList, IndexList> farthest_point_bisect(std::span<const SampleIndex> subset,
                                                      const Matrix& points);

// Coarse cover: repeatedly bisects the largest ball (ties: larger SSE, then
// lowest minimum member) until k0 balls exist or nothing can be split further.
std::vector<GranularBall> initialize_balls(const Matrix& points, std::size_t k0);

struct RegenerationOutcome {
    std::vector<GranularBall> stable_balls;
    IndexList residual_pool;
    std::vector<TraceRecord> trace;
};

// FIFO model-competition loop over `initial`, before any residual handling.
RegenerationOutcome regenerate(const Matrix& points, std::vector<GranularBall> initial,
                               std::size_t n_min, const MdlConfig& config = {});

struct Attachment {
    SampleIndex sample = 0;
    std::size_t ball = 0;
    double cost = 0.0;
};

struct ReassignmentResult {
    std::vector<Attachment> attachments;
    IndexList background;
};

// Marginal single-ball cost of absorbing x into a ball with `stats`.
double attachment_cost(const BallStats& stats, std::span<const double> x, const MdlConfig& config = {});

// Each residual independently goes to the cheapest destination among the
// stable balls (statistics frozen) and the background. Ball-vs-background
// ties go to the ball; ball-vs-ball ties to the lowest ball index.
ReassignmentResult reassign_residuals(std::span<const SampleIndex> pool,
                                      const std::vector<GranularBall>& stable_balls, const Matrix& points,
                                      double background_log_volume, const MdlConfig& config = {});

// Adds attached residuals to their balls and refreshes center and radius.
void apply_attachments(std::vector<GranularBall>& balls, const std::vector<Attachment>& attachments,
                       const Matrix& points);

// Nearest stable-ball center for every sample (ties: lowest ball index).
std::vector<std::size_t> assign_samples(const Matrix& points, const std::vector<GranularBall>& stable_balls);

// Full generation: initialization, regeneration, residual reassignment and
// final ownership.
GenerationResult generate(const Dataset& dataset, const GenerationConfig& config = {});

}  // namespace mdlgbg

#endif  // MDLGBG_GENERATION_HPP
