#ifndef MDLGBG_MDL_MODELS_HPP
#define MDLGBG_MDL_MODELS_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mdlgbg/types.hpp"

namespace mdlgbg {

// Description lengths are in nats throughout.
struct MdlConfig {
    double variance_floor = 1e-12;
};

struct GaussianFit {
    std::vector<double> mean;
    double variance = 0.0;
};

// Isotropic Gaussian MLE: mean = sum / m, variance = SSE / (d m) floored at
// `config.variance_floor`.
GaussianFit mle_mean_var(const BallStats& stats, std::size_t d, const MdlConfig& config = {});

// Single-ball description length
//   (m d / 2)(1 + ln(2 pi var)) + ((d + 1) / 2) ln m.
double l1_length(const BallStats& stats, std::size_t d, const MdlConfig& config = {});
double l1_length_from_sse(std::size_t count, double sse, std::size_t d, const MdlConfig& config = {});

// n H(m1/n, m2/n) with n = m1 + m2 and 0 ln 0 = 0.
double partition_cost(std::size_t m1, std::size_t m2);

// Unit eigenvector of the sample covariance for its largest eigenvalue, by
// power iteration from the axis of largest variance. The first nonzero
// coordinate is made positive. Returns nullopt when the covariance is zero.
std::optional<std::vector<double>> first_principal_direction(const Matrix& points,
                                                             std::span<const SampleIndex> members);
std::optional<std::vector<double>> first_principal_direction(const Matrix& points);

struct SplitResult {
    double l2_star = kInfinity;
    std::optional<SplitCandidate> best;
    std::vector<double> costs;  // costs[m1] for every cut; +inf where infeasible
};

// Best two-ball explanation over cuts of the members sorted by their first
// principal projection; both parts must hold at least n_min points.
SplitResult l2_best_split(const GranularBall& ball, const Matrix& points, std::size_t n_min,
                          const MdlConfig& config = {});

// ln V_d(r); r is floored at 1e-12.
double log_ball_volume(std::size_t d, double r);

inline constexpr double kLogVolumeFloor = -690.77552789821368;  // ln(1e-300)

// ln(V_d(r_out) - V_d(r_core)), evaluated in the log domain.
double log_shell_volume(std::size_t d, double r_out, double r_core);

struct PeelResult {
    double l3_star = kInfinity;
    std::optional<PeelCandidate> best;
    std::vector<double> costs;  // costs[q] for every residual size; +inf where infeasible
};

// Best core-plus-residual explanation: the q farthest members from the ball
// center are coded uniformly in the shell between the core radius and 2 r_B.
PeelResult l3_best_peel(const GranularBall& ball, const Matrix& points, std::size_t n_min,
                        const MdlConfig& config = {});

// Three-way competition. Ties prefer M1, then M3, then M2.
ModelVerdict select_model(const GranularBall& ball, const Matrix& points, std::size_t n_min,
                          const MdlConfig& config = {});

}  // namespace mdlgbg

#endif  // MDLGBG_MDL_MODELS_HPP
