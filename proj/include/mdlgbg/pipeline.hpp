#ifndef MDLGBG_PIPELINE_HPP
#define MDLGBG_PIPELINE_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdlgbg/backends.hpp"
#include "mdlgbg/csv_loader.hpp"
#include "mdlgbg/generation.hpp"

namespace mdlgbg {

struct RunConfig {
    std::string input_path;
    LabelColumn label_column;
    Backend backend = Backend::Agglomerative;
    std::optional<std::size_t> k;  // nullopt: number of distinct labels
    std::size_t runs = 1;
    std::uint64_t seed = 0;
    bool normalize = true;
    std::optional<std::size_t> n_min;
    std::optional<std::size_t> k0;
    bool weight_by_size = false;
    bool record_timings = true;  // false writes null seconds, for byte-stable reports
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::optional<double> ari;
    std::optional<double> acc;
    std::optional<double> nmi;
    double seconds = 0.0;
    std::vector<int> labels;  // per-sample cluster labels
};

struct MetricSummary {
    double mean = 0.0;
    double std = 0.0;  // population standard deviation over runs
};

struct EvaluationReport {
    RunConfig config;
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::size_t> classes;
    std::size_t k = 0;
    std::size_t n_min = 0;
    std::size_t k0 = 0;
    std::size_t balls = 0;
    std::size_t residual_pool = 0;
    std::size_t residual_background = 0;
    std::array<std::size_t, 3> verdict_counts{};  // M1, M2, M3
    double generation_seconds = 0.0;
    double backend_seconds = 0.0;
    double total_seconds = 0.0;
    std::vector<RunRecord> runs;
    std::optional<MetricSummary> ari;
    std::optional<MetricSummary> acc;
    std::optional<MetricSummary> nmi;
};

// Normalize, generate once, then cluster and score `config.runs` times with
// seeds seed, seed + 1, ... Labels feed only the metrics.
EvaluationReport run_pipeline(const Dataset& dataset, const RunConfig& config);
EvaluationReport run_pipeline(const RunConfig& config);

MetricSummary summarize(const std::vector<double>& values);

// Key order: config, dataset, generation, runs, summary.
std::string report_to_json(const EvaluationReport& report, int indent = 2);
std::string report_csv_header();
std::string report_csv_row(const EvaluationReport& report);

}  // namespace mdlgbg

#endif  // MDLGBG_PIPELINE_HPP
