#ifndef KNNREG_SWEEP_HPP
#define KNNREG_SWEEP_HPP

#include "knnreg/dataset.hpp"
#include "knnreg/metrics.hpp"
#include "knnreg/regressor.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace knnreg {

struct SweepConfig {
    std::size_t k_min = 1;
    std::size_t k_max = 76;
    DistanceMetric metric = DistanceMetric::euclidean;
    WeightingMode weighting = WeightingMode::uniform;
    SearchBackend backend = SearchBackend::kd_tree;
    SplitSpec split;
    bool standardize = true;
    /// Worker threads for the per-k evaluations; results never depend on it.
    std::size_t threads = 1;
};

struct SweepRow {
    std::size_t k = 0;
    MetricReport metrics;

    bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::size_t best_k_rmse = 0;
    std::optional<std::size_t> best_k_r2; // empty when every R^2 is undefined
    std::size_t n_train = 0;
    std::size_t n_test = 0;

    bool operator==(const SweepResult&) const = default;
};

enum class Criterion { rmse, r2 };

/**
 * Split once, fit one index, then evaluate every k in [k_min, k_max] on the
 * held-out rows. Throws InvalidArgument when k_max exceeds the training rows.
 */
SweepResult run_sweep(const Dataset& data, const SweepConfig& config);

/// Evaluate the listed k values on an already split dataset (any order).
std::vector<SweepRow> evaluate_ks(const KnnModel& model, const Dataset& test, const std::vector<std::size_t>& ks,
                                  std::size_t threads);

/// argmin RMSE or argmax R^2, smallest k on ties.
std::size_t select_best(const SweepResult& result, Criterion criterion);

/// CSV with header "k,rmse,r_squared,sse,mse,ssr,sst", reals at 12 significant digits.
void emit_table(const SweepResult& result, const std::filesystem::path& path);

/// Inverse of emit_table for the numeric rows; best-k fields are recomputed.
SweepResult read_table(const std::filesystem::path& path);

/// Standalone 800x500 SVG line chart of the metric against k.
void emit_chart(const SweepResult& result, Criterion criterion, const std::filesystem::path& path,
                const std::string& title);

std::string render_chart(const SweepResult& result, Criterion criterion, const std::string& title);

/// Plot-area mapping used by render_chart, exposed for tests.
struct ChartLayout {
    static constexpr double width = 800.0;
    static constexpr double height = 500.0;
    static constexpr double left = 80.0;
    static constexpr double right = 30.0;
    static constexpr double top = 50.0;
    static constexpr double bottom = 60.0;

    double k_lo = 0.0;
    double k_hi = 1.0;
    double y_lo = 0.0;
    double y_hi = 1.0;

    [[nodiscard]] double x_of(double k) const;
    [[nodiscard]] double y_of(double v) const;
};

ChartLayout chart_layout(const SweepResult& result, Criterion criterion);

} // namespace knnreg

#endif
