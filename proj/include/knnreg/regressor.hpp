#ifndef KNNREG_REGRESSOR_HPP
#define KNNREG_REGRESSOR_HPP

#include "knnreg/dataset.hpp"
#include "knnreg/distance.hpp"
#include "knnreg/neighbors.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace knnreg {

enum class WeightingMode { uniform, inverse_distance };

std::string_view to_string(WeightingMode mode);

struct FitOptions {
    std::size_t k = 5;
    DistanceMetric metric = DistanceMetric::euclidean;
    WeightingMode weighting = WeightingMode::uniform;
    SearchBackend backend = SearchBackend::kd_tree;
    bool standardize = false;
};

/**
 * Fitted KNN regressor. Holds the (optionally standardized) training rows and
 * a shared, immutable neighbour index; queries are passed in raw feature
 * space and standardized internally when a standardizer is present.
 */
class KnnModel {
public:
    [[nodiscard]] std::size_t k() const { return k_; }
    [[nodiscard]] DistanceMetric metric() const { return index_->metric(); }
    [[nodiscard]] WeightingMode weighting() const { return weighting_; }
    [[nodiscard]] SearchBackend backend() const { return index_->backend(); }
    [[nodiscard]] const Dataset& train() const { return *train_; }
    [[nodiscard]] const std::optional<Standardizer>& standardizer() const { return standardizer_; }
    [[nodiscard]] const NeighborIndex& index() const { return *index_; }

    /// Same training data and index, different neighbour count.
    [[nodiscard]] KnnModel with_k(std::size_t k) const;

private:
    friend KnnModel fit(const Dataset&, const FitOptions&);
    KnnModel() = default;

    std::shared_ptr<const Dataset> train_;
    std::shared_ptr<const NeighborIndex> index_;
    std::optional<Standardizer> standardizer_;
    std::size_t k_ = 1;
    WeightingMode weighting_ = WeightingMode::uniform;
};

/// Throws when k is outside [1, n] or the metric/backend pair is unsupported.
KnnModel fit(const Dataset& train, const FitOptions& options);

/**
 * Uniform: mean of the k neighbour targets. Inverse distance: sum(w y)/sum(w)
 * with w = 1/d, except that any zero-distance neighbours take over and their
 * mean target is returned.
 */
double predict_one(const KnnModel& model, std::span<const double> q);

/// predict_one on every row of `queries`, in row order.
std::vector<double> predict(const KnnModel& model, const Dataset& queries);

/// Combine neighbour targets the way predict_one does.
double combine_targets(const NeighborSet& neighbors, std::span<const double> targets, WeightingMode mode);

struct DensityEstimate {
    double value = 0.0;
    double radius = 0.0;
    double volume = 0.0;
};

/// Volume of the unit ball in `d` dimensions, pi^(d/2) / Gamma(d/2 + 1).
double unit_ball_volume(std::size_t d);

/**
 * k / (n V) where V is the Euclidean ball reaching the k-th neighbour.
 * Throws ZeroRadiusDensity when that radius is zero and IncompatibleMetric
 * for non-Euclidean models.
 */
DensityEstimate estimate_density(const KnnModel& model, std::span<const double> q);

} // namespace knnreg

#endif
