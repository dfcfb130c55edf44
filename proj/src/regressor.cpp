#include "knnreg/regressor.hpp"

#include "knnreg/error.hpp"

#include <cmath>
#include <numbers>

namespace knnreg {

std::string_view to_string(WeightingMode mode) {
    return mode == WeightingMode::uniform ? "uniform" : "inverse_distance";
}

namespace {

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k > n) {
        throw InvalidArgument("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) +
                              "] (training rows)");
    }
}

} // namespace

KnnModel fit(const Dataset& train, const FitOptions& options) {
    if (train.rows == 0) {
        throw InvalidArgument("cannot fit on an empty training set");
    }
    check_k(options.k, train.rows);

    KnnModel model;
    model.k_ = options.k;
    model.weighting_ = options.weighting;
    if (options.standardize) {
        model.standardizer_ = fit_standardizer(train);
        model.train_ = std::make_shared<const Dataset>(model.standardizer_->apply(train));
    } else {
        model.train_ = std::make_shared<const Dataset>(train);
    }
    model.index_ = std::make_shared<const NeighborIndex>(build_index(*model.train_, options.metric, options.backend));
    return model;
}

KnnModel KnnModel::with_k(std::size_t k) const {
    check_k(k, train_->rows);
    KnnModel copy = *this;
    copy.k_ = k;
    return copy;
}

double combine_targets(const NeighborSet& neighbors, std::span<const double> targets, WeightingMode mode) {
    const auto& idx = neighbors.indices;
    const auto& dist = neighbors.distances;
    if (idx.empty()) {
        throw InvalidArgument("cannot predict from an empty neighbour set");
    }
    if (mode == WeightingMode::inverse_distance && dist.front() == 0.0) {
        // Exact-match rule: zero-distance neighbours sort first.
        double sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < idx.size() && dist[i] == 0.0; ++i) {
            sum += targets[idx[i]];
            ++count;
        }
        return sum / static_cast<double>(count);
    }
    if (idx.size() == 1) {
        // (w y) / w need not round back to y.
        return targets[idx.front()];
    }
    if (mode == WeightingMode::uniform) {
        double sum = 0.0;
        for (const auto i : idx) {
            sum += targets[i];
        }
        return sum / static_cast<double>(idx.size());
    }
    double weighted = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const double w = 1.0 / dist[i];
        weighted += w * targets[idx[i]];
        total += w;
    }
    return weighted / total;
}

double predict_one(const KnnModel& model, std::span<const double> q) {
    const NeighborIndex& index = model.index();
    if (q.size() != index.dims()) {
        throw InvalidArgument("query has " + std::to_string(q.size()) + " features, model expects " +
                              std::to_string(index.dims()));
    }
    if (!model.train().labeled()) {
        throw InvalidArgument("model was fitted without targets; it supports density estimation only");
    }
    const auto& scaler = model.standardizer();
    if (scaler) {
        const auto z = scaler->apply(q);
        return combine_targets(index.query(z, model.k()), model.train().target, model.weighting());
    }
    return combine_targets(index.query(q, model.k()), model.train().target, model.weighting());
}

std::vector<double> predict(const KnnModel& model, const Dataset& queries) {
    const Dataset& train = model.train();
    if (!queries.same_schema(train)) {
        throw SchemaMismatch("query columns do not match the training columns");
    }
    std::vector<double> out;
    out.reserve(queries.rows);
    for (std::size_t r = 0; r < queries.rows; ++r) {
        out.push_back(predict_one(model, queries.row(r)));
    }
    return out;
}

double unit_ball_volume(std::size_t d) {
    const double half = static_cast<double>(d) / 2.0;
    return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

DensityEstimate estimate_density(const KnnModel& model, std::span<const double> q) {
    if (model.metric() != DistanceMetric::euclidean) {
        throw IncompatibleMetric("density estimation is defined for the euclidean metric only");
    }
    const NeighborIndex& index = model.index();
    if (q.size() != index.dims()) {
        throw InvalidArgument("query has " + std::to_string(q.size()) + " features, model expects " +
                              std::to_string(index.dims()));
    }
    const auto& scaler = model.standardizer();
    const double r = scaler ? index.radius_of_kth(scaler->apply(q), model.k()) : index.radius_of_kth(q, model.k());
    if (r == 0.0) {
        throw ZeroRadiusDensity();
    }
    const std::size_t d = index.dims();
    DensityEstimate out;
    out.radius = r;
    out.volume = unit_ball_volume(d) * std::pow(r, static_cast<double>(d));
    out.value = static_cast<double>(model.k()) / (static_cast<double>(index.size()) * out.volume);
    return out;
}

} // namespace knnreg
