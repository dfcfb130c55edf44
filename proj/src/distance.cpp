#include "knnreg/distance.hpp"

#include "knnreg/error.hpp"

#include <cmath>

namespace knnreg {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidArgument("distance: vector lengths differ (" + std::to_string(x.size()) + " vs " +
                              std::to_string(y.size()) + ")");
    }
    if (x.empty()) {
        throw InvalidArgument("distance: empty vectors");
    }
}

bool is_code(double v) { return v >= 0.0 && v == std::floor(v) && std::isfinite(v); }

} // namespace

std::string_view to_string(DistanceMetric metric) {
    switch (metric) {
    case DistanceMetric::euclidean:
        return "euclidean";
    case DistanceMetric::manhattan:
        return "manhattan";
    case DistanceMetric::hamming:
        return "hamming";
    }
    return "unknown";
}

std::optional<DistanceMetric> parse_metric(std::string_view name) {
    if (name == "euclidean") {
        return DistanceMetric::euclidean;
    }
    if (name == "manhattan") {
        return DistanceMetric::manhattan;
    }
    if (name == "hamming") {
        return DistanceMetric::hamming;
    }
    return std::nullopt;
}

double squared_euclidean(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        sum += d * d;
    }
    return sum;
}

double euclidean(std::span<const double> x, std::span<const double> y) { return std::sqrt(squared_euclidean(x, y)); }

double manhattan(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += std::abs(x[i] - y[i]);
    }
    return sum;
}

double hamming(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mismatches += x[i] != y[i] ? 1 : 0;
    }
    return static_cast<double>(mismatches);
}

double distance(DistanceMetric metric, std::span<const double> x, std::span<const double> y) {
    switch (metric) {
    case DistanceMetric::euclidean:
        return euclidean(x, y);
    case DistanceMetric::manhattan:
        return manhattan(x, y);
    case DistanceMetric::hamming:
        check_pair(x, y);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!is_code(x[i]) || !is_code(y[i])) {
                throw IncompatibleMetric("hamming distance needs categorical codes, got a non-integer value");
            }
        }
        return hamming(x, y);
    }
    throw InvalidArgument("unknown distance metric");
}

} // namespace knnreg
