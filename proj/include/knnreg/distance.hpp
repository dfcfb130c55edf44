#ifndef KNNREG_DISTANCE_HPP
#define KNNREG_DISTANCE_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace knnreg {

enum class DistanceMetric { euclidean, manhattan, hamming };

/// Canonical spelling: "euclidean" | "manhattan" | "hamming".
std::string_view to_string(DistanceMetric metric);
std::optional<DistanceMetric> parse_metric(std::string_view name);

/// sqrt of the left-to-right sum of squared coordinate differences.
double euclidean(std::span<const double> x, std::span<const double> y);

/// Left-to-right sum of squared differences; the neighbour search ranks by this.
double squared_euclidean(std::span<const double> x, std::span<const double> y);

double manhattan(std::span<const double> x, std::span<const double> y);

/// Number of coordinates whose integer codes differ.
double hamming(std::span<const double> x, std::span<const double> y);

/**
 * Dispatch on `metric`. Hamming additionally requires every coordinate to be
 * a non-negative integer code and throws IncompatibleMetric otherwise.
 */
double distance(DistanceMetric metric, std::span<const double> x, std::span<const double> y);

} // namespace knnreg

#endif
