#ifndef KNNREG_METRICS_HPP
#define KNNREG_METRICS_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace knnreg {

/// All sums run left to right over the input order.
double sse(std::span<const double> y, std::span<const double> yhat);
double mse(std::span<const double> y, std::span<const double> yhat);
double rmse(std::span<const double> y, std::span<const double> yhat);

/// 1 - SSE/SST. Throws UndefinedRSquared when SST is zero.
double r_squared(std::span<const double> y, std::span<const double> yhat);

double mean(std::span<const double> v);

/// Explained sum of squares about `ybar`.
double ssr(std::span<const double> yhat, double ybar);
/// Total sum of squares about `ybar`.
double sst(std::span<const double> y, double ybar);

struct MetricReport {
    std::size_t n = 0;
    double sse = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
    std::optional<double> r_squared; // empty when SST == 0
    double ssr = 0.0;
    double sst = 0.0;

    bool operator==(const MetricReport&) const = default;
};

MetricReport report(std::span<const double> y, std::span<const double> yhat);

/// {"n":..,"sse":..,"mse":..,"rmse":..,"r_squared":..|null,"ssr":..,"sst":..}
std::string to_json(const MetricReport& r);

} // namespace knnreg

#endif
