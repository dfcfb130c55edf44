#include "knnreg/metrics.hpp"

#include "knnreg/error.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace knnreg {

namespace {

void check_pair(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) {
        throw InvalidArgument("metric inputs differ in length (" + std::to_string(y.size()) + " vs " +
                              std::to_string(yhat.size()) + ")");
    }
    if (y.empty()) {
        throw InvalidArgument("metric inputs are empty");
    }
}

} // namespace

double sse(std::span<const double> y, std::span<const double> yhat) {
    check_pair(y, yhat);
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double e = y[i] - yhat[i];
        sum += e * e;
    }
    return sum;
}

double mse(std::span<const double> y, std::span<const double> yhat) {
    return sse(y, yhat) / static_cast<double>(y.size());
}

double rmse(std::span<const double> y, std::span<const double> yhat) { return std::sqrt(mse(y, yhat)); }

double mean(std::span<const double> v) {
    if (v.empty()) {
        throw InvalidArgument("mean of an empty vector");
    }
    double sum = 0.0;
    for (const double x : v) {
        sum += x;
    }
    return sum / static_cast<double>(v.size());
}

double ssr(std::span<const double> yhat, double ybar) {
    if (yhat.empty()) {
        throw InvalidArgument("ssr of an empty vector");
    }
    double sum = 0.0;
    for (const double v : yhat) {
        const double d = v - ybar;
        sum += d * d;
    }
    return sum;
}

double sst(std::span<const double> y, double ybar) {
    if (y.empty()) {
        throw InvalidArgument("sst of an empty vector");
    }
    double sum = 0.0;
    for (const double v : y) {
        const double d = v - ybar;
        sum += d * d;
    }
    return sum;
}

double r_squared(std::span<const double> y, std::span<const double> yhat) {
    const double residual = sse(y, yhat);
    const double total = sst(y, mean(y));
    if (total == 0.0) {
        throw UndefinedRSquared();
    }
    return 1.0 - residual / total;
}

MetricReport report(std::span<const double> y, std::span<const double> yhat) {
    MetricReport r;
    r.n = y.size();
    r.sse = sse(y, yhat);
    r.mse = r.sse / static_cast<double>(r.n);
    r.rmse = std::sqrt(r.mse);
    const double ybar = mean(y);
    r.ssr = ssr(yhat, ybar);
    r.sst = sst(y, ybar);
    if (r.sst > 0.0) {
        r.r_squared = 1.0 - r.sse / r.sst;
    }
    return r;
}

std::string to_json(const MetricReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["sse"] = r.sse;
    j["mse"] = r.mse;
    j["rmse"] = r.rmse;
    j["r_squared"] = r.r_squared ? nlohmann::ordered_json(*r.r_squared) : nlohmann::ordered_json(nullptr);
    j["ssr"] = r.ssr;
    j["sst"] = r.sst;
    return j.dump();
}

} // namespace knnreg
