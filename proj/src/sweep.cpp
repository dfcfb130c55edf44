#include "knnreg/sweep.hpp"

#include "knnreg/error.hpp"

#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace knnreg {

namespace {

std::optional<std::size_t> best_of(const std::vector<SweepRow>& rows, Criterion criterion) {
    std::optional<std::size_t> best;
    double best_value = 0.0;
    for (const auto& row : rows) {
        if (criterion == Criterion::rmse) {
            if (!best || row.metrics.rmse < best_value) {
                best = row.k;
                best_value = row.metrics.rmse;
            }
        } else if (row.metrics.r_squared && (!best || *row.metrics.r_squared > best_value)) {
            best = row.k;
            best_value = *row.metrics.r_squared;
        }
    }
    return best;
}

void finalize(SweepResult& result) {
    result.best_k_rmse = best_of(result.rows, Criterion::rmse).value_or(0);
    result.best_k_r2 = best_of(result.rows, Criterion::r2);
}

} // namespace

std::vector<SweepRow> evaluate_ks(const KnnModel& model, const Dataset& test, const std::vector<std::size_t>& ks,
                                  std::size_t threads) {
    if (!test.labeled()) {
        throw InvalidArgument("evaluation rows need targets");
    }
    std::vector<SweepRow> rows(ks.size());
    // Validate every k up front so workers never throw.
    std::vector<KnnModel> models;
    models.reserve(ks.size());
    for (const auto k : ks) {
        models.push_back(model.with_k(k));
    }
    auto work = [&](std::size_t i) {
        const auto yhat = predict(models[i], test);
        rows[i] = SweepRow{ks[i], report(test.target, yhat)};
    };
    threads = std::max<std::size_t>(1, std::min(threads, ks.size()));
    if (threads == 1) {
        for (std::size_t i = 0; i < ks.size(); ++i) {
            work(i);
        }
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < ks.size(); i = next++) {
                work(i);
            }
        });
    }
    pool.clear();
    return rows;
}

SweepResult run_sweep(const Dataset& data, const SweepConfig& config) {
    if (config.k_min < 1 || config.k_min > config.k_max) {
        throw InvalidArgument("k range must satisfy 1 <= k_min <= k_max (got " + std::to_string(config.k_min) +
                              ".." + std::to_string(config.k_max) + ")");
    }
    const TrainTest parts = split(data, config.split);
    if (config.k_max > parts.train.rows) {
        throw InvalidArgument("k_max = " + std::to_string(config.k_max) + " exceeds the " +
                              std::to_string(parts.train.rows) + " training rows after the split");
    }
    FitOptions options;
    options.k = config.k_min;
    options.metric = config.metric;
    options.weighting = config.weighting;
    options.backend = config.backend;
    options.standardize = config.standardize;
    const KnnModel model = fit(parts.train, options);

    std::vector<std::size_t> ks(config.k_max - config.k_min + 1);
    std::iota(ks.begin(), ks.end(), config.k_min);

    SweepResult result;
    result.rows = evaluate_ks(model, parts.test, ks, config.threads);
    result.n_train = parts.train.rows;
    result.n_test = parts.test.rows;
    finalize(result);
    return result;
}

std::size_t select_best(const SweepResult& result, Criterion criterion) {
    if (result.rows.empty()) {
        throw InvalidArgument("cannot select a best k from an empty sweep");
    }
    const auto best = best_of(result.rows, criterion);
    if (!best) {
        throw UndefinedRSquared();
    }
    return *best;
}

void emit_table(const SweepResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "k,rmse,r_squared,sse,mse,ssr,sst\n";
    char buf[64];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out << ',' << buf;
    };
    for (const auto& row : result.rows) {
        const auto& m = row.metrics;
        out << row.k;
        put(m.rmse);
        if (m.r_squared) {
            put(*m.r_squared);
        } else {
            out << ',';
        }
        put(m.sse);
        put(m.mse);
        put(m.ssr);
        put(m.sst);
        out << '\n';
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

SweepResult read_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line) || line != "k,rmse,r_squared,sse,mse,ssr,sst") {
        throw ParseError(path.string() + ": not a sweep table");
    }
    SweepResult result;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (fields.size() == 6) {
            fields.emplace_back();
        }
        if (fields.size() != 7) {
            throw ParseError(path.string() + ": malformed row \"" + line + "\"");
        }
        auto num = [&](const std::string& s) {
            double v = 0.0;
            const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size()) {
                throw ParseError(path.string() + ": bad number \"" + s + "\"");
            }
            return v;
        };
        SweepRow row;
        row.k = static_cast<std::size_t>(num(fields[0]));
        row.metrics.rmse = num(fields[1]);
        if (!fields[2].empty()) {
            row.metrics.r_squared = num(fields[2]);
        }
        row.metrics.sse = num(fields[3]);
        row.metrics.mse = num(fields[4]);
        row.metrics.ssr = num(fields[5]);
        row.metrics.sst = num(fields[6]);
        result.rows.push_back(row);
    }
    finalize(result);
    return result;
}

} // namespace knnreg
