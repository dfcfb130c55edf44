#include "knnreg/cli.hpp"

#include "knnreg/error.hpp"
#include "knnreg/metrics.hpp"
#include "knnreg/regressor.hpp"
#include "knnreg/sweep.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace knnreg::cli {

namespace {

const std::map<std::string, DistanceMetric> metric_names{
    {"euclidean", DistanceMetric::euclidean},
    {"manhattan", DistanceMetric::manhattan},
    {"hamming", DistanceMetric::hamming},
};
const std::map<std::string, WeightingMode> weighting_names{
    {"uniform", WeightingMode::uniform},
    {"inverse", WeightingMode::inverse_distance},
};
const std::map<std::string, SearchBackend> backend_names{
    {"brute", SearchBackend::brute_force},
    {"kdtree", SearchBackend::kd_tree},
};

struct Options {
    std::string data;
    std::string train;
    std::string query;
    std::string target;
    std::vector<std::string> categorical;
    std::string metric = "euclidean";
    std::string weighting = "uniform";
    std::string backend = "kdtree";
    bool backend_given = false;
    std::size_t k = 1;
    std::size_t k_min = 1;
    std::size_t k_max = 76;
    double split = 0.8;
    std::uint64_t seed = 42;
    bool no_standardize = false;
    std::string out_table;
    std::string plot_rmse;
    std::string plot_r2;
    std::string out;
};

CsvOptions csv_options(const Options& o) {
    CsvOptions c;
    c.target_column = o.target;
    c.categorical_columns.insert(o.categorical.begin(), o.categorical.end());
    return c;
}

// Hamming has no kd-tree; fall back to brute force unless the user insisted.
SearchBackend resolve_backend(const Options& o) {
    const auto metric = metric_names.at(o.metric);
    if (metric == DistanceMetric::hamming && !o.backend_given) {
        return SearchBackend::brute_force;
    }
    return backend_names.at(o.backend);
}

std::size_t sweep_threads() {
    const char* env = std::getenv("KNN_SWEEP_THREADS");
    if (env == nullptr || *env == '\0') {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    std::size_t value = 0;
    const std::string_view text(env);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
        throw InvalidArgument("KNN_SWEEP_THREADS must be a positive integer, got \"" + std::string(text) + "\"");
    }
    return value;
}

std::string real17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string title_stem(const std::string& path) { return std::filesystem::path(path).stem().string(); }

void add_shared(CLI::App* cmd, Options& o, bool with_split) {
    cmd->add_option("--categorical", o.categorical, "Comma-separated categorical feature columns")->delimiter(',');
    cmd->add_option("--metric", o.metric, "Distance metric")
        ->check(CLI::IsMember({"euclidean", "manhattan", "hamming"}))
        ->capture_default_str();
    cmd->add_option("--weighting", o.weighting, "Neighbour weighting")
        ->check(CLI::IsMember({"uniform", "inverse"}))
        ->capture_default_str();
    cmd->add_option_function<std::string>(
           "--backend",
           [&o](const std::string& v) {
               o.backend = v;
               o.backend_given = true;
           },
           "Neighbour search backend (default kdtree; brute for hamming)")
        ->check(CLI::IsMember({"brute", "kdtree"}));
    if (with_split) {
        cmd->add_option("--split", o.split, "Training fraction in (0,1)")->capture_default_str();
        cmd->add_option("--seed", o.seed, "Shuffle seed")->capture_default_str();
    }
    cmd->add_flag("--no-standardize", o.no_standardize, "Do not z-score numeric features");
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const Dataset data = load_csv(o.data, csv_options(o));
    SweepConfig config;
    config.k_min = o.k_min;
    config.k_max = o.k_max;
    config.metric = metric_names.at(o.metric);
    config.weighting = weighting_names.at(o.weighting);
    config.backend = resolve_backend(o);
    config.split = SplitSpec{o.split, o.seed};
    config.standardize = !o.no_standardize;
    config.threads = sweep_threads();

    const SweepResult result = run_sweep(data, config);
    emit_table(result, o.out_table);
    const std::string name = title_stem(o.data);
    if (!o.plot_rmse.empty()) {
        emit_chart(result, Criterion::rmse, o.plot_rmse, "RMSE Score for " + name);
    }
    if (!o.plot_r2.empty()) {
        emit_chart(result, Criterion::r2, o.plot_r2, "Goodness of Fit for " + name + " over k values");
    }

    auto row_of = [&](std::size_t k) -> const MetricReport& { return result.rows[k - result.rows.front().k].metrics; };
    auto r2_text = [](const MetricReport& m) { return m.r_squared ? real17(*m.r_squared) : std::string("undefined"); };
    const auto& best = row_of(result.best_k_rmse);
    out << "best_k_rmse=" << result.best_k_rmse << " rmse=" << real17(best.rmse) << " r_squared=" << r2_text(best)
        << '\n';
    if (result.best_k_r2) {
        const auto& m = row_of(*result.best_k_r2);
        out << "best_k_r2=" << *result.best_k_r2 << " rmse=" << real17(m.rmse) << " r_squared=" << r2_text(m) << '\n';
    } else {
        out << "best_k_r2=undefined (test targets are constant)\n";
    }
    return exit_ok;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const Dataset data = load_csv(o.data, csv_options(o));
    const TrainTest parts = split(data, SplitSpec{o.split, o.seed});
    FitOptions fo;
    fo.k = o.k;
    fo.metric = metric_names.at(o.metric);
    fo.weighting = weighting_names.at(o.weighting);
    fo.backend = resolve_backend(o);
    fo.standardize = !o.no_standardize;
    const KnnModel model = fit(parts.train, fo);
    out << to_json(report(parts.test.target, predict(model, parts.test))) << '\n';
    return exit_ok;
}

int cmd_predict(const Options& o, std::ostream&) {
    const Dataset train = load_csv(o.train, csv_options(o));
    const Dataset query = load_query_csv(o.query, train);
    FitOptions fo;
    fo.k = o.k;
    fo.metric = metric_names.at(o.metric);
    fo.weighting = weighting_names.at(o.weighting);
    fo.backend = resolve_backend(o);
    fo.standardize = !o.no_standardize;
    const auto yhat = predict(fit(train, fo), query);

    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw IoError("cannot write " + o.out);
    }
    file << "row_index,prediction\n";
    for (std::size_t i = 0; i < yhat.size(); ++i) {
        file << i << ',' << real17(yhat[i]) << '\n';
    }
    return exit_ok;
}

int cmd_density(const Options& o, std::ostream&) {
    if (o.metric != "euclidean") {
        throw IncompatibleMetric("density estimation is euclidean-only; got --metric " + o.metric);
    }
    CsvOptions csv;
    csv.target_column = o.target;
    const Dataset train = load_csv(o.train, csv);
    const Dataset query = load_query_csv(o.query, train);
    FitOptions fo;
    fo.k = o.k;
    fo.metric = DistanceMetric::euclidean;
    fo.backend = backend_names.at(o.backend);
    const KnnModel model = fit(train, fo);

    std::ofstream file(o.out, std::ios::binary);
    if (!file) {
        throw IoError("cannot write " + o.out);
    }
    file << "row_index,density\n";
    for (std::size_t i = 0; i < query.rows; ++i) {
        file << i << ',';
        try {
            file << real17(estimate_density(model, query.row(i)).value) << '\n';
        } catch (const ZeroRadiusDensity&) {
            file << "inf\n";
        }
    }
    return exit_ok;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"k-nearest-neighbour regression sweeps, evaluation, prediction and density estimates", "knn_sweep"};
    app.require_subcommand(1);

    auto* sweep = app.add_subcommand("sweep", "Evaluate every k in a range and write a table and charts");
    sweep->add_option("--data", o.data, "Input CSV")->required();
    sweep->add_option("--target", o.target, "Target column")->required();
    add_shared(sweep, o, true);
    sweep->add_option("--k-min", o.k_min, "Smallest k")->capture_default_str();
    sweep->add_option("--k-max", o.k_max, "Largest k")->capture_default_str();
    sweep->add_option("--out-table", o.out_table, "Output CSV table")->required();
    sweep->add_option("--plot-rmse", o.plot_rmse, "Optional RMSE chart (SVG)");
    sweep->add_option("--plot-r2", o.plot_r2, "Optional R-squared chart (SVG)");

    auto* eval = app.add_subcommand("eval", "Evaluate one k on the held-out split and print JSON metrics");
    eval->add_option("--data", o.data, "Input CSV")->required();
    eval->add_option("--target", o.target, "Target column")->required();
    add_shared(eval, o, true);
    eval->add_option("--k", o.k, "Neighbour count")->required();

    auto* pred = app.add_subcommand("predict", "Fit on a training CSV and predict a query CSV");
    pred->add_option("--train", o.train, "Training CSV")->required();
    pred->add_option("--query", o.query, "Query CSV (feature columns)")->required();
    pred->add_option("--target", o.target, "Target column of the training CSV")->required();
    pred->add_option("--k", o.k, "Neighbour count")->required();
    add_shared(pred, o, false);
    pred->add_option("--out", o.out, "Output CSV (row_index,prediction)")->required();

    auto* dens = app.add_subcommand("density", "Estimate k-nearest-neighbour densities at query points");
    dens->add_option("--train", o.train, "Sample CSV")->required();
    dens->add_option("--query", o.query, "Query CSV")->required();
    dens->add_option("--k", o.k, "Neighbour count")->required();
    dens->add_option("--target", o.target, "Column of the sample CSV to ignore");
    dens->add_option("--metric", o.metric, "Distance metric (euclidean only)")->capture_default_str();
    dens->add_option_function<std::string>(
            "--backend", [&o](const std::string& v) { o.backend = v; }, "Neighbour search backend")
        ->check(CLI::IsMember({"brute", "kdtree"}));
    dens->add_option("--out", o.out, "Output CSV (row_index,density)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return exit_usage_error;
    }

    try {
        if (sweep->parsed()) {
            return cmd_sweep(o, out);
        }
        if (eval->parsed()) {
            return cmd_eval(o, out);
        }
        if (pred->parsed()) {
            return cmd_predict(o, out);
        }
        return cmd_density(o, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_domain_error;
    }
}

} // namespace knnreg::cli
