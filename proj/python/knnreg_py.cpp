#include "knnreg/dataset.hpp"
#include "knnreg/distance.hpp"
#include "knnreg/error.hpp"
#include "knnreg/metrics.hpp"
#include "knnreg/neighbors.hpp"
#include "knnreg/regressor.hpp"
#include "knnreg/sweep.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

namespace py = pybind11;
using namespace knnreg;

namespace {

using Vec = std::vector<double>;

Dataset from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> x,
                    std::optional<py::array_t<double, py::array::c_style | py::array::forcecast>> y) {
    if (x.ndim() != 2) {
        throw InvalidArgument("features must be a 2-D array");
    }
    Dataset d;
    d.rows = static_cast<std::size_t>(x.shape(0));
    d.cols = static_cast<std::size_t>(x.shape(1));
    d.features.assign(x.data(), x.data() + x.size());
    if (y) {
        if (y->ndim() != 1 || static_cast<std::size_t>(y->shape(0)) != d.rows) {
            throw InvalidArgument("target must be a 1-D array with one entry per row");
        }
        d.target.assign(y->data(), y->data() + y->size());
    }
    for (std::size_t c = 0; c < d.cols; ++c) {
        d.column_names.push_back("x" + std::to_string(c));
        d.column_kinds.push_back(ColumnKind::numeric);
    }
    d.categories.assign(d.cols, {});
    d.target_name = "y";
    d.validate();
    return d;
}

py::array_t<double> feature_array(const Dataset& d) {
    py::array_t<double> out({d.rows, d.cols});
    std::copy(d.features.begin(), d.features.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(knnreg, m) {
    m.doc() = "k-nearest-neighbour regression, density estimates and k sweeps";

    auto error = py::register_exception<Error>(m, "Error");
    py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
    py::register_exception<ParseError>(m, "ParseError", error.ptr());
    py::register_exception<IoError>(m, "IoError", error.ptr());
    py::register_exception<IncompatibleMetric>(m, "IncompatibleMetric", error.ptr());
    py::register_exception<SchemaMismatch>(m, "SchemaMismatch", error.ptr());
    py::register_exception<UndefinedRSquared>(m, "UndefinedRSquared", error.ptr());
    py::register_exception<ZeroRadiusDensity>(m, "ZeroRadiusDensity", error.ptr());

    py::enum_<DistanceMetric>(m, "DistanceMetric")
        .value("euclidean", DistanceMetric::euclidean)
        .value("manhattan", DistanceMetric::manhattan)
        .value("hamming", DistanceMetric::hamming);
    py::enum_<WeightingMode>(m, "WeightingMode")
        .value("uniform", WeightingMode::uniform)
        .value("inverse_distance", WeightingMode::inverse_distance);
    py::enum_<SearchBackend>(m, "SearchBackend")
        .value("brute_force", SearchBackend::brute_force)
        .value("kd_tree", SearchBackend::kd_tree);
    py::enum_<ColumnKind>(m, "ColumnKind")
        .value("numeric", ColumnKind::numeric)
        .value("categorical", ColumnKind::categorical);
    py::enum_<Criterion>(m, "Criterion").value("rmse", Criterion::rmse).value("r2", Criterion::r2);

    m.def("euclidean", [](const Vec& x, const Vec& y) { return euclidean(x, y); });
    m.def("manhattan", [](const Vec& x, const Vec& y) { return manhattan(x, y); });
    m.def("hamming", [](const Vec& x, const Vec& y) { return hamming(x, y); });
    m.def("distance", [](DistanceMetric metric, const Vec& x, const Vec& y) { return distance(metric, x, y); });

    py::class_<Dataset>(m, "Dataset")
        .def_static("from_arrays", &from_arrays, py::arg("features"), py::arg("target") = py::none())
        .def_readonly("rows", &Dataset::rows)
        .def_readonly("cols", &Dataset::cols)
        .def_readonly("column_names", &Dataset::column_names)
        .def_readonly("column_kinds", &Dataset::column_kinds)
        .def_readonly("categories", &Dataset::categories)
        .def_readonly("target_name", &Dataset::target_name)
        .def_property_readonly("features", &feature_array)
        .def_property_readonly("target", [](const Dataset& d) { return py::array_t<double>(d.target.size(), d.target.data()); })
        .def("__eq__", [](const Dataset& a, const Dataset& b) { return a == b; })
        .def("__len__", [](const Dataset& d) { return d.rows; });

    m.def(
        "load_csv",
        [](const std::filesystem::path& path, const std::string& target, const std::set<std::string>& categorical) {
            return load_csv(path, CsvOptions{target, categorical});
        },
        py::arg("path"), py::arg("target"), py::arg("categorical") = std::set<std::string>{});
    m.def("load_query_csv", &load_query_csv, py::arg("path"), py::arg("schema"));
    m.def("write_csv", &write_csv, py::arg("data"), py::arg("path"));

    py::class_<SplitSpec>(m, "SplitSpec")
        .def(py::init([](double fraction, std::uint64_t seed) { return SplitSpec{fraction, seed}; }),
             py::arg("train_fraction") = 0.8, py::arg("seed") = 42)
        .def_readwrite("train_fraction", &SplitSpec::train_fraction)
        .def_readwrite("seed", &SplitSpec::seed);
    m.def(
        "split",
        [](const Dataset& d, const SplitSpec& s) {
            auto parts = split(d, s);
            return py::make_tuple(std::move(parts.train), std::move(parts.test));
        },
        py::arg("data"), py::arg("spec") = SplitSpec{});

    py::class_<Standardizer>(m, "Standardizer")
        .def_readonly("mean", &Standardizer::mean)
        .def_readonly("sd", &Standardizer::sd)
        .def("apply", py::overload_cast<const Dataset&>(&Standardizer::apply, py::const_));
    m.def("fit_standardizer", &fit_standardizer);

    py::class_<NeighborSet>(m, "NeighborSet")
        .def_readonly("indices", &NeighborSet::indices)
        .def_readonly("distances", &NeighborSet::distances);

    py::class_<KnnModel>(m, "KnnModel")
        .def_property_readonly("k", &KnnModel::k)
        .def_property_readonly("metric", &KnnModel::metric)
        .def_property_readonly("weighting", &KnnModel::weighting)
        .def_property_readonly("backend", &KnnModel::backend)
        .def("with_k", &KnnModel::with_k)
        .def("neighbors", [](const KnnModel& model, const Vec& q) {
            if (const auto& s = model.standardizer()) {
                return model.index().query(s->apply(q), model.k());
            }
            return model.index().query(q, model.k());
        })
        .def("predict_one", [](const KnnModel& model, const Vec& q) { return predict_one(model, q); })
        .def("predict", [](const KnnModel& model, const Dataset& queries) { return predict(model, queries); })
        .def("estimate_density", [](const KnnModel& model, const Vec& q) { return estimate_density(model, q).value; });

    m.def(
        "fit",
        [](const Dataset& train, std::size_t k, DistanceMetric metric, WeightingMode weighting, SearchBackend backend,
           bool standardize) { return fit(train, FitOptions{k, metric, weighting, backend, standardize}); },
        py::arg("train"), py::arg("k"), py::arg("metric") = DistanceMetric::euclidean,
        py::arg("weighting") = WeightingMode::uniform, py::arg("backend") = SearchBackend::kd_tree,
        py::arg("standardize") = false);

    m.def("sse", [](const Vec& y, const Vec& yhat) { return sse(y, yhat); });
    m.def("mse", [](const Vec& y, const Vec& yhat) { return mse(y, yhat); });
    m.def("rmse", [](const Vec& y, const Vec& yhat) { return rmse(y, yhat); });
    m.def("r_squared", [](const Vec& y, const Vec& yhat) { return r_squared(y, yhat); });
    m.def("ssr", [](const Vec& yhat, double ybar) { return ssr(yhat, ybar); });
    m.def("sst", [](const Vec& y, double ybar) { return sst(y, ybar); });

    py::class_<MetricReport>(m, "MetricReport")
        .def_readonly("n", &MetricReport::n)
        .def_readonly("sse", &MetricReport::sse)
        .def_readonly("mse", &MetricReport::mse)
        .def_readonly("rmse", &MetricReport::rmse)
        .def_readonly("r_squared", &MetricReport::r_squared)
        .def_readonly("ssr", &MetricReport::ssr)
        .def_readonly("sst", &MetricReport::sst)
        .def("to_json", [](const MetricReport& r) { return to_json(r); });
    m.def("report", [](const Vec& y, const Vec& yhat) { return report(y, yhat); });

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("k_min", &SweepConfig::k_min)
        .def_readwrite("k_max", &SweepConfig::k_max)
        .def_readwrite("metric", &SweepConfig::metric)
        .def_readwrite("weighting", &SweepConfig::weighting)
        .def_readwrite("backend", &SweepConfig::backend)
        .def_readwrite("split", &SweepConfig::split)
        .def_readwrite("standardize", &SweepConfig::standardize)
        .def_readwrite("threads", &SweepConfig::threads);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("k", &SweepRow::k)
        .def_readonly("metrics", &SweepRow::metrics);
    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("best_k_rmse", &SweepResult::best_k_rmse)
        .def_readonly("best_k_r2", &SweepResult::best_k_r2)
        .def_readonly("n_train", &SweepResult::n_train)
        .def_readonly("n_test", &SweepResult::n_test);

    m.def("run_sweep", &run_sweep, py::arg("data"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("select_best", &select_best, py::arg("result"), py::arg("criterion"));
    m.def("emit_table", &emit_table, py::arg("result"), py::arg("path"));
    m.def("emit_chart", &emit_chart, py::arg("result"), py::arg("criterion"), py::arg("path"), py::arg("title"));
}
