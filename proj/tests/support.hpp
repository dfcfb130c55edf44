#ifndef KNNREG_TESTS_SUPPORT_HPP
#define KNNREG_TESTS_SUPPORT_HPP

#include "knnreg/dataset.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

namespace knnreg::testing {

inline std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / ("knnreg_tests_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::filesystem::path write_file(const std::string& name, const std::string& contents) {
    const auto path = scratch_dir() / name;
    std::ofstream(path, std::ios::binary) << contents;
    return path;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo = -10.0, double hi = 10.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = u(rng);
    }
    return v;
}

inline std::vector<double> random_codes(std::mt19937_64& rng, std::size_t n, int levels) {
    std::uniform_int_distribution<int> u(0, levels - 1);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = u(rng);
    }
    return v;
}

/// Numeric dataset with columns x0..x{d-1} and target y.
inline Dataset make_dataset(std::vector<double> features, std::size_t dims, std::vector<double> target) {
    Dataset d;
    d.cols = dims;
    d.rows = features.size() / dims;
    d.features = std::move(features);
    d.target = std::move(target);
    for (std::size_t c = 0; c < dims; ++c) {
        d.column_names.push_back("x" + std::to_string(c));
        d.column_kinds.push_back(ColumnKind::numeric);
    }
    d.categories.assign(dims, {});
    d.target_name = "y";
    return d;
}

inline std::filesystem::path source_dir() { return KNNREG_SOURCE_DIR; }

} // namespace knnreg::testing

#endif
