#ifndef KNNREG_DATASET_HPP
#define KNNREG_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace knnreg {

enum class ColumnKind { numeric, categorical };

/**
 * Feature matrix (row-major) plus target vector.
 *
 * Categorical columns hold dense integer codes stored as doubles; the labels
 * behind the codes live in `categories[column]` (empty for numeric columns).
 * An unlabeled dataset (query files) carries an empty target.
 */
struct Dataset {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> features;
    std::vector<double> target;
    std::vector<ColumnKind> column_kinds;
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> categories;
    std::string target_name;

    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {features.data() + i * cols, cols};
    }
    [[nodiscard]] double at(std::size_t r, std::size_t c) const { return features[r * cols + c]; }
    [[nodiscard]] bool labeled() const { return target.size() == rows && rows > 0; }
    [[nodiscard]] bool all_categorical() const;
    [[nodiscard]] bool same_schema(const Dataset& other) const;

    /// Rows `indices` in the given order.
    [[nodiscard]] Dataset subset(std::span<const std::size_t> indices) const;

    /// Throws InvalidArgument when any invariant is broken.
    void validate() const;

    bool operator==(const Dataset&) const = default;
};

struct CsvOptions {
    std::string target_column;
    std::set<std::string> categorical_columns;
};

/// Load a dataset; category codes follow first appearance. An empty
/// `target_column` loads every column as a feature and leaves the target empty.
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options);

/**
 * Load feature rows laid out like `schema` (same column names and kinds).
 * The schema's target column is ignored if present. Categorical labels reuse
 * the schema's codes; unseen labels get fresh codes after the known ones.
 */
Dataset load_query_csv(const std::filesystem::path& path, const Dataset& schema);

/// Feature columns followed by the target column, reals at 17 significant digits.
void write_csv(const Dataset& data, const std::filesystem::path& path);

struct SplitSpec {
    double train_fraction = 0.8;
    std::uint64_t seed = 42;
};

struct TrainTest {
    Dataset train;
    Dataset test;
    std::vector<std::size_t> train_rows;
    std::vector<std::size_t> test_rows;
};

/// Seeded Fisher-Yates shuffle, then the first round(fraction * n) rows train.
TrainTest split(const Dataset& data, const SplitSpec& spec);

/// The permutation `split` applies; exposed for tests.
std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed);

/// z-score parameters for numeric columns, fitted on training rows only.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> sd;
    std::vector<ColumnKind> column_kinds;
    std::vector<std::string> column_names;

    [[nodiscard]] Dataset apply(const Dataset& data) const;
    /// Transform one feature vector in place of a row of the fit schema.
    [[nodiscard]] std::vector<double> apply(std::span<const double> x) const;
};

Standardizer fit_standardizer(const Dataset& train);

} // namespace knnreg

#endif
