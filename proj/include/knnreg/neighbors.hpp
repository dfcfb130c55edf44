#ifndef KNNREG_NEIGHBORS_HPP
#define KNNREG_NEIGHBORS_HPP

#include "knnreg/dataset.hpp"
#include "knnreg/distance.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace knnreg {

enum class SearchBackend { brute_force, kd_tree };

std::string_view to_string(SearchBackend backend);

/// Sorted by (distance, row index); no duplicates.
struct NeighborSet {
    std::vector<std::size_t> indices;
    std::vector<double> distances;

    bool operator==(const NeighborSet&) const = default;
};

/**
 * Exact k-nearest-neighbour index over a fixed point set.
 *
 * Candidates are ranked by a metric-specific key (squared Euclidean,
 * Manhattan or Hamming count), with ties broken by ascending row index, so
 * the brute-force and kd-tree backends agree bit for bit. Euclidean keys are
 * square-rooted only when a NeighborSet is returned.
 */
class NeighborIndex {
public:
    /// `points` is row-major with `dims` columns.
    NeighborIndex(std::vector<double> points, std::size_t dims, DistanceMetric metric, SearchBackend backend);

    /// min(k, size()) nearest rows to `q`.
    [[nodiscard]] NeighborSet query(std::span<const double> q, std::size_t k) const;

    /// Distance to the k-th nearest row; requires k <= size().
    [[nodiscard]] double radius_of_kth(std::span<const double> q, std::size_t k) const;

    [[nodiscard]] std::size_t size() const { return count_; }
    [[nodiscard]] std::size_t dims() const { return dims_; }
    [[nodiscard]] DistanceMetric metric() const { return metric_; }
    [[nodiscard]] SearchBackend backend() const { return backend_; }

private:
    struct Node {
        std::size_t begin = 0;
        std::size_t end = 0;
        // Children are unset for leaves.
        std::size_t left = 0;
        std::size_t right = 0;
        std::size_t split_dim = 0;
        double split_value = 0.0;
        bool leaf = true;
    };
    struct Candidate {
        double key;
        std::size_t index;
        bool operator<(const Candidate& o) const { return key < o.key || (key == o.key && index < o.index); }
    };

    [[nodiscard]] double key(std::span<const double> q, std::size_t row) const;
    [[nodiscard]] double box_bound(std::span<const double> q, std::size_t node) const;
    [[nodiscard]] std::span<const double> point(std::size_t row) const { return {points_.data() + row * dims_, dims_}; }
    std::size_t build(std::size_t begin, std::size_t end);
    void search(std::span<const double> q, std::size_t node, std::size_t k, std::vector<Candidate>& heap) const;
    [[nodiscard]] NeighborSet finish(std::vector<Candidate> best) const;
    void check_query(std::span<const double> q, std::size_t k) const;

    std::vector<double> points_;
    std::size_t dims_;
    std::size_t count_;
    DistanceMetric metric_;
    SearchBackend backend_;
    std::vector<std::size_t> order_;
    std::vector<Node> nodes_;
    std::vector<double> box_lo_;
    std::vector<double> box_hi_;
};

inline constexpr std::size_t kd_leaf_size = 16;

/**
 * Index over the feature rows of `train`. Hamming needs all-categorical
 * columns and the brute-force backend; the kd-tree serves Euclidean and
 * Manhattan only.
 */
NeighborIndex build_index(const Dataset& train, DistanceMetric metric, SearchBackend backend);

} // namespace knnreg

#endif
