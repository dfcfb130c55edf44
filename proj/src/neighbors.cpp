#include "knnreg/neighbors.hpp"

#include "knnreg/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace knnreg {

std::string_view to_string(SearchBackend backend) {
    return backend == SearchBackend::kd_tree ? "kd_tree" : "brute_force";
}

NeighborIndex::NeighborIndex(std::vector<double> points, std::size_t dims, DistanceMetric metric,
                             SearchBackend backend)
    : points_(std::move(points)), dims_(dims), count_(0), metric_(metric), backend_(backend) {
    if (dims_ == 0) {
        throw InvalidArgument("neighbour index needs at least one dimension");
    }
    if (points_.size() % dims_ != 0) {
        throw InvalidArgument("point buffer is not a multiple of the dimension");
    }
    count_ = points_.size() / dims_;
    if (count_ == 0) {
        throw InvalidArgument("neighbour index needs at least one training row");
    }
    if (backend_ == SearchBackend::kd_tree && metric_ == DistanceMetric::hamming) {
        throw IncompatibleMetric("kd_tree backend supports euclidean and manhattan only; use brute_force for hamming");
    }
    if (backend_ == SearchBackend::kd_tree) {
        order_.resize(count_);
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        nodes_.reserve(2 * (count_ / kd_leaf_size + 1));
        build(0, count_);
    }
}

std::size_t NeighborIndex::build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.push_back(Node{begin, end});
    box_lo_.resize(nodes_.size() * dims_);
    box_hi_.resize(nodes_.size() * dims_);

    std::size_t widest = 0;
    double widest_spread = -1.0;
    for (std::size_t d = 0; d < dims_; ++d) {
        double lo = point(order_[begin])[d];
        double hi = lo;
        for (std::size_t i = begin + 1; i < end; ++i) {
            const double v = point(order_[i])[d];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        box_lo_[id * dims_ + d] = lo;
        box_hi_[id * dims_ + d] = hi;
        if (hi - lo > widest_spread) {
            widest_spread = hi - lo;
            widest = d;
        }
    }
    if (end - begin <= kd_leaf_size || widest_spread <= 0.0) {
        return id;
    }

    const std::size_t mid = begin + (end - begin) / 2;
    auto first = order_.begin() + static_cast<std::ptrdiff_t>(begin);
    std::nth_element(first, order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t a, std::size_t b) {
                         const double va = point(a)[widest];
                         const double vb = point(b)[widest];
                         return va < vb || (va == vb && a < b);
                     });
    const double split_value = point(order_[mid])[widest];
    const std::size_t left = build(begin, mid);
    const std::size_t right = build(mid, end);
    Node& node = nodes_[id];
    node.leaf = false;
    node.left = left;
    node.right = right;
    node.split_dim = widest;
    node.split_value = split_value;
    return id;
}

double NeighborIndex::key(std::span<const double> q, std::size_t row) const {
    switch (metric_) {
    case DistanceMetric::euclidean:
        return squared_euclidean(q, point(row));
    case DistanceMetric::manhattan:
        return manhattan(q, point(row));
    case DistanceMetric::hamming:
        return hamming(q, point(row));
    }
    return 0.0;
}

// Lower bound on key(q, p) for every p inside the node's bounding box. Each
// term is no larger than the matching term of the exact key and the sums run
// in the same order, so the bound holds after rounding too.
double NeighborIndex::box_bound(std::span<const double> q, std::size_t node) const {
    const double* lo = box_lo_.data() + node * dims_;
    const double* hi = box_hi_.data() + node * dims_;
    double sum = 0.0;
    for (std::size_t d = 0; d < dims_; ++d) {
        double gap = 0.0;
        if (q[d] < lo[d]) {
            gap = q[d] - lo[d];
        } else if (q[d] > hi[d]) {
            gap = q[d] - hi[d];
        }
        sum += metric_ == DistanceMetric::euclidean ? gap * gap : std::abs(gap);
    }
    return sum;
}

void NeighborIndex::search(std::span<const double> q, std::size_t node_id, std::size_t k,
                           std::vector<Candidate>& heap) const {
    const Node& node = nodes_[node_id];
    if (heap.size() == k && box_bound(q, node_id) > heap.front().key) {
        return;
    }
    if (node.leaf) {
        for (std::size_t i = node.begin; i < node.end; ++i) {
            const Candidate c{key(q, order_[i]), order_[i]};
            if (heap.size() < k) {
                heap.push_back(c);
                std::push_heap(heap.begin(), heap.end());
            } else if (c < heap.front()) {
                std::pop_heap(heap.begin(), heap.end());
                heap.back() = c;
                std::push_heap(heap.begin(), heap.end());
            }
        }
        return;
    }
    const bool go_left = q[node.split_dim] < node.split_value;
    search(q, go_left ? node.left : node.right, k, heap);
    search(q, go_left ? node.right : node.left, k, heap);
}

NeighborSet NeighborIndex::finish(std::vector<Candidate> best) const {
    std::sort(best.begin(), best.end());
    NeighborSet out;
    out.indices.reserve(best.size());
    out.distances.reserve(best.size());
    for (const auto& c : best) {
        out.indices.push_back(c.index);
        out.distances.push_back(metric_ == DistanceMetric::euclidean ? std::sqrt(c.key) : c.key);
    }
    return out;
}

void NeighborIndex::check_query(std::span<const double> q, std::size_t k) const {
    if (q.size() != dims_) {
        throw InvalidArgument("query has " + std::to_string(q.size()) + " dimensions, index has " +
                              std::to_string(dims_));
    }
    if (k < 1) {
        throw InvalidArgument("k must be at least 1");
    }
}

NeighborSet NeighborIndex::query(std::span<const double> q, std::size_t k) const {
    check_query(q, k);
    k = std::min(k, count_);
    std::vector<Candidate> best;
    best.reserve(k + 1);
    if (backend_ == SearchBackend::kd_tree) {
        search(q, 0, k, best);
        return finish(std::move(best));
    }
    std::vector<Candidate> all(count_);
    for (std::size_t i = 0; i < count_; ++i) {
        all[i] = Candidate{key(q, i), i};
    }
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end());
    all.resize(k);
    return finish(std::move(all));
}

double NeighborIndex::radius_of_kth(std::span<const double> q, std::size_t k) const {
    check_query(q, k);
    if (k > count_) {
        throw InvalidArgument("k = " + std::to_string(k) + " exceeds the " + std::to_string(count_) +
                              " indexed rows");
    }
    return query(q, k).distances.back();
}

NeighborIndex build_index(const Dataset& train, DistanceMetric metric, SearchBackend backend) {
    if (train.rows == 0) {
        throw InvalidArgument("cannot build a neighbour index over an empty training set");
    }
    if (metric == DistanceMetric::hamming && !train.all_categorical()) {
        throw IncompatibleMetric("hamming distance requires every feature column to be categorical");
    }
    return NeighborIndex(train.features, train.cols, metric, backend);
}

} // namespace knnreg
