#include "knnreg/distance.hpp"
#include "knnreg/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace knnreg;
using V = std::vector<double>;

TEST_CASE("euclidean examples") {
    CHECK(euclidean(V{0, 0}, V{3, 4}) == 5.0);
    CHECK(euclidean(V{1.5, -2}, V{1.5, -2}) == 0.0);
    // sqrt(9 + 16 + 0)
    CHECK(euclidean(V{1, 2, 3}, V{4, 6, 3}) == 5.0);
    CHECK(squared_euclidean(V{1, 2, 3}, V{4, 6, 3}) == 25.0);
}

TEST_CASE("manhattan examples") {
    CHECK(manhattan(V{1, 2}, V{4, 6}) == 7.0);
    CHECK(manhattan(V{3, 3}, V{3, 3}) == 0.0);
    CHECK(manhattan(V{-1, -1}, V{1, 1}) == 4.0);
}

TEST_CASE("hamming examples") {
    CHECK(hamming(V{0, 1, 2}, V{0, 1, 2}) == 0.0);
    CHECK(hamming(V{0, 1, 2}, V{0, 5, 2}) == 1.0);
    CHECK(hamming(V{0, 1, 2}, V{3, 4, 5}) == 3.0);
}

TEST_CASE("dispatch and errors") {
    CHECK(distance(DistanceMetric::euclidean, V{0, 0}, V{3, 4}) == 5.0);
    CHECK(distance(DistanceMetric::manhattan, V{2, 9}, V{2, 9}) == 0.0);
    CHECK(distance(DistanceMetric::hamming, V{1, 2}, V{1, 3}) == 1.0);
    CHECK_THROWS_AS(distance(DistanceMetric::hamming, V{0.5, 1}, V{1, 1}), IncompatibleMetric);
    CHECK_THROWS_AS(distance(DistanceMetric::hamming, V{-1, 1}, V{1, 1}), IncompatibleMetric);
    CHECK_THROWS_AS(euclidean(V{1, 2}, V{1}), InvalidArgument);
    CHECK_THROWS_AS(manhattan(V{}, V{}), InvalidArgument);
    CHECK_THROWS_AS(hamming(V{1}, V{1, 2}), InvalidArgument);
}

TEST_CASE("metric names round-trip") {
    for (auto m : {DistanceMetric::euclidean, DistanceMetric::manhattan, DistanceMetric::hamming}) {
        CHECK(parse_metric(to_string(m)) == m);
    }
    CHECK_FALSE(parse_metric("minkowski").has_value());
}

TEST_CASE("squared euclidean ranks like euclidean") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t d = 1 + rng() % 8;
        const auto q = knnreg::testing::random_vector(rng, d);
        const auto a = knnreg::testing::random_vector(rng, d);
        const auto b = knnreg::testing::random_vector(rng, d);
        const bool by_root = euclidean(q, a) < euclidean(q, b);
        const bool by_square = squared_euclidean(q, a) < squared_euclidean(q, b);
        // sqrt is monotone but may merge two adjacent squares; only a strict
        // order on the squares can disagree with an equal pair of roots.
        if (euclidean(q, a) != euclidean(q, b)) {
            CHECK(by_root == by_square);
        }
    }
}
