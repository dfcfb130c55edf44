#include "knnreg/dataset.hpp"
#include "knnreg/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace knnreg;
using knnreg::testing::write_file;

TEST_CASE("load_csv parses numeric columns and the target") {
    const auto path = write_file("basic.csv", "a,b,y\n1,2,10\n3,4,20\n");
    const Dataset d = load_csv(path, {.target_column = "y"});
    CHECK(d.rows == 2);
    CHECK(d.cols == 2);
    CHECK(d.column_names == std::vector<std::string>{"a", "b"});
    CHECK(d.column_kinds == std::vector<ColumnKind>{ColumnKind::numeric, ColumnKind::numeric});
    CHECK(d.features == std::vector<double>{1, 2, 3, 4});
    CHECK(d.target == std::vector<double>{10, 20});
    CHECK_NOTHROW(d.validate());
}

TEST_CASE("categorical labels get first-appearance codes") {
    const auto path = write_file("cat.csv", "color,x,y\nred,1,1\nblue,2,2\nred,3,3\n");
    const Dataset d = load_csv(path, {.target_column = "y", .categorical_columns = {"color"}});
    CHECK(d.column_kinds[0] == ColumnKind::categorical);
    CHECK(d.at(0, 0) == 0.0);
    CHECK(d.at(1, 0) == 1.0);
    CHECK(d.at(2, 0) == 0.0);
    CHECK(d.categories[0] == std::vector<std::string>{"red", "blue"});
}

TEST_CASE("unparseable cell names the row and column") {
    const auto path = write_file("bad.csv", "a,b,y\n1,abc,10\n");
    try {
        (void)load_csv(path, {.target_column = "y"});
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 1") != std::string::npos);
        CHECK(msg.find("column \"b\"") != std::string::npos);
    }
}

TEST_CASE("load_csv error cases") {
    CHECK_THROWS_AS(load_csv(knnreg::testing::scratch_dir() / "does_not_exist.csv", {.target_column = "y"}), IoError);
    CHECK_THROWS_AS(load_csv(write_file("empty.csv", ""), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("nobody.csv", "a,y\n"), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("dup.csv", "a,a,y\n1,2,3\n"), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("notarget.csv", "a,b\n1,2\n"), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("t.csv", "a,y\n1,2\n"), {.target_column = "y", .categorical_columns = {"y"}}),
                    InvalidArgument);
    CHECK_THROWS_AS(load_csv(write_file("missing.csv", "a,y\n,2\n"), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("nan.csv", "a,y\nnan,2\n"), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("inf.csv", "a,y\n1,inf\n"), {.target_column = "y"}), ParseError);
    CHECK_THROWS_AS(load_csv(write_file("ragged.csv", "a,y\n1,2,3\n"), {.target_column = "y"}), ParseError);
}

TEST_CASE("write_csv then load_csv reproduces the dataset bit for bit") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t rows = 1 + rng() % 30;
        std::string text = "num,cat,y\n";
        std::uniform_real_distribution<double> u(-1e6, 1e6);
        const char* labels[] = {"alpha", "beta", "gamma", "delta"};
        for (std::size_t r = 0; r < rows; ++r) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%.17g,%s,%.17g\n", u(rng) / 3.0, labels[rng() % 4], u(rng) / 7.0);
            text += buf;
        }
        const CsvOptions opts{.target_column = "y", .categorical_columns = {"cat"}};
        const Dataset first = load_csv(write_file("rt_in.csv", text), opts);
        const auto out = knnreg::testing::scratch_dir() / "rt_out.csv";
        write_csv(first, out);
        const Dataset second = load_csv(out, opts);
        CHECK(first == second);
    }
}

TEST_CASE("load_query_csv reuses training codes and ignores the target column") {
    const auto train = load_csv(write_file("qtrain.csv", "c,x,y\nred,1,1\nblue,2,2\n"),
                                {.target_column = "y", .categorical_columns = {"c"}});
    const auto q = load_query_csv(write_file("q.csv", "x,c\n5,blue\n6,green\n"), train);
    CHECK(q.same_schema(train));
    CHECK(q.at(0, 0) == 1.0);
    CHECK(q.at(1, 0) == 2.0);
    CHECK(q.at(0, 1) == 5.0);
    CHECK(q.target.empty());
    CHECK_NOTHROW(load_query_csv(write_file("q2.csv", "c,x,y\nred,1,9\n"), train));
    CHECK_THROWS_AS(load_query_csv(write_file("q3.csv", "x\n1\n"), train), SchemaMismatch);
    CHECK_THROWS_AS(load_query_csv(write_file("q4.csv", "c,x,z\nred,1,1\n"), train), SchemaMismatch);
}

TEST_CASE("split partitions rows deterministically") {
    std::vector<double> f(10), y(10);
    for (int i = 0; i < 10; ++i) {
        f[i] = i;
        y[i] = 100 + i;
    }
    const Dataset d = knnreg::testing::make_dataset(f, 1, y);
    const auto a = split(d, {0.8, 123});
    CHECK(a.train.rows == 8);
    CHECK(a.test.rows == 2);
    std::set<std::size_t> all(a.train_rows.begin(), a.train_rows.end());
    all.insert(a.test_rows.begin(), a.test_rows.end());
    CHECK(all.size() == 10);
    for (std::size_t i = 0; i < a.train.rows; ++i) {
        CHECK(a.train.at(i, 0) == static_cast<double>(a.train_rows[i]));
        CHECK(a.train.target[i] == 100.0 + static_cast<double>(a.train_rows[i]));
    }

    const auto b = split(d, {0.8, 123});
    CHECK(a.train_rows == b.train_rows);
    CHECK(a.test_rows == b.test_rows);
    CHECK(split(d, {0.8, 124}).train_rows != a.train_rows);
}

TEST_CASE("split rejects degenerate inputs") {
    const Dataset one = knnreg::testing::make_dataset({1.0}, 1, {2.0});
    CHECK_THROWS_AS(split(one, {0.8, 1}), InvalidArgument);
    const Dataset two = knnreg::testing::make_dataset({1.0, 2.0}, 1, {2.0, 3.0});
    CHECK_THROWS_AS(split(two, {0.1, 1}), InvalidArgument);
    CHECK_THROWS_AS(split(two, {0.0, 1}), InvalidArgument);
    CHECK_THROWS_AS(split(two, {1.0, 1}), InvalidArgument);
    CHECK_NOTHROW(split(two, {0.5, 1}));
}

TEST_CASE("split is a partition for random sizes and fractions") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng() % 300;
        const auto order = shuffled_indices(n, rng());
        std::vector<std::size_t> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < n; ++i) {
            REQUIRE(sorted[i] == i);
        }
    }
}

TEST_CASE("standardizer examples") {
    SUBCASE("two-point column") {
        const Dataset d = knnreg::testing::make_dataset({0.0, 10.0}, 1, {0, 0});
        const Standardizer s = fit_standardizer(d);
        CHECK(s.mean[0] == 5.0);
        CHECK(s.sd[0] == 5.0);
        const Dataset z = s.apply(d);
        CHECK(z.features == std::vector<double>{-1.0, 1.0});
    }
    SUBCASE("constant column maps to zero") {
        const Dataset d = knnreg::testing::make_dataset({7.0, 7.0, 7.0}, 1, {1, 2, 3});
        const Dataset z = fit_standardizer(d).apply(d);
        CHECK(z.features == std::vector<double>{0.0, 0.0, 0.0});
        CHECK(z.target == d.target);
    }
    SUBCASE("categorical column is untouched") {
        Dataset d = knnreg::testing::make_dataset({0.0, 1.0, 0.0}, 1, {1, 2, 3});
        d.column_kinds[0] = ColumnKind::categorical;
        d.categories[0] = {"a", "b"};
        const Dataset z = fit_standardizer(d).apply(d);
        CHECK(z.features == std::vector<double>{0.0, 1.0, 0.0});
    }
    SUBCASE("schema mismatch on apply") {
        const Dataset a = knnreg::testing::make_dataset({0.0, 1.0}, 1, {0, 0});
        const Dataset b = knnreg::testing::make_dataset({0.0, 1.0}, 2, {0});
        CHECK_THROWS_AS((void)fit_standardizer(a).apply(b), SchemaMismatch);
    }
}

TEST_CASE("standardized training columns have mean 0 and sd 1") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dims = 1 + rng() % 5;
        const std::size_t rows = 2 + rng() % 200;
        auto f = knnreg::testing::random_vector(rng, rows * dims, -1e3, 1e3);
        const Dataset d = knnreg::testing::make_dataset(f, dims, std::vector<double>(rows, 0.0));
        const Dataset z = fit_standardizer(d).apply(d);
        for (std::size_t c = 0; c < dims; ++c) {
            double sum = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                sum += z.at(r, c);
            }
            const double m = sum / static_cast<double>(rows);
            double sq = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                sq += (z.at(r, c) - m) * (z.at(r, c) - m);
            }
            CHECK(std::abs(m) <= 1e-9);
            CHECK(std::abs(std::sqrt(sq / static_cast<double>(rows)) - 1.0) <= 1e-9);
        }
    }
}
