#include "doctest.h"

#include <stdexcept>
#include "edap/fastds.hpp"

#include <cmath>
#include <numeric>

using namespace edap;

TEST_CASE("range sums") {
    PrefixSumTree t(5, {{2, 2.0}, {4, 3.0}, {5, 1.0}});
    CHECK(t.range_sum(2, 4) == doctest::Approx(5.0));
    CHECK(t.range_sum(1, 5) == doctest::Approx(6.0));
    CHECK(t.total() == doctest::Approx(6.0));
    CHECK_THROWS_AS(t.range_sum(0, 3), std::out_of_range);
    CHECK_THROWS_AS(t.range_sum(3, 2), std::out_of_range);
}

TEST_CASE("ball boundary left and right") {
    PrefixSumTree t(5, {{2, 2.0}, {4, 3.0}, {5, 1.0}});
    // sums from the right at i=5: a5 = 1 < 3, a4+a5 = 4 >= 3
    auto left = t.ball_boundary(5, 3.0, Direction::Left);
    REQUIRE(left.has_value());
    CHECK(left->index == 4);
    CHECK(left->sum_inclusive == doctest::Approx(4.0));

    CHECK(!t.ball_boundary(3, 10.0, Direction::Left).has_value());

    // infinitesimal zeta lands on the center itself when it has mass
    auto self = t.ball_boundary(4, 1e-9, Direction::Left);
    REQUIRE(self.has_value());
    CHECK(self->index == 4);

    auto right = t.ball_boundary(2, 3.5, Direction::Right);
    REQUIRE(right.has_value());
    CHECK(right->index == 4);
    CHECK(right->sum_inclusive == doctest::Approx(5.0));
}

TEST_CASE("sample_index matches point masses") {
    WeightedSampleTree t(3, {{2, 1.0}});
    Rng rng(5);
    for (int i = 0; i < 50; ++i) CHECK(t.sample_index(rng) == 2);

    WeightedSampleTree zero(3, {});
    CHECK_THROWS_AS(zero.sample_index(rng), std::domain_error);
}

TEST_CASE("subsample caps probabilities at one") {
    WeightedSampleTree t(6, {{1, 0.3}, {2, 0.01}, {4, 2.0}, {6, 0.5}});
    Rng rng(9);
    // k large enough that every supported index is certain
    auto all = t.subsample(1e6, rng);
    CHECK(all == std::vector<std::int64_t>{1, 2, 4, 6});

    // range restriction
    for (int i = 0; i < 100; ++i) {
        auto picked = t.subsample(3.0, rng, std::make_pair<std::int64_t, std::int64_t>(2, 4));
        for (auto idx : picked) {
            CHECK(idx >= 2);
            CHECK(idx <= 4);
        }
    }
}

TEST_CASE("subsample mean matches the inclusion probabilities") {
    // a = [0.1] * 100, k = 1: |S| has mean 10
    std::vector<std::pair<std::int64_t, double>> entries;
    for (std::int64_t i = 1; i <= 100; ++i) entries.emplace_back(i, 0.1);
    WeightedSampleTree t(100, entries);
    Rng rng(21);
    const int trials = 2000;
    double total = 0;
    for (int i = 0; i < trials; ++i) total += static_cast<double>(t.subsample(1.0, rng).size());
    double mean = total / trials;
    CHECK(mean == doctest::Approx(10.0).epsilon(0.05));
}

TEST_CASE("heavy pairs on small matrices") {
    // all-zero matrix: empty result
    DyadicHeavyIndex empty(2, 8, {});
    std::vector<std::pair<std::int64_t, std::int64_t>> full(8, {1, 8});
    CHECK(empty.heavy_pairs(full, 1.0).empty());

    // one row summing 5 over [1,8]
    DyadicHeavyIndex idx(2, 8, {{1, 2, 2.0}, {1, 5, 2.0}, {1, 8, 1.0}});
    auto got = idx.heavy_pairs(full, 4.0);
    REQUIRE(got.size() == 8);
    for (std::int64_t i = 0; i < 8; ++i) {
        CHECK(got[static_cast<std::size_t>(i)].first == i);
        CHECK(got[static_cast<std::size_t>(i)].second == 1);
    }

    // non-monotone endpoints are rejected
    std::vector<std::pair<std::int64_t, std::int64_t>> bad = {{3, 5}, {2, 6}};
    CHECK_THROWS_AS(idx.heavy_pairs(bad, 1.0), std::invalid_argument);

    CHECK(idx.range_sum(1, 2, 5) == doctest::Approx(4.0));
}

TEST_CASE("deterministic given the stream") {
    std::vector<std::pair<std::int64_t, double>> entries;
    for (std::int64_t i = 1; i <= 64; ++i)
        if (i % 3) entries.emplace_back(i, 0.25 + static_cast<double>(i % 5));
    WeightedSampleTree t(64, entries);
    Rng a(1234), b(1234);
    for (int i = 0; i < 20; ++i) {
        CHECK(t.sample_index(a) == t.sample_index(b));
        CHECK(t.subsample(0.7, a) == t.subsample(0.7, b));
    }
}
