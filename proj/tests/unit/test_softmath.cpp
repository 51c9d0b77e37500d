#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include "edap/rng.hpp"
#include "edap/softmath.hpp"

#include <vector>

using namespace edap;

TEST_CASE("dd basics") {
    std::vector<double> p{3.0, 0.0}, q{1.0, 5.0};
    CHECK(dd(p, q, 1.0) == 3.0);
    CHECK(dd(p, p, 1.0) == 0.0);
    CHECK(dd(p, p, 7.0) == 0.0);
    CHECK_THROWS_AS(dd(p, std::vector<double>{1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("soft threshold branches") {
    CHECK(soft_threshold(1.5, 2, 0.1, 1.0) == 1.5);
    CHECK(soft_threshold(0.05, 2, 0.1, 1.0) == 0.0);
    CHECK(soft_threshold(0.5, 2, 0.1, 1.0) == doctest::Approx(0.25));
    CHECK_THROWS_AS(soft_threshold(1.0, 0.5, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("soft quantile basics") {
    std::vector<double> ones(5, 1.0);
    CHECK(soft_quantile(ones, 0.2, 0.8, 4.0) == 1.0);

    // ceil(s*d) entries at 0.7, rest zero, small delta: the suffix of large
    // entries wins with coefficient 1
    std::vector<double> x{0.7, 0.7, 0.7, 0.0};  // s = 0.75, d = 4 -> need 3 entries
    CHECK(soft_quantile(x, 0.05, 0.75, 8.0) == doctest::Approx(0.7));
}

TEST_CASE("soft quantile equals subset enumeration") {
    Rng rng(31);
    for (int t = 0; t < 500; ++t) {
        std::size_t d = 1 + rng.below(12);
        std::vector<double> x(d);
        for (auto& v : x) v = rng.uniform();
        double delta = 0.05 + rng.uniform() * 0.9;
        double s = rng.uniform();
        double F = 1.0 + rng.uniform() * 9.0;
        CHECK(soft_quantile(x, delta, s, F) == soft_quantile_bruteforce(x, delta, s, F));
    }
}

TEST_CASE("dd scalar law on dyadic inputs") {
    Rng rng(37);
    for (int t = 0; t < 2000; ++t) {
        std::size_t d = 1 + rng.below(6);
        double a = std::pow(2.0, static_cast<double>(rng.below(6)) - 2.0);
        double b = std::pow(2.0, static_cast<double>(rng.below(6)) - 2.0);
        double F = std::pow(2.0, static_cast<double>(rng.below(4)));
        std::vector<double> p(d), q(d), ap(d), bq(d);
        for (std::size_t i = 0; i < d; ++i) {
            p[i] = static_cast<double>(rng.below(512)) / 128.0;
            q[i] = static_cast<double>(rng.below(512)) / 128.0;
            ap[i] = a * p[i];
            bq[i] = b * q[i];
        }
        CHECK(dd(ap, bq, F) == a * dd(p, q, F * b / a));
    }
}
