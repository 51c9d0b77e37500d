#include "doctest.h"

#include <stdexcept>
#include "edap/alignment.hpp"
#include "edap/profile.hpp"
#include "edap/rng.hpp"
#include "edap/types.hpp"

#include <cmath>
#include <sstream>

using namespace edap;

TEST_CASE("pad_input pads to the next power of gamma") {
    auto p = pad_input(std::string("ab"), std::string("abc"), 2);
    CHECK(p.n == 4);
    CHECK(p.x.size() == 4);
    CHECK(p.y.size() == 4);
    // first original_len symbols preserved, tail is the sentinel
    CHECK(p.at(Axis::X, 1) == p.at(Axis::Y, 1));
    CHECK(p.at(Axis::X, 2) == p.at(Axis::Y, 2));
    CHECK(p.at(Axis::X, 3) == p.sentinel);
    CHECK(p.at(Axis::Y, 3) != p.sentinel);
    CHECK(p.at(Axis::Y, 4) == p.sentinel);
    CHECK(p.original_len_x == 2);
    CHECK(p.original_len_y == 3);
}

TEST_CASE("pad_input identity case") {
    auto p = pad_input(std::string("a"), std::string("a"), 4);
    CHECK(p.x == p.y);
    CHECK(p.n == 4);
}

TEST_CASE("pad_input rejects empty input") {
    CHECK_THROWS_AS(pad_input(std::string("abc"), std::string(""), 2), std::invalid_argument);
    CHECK_THROWS_AS(pad_input(std::string(""), std::string("abc"), 2), std::invalid_argument);
}

TEST_CASE("reads outside [1,n] return the sentinel, never fault") {
    auto p = pad_input(std::string("abcd"), std::string("abcd"), 2);
    CHECK(p.at(Axis::X, 0) == p.sentinel);
    CHECK(p.at(Axis::X, -100) == p.sentinel);
    CHECK(p.at(Axis::Y, p.n + 7) == p.sentinel);
}

TEST_CASE("scale costs") {
    CHECK(scale_costs(8) == std::vector<std::int64_t>{0, 1, 2, 4, 8});
    CHECK(scale_costs(1) == std::vector<std::int64_t>{0, 1});
    CHECK(scale_costs(6) == std::vector<std::int64_t>{0, 1, 2, 4});
}

TEST_CASE("cost set ladder") {
    auto zero = cost_set(0, 0.5, 0.25);
    CHECK(zero.costs == std::vector<double>(4, 0.0));

    auto ladder = cost_set(1, 0.5, 0.25);
    REQUIRE(ladder.costs.size() == 4);
    CHECK(ladder.costs[0] == doctest::Approx(12.0));
    CHECK(ladder.costs[1] == doctest::Approx(36.0));
    CHECK(ladder.costs[2] == doctest::Approx(108.0));
    CHECK(ladder.costs[3] == doctest::Approx(324.0));
    for (std::size_t i = 0; i + 1 < ladder.costs.size(); ++i)
        CHECK(ladder.costs[i + 1] == ladder.costs[i] * 3.0);  // exactly 3

    CHECK_THROWS_AS(cost_set(1, 0.5, 0.3), std::invalid_argument);
}

TEST_CASE("alignment extension") {
    auto id = Alignment::identity(16);
    Interval xi{Axis::X, 5, 4};
    auto img = extend_alignment(id, xi);
    CHECK(img == Interval{Axis::Y, 5, 4});
    // involution-compatible pair
    CHECK(extend_alignment(id, img) == xi);

    // undefined position maps to bottom
    Alignment partial({{1, 3}, {2, 4}}, 16);
    CHECK(extend_alignment(partial, Interval{Axis::X, 7, 4}).is_bottom());

    // shift by +2: Y_{7,w} pulls back to X_{5,w}
    std::vector<std::pair<std::int64_t, std::int64_t>> shift;
    for (std::int64_t i = 1; i <= 14; ++i) shift.emplace_back(i, i + 2);
    Alignment pi(shift, 16);
    CHECK(extend_alignment(pi, Interval{Axis::Y, 7, 4}) == Interval{Axis::X, 5, 4});
}

TEST_CASE("alignment involution property on fuzzed maps") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        std::int64_t j = 0;
        for (std::int64_t i = 1; i <= 32; ++i) {
            j += 1 + static_cast<std::int64_t>(rng.below(3));
            if (j > 32) break;
            if (rng.bernoulli(0.7)) pairs.emplace_back(i, j);
        }
        Alignment pi(pairs, 32);
        for (std::int64_t i = 1; i <= 32; ++i) {
            Interval xi{Axis::X, i, 3};
            auto img = extend_alignment(pi, xi);
            if (!img.is_bottom()) CHECK(extend_alignment(pi, img) == xi);
        }
    }
}

TEST_CASE("left-min operator") {
    Alignment pi({{2, 5}, {4, 6}, {9, 20}}, 32);
    CHECK(pi.left_min(1) == 5);
    CHECK(pi.left_min(3) == 6);
    CHECK(pi.left_min(5) == 20);
    CHECK(pi.left_min(10) == std::nullopt);
}

TEST_CASE("profile presets validate and round-trip through config files") {
    auto p = ParamProfile::practical();
    p.validate();
    CHECK(p.ec_size() == 2);
    CHECK(p.j_max() == 2);
    CHECK(p.oracle_alpha() >= 3);
    CHECK(p.oracle_alpha() % 2 == 1);

    std::stringstream ss;
    save_profile(ss, p);
    auto q = load_profile(ss);
    CHECK(q.gamma == p.gamma);
    CHECK(q.tau_large == p.tau_large);
    CHECK(q.colorings_per_step == p.colorings_per_step);

    std::stringstream bad("no_such_key = 3\n");
    CHECK_THROWS_AS(load_profile(bad), std::invalid_argument);

    // eta must divide the cost-set size
    auto broken = ParamProfile::practical();
    broken.eta = 0.3;
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);

    // the cap rule: 1/tau_large must clear C_m
    auto capped = ParamProfile::practical();
    capped.tau_large = 8.0;
    CHECK_THROWS_AS(capped.validate(), std::invalid_argument);
}

TEST_CASE("paper-faithful profile computes the published parameter forms") {
    auto p = ParamProfile::paper_faithful(0.5, 4096);
    // gamma = n^{zeta * eps} with zeta = 1/2: 4096^{0.25} = 8
    CHECK(p.gamma == 8);
    CHECK(p.lambda == 64);  // n^eps
    CHECK(p.beta == 64);
    CHECK(p.alpha == doctest::Approx(std::pow(0.5, 10.0)));
    CHECK(p.eta == doctest::Approx(p.alpha * p.alpha * 0.25));
    CHECK(p.k_oversample == 64ll * 64 * 64);
}
