#include "doctest.h"
#include "edap/exact.hpp"
#include "edap/rng.hpp"

#include <string>
#include <vector>

using namespace edap;

namespace {

std::vector<Symbol> syms(const std::string& s) {
    return std::vector<Symbol>(s.begin(), s.end());
}

}  // namespace

TEST_CASE("edit distance basics") {
    CHECK(edit_distance(syms("abc"), syms("abc"), EdVariant::IndelHalf).value() == 0.0);
    // indel distance 2, halved
    CHECK(edit_distance(syms("ab"), syms("ba"), EdVariant::IndelHalf).value() == 1.0);
    CHECK(edit_distance(syms("kitten"), syms("sitting"), EdVariant::Levenshtein).value() == 3.0);
    // unequal lengths produce half-integers
    CHECK(edit_distance(syms("a"), syms(""), EdVariant::IndelHalf).value() == 0.5);
}

TEST_CASE("variant sandwich: IndelHalf <= Levenshtein <= 2 IndelHalf") {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        std::string a, b;
        for (std::size_t i = rng.below(12); i-- > 0;) a.push_back(static_cast<char>('a' + rng.below(3)));
        for (std::size_t i = rng.below(12); i-- > 0;) b.push_back(static_cast<char>('a' + rng.below(3)));
        double ih = edit_distance(syms(a), syms(b), EdVariant::IndelHalf).value();
        double lev = edit_distance(syms(a), syms(b), EdVariant::Levenshtein).value();
        CHECK(ih <= lev + 1e-12);
        CHECK(lev <= 2 * ih + 1e-12);
    }
}

TEST_CASE("metric axioms on fuzzed triples") {
    Rng rng(13);
    for (int t = 0; t < 200; ++t) {
        std::string s[3];
        for (auto& str : s)
            for (std::size_t i = 1 + rng.below(10); i-- > 0;)
                str.push_back(static_cast<char>('a' + rng.below(2)));
        for (EdVariant v : {EdVariant::IndelHalf, EdVariant::Levenshtein}) {
            auto d01 = edit_distance(syms(s[0]), syms(s[1]), v);
            auto d10 = edit_distance(syms(s[1]), syms(s[0]), v);
            auto d12 = edit_distance(syms(s[1]), syms(s[2]), v);
            auto d02 = edit_distance(syms(s[0]), syms(s[2]), v);
            CHECK(d01.half_units == d10.half_units);
            CHECK(d02.half_units <= d01.half_units + d12.half_units);
        }
    }
}

TEST_CASE("banded distance agrees with the full DP") {
    CHECK(banded_distance(syms("abc"), syms("abc"), 0, EdVariant::Levenshtein)->value() == 0.0);

    // a pair with three planted edits
    std::string base = "abcabcabcabc";
    std::string edited = base;
    edited[2] = 'z';
    edited[7] = 'z';
    edited.insert(edited.begin() + 10, 'q');
    double full = edit_distance(syms(base), syms(edited), EdVariant::Levenshtein).value();
    CHECK(full == 3.0);
    CHECK(!banded_distance(syms(base), syms(edited), 2, EdVariant::Levenshtein).has_value());
    CHECK(banded_distance(syms(base), syms(edited), 5, EdVariant::Levenshtein)->value() == 3.0);

    Rng rng(17);
    for (int t = 0; t < 300; ++t) {
        std::string a, b;
        for (std::size_t i = rng.below(16); i-- > 0;) a.push_back(static_cast<char>('a' + rng.below(3)));
        for (std::size_t i = rng.below(16); i-- > 0;) b.push_back(static_cast<char>('a' + rng.below(3)));
        for (EdVariant v : {EdVariant::IndelHalf, EdVariant::Levenshtein}) {
            auto full_v = edit_distance(syms(a), syms(b), v);
            auto cap = static_cast<std::int64_t>(rng.below(10));
            auto banded = banded_distance(syms(a), syms(b), cap, v);
            if (full_v.value() <= static_cast<double>(cap)) {
                REQUIRE(banded.has_value());
                CHECK(banded->half_units == full_v.half_units);
            } else {
                CHECK(!banded.has_value());
            }
        }
    }
}

TEST_CASE("optimal alignment traceback") {
    auto id = optimal_alignment(syms("abab"), syms("abab"));
    CHECK(id.defined_count() == 4);
    for (std::int64_t i = 1; i <= 4; ++i) CHECK(id.map(i) == i);

    auto pi = optimal_alignment(syms("ab"), syms("b"));
    CHECK(pi.map(1) == std::nullopt);
    CHECK(pi.map(2) == 1);

    // the alignment's cost matches the distance: unmatched positions on each
    // side count as half each
    Rng rng(19);
    for (int t = 0; t < 200; ++t) {
        std::string a, b;
        for (std::size_t i = 1 + rng.below(12); i-- > 0;) a.push_back(static_cast<char>('a' + rng.below(2)));
        for (std::size_t i = 1 + rng.below(12); i-- > 0;) b.push_back(static_cast<char>('a' + rng.below(2)));
        auto align = optimal_alignment(syms(a), syms(b));
        auto matched = static_cast<std::int64_t>(align.defined_count());
        std::int64_t indels =
            (static_cast<std::int64_t>(a.size()) - matched) + (static_cast<std::int64_t>(b.size()) - matched);
        CHECK(indels == edit_distance(syms(a), syms(b), EdVariant::IndelHalf).half_units);
    }
}

TEST_CASE("interval distances honor pads and bottom") {
    auto p = pad_input(std::string("abcd"), std::string("abcd"), 4);
    Interval a{Axis::X, 1, 4}, b{Axis::Y, 1, 4};
    CHECK(interval_ed(p, a, b).value() == 0.0);
    // bottom is at max distance
    CHECK(interval_ed(p, a, Interval::bottom(4)).value() == 4.0);
    // all-pad windows are identical strings
    Interval pad1{Axis::X, 100, 4}, pad2{Axis::Y, 200, 4};
    CHECK(interval_ed(p, pad1, pad2).value() == 0.0);
}
