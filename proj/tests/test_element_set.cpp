#include <doctest.h>

#include <vector>

#include "mdepth/element_set.hpp"

using namespace mdepth;

TEST_CASE("element set basics") {
    ElementSet s = ElementSet::of(5, {0, 2, 3});
    CHECK(s.count() == 3);
    CHECK(s.contains(2));
    CHECK_FALSE(s.contains(1));
    CHECK(s.to_string() == "{0,2,3}");
    CHECK(s.complement() == ElementSet::of(5, {1, 4}));
    CHECK((s & ElementSet::of(5, {2, 4})) == ElementSet::of(5, {2}));
    CHECK((s | ElementSet::of(5, {1})).count() == 4);
    CHECK((s - ElementSet::of(5, {0})) == ElementSet::of(5, {2, 3}));

    std::vector<int> seen;
    for (int e : s) seen.push_back(e);
    CHECK(seen == std::vector<int>{0, 2, 3});
}

TEST_CASE("element set guards its universe") {
    ElementSet s(3);
    CHECK_THROWS_AS(s.insert(3), input_error);
    CHECK_THROWS_AS(s.contains(-1), input_error);
    CHECK_THROWS_AS((void)(s | ElementSet(4)), input_error);
    CHECK_THROWS_AS(ElementSet::from_mask(3, 0b1000), input_error);
    CHECK_THROWS_AS(ElementSet(65), input_error);
}

TEST_CASE("size-lex order") {
    ElementSet a = ElementSet::of(4, {0, 1});
    ElementSet b = ElementSet::of(4, {0, 2});
    ElementSet c = ElementSet::of(4, {3});
    CHECK(ElementSet::size_lex_less(c, a));   // smaller first
    CHECK(ElementSet::size_lex_less(a, b));   // {0,1} before {0,2}
    CHECK_FALSE(ElementSet::size_lex_less(b, a));
    CHECK_FALSE(ElementSet::size_lex_less(a, a));
}
