#include <doctest.h>

#include <algorithm>

#include "mdepth/depth.hpp"
#include "mdepth/matroid_io.hpp"

using namespace mdepth;

namespace {

// Brute-force recursions straight from the definitions, working on matroid
// views only; independent of the memoized engine.
int naive_depth(const Matroid& m, DepthKind kind) {
    if (m.size() == 0) return 0;
    if (m.size() == 1) {
        bool loop = m.rank_mask(1) == 0;
        switch (kind) {
            case DepthKind::contraction:
            case DepthKind::deletion:
                return 1;
            case DepthKind::altered_contraction:
                return loop ? 0 : 1;
            case DepthKind::altered_deletion:
                return loop ? 1 : 0;
        }
    }
    ComponentPartition parts = m.components();
    if (parts.blocks.size() > 1) {
        int best = 0;
        for (const ElementSet& block : parts.blocks)
            best = std::max(best, naive_depth(m.restrict_to(block), kind));
        return best;
    }
    bool contracts = kind == DepthKind::contraction || kind == DepthKind::altered_contraction;
    int best = -1;
    for (int e = 0; e < m.size(); ++e) {
        int sub = naive_depth(contracts ? m.contract(e) : m.remove(e), kind);
        if (best < 0 || sub < best) best = sub;
    }
    return 1 + best;
}

}  // namespace

TEST_CASE("contraction-depth named values") {
    CHECK(contraction_depth(Matroid::uniform(3, 0)) == 1);  // loops only
    CHECK(contraction_depth(Matroid::uniform(3, 1)) == 2);  // parallel class
    CHECK(naive_depth(Matroid::uniform(3, 2), DepthKind::contraction) == 3);
    CHECK(contraction_depth(Matroid::uniform(3, 2)) == 3);
    CHECK(contraction_depth(Matroid::uniform(0, 0)) == 0);  // empty matroid
    CHECK(contraction_depth(Matroid::uniform(1, 1)) == 1);
}

TEST_CASE("deletion-depth base cases and duality") {
    CHECK(deletion_depth(Matroid::uniform(1, 1)) == 1);
    CHECK(deletion_depth(Matroid::uniform(3, 2)) ==
          naive_depth(Matroid::uniform(3, 2), DepthKind::deletion));
    for (int n = 1; n <= 5; ++n)
        for (int r = 0; r <= n; ++r) {
            Matroid m = Matroid::uniform(n, r);
            CHECK(deletion_depth(m) == contraction_depth(m.dual()));
        }
}

TEST_CASE("altered contraction-depth") {
    CHECK(altered_contraction_depth(Matroid::uniform(1, 1)) == 1);  // single coloop
    CHECK(altered_contraction_depth(Matroid::uniform(1, 0)) == 0);  // single loop
    CHECK(altered_contraction_depth(Matroid::uniform(3, 1)) == 1);
    CHECK(naive_depth(Matroid::uniform(3, 1), DepthKind::altered_contraction) == 1);
}

TEST_CASE("altered deletion-depth") {
    CHECK(altered_deletion_depth(Matroid::uniform(1, 0)) == 1);  // single loop
    CHECK(altered_deletion_depth(Matroid::uniform(1, 1)) == 0);  // single coloop
    CHECK(altered_deletion_depth(Matroid::uniform(3, 3)) == 0);  // coloop components
    CHECK(naive_depth(Matroid::uniform(3, 3), DepthKind::altered_deletion) == 0);
}

TEST_CASE("engine matches the naive recursion") {
    std::vector<Matroid> sample{
        Matroid::uniform(4, 2),
        Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}}),
        Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
        Matroid::gf2(3, {0b001, 0b010, 0b100, 0b011, 0b011}),
        direct_sum(Matroid::uniform(2, 1), Matroid::uniform(3, 2)),
        direct_sum(Matroid::uniform(2, 0), Matroid::uniform(2, 2)),
    };
    for (const Matroid& m : sample)
        for (DepthKind kind : {DepthKind::contraction, DepthKind::deletion,
                               DepthKind::altered_contraction, DepthKind::altered_deletion}) {
            int expected = naive_depth(m, kind);
            CHECK(depth_detail(m, kind, default_caps(), true).value == expected);
            CHECK(depth_detail(m, kind, default_caps(), false).value == expected);
        }
}

TEST_CASE("depth trace reports the smallest optimal element") {
    DepthResult r = depth_detail(Matroid::uniform(3, 2), DepthKind::contraction);
    REQUIRE(r.chosen_element.has_value());
    CHECK(*r.chosen_element == 0);  // symmetric, so the smallest index wins
    CHECK_FALSE(depth_detail(Matroid::uniform(3, 3), DepthKind::contraction).chosen_element);
}

TEST_CASE("gf2 quotient recursion") {
    CHECK(csd_gf2_quotient(Matroid::gf2(1, {0b1})) == 1);        // one nonzero column
    CHECK(csd_gf2_quotient(Matroid::gf2(1, {0b0})) == 0);        // one loop
    CHECK(csd_gf2_quotient(Matroid::gf2(1, {0b1, 0b1})) == 1);   // parallel pair
    CHECK(csd_gf2_quotient(Matroid::gf2(2, {0b01, 0b10})) == 1); // two coloops
    CHECK(csd_gf2_quotient(Matroid::gf2(2, {0b01, 0b10, 0b11})) == 2);
    CHECK_THROWS_AS((void)csd_gf2_quotient(Matroid::uniform(3, 1)), input_error);
}
