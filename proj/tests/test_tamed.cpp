#include <doctest.h>

#include <bit>
#include <random>

#include "mdepth/tamed.hpp"

using namespace mdepth;

namespace {

// Direct evaluation of the token formulas using only public matroid and tree
// operations; no precomputation shared with TamedContext.
std::vector<int> token_formula_oracle(const Matroid& m, const StarDecomposition& d,
                                      const ExtendedSet& x) {
    const RootedTree& tree = d.tree;
    std::vector<int> assigned(tree.vertex_count(), 0);
    auto rank_term = [&](int v) {
        ElementSet under = elements_under(d, v);
        ElementSet co = under.complement();
        return m.rank((x.matroid_part & under) | co) - m.rank(co);
    };
    for (int v = 0; v < tree.vertex_count(); ++v) {
        if (v == tree.root()) continue;
        bool leaf = tree.is_leaf(v);
        bool branch = tree.is_internal_branching(v);
        if (!leaf && !branch) continue;
        int tokens = std::popcount(x.edge_part.mask() & tree.path_to_branching_edge_mask(v));
        tokens += rank_term(v);
        if (branch)
            for (int rep : tree.max_branching_or_leaf_descendants(v)) tokens -= rank_term(rep);
        assigned[v] = tokens;
    }
    return assigned;
}

const Matroid kU32 = Matroid::uniform(3, 2);

StarDecomposition u32_path() {
    return StarDecomposition{RootedTree::path(2), {2, 2, 2}};
}

}  // namespace

TEST_CASE("token assignment on the path decomposition") {
    TamedContext ctx(kU32, u32_path());
    ExtendedSet both_edges{ElementSet(3), ElementSet::of(3, {1, 2})};
    CHECK(ctx.token_assignment(both_edges) == std::vector<int>{0, 0, 2});

    ExtendedSet one_element{ElementSet::of(3, {0}), ElementSet(3)};
    CHECK(ctx.token_assignment(one_element) == std::vector<int>{0, 0, 1});
}

TEST_CASE("token assignment at an internal branching vertex") {
    Matroid free3 = Matroid::uniform(3, 3);
    StarDecomposition d{RootedTree({-1, 0, 1, 1}, 0), {2, 3, 3}};
    REQUIRE(is_valid(free3, d));
    TamedContext ctx(free3, d);
    ExtendedSet x{ElementSet::of(3, {0, 1}), ElementSet::of(4, {1})};
    CHECK(ctx.token_assignment(x) == std::vector<int>{0, 1, 1, 1});
}

TEST_CASE("context agrees with the formula oracle on random sets") {
    Matroid diamond = Matroid::graphic(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    SearchReport r = csd_search(diamond);
    TamedContext ctx(diamond, *r.decomposition);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> dist(0, (1ull << ctx.combined_size()) - 1);
    for (int i = 0; i < 300; ++i) {
        ExtendedSet x = ctx.split(dist(rng));
        CHECK(ctx.token_assignment(x) == token_formula_oracle(diamond, *r.decomposition, x));
    }
}

TEST_CASE("distribution keeps one token per vertex and sends the rest up") {
    TamedContext ctx(kU32, u32_path());
    TokenLedger two = ctx.distribute({0, 0, 2});
    CHECK(two.kept == std::vector<int>{0, 1, 1});
    CHECK(two.root_surplus == 0);

    TokenLedger four = ctx.distribute({0, 0, 4});
    CHECK(four.kept == std::vector<int>{0, 1, 1});
    CHECK(four.root_surplus == 2);

    TokenLedger zero = ctx.distribute({0, 0, 0});
    CHECK(zero.kept == std::vector<int>{0, 0, 0});
    CHECK(zero.root_surplus == 0);
}

TEST_CASE("marking loop agrees with the bottom-up pass") {
    Matroid grid = Matroid::graphic(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
    SearchReport r = csd_search(grid);
    TamedContext ctx(grid, *r.decomposition);
    std::mt19937_64 rng(11);
    const RootedTree& tree = r.decomposition->tree;
    std::uniform_int_distribution<int> tokens(0, 3);
    for (int i = 0; i < 100; ++i) {
        std::vector<int> assigned(tree.vertex_count(), 0);
        for (int v = 0; v < tree.vertex_count(); ++v)
            if (v != tree.root()) assigned[v] = tokens(rng);
        TokenLedger direct = ctx.distribute(assigned);
        TokenLedger marked = ctx.distribute_marking(assigned, rng);
        CHECK(direct.kept == marked.kept);
        CHECK(direct.root_surplus == marked.root_surplus);
    }
}

TEST_CASE("distribution conserves tokens") {
    Matroid diamond = Matroid::graphic(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    SearchReport r = csd_search(diamond);
    TamedContext ctx(diamond, *r.decomposition);
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<std::uint64_t> dist(0, (1ull << ctx.combined_size()) - 1);
    for (int i = 0; i < 200; ++i) {
        ExtendedSet x = ctx.split(dist(rng));
        // Thin the matroid part to an independent set; token counts are only
        // guaranteed non-negative then.
        ElementSet independent(diamond.size());
        for (int e : x.matroid_part) {
            independent.insert(e);
            if (!diamond.is_independent(independent)) independent.erase(e);
        }
        x.matroid_part = independent;
        TokenLedger ledger = ctx.ledger(x);
        int assigned = 0, kept = 0;
        for (int v = 0; v < r.decomposition->tree.vertex_count(); ++v) {
            assigned += ledger.assigned[v];
            kept += ledger.kept[v];
            if (v != r.decomposition->tree.root()) {
                CHECK(ledger.kept[v] >= 0);
                CHECK(ledger.kept[v] <= 1);
            }
        }
        CHECK(assigned == kept + ledger.root_surplus);
    }
}

TEST_CASE("tamed verdicts") {
    TamedContext ctx(kU32, u32_path());
    // The full edge set is tamed.
    CHECK(ctx.is_tamed(ExtendedSet{ElementSet(3), ElementSet::of(3, {1, 2})}));
    // A dependent matroid part is never tamed.
    CHECK_FALSE(ctx.is_tamed(ExtendedSet{ElementSet::of(3, {0, 1, 2}), ElementSet(3)}));
    // Anything larger than rank(M) is not tamed.
    CHECK_FALSE(ctx.is_tamed(ExtendedSet{ElementSet::of(3, {0, 1}), ElementSet::of(3, {1})}));
    // One element plus the top edge is a basis of the extension.
    CHECK(ctx.is_tamed(ExtendedSet{ElementSet::of(3, {0}), ElementSet::of(3, {1})}));
}

TEST_CASE("tamed checks use linearly many rank-oracle calls") {
    Matroid diamond = Matroid::graphic(4, {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}});
    SearchReport r = csd_search(diamond);
    TamedContext ctx(diamond, *r.decomposition);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::uint64_t> dist(0, (1ull << ctx.combined_size()) - 1);
    for (int i = 0; i < 64; ++i) {
        ctx.reset_rank_calls();
        ctx.is_tamed_mask(dist(rng));
        CHECK(ctx.rank_calls() <= 2 * r.decomposition->tree.vertex_count());
    }
}

TEST_CASE("combined indexing round-trips") {
    TamedContext ctx(kU32, u32_path());
    CHECK(ctx.combined_size() == 5);
    CHECK(ctx.edge_element_of_vertex(1) == 3);
    CHECK(ctx.edge_element_of_vertex(2) == 4);
    CHECK(ctx.bottom_vertex_of(4) == 2);
    CHECK_THROWS_AS((void)ctx.edge_element_of_vertex(0), input_error);
    ExtendedSet x = ctx.split(0b01101);
    CHECK(x.matroid_part == ElementSet::of(3, {0, 2}));
    CHECK(x.edge_part == ElementSet::of(3, {1}));
    CHECK(ctx.combine(x) == 0b01101);
}

TEST_CASE("extension matroid over the path decomposition") {
    TamedExtension ext = build_extension(kU32, u32_path());
    CHECK(ext.matroid.size() == 5);
    CHECK(ext.matroid.rank() == 2);
    CHECK(ext.matroid.kind() == MatroidKind::tamed_extension);
    // Restriction to the base elements agrees with the base matroid.
    for (std::uint64_t mask = 0; mask < 8; ++mask)
        CHECK(ext.matroid.rank_mask(mask) == kU32.rank_mask(mask));
    // {first element, top edge} is tamed, so it is independent here.
    CHECK(ext.matroid.is_independent_mask(0b01001));
}

TEST_CASE("rank-zero matroids get the empty extension") {
    Matroid loops = Matroid::uniform(3, 0);
    StarDecomposition d{RootedTree::single_vertex(), {0, 0, 0}};
    TamedExtension ext = build_extension(loops, d);
    CHECK(ext.matroid.size() == 3);
    CHECK(ext.matroid.rank() == 0);
    TamedContext ctx(loops, d);
    CHECK(ctx.is_tamed_mask(0));
    CHECK_FALSE(ctx.is_tamed_mask(0b001));
}

TEST_CASE("invalid decompositions are rejected") {
    StarDecomposition star{RootedTree::star(2), {1, 1, 2}};
    CHECK_THROWS_AS((void)TamedContext(kU32, star), input_error);
    Caps tiny;
    tiny.extension_size = 4;
    CHECK_THROWS_AS((void)build_extension(kU32, u32_path(), {}, tiny), resource_error);
}
