#include <doctest.h>

#include <bit>
#include <numeric>

#include "mdepth/matroid.hpp"
#include "mdepth/matroid_io.hpp"

using namespace mdepth;

namespace {

// Independent oracle for gf2 ranks: a column set is independent iff no
// nonempty subset XORs to zero; rank is the largest independent subset.
bool gf2_independent_oracle(const std::vector<std::uint64_t>& cols, std::uint64_t mask) {
    for (std::uint64_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
        std::uint64_t x = 0;
        for (std::uint64_t rest = sub; rest != 0; rest &= rest - 1)
            x ^= cols[std::countr_zero(rest)];
        if (x == 0) return false;
    }
    return true;
}

int gf2_rank_oracle(const std::vector<std::uint64_t>& cols, std::uint64_t mask) {
    int best = 0;
    for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
        if (gf2_independent_oracle(cols, sub)) best = std::max(best, std::popcount(sub));
        if (sub == 0) break;
    }
    return best;
}

// Independent oracle for graphic ranks: largest subset that stays acyclic,
// acyclicity checked by incremental union-find merges.
bool forest_oracle(int vertices, const std::vector<std::pair<int, int>>& edges, std::uint64_t mask) {
    std::vector<int> uf(vertices);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
        auto [u, v] = edges[std::countr_zero(rest)];
        if (find(u) == find(v)) return false;
        uf[find(u)] = find(v);
    }
    return true;
}

int graphic_rank_oracle(int vertices, const std::vector<std::pair<int, int>>& edges,
                        std::uint64_t mask) {
    int best = 0;
    for (std::uint64_t sub = mask;; sub = (sub - 1) & mask) {
        if (forest_oracle(vertices, edges, sub)) best = std::max(best, std::popcount(sub));
        if (sub == 0) break;
    }
    return best;
}

const std::vector<std::uint64_t> kGf2Cols{0b01, 0b10, 0b11};  // columns 10, 01, 11 (row 0 first)

}  // namespace

TEST_CASE("uniform rank") {
    Matroid m = Matroid::uniform(3, 2);
    CHECK(m.rank(ElementSet::of(3, {0, 1})) == 2);
    CHECK(m.rank(ElementSet::of(3, {0, 1, 2})) == 2);
    CHECK(Matroid::uniform(3, 0).rank(ElementSet::of(3, {0, 1})) == 0);
    CHECK(m.rank(ElementSet(3)) == 0);
    CHECK_THROWS_AS((void)Matroid::uniform(2, 3), input_error);
}

TEST_CASE("gf2 rank against the xor oracle") {
    Matroid m = Matroid::gf2(2, kGf2Cols);
    CHECK(gf2_rank_oracle(kGf2Cols, 0b111) == 2);  // oracle-computed, frozen below
    CHECK(m.rank(ElementSet::of(3, {0, 1, 2})) == 2);
    CHECK(m.is_independent(ElementSet::of(3, {0, 2})));
    CHECK_FALSE(m.is_independent(ElementSet::of(3, {0, 1, 2})));
    for (std::uint64_t mask = 0; mask < 8; ++mask)
        CHECK(m.rank_mask(mask) == gf2_rank_oracle(kGf2Cols, mask));

    std::vector<std::uint64_t> bigger{0b001, 0b010, 0b011, 0b110, 0b101, 0b111};
    Matroid b = Matroid::gf2(3, bigger);
    for (std::uint64_t mask = 0; mask < 64; ++mask)
        CHECK(b.rank_mask(mask) == gf2_rank_oracle(bigger, mask));
}

TEST_CASE("graphic rank against the forest oracle") {
    std::vector<std::pair<int, int>> triangle{{0, 1}, {1, 2}, {0, 2}};
    Matroid m = Matroid::graphic(3, triangle);
    CHECK(m.rank() == 2);
    for (std::uint64_t mask = 0; mask < 8; ++mask)
        CHECK(m.rank_mask(mask) == graphic_rank_oracle(3, triangle, mask));

    std::vector<std::pair<int, int>> multi{{0, 0}, {0, 1}, {0, 1}, {1, 2}, {2, 0}};
    Matroid g = Matroid::graphic(3, multi);
    for (std::uint64_t mask = 0; mask < 32; ++mask)
        CHECK(g.rank_mask(mask) == graphic_rank_oracle(3, multi, mask));
    CHECK(g.classify(0) == ElementClass::loop);  // self-loop
}

TEST_CASE("independence basics") {
    CHECK(Matroid::uniform(3, 2).is_independent(ElementSet(3)));
    CHECK_FALSE(Matroid::uniform(3, 2).is_independent(ElementSet::of(3, {0, 1, 2})));
}

TEST_CASE("dual agrees with the complementary uniform matroid") {
    for (int n = 1; n <= 5; ++n)
        for (int r = 0; r <= n; ++r) {
            Matroid dual = Matroid::uniform(n, r).dual();
            Matroid expected = Matroid::uniform(n, n - r);
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask)
                CHECK(dual.rank_mask(mask) == expected.rank_mask(mask));
        }
}

TEST_CASE("double dual is the identity on ranks") {
    Matroid m = Matroid::gf2(2, kGf2Cols);
    Matroid dd = m.dual().dual();
    for (std::uint64_t mask = 0; mask < 8; ++mask) CHECK(dd.rank_mask(mask) == m.rank_mask(mask));
    Matroid free3 = Matroid::uniform(3, 3);
    Matroid loops = Matroid::uniform(3, 0);
    for (std::uint64_t mask = 0; mask < 8; ++mask)
        CHECK(free3.dual().rank_mask(mask) == loops.rank_mask(mask));
}

TEST_CASE("minor view follows the contraction rank law") {
    Matroid m = Matroid::uniform(3, 2);
    Matroid contracted = m.contract(0);
    Matroid expected = Matroid::uniform(2, 1);
    for (std::uint64_t mask = 0; mask < 4; ++mask)
        CHECK(contracted.rank_mask(mask) == expected.rank_mask(mask));

    Matroid identity = m.minor(ElementSet(3), ElementSet(3));
    for (std::uint64_t mask = 0; mask < 8; ++mask)
        CHECK(identity.rank_mask(mask) == m.rank_mask(mask));

    // Contracting one triangle edge leaves two parallel elements.
    Matroid triangle = Matroid::graphic(3, {{0, 1}, {1, 2}, {0, 2}});
    Matroid pair = triangle.contract(0);
    CHECK(pair.rank_mask(0b01) == 1);
    CHECK(pair.rank_mask(0b10) == 1);
    CHECK(pair.rank_mask(0b11) == 1);

    CHECK_THROWS_AS((void)m.minor(ElementSet::of(3, {0}), ElementSet::of(3, {0, 1})), input_error);
}

TEST_CASE("minor index maps translate to the parent") {
    Matroid m = Matroid::uniform(5, 3);
    Matroid view = m.minor(ElementSet::of(5, {1}), ElementSet::of(5, {3}));
    CHECK(view.size() == 3);
    CHECK(view.parent_index_of(0) == 0);
    CHECK(view.parent_index_of(1) == 2);
    CHECK(view.parent_index_of(2) == 4);
    CHECK(view.to_parent(ElementSet::of(3, {1, 2})) == ElementSet::of(5, {2, 4}));
}

TEST_CASE("classify") {
    CHECK(Matroid::uniform(3, 0).classify(0) == ElementClass::loop);
    CHECK(Matroid::uniform(2, 2).classify(1) == ElementClass::coloop);
    CHECK(Matroid::uniform(3, 2).classify(0) == ElementClass::ordinary);
    CHECK_THROWS_AS((void)Matroid::uniform(3, 2).classify(3), input_error);
}

TEST_CASE("circuits") {
    std::vector<ElementSet> circuits = Matroid::uniform(3, 2).circuits();
    REQUIRE(circuits.size() == 1);
    CHECK(circuits[0] == ElementSet::of(3, {0, 1, 2}));

    CHECK(Matroid::uniform(3, 3).circuits().empty());

    Matroid g = Matroid::gf2(2, {0b01, 0b10, 0b11, 0b11});
    std::vector<ElementSet> cs = g.circuits();
    bool has_parallel_pair = false;
    for (const ElementSet& c : cs) has_parallel_pair |= (c == ElementSet::of(4, {2, 3}));
    CHECK(has_parallel_pair);
    // Minimality and dependence, straight from the definition.
    for (const ElementSet& c : cs) {
        CHECK_FALSE(g.is_independent(c));
        for (int e : c) {
            ElementSet smaller = c;
            smaller.erase(e);
            CHECK(g.is_independent(smaller));
        }
    }
    CHECK_THROWS_AS((void)Matroid::uniform(3, 2).circuits(2), resource_error);
}

TEST_CASE("components") {
    Matroid sum = Matroid::from_bases(4, {ElementSet::of(4, {0, 2}), ElementSet::of(4, {0, 3}),
                                          ElementSet::of(4, {1, 2}), ElementSet::of(4, {1, 3})});
    ComponentPartition parts = sum.components();
    REQUIRE(parts.blocks.size() == 2);
    CHECK(parts.blocks[0] == ElementSet::of(4, {0, 1}));
    CHECK(parts.blocks[1] == ElementSet::of(4, {2, 3}));
    CHECK_FALSE(parts.trivial[0]);
    CHECK(parts.block_of(3) == 1);

    CHECK(Matroid::uniform(3, 3).components().blocks.size() == 3);
    CHECK(Matroid::uniform(3, 2).components().blocks.size() == 1);

    ComponentPartition loops = Matroid::uniform(2, 0).components();
    REQUIRE(loops.blocks.size() == 2);
    CHECK(loops.trivial[0]);

    int rank_sum = 0;
    for (const ElementSet& b : parts.blocks) rank_sum += sum.rank(b);
    CHECK(rank_sum == sum.rank());
}

TEST_CASE("explicit backend rank is the best basis overlap") {
    Matroid m = Matroid::from_bases(3, {ElementSet::of(3, {0, 1})});
    CHECK(m.rank() == 2);
    CHECK(m.rank(ElementSet::of(3, {2})) == 0);
    CHECK(m.rank(ElementSet::of(3, {1, 2})) == 1);
    CHECK_THROWS_AS((void)Matroid::from_bases(3, {}), input_error);
}

TEST_CASE("direct sum") {
    Matroid m = direct_sum(Matroid::uniform(2, 1), Matroid::uniform(2, 1));
    CHECK(m.size() == 4);
    CHECK(m.rank() == 2);
    CHECK(m.rank(ElementSet::of(4, {0, 1})) == 1);
    CHECK(m.rank(ElementSet::of(4, {0, 2})) == 2);
}

TEST_CASE("bases enumeration") {
    std::vector<ElementSet> bases = Matroid::uniform(3, 2).bases();
    CHECK(bases.size() == 3);
    CHECK(ElementSet::size_lex_less(bases[0], bases[1]));
}

TEST_CASE("rank queries reject foreign sets") {
    CHECK_THROWS_AS((void)Matroid::uniform(3, 2).rank(ElementSet::of(4, {0})), input_error);
    CHECK_THROWS_AS((void)Matroid::uniform(3, 2).rank_mask(0b11000), input_error);
}
