#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mdepth/common.hpp"

namespace mdepth {

// Subset-enumeration primitives shared by the public circuit/component
// operations and the depth recursion (which works on minors of one root
// matroid and supplies a rank functor closed over the contraction formula).

// Calls fn(submask) for every submask of `universe`, including 0 and
// `universe` itself, in decreasing numeric order of the submask.
template <typename Fn>
void for_each_submask(std::uint64_t universe, Fn&& fn) {
    std::uint64_t sub = universe;
    while (true) {
        fn(sub);
        if (sub == 0) break;
        sub = (sub - 1) & universe;
    }
}

// Minimal dependent subsets of `universe` under the given rank functor.
// rank(X) must be the matroid rank of X for every X subseteq universe.
template <typename RankFn>
std::vector<std::uint64_t> circuit_masks(std::uint64_t universe, const RankFn& rank, int cap) {
    if (std::popcount(universe) > cap)
        throw resource_error("circuit enumeration over " + std::to_string(std::popcount(universe)) +
                             " elements exceeds the cap of " + std::to_string(cap));
    std::vector<std::uint64_t> out;
    for_each_submask(universe, [&](std::uint64_t sub) {
        if (sub == 0) return;
        int size = std::popcount(sub);
        if (rank(sub) >= size) return;  // independent
        for (std::uint64_t rest = sub; rest != 0; rest &= rest - 1) {
            std::uint64_t without = sub & ~(rest & -rest);
            if (rank(without) < std::popcount(without)) return;  // a proper subset is dependent
        }
        out.push_back(sub);
    });
    return out;
}

// Blocks of the transitive "share a circuit" relation over `universe`,
// returned as masks sorted by their lowest element.
template <typename RankFn>
std::vector<std::uint64_t> component_masks(std::uint64_t universe, const RankFn& rank, int cap) {
    std::vector<int> ids;
    for (std::uint64_t rest = universe; rest != 0; rest &= rest - 1) ids.push_back(std::countr_zero(rest));
    std::vector<int> uf(64);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (std::uint64_t circuit : circuit_masks(universe, rank, cap)) {
        int first = std::countr_zero(circuit);
        for (std::uint64_t rest = circuit; rest != 0; rest &= rest - 1)
            uf[find(std::countr_zero(rest))] = find(first);
    }
    std::vector<std::uint64_t> blocks;
    std::vector<int> block_of_root(64, -1);
    for (int e : ids) {
        int root = find(e);
        if (block_of_root[root] < 0) {
            block_of_root[root] = static_cast<int>(blocks.size());
            blocks.push_back(0);
        }
        blocks[block_of_root[root]] |= std::uint64_t{1} << e;
    }
    return blocks;
}

}  // namespace mdepth
