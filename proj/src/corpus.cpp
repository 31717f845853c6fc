#include "mdepth/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

namespace mdepth {
namespace {

using EdgeList = std::vector<std::pair<int, int>>;

bool spans_connected(int vertices, const EdgeList& edges) {
    std::vector<int> uf(vertices);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (auto [u, v] : edges) uf[find(u)] = find(v);
    for (int v = 1; v < vertices; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

EdgeList normalized(const EdgeList& edges, const std::vector<int>& perm) {
    EdgeList out;
    out.reserve(edges.size());
    for (auto [u, v] : edges) {
        int a = perm[u], b = perm[v];
        out.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(out.begin(), out.end());
    return out;
}

EdgeList canonical_edges(int vertices, const EdgeList& edges) {
    std::vector<int> perm(vertices);
    std::iota(perm.begin(), perm.end(), 0);
    EdgeList best = normalized(edges, perm);
    while (std::next_permutation(perm.begin(), perm.end()))
        best = std::min(best, normalized(edges, perm));
    return best;
}

// All connected multigraphs with exactly `edge_count` edges up to isomorphism,
// loops and parallel edges allowed, no isolated vertices.
std::vector<std::pair<int, EdgeList>> connected_multigraphs(int edge_count) {
    std::vector<std::pair<int, EdgeList>> out;
    for (int vertices = 1; vertices <= edge_count + 1; ++vertices) {
        std::vector<std::pair<int, int>> pairs;
        for (int u = 0; u < vertices; ++u)
            for (int v = u; v < vertices; ++v) pairs.emplace_back(u, v);
        std::set<EdgeList> seen;
        EdgeList current;
        auto rec = [&](auto&& self, std::size_t from, int left) -> void {
            if (left == 0) {
                if (!spans_connected(vertices, current)) return;
                std::vector<bool> used(vertices, false);
                for (auto [u, v] : current) used[u] = used[v] = true;
                if (std::count(used.begin(), used.end(), true) != vertices) return;
                EdgeList canon = canonical_edges(vertices, current);
                if (seen.insert(canon).second) out.emplace_back(vertices, canon);
                return;
            }
            for (std::size_t i = from; i < pairs.size(); ++i) {
                current.push_back(pairs[i]);
                self(self, i, left - 1);
                current.pop_back();
            }
        };
        rec(rec, 0, edge_count);
    }
    return out;
}

}  // namespace

Corpus build_corpus(std::uint64_t seed, const CorpusOptions& options) {
    Corpus corpus;
    corpus.seed = seed;

    for (int n = 1; n <= options.max_uniform_n; ++n)
        for (int r = 0; r <= n; ++r)
            corpus.entries.push_back(
                {"uniform(" + std::to_string(n) + "," + std::to_string(r) + ")", Matroid::uniform(n, r)});

    for (int m = 1; m <= options.max_graphic_edges; ++m) {
        int index = 0;
        for (auto& [vertices, edges] : connected_multigraphs(m)) {
            corpus.entries.push_back({"graphic(m" + std::to_string(m) + "#" + std::to_string(index++) + ")",
                                      Matroid::graphic(vertices, edges)});
        }
    }

    std::mt19937_64 rng(seed);
    for (int i = 0; i < options.random_gf2_count; ++i) {
        int rows = std::uniform_int_distribution<int>(1, options.gf2_max_rows)(rng);
        int cols = std::uniform_int_distribution<int>(1, options.gf2_max_cols)(rng);
        std::vector<std::uint64_t> columns;
        std::uniform_int_distribution<std::uint64_t> column(0, (std::uint64_t{1} << rows) - 1);
        for (int c = 0; c < cols; ++c) columns.push_back(column(rng));
        corpus.entries.push_back({"gf2_rand#" + std::to_string(i), Matroid::gf2(rows, columns)});
    }

    auto u = [](int n, int r) { return Matroid::uniform(n, r); };
    corpus.entries.push_back({"U(2,1)+U(2,1)", direct_sum(u(2, 1), u(2, 1))});
    corpus.entries.push_back({"U(2,1)+U(3,2)", direct_sum(u(2, 1), u(3, 2))});
    corpus.entries.push_back({"U(2,1)+U(2,1)+U(2,1)", direct_sum(direct_sum(u(2, 1), u(2, 1)), u(2, 1))});
    corpus.entries.push_back({"U(3,2)+U(3,2)", direct_sum(u(3, 2), u(3, 2))});
    corpus.entries.push_back({"loops+coloops", direct_sum(u(2, 0), u(2, 2))});
    corpus.entries.push_back({"U(3,1)+free(2)", direct_sum(u(3, 1), u(2, 2))});
    corpus.entries.push_back({"U(4,2)+U(4,2)", direct_sum(u(4, 2), u(4, 2))});

    return corpus;
}

}  // namespace mdepth
