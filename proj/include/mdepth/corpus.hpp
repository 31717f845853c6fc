#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdepth/matroid.hpp"

namespace mdepth {

struct CorpusEntry {
    std::string name;
    Matroid matroid;
};

struct CorpusOptions {
    int max_uniform_n = 6;
    int max_graphic_edges = 5;  // all connected multigraphs up to isomorphism
    int random_gf2_count = 12;
    int gf2_max_rows = 4;
    int gf2_max_cols = 6;
};

// Deterministic for a fixed seed: uniform matroids, every connected multigraph
// with few edges (loops and parallel edges included), seeded random gf2
// matroids, and handcrafted explicit direct sums.
struct Corpus {
    std::uint64_t seed = 0;
    std::vector<CorpusEntry> entries;
};

Corpus build_corpus(std::uint64_t seed, const CorpusOptions& options = {});

}  // namespace mdepth
