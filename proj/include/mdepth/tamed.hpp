#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mdepth/decomposition.hpp"
#include "mdepth/matroid.hpp"

namespace mdepth {

// Subset of the combined ground set M u E(T): a matroid part over the
// elements of M and an edge part over E(T), edges named by bottom vertices.
struct ExtendedSet {
    ElementSet matroid_part;  // universe |M|
    ElementSet edge_part;     // universe |V(T)|, root bit never set
};

struct TokenLedger {
    std::vector<int> assigned;  // per vertex; nonzero only on leaves and internal branching vertices
    std::vector<int> kept;      // per vertex after distribution; 0 or 1 off the root
    int root_surplus = 0;       // tokens ending on the root (assigned there plus received)
};

// Knobs for the harness's mutation-sensitivity checks.  Production code uses
// the defaults; flipping any of these must break at least one theorem check.
struct TamedOptions {
    bool branch_subtraction = true;   // subtract child rank terms at internal branching vertices
    bool keep_one = true;             // a processed vertex keeps min(tokens, 1) and sends the rest
    bool require_independent = true;  // tamed sets must have an independent matroid part
};

// Token machinery for one (matroid, decomposition) pair.  Construction
// validates the decomposition.  Base-matroid ranks are memoized internally;
// the logical rank-oracle call count per query is still linear in |V(T)| and
// is exposed for the harness to assert.
class TamedContext {
  public:
    TamedContext(Matroid m, StarDecomposition d, TamedOptions options = {});

    const Matroid& base() const { return base_; }
    const StarDecomposition& decomposition() const { return decomp_; }
    const TamedOptions& options() const { return options_; }

    int base_size() const { return base_.size(); }
    int edge_count() const { return decomp_.tree.edge_count(); }
    int combined_size() const { return base_size() + edge_count(); }

    // Combined indexing: 0..|M|-1 are matroid elements, |M|..|M|+rank-1 are
    // edge elements in ascending bottom-vertex order.
    int edge_element_of_vertex(int bottom_vertex) const;
    int bottom_vertex_of(int edge_element) const;
    ExtendedSet split(std::uint64_t combined_mask) const;
    std::uint64_t combine(const ExtendedSet& x) const;

    std::vector<int> token_assignment(const ExtendedSet& x) const;
    TokenLedger distribute(const std::vector<int>& assigned) const;
    // The explicit marking loop: repeatedly processes a random vertex whose
    // descendants are all marked.  Agrees with distribute() in any order.
    TokenLedger distribute_marking(const std::vector<int>& assigned, std::mt19937_64& rng) const;

    TokenLedger ledger(const ExtendedSet& x) const;
    bool is_tamed(const ExtendedSet& x) const;
    bool is_tamed_mask(std::uint64_t combined_mask) const;

    long long rank_calls() const { return rank_calls_; }
    void reset_rank_calls() { rank_calls_ = 0; }

  private:
    int rank_in_complement_contraction(int vertex, std::uint64_t matroid_mask) const;

    Matroid base_;
    StarDecomposition decomp_;
    TamedOptions options_;
    std::vector<int> edge_vertices_;              // edge element order: ascending bottom vertex
    std::vector<int> edge_element_of_vertex_;     // vertex -> edge element or -1
    std::vector<int> token_vertices_;             // leaves and internal branching vertices, no root
    std::vector<std::uint64_t> path_mask_;        // per vertex: edges up to nearest branching/root
    std::vector<std::uint64_t> under_mask_;       // per vertex: elements of M under it
    std::vector<int> complement_rank_;            // per vertex: rank of the complement of under_mask_
    std::vector<std::vector<int>> child_reps_;    // per vertex: maximal branching-or-leaf descendants
    mutable MaskRankCache base_rank_;
    mutable long long rank_calls_ = 0;
};

// The extension matroid over M u E(T): independent sets are exactly the tamed
// sets.  The rank oracle is greedy augmentation in ascending combined index,
// materialized as a full table at construction (|M| + rank(M) is capped).
struct TamedExtension {
    Matroid base;
    StarDecomposition decomposition;
    Matroid matroid;  // kind tamed_extension, ground set size |M| + rank(M)

    int base_size() const { return base.size(); }
    int edge_elements() const { return matroid.size() - base.size(); }
};

TamedExtension build_extension(const Matroid& m, const StarDecomposition& d,
                               TamedOptions options = {}, const Caps& caps = default_caps());

}  // namespace mdepth
