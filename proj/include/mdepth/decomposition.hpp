#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdepth/matroid.hpp"
#include "mdepth/rooted_tree.hpp"

namespace mdepth {

// A rooted tree with exactly rank(M) edges together with a map taking every
// element of M to a leaf.  Valid iff for every set X of elements the upward
// closure of its image has at least rank(X) edges; this is checked over leaf
// subsets only, which is equivalent because the closure depends only on the
// image of X and rank is monotone.
struct StarDecomposition {
    RootedTree tree;
    std::vector<int> leaf_of;  // element id -> leaf vertex

    int ground_size() const { return static_cast<int>(leaf_of.size()); }
    int depth() const { return tree.depth(); }
    int height() const { return tree.height(); }
};

struct SearchReport {
    bool found = false;
    int depth = -1;
    std::optional<StarDecomposition> decomposition;
    long long trees_examined = 0;
    long long placements_examined = 0;  // element-to-leaf placements tried
};

bool is_valid(const Matroid& m, const StarDecomposition& d);

// Elements of M assigned to leaves of the subtree rooted at v.
ElementSet elements_under(const StarDecomposition& d, int vertex);

// Exhaustive search over canonical rooted trees with rank(M) edges, trees in
// nondecreasing depth, assignments depth-first with incremental rank pruning;
// loops are pinned to the first leaf.  With a depth cap the search becomes a
// decision procedure and found=false is a possible outcome; without a cap the
// path tree always yields a valid decomposition, so the search always
// succeeds and the reported depth equals the contraction*-depth of M.
SearchReport csd_search(const Matroid& m, std::optional<int> depth_cap = std::nullopt,
                        const Caps& caps = default_caps());

int csd(const Matroid& m, const Caps& caps = default_caps());

// First valid decomposition for every canonical tree shape that admits one,
// across all depths.  Used to exercise depth bounds on non-optimal trees.
std::vector<StarDecomposition> first_valid_per_tree(const Matroid& m,
                                                    const Caps& caps = default_caps());

// DOT rendering: root topmost, edges labeled with their bottom vertex, leaf
// labels carrying the assigned element ids.  from_dot parses exactly the
// format to_dot emits.
std::string decomposition_to_dot(const StarDecomposition& d);
StarDecomposition decomposition_from_dot(const std::string& dot);

}  // namespace mdepth
