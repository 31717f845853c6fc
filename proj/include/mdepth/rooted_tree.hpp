#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mdepth/common.hpp"
#include "mdepth/element_set.hpp"

namespace mdepth {

// Vertex ids are dense 0..|V|-1.  Edges are identified with their bottom
// (child) vertex, so edge sets are vertex sets that never contain the root.
struct TreeStats {
    int height = 0;  // vertices on a longest root-leaf path
    int depth = 0;   // edges on a longest root-leaf path (height - 1)
    std::vector<int> leaves;
    std::vector<int> branching;           // vertices with >= 2 children
    std::vector<int> internal_branching;  // branching vertices other than the root
};

class RootedTree {
  public:
    // parent[v] = parent vertex, parent[root] = -1.
    RootedTree(std::vector<int> parent, int root);

    static RootedTree single_vertex() { return RootedTree({-1}, 0); }
    static RootedTree path(int edges);
    static RootedTree star(int leaves);

    int vertex_count() const { return static_cast<int>(parent_.size()); }
    int edge_count() const { return vertex_count() - 1; }
    int root() const { return root_; }
    int parent(int v) const { return parent_.at(v); }
    const std::vector<int>& children(int v) const { return children_.at(v); }
    int depth_of(int v) const { return depth_of_.at(v); }

    bool is_leaf(int v) const { return children_.at(v).empty(); }
    bool is_branching(int v) const { return children_.at(v).size() >= 2; }
    bool is_internal_branching(int v) const { return v != root_ && is_branching(v); }

    // u <= v in the ancestor order: u equals v or v is an ancestor of u.
    bool order_leq(int u, int v) const;

    TreeStats stats() const;
    int depth() const { return stats_depth_; }
    int height() const { return stats_depth_ + 1; }
    std::vector<int> leaves() const;

    // Vertices in root-first order, children in id order.
    const std::vector<int>& preorder() const { return preorder_; }
    // Children before parents; the reverse of a preorder.
    const std::vector<int>& postorder() const { return postorder_; }

    // Edge set of the smallest subtree containing the root and A, as the set
    // of bottom vertices.  A must be nonempty.
    ElementSet upward_closure_edges(const ElementSet& vertices) const;
    std::uint64_t upward_closure_edge_mask(std::uint64_t vertex_mask) const;

    // Bottom vertices of the edges on the path from v to the root.
    std::uint64_t root_path_edge_mask(int v) const;

    // Nearest proper ancestor of v that is a branching vertex or the root.
    int nearest_branching_or_root_ancestor(int v) const;
    // Bottom vertices of the edges strictly between v (inclusive) and its
    // nearest branching-or-root ancestor (exclusive).
    std::uint64_t path_to_branching_edge_mask(int v) const;

    // The <=-maximal proper descendants of v that are branching vertices or
    // leaves: one per child of v, found by walking through degree-two chains.
    std::vector<int> max_branching_or_leaf_descendants(int v) const;

    std::uint64_t subtree_vertex_mask(int v) const;
    std::uint64_t subtree_edge_mask(int v) const;  // edges with both ends in the subtree of v

    // Shape signature invariant under root-preserving isomorphism.
    const std::string& canonical_code() const { return code_; }
    std::string subtree_code(int v) const;

    // Groups of leaves equivalent under root-preserving automorphisms.
    std::vector<std::vector<int>> leaf_orbits() const;

    std::string to_dot() const;

    bool operator==(const RootedTree& o) const { return parent_ == o.parent_ && root_ == o.root_; }

  private:
    std::vector<int> parent_;
    int root_;
    std::vector<std::vector<int>> children_;
    std::vector<int> depth_of_;
    std::vector<int> preorder_;
    std::vector<int> postorder_;
    int stats_depth_ = 0;
    std::string code_;
};

// All rooted trees with the given number of edges, one per isomorphism class,
// in canonical preorder labeling, sorted by (depth, canonical code).
std::vector<RootedTree> enumerate_rooted_trees(int edges);

}  // namespace mdepth
