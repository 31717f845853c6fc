#include "mdepth/rooted_tree.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace mdepth {

RootedTree::RootedTree(std::vector<int> parent, int root) : parent_(std::move(parent)), root_(root) {
    int n = vertex_count();
    if (n == 0 || n > 64) throw input_error("rooted tree needs 1..64 vertices");
    if (root < 0 || root >= n || parent_[root] != -1)
        throw input_error("root must be a valid vertex with parent -1");
    children_.assign(n, {});
    for (int v = 0; v < n; ++v) {
        if (v == root_) continue;
        if (parent_[v] < 0 || parent_[v] >= n)
            throw input_error("vertex " + std::to_string(v) + " has an invalid parent");
        children_[parent_[v]].push_back(v);
    }
    depth_of_.assign(n, -1);
    depth_of_[root_] = 0;
    for (int v = 0; v < n; ++v) {
        int steps = 0;
        int u = v;
        while (depth_of_[u] < 0) {
            u = parent_[u];
            if (++steps > n) throw input_error("parent links contain a cycle");
        }
        int base = depth_of_[u];
        // second pass writes depths along the walked prefix
        int w = v;
        int dist = 0;
        while (w != u) {
            ++dist;
            w = parent_[w];
        }
        w = v;
        while (w != u) {
            depth_of_[w] = base + dist;
            --dist;
            w = parent_[w];
        }
    }
    stats_depth_ = *std::max_element(depth_of_.begin(), depth_of_.end());

    preorder_.reserve(n);
    std::vector<int> stack{root_};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        preorder_.push_back(v);
        const auto& ch = children_[v];
        for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
    }
    postorder_ = preorder_;
    std::reverse(postorder_.begin(), postorder_.end());
    code_ = subtree_code(root_);
}

RootedTree RootedTree::path(int edges) {
    std::vector<int> parent(edges + 1);
    parent[0] = -1;
    for (int v = 1; v <= edges; ++v) parent[v] = v - 1;
    return RootedTree(std::move(parent), 0);
}

RootedTree RootedTree::star(int leaves) {
    std::vector<int> parent(leaves + 1, 0);
    parent[0] = -1;
    return RootedTree(std::move(parent), 0);
}

bool RootedTree::order_leq(int u, int v) const {
    if (u < 0 || v < 0 || u >= vertex_count() || v >= vertex_count())
        throw input_error("vertex out of range");
    while (u != v && u != root_) u = parent_[u];
    return u == v;
}

TreeStats RootedTree::stats() const {
    TreeStats s;
    s.depth = stats_depth_;
    s.height = stats_depth_ + 1;
    for (int v : preorder_) {
        if (is_leaf(v)) s.leaves.push_back(v);
        if (is_branching(v)) {
            s.branching.push_back(v);
            if (v != root_) s.internal_branching.push_back(v);
        }
    }
    return s;
}

std::vector<int> RootedTree::leaves() const {
    std::vector<int> out;
    for (int v : preorder_)
        if (is_leaf(v)) out.push_back(v);
    return out;
}

std::uint64_t RootedTree::root_path_edge_mask(int v) const {
    std::uint64_t mask = 0;
    while (v != root_) {
        mask |= std::uint64_t{1} << v;
        v = parent_[v];
    }
    return mask;
}

std::uint64_t RootedTree::upward_closure_edge_mask(std::uint64_t vertex_mask) const {
    if (vertex_mask == 0) throw input_error("upward closure of the empty vertex set is not defined");
    std::uint64_t mask = 0;
    for (std::uint64_t rest = vertex_mask; rest != 0; rest &= rest - 1)
        mask |= root_path_edge_mask(std::countr_zero(rest));
    return mask;
}

ElementSet RootedTree::upward_closure_edges(const ElementSet& vertices) const {
    if (vertices.universe() != vertex_count())
        throw input_error("vertex set over the wrong tree");
    return ElementSet::from_mask(vertex_count(), upward_closure_edge_mask(vertices.mask()));
}

int RootedTree::nearest_branching_or_root_ancestor(int v) const {
    if (v == root_) throw input_error("the root has no proper ancestor");
    int u = parent_[v];
    while (u != root_ && !is_branching(u)) u = parent_[u];
    return u;
}

std::uint64_t RootedTree::path_to_branching_edge_mask(int v) const {
    int top = nearest_branching_or_root_ancestor(v);
    std::uint64_t mask = 0;
    for (int u = v; u != top; u = parent_[u]) mask |= std::uint64_t{1} << u;
    return mask;
}

std::vector<int> RootedTree::max_branching_or_leaf_descendants(int v) const {
    std::vector<int> out;
    for (int c : children_.at(v)) {
        while (children_[c].size() == 1) c = children_[c].front();
        out.push_back(c);
    }
    return out;
}

std::uint64_t RootedTree::subtree_vertex_mask(int v) const {
    std::uint64_t mask = std::uint64_t{1} << v;
    for (int c : children_.at(v)) mask |= subtree_vertex_mask(c);
    return mask;
}

std::uint64_t RootedTree::subtree_edge_mask(int v) const {
    return subtree_vertex_mask(v) & ~(std::uint64_t{1} << v);
}

std::string RootedTree::subtree_code(int v) const {
    std::vector<std::string> parts;
    for (int c : children_.at(v)) parts.push_back(subtree_code(c));
    std::sort(parts.begin(), parts.end());
    std::string out = "(";
    for (const std::string& p : parts) out += p;
    return out + ")";
}

std::vector<std::vector<int>> RootedTree::leaf_orbits() const {
    // Two vertices share an orbit of the automorphism group iff their parents
    // share one and their subtree shapes match.
    std::vector<int> orbit(vertex_count(), -1);
    std::map<std::pair<int, std::string>, int> ids;
    orbit[root_] = 0;
    int next = 1;
    for (int v : preorder_) {
        if (v == root_) continue;
        auto key = std::make_pair(orbit[parent_[v]], subtree_code(v));
        auto [it, inserted] = ids.emplace(key, next);
        if (inserted) ++next;
        orbit[v] = it->second;
    }
    std::map<int, std::vector<int>> groups;
    for (int v : preorder_)
        if (is_leaf(v)) groups[orbit[v]].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& [id, vs] : groups) out.push_back(std::move(vs));
    return out;
}

std::string RootedTree::to_dot() const {
    std::ostringstream out;
    out << "digraph tree {\n";
    for (int v : preorder_) out << "  v" << v << " [label=\"" << v << "\"];\n";
    for (int v : preorder_)
        if (v != root_) out << "  v" << parent_[v] << " -> v" << v << " [label=\"e" << v << "\"];\n";
    out << "}\n";
    return out.str();
}

namespace {

// Relabels vertices so that the tree is in canonical preorder: children are
// visited in descending subtree-code order, which makes equal shapes produce
// equal parent arrays.
RootedTree canonical_form(const RootedTree& t) {
    std::vector<std::string> codes(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) codes[v] = t.subtree_code(v);
    std::vector<int> new_of_old(t.vertex_count(), -1);
    std::vector<int> parent_out;
    parent_out.reserve(t.vertex_count());
    int next = 0;
    auto assign = [&](auto&& self, int v) -> void {
        new_of_old[v] = next++;
        parent_out.push_back(v == t.root() ? -1 : new_of_old[t.parent(v)]);
        std::vector<int> ch = t.children(v);
        std::sort(ch.begin(), ch.end(),
                  [&](int a, int b) { return codes[a] > codes[b]; });
        for (int c : ch) self(self, c);
    };
    assign(assign, t.root());
    return RootedTree(std::move(parent_out), 0);
}

}  // namespace

std::vector<RootedTree> enumerate_rooted_trees(int edges) {
    if (edges < 0 || edges > 15)
        throw resource_error("rooted-tree enumeration supports 0..15 edges, got " + std::to_string(edges));
    std::vector<RootedTree> out;
    std::map<std::string, std::size_t> seen;
    std::vector<int> parent(edges + 1, -1);
    auto rec = [&](auto&& self, int v) -> void {
        if (v == edges + 1) {
            RootedTree t = canonical_form(RootedTree(parent, 0));
            if (seen.emplace(t.canonical_code(), out.size()).second) out.push_back(std::move(t));
            return;
        }
        for (int p = 0; p < v; ++p) {
            parent[v] = p;
            self(self, v + 1);
        }
        parent[v] = -1;
    };
    rec(rec, 1);
    std::sort(out.begin(), out.end(), [](const RootedTree& a, const RootedTree& b) {
        if (a.depth() != b.depth()) return a.depth() < b.depth();
        return a.canonical_code() < b.canonical_code();
    });
    return out;
}

}  // namespace mdepth
