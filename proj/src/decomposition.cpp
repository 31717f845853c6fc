#include "mdepth/decomposition.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace mdepth {
namespace {

void check_shape(const Matroid& m, const StarDecomposition& d) {
    if (d.tree.edge_count() != m.rank())
        throw input_error("decomposition tree has " + std::to_string(d.tree.edge_count()) +
                          " edges, matroid has rank " + std::to_string(m.rank()));
    if (d.ground_size() != m.size())
        throw input_error("decomposition assigns " + std::to_string(d.ground_size()) +
                          " elements, matroid has " + std::to_string(m.size()));
    for (int e = 0; e < m.size(); ++e) {
        int leaf = d.leaf_of[e];
        if (leaf < 0 || leaf >= d.tree.vertex_count() || !d.tree.is_leaf(leaf))
            throw input_error("element " + std::to_string(e) + " is not assigned to a leaf");
    }
}

}  // namespace

bool is_valid(const Matroid& m, const StarDecomposition& d) {
    check_shape(m, d);
    std::vector<int> leaves = d.tree.leaves();
    int k = static_cast<int>(leaves.size());
    std::vector<std::uint64_t> preimage(k, 0);
    for (int e = 0; e < m.size(); ++e) {
        for (int j = 0; j < k; ++j)
            if (leaves[j] == d.leaf_of[e]) preimage[j] |= std::uint64_t{1} << e;
    }
    std::vector<std::uint64_t> leaf_path(k);
    for (int j = 0; j < k; ++j) leaf_path[j] = d.tree.root_path_edge_mask(leaves[j]);

    for (std::uint64_t ls = 1; ls < (std::uint64_t{1} << k); ++ls) {
        std::uint64_t closure = 0;
        std::uint64_t pre = 0;
        for (std::uint64_t rest = ls; rest != 0; rest &= rest - 1) {
            int j = std::countr_zero(rest);
            closure |= leaf_path[j];
            pre |= preimage[j];
        }
        if (m.rank_mask(pre) > std::popcount(closure)) return false;
    }
    return true;
}

ElementSet elements_under(const StarDecomposition& d, int vertex) {
    if (vertex < 0 || vertex >= d.tree.vertex_count()) throw input_error("vertex out of range");
    std::uint64_t subtree = d.tree.subtree_vertex_mask(vertex);
    ElementSet out(d.ground_size());
    for (int e = 0; e < d.ground_size(); ++e)
        if ((subtree >> d.leaf_of[e]) & 1) out.insert(e);
    return out;
}

namespace {

// Depth-first assignment of the non-loop elements of M to leaves of one tree.
// After placing an element on leaf j, every leaf subset containing j must
// still have closure size >= rank of its current preimage; violations can
// only grow, so pruning is exact.
class AssignmentSearch {
  public:
    AssignmentSearch(MaskRankCache& rank, const RootedTree& tree, const std::vector<int>& nonloops)
        : rank_(rank), tree_(tree), nonloops_(nonloops), leaves_(tree.leaves()) {
        int k = static_cast<int>(leaves_.size());
        closure_count_.assign(std::size_t{1} << k, 0);
        std::vector<std::uint64_t> leaf_path(k);
        for (int j = 0; j < k; ++j) leaf_path[j] = tree_.root_path_edge_mask(leaves_[j]);
        for (std::uint64_t ls = 1; ls < (std::uint64_t{1} << k); ++ls) {
            std::uint64_t closure = 0;
            for (std::uint64_t rest = ls; rest != 0; rest &= rest - 1)
                closure |= leaf_path[std::countr_zero(rest)];
            closure_count_[ls] = std::popcount(closure);
        }
        preimage_.assign(k, 0);

        // Symmetric leaves are interchangeable; restrict the first element to
        // one representative per automorphism orbit.
        first_choices_.clear();
        for (const std::vector<int>& orbit : tree_.leaf_orbits()) {
            for (int j = 0; j < k; ++j)
                if (leaves_[j] == orbit.front()) first_choices_.push_back(j);
        }
        std::sort(first_choices_.begin(), first_choices_.end());
    }

    bool run() { return place(0); }

    std::vector<int> leaf_assignment() const {
        std::vector<int> out(nonloops_.size());
        for (std::size_t i = 0; i < nonloops_.size(); ++i) out[i] = leaves_[choice_[i]];
        return out;
    }

    long long placements() const { return placements_; }

  private:
    bool place(std::size_t at) {
        if (at == nonloops_.size()) return true;
        const std::vector<int>& options =
            at == 0 ? first_choices_ : all_choices();
        for (int j : options) {
            ++placements_;
            std::uint64_t bit = std::uint64_t{1} << nonloops_[at];
            preimage_[j] |= bit;
            if (feasible(j)) {
                choice_.push_back(j);
                if (place(at + 1)) return true;
                choice_.pop_back();
            }
            preimage_[j] &= ~bit;
        }
        return false;
    }

    const std::vector<int>& all_choices() {
        if (all_choices_.empty())
            for (int j = 0; j < static_cast<int>(leaves_.size()); ++j) all_choices_.push_back(j);
        return all_choices_;
    }

    bool feasible(int j) {
        int k = static_cast<int>(leaves_.size());
        for (std::uint64_t ls = 1; ls < (std::uint64_t{1} << k); ++ls) {
            if (((ls >> j) & 1) == 0) continue;
            std::uint64_t pre = 0;
            for (std::uint64_t rest = ls; rest != 0; rest &= rest - 1)
                pre |= preimage_[std::countr_zero(rest)];
            if (rank_(pre) > closure_count_[ls]) return false;
        }
        return true;
    }

    MaskRankCache& rank_;
    const RootedTree& tree_;
    const std::vector<int>& nonloops_;
    std::vector<int> leaves_;
    std::vector<int> closure_count_;
    std::vector<std::uint64_t> preimage_;
    std::vector<int> first_choices_;
    std::vector<int> all_choices_;
    std::vector<int> choice_;
    long long placements_ = 0;
};

StarDecomposition assemble(const RootedTree& tree, const std::vector<int>& nonloops,
                           const std::vector<int>& assignment, int ground_size) {
    std::vector<int> leaf_of(ground_size, tree.leaves().front());
    for (std::size_t i = 0; i < nonloops.size(); ++i) leaf_of[nonloops[i]] = assignment[i];
    return StarDecomposition{tree, std::move(leaf_of)};
}

void check_search_caps(const Matroid& m, const Caps& caps) {
    if (m.rank() > caps.search_rank)
        throw resource_error("decomposition search capped at rank " + std::to_string(caps.search_rank) +
                             ", matroid has rank " + std::to_string(m.rank()));
    if (m.size() > caps.search_size)
        throw resource_error("decomposition search capped at " + std::to_string(caps.search_size) +
                             " elements, matroid has " + std::to_string(m.size()));
}

std::vector<int> nonloop_elements(const Matroid& m) {
    std::vector<int> out;
    for (int e = 0; e < m.size(); ++e)
        if (m.rank_mask(std::uint64_t{1} << e) > 0) out.push_back(e);
    return out;
}

}  // namespace

SearchReport csd_search(const Matroid& m, std::optional<int> depth_cap, const Caps& caps) {
    check_search_caps(m, caps);
    SearchReport report;
    if (m.rank() == 0) {
        if (depth_cap && *depth_cap < 0) return report;
        report.found = true;
        report.depth = 0;
        report.decomposition =
            StarDecomposition{RootedTree::single_vertex(), std::vector<int>(m.size(), 0)};
        return report;
    }

    MaskRankCache rank(m);
    std::vector<int> nonloops = nonloop_elements(m);
    for (const RootedTree& tree : enumerate_rooted_trees(m.rank())) {
        if (depth_cap && tree.depth() > *depth_cap) break;  // trees come depth-sorted
        ++report.trees_examined;
        AssignmentSearch search(rank, tree, nonloops);
        bool ok = search.run();
        report.placements_examined += search.placements();
        if (ok) {
            report.found = true;
            report.depth = tree.depth();
            report.decomposition = assemble(tree, nonloops, search.leaf_assignment(), m.size());
            return report;
        }
    }
    return report;
}

int csd(const Matroid& m, const Caps& caps) {
    return csd_search(m, std::nullopt, caps).depth;
}

std::vector<StarDecomposition> first_valid_per_tree(const Matroid& m, const Caps& caps) {
    check_search_caps(m, caps);
    if (m.rank() == 0)
        return {StarDecomposition{RootedTree::single_vertex(), std::vector<int>(m.size(), 0)}};
    MaskRankCache rank(m);
    std::vector<int> nonloops = nonloop_elements(m);
    std::vector<StarDecomposition> out;
    for (const RootedTree& tree : enumerate_rooted_trees(m.rank())) {
        AssignmentSearch search(rank, tree, nonloops);
        if (search.run()) out.push_back(assemble(tree, nonloops, search.leaf_assignment(), m.size()));
    }
    return out;
}

std::string decomposition_to_dot(const StarDecomposition& d) {
    std::ostringstream out;
    out << "digraph decomposition {\n";
    for (int v : d.tree.preorder()) {
        out << "  v" << v << " [label=\"" << v;
        if (d.tree.is_leaf(v)) {
            out << ":";
            for (int e = 0; e < d.ground_size(); ++e)
                if (d.leaf_of[e] == v) out << " " << e;
        }
        out << "\"];\n";
    }
    for (int v : d.tree.preorder())
        if (v != d.tree.root())
            out << "  v" << d.tree.parent(v) << " -> v" << v << " [label=\"e" << v << "\"];\n";
    out << "}\n";
    return out.str();
}

StarDecomposition decomposition_from_dot(const std::string& dot) {
    std::istringstream in(dot);
    std::string line;
    std::vector<std::pair<int, std::vector<int>>> nodes;  // vertex, assigned elements
    std::vector<std::pair<int, int>> edges;               // parent, child
    int max_vertex = -1;
    while (std::getline(in, line)) {
        std::size_t v = line.find('v');
        if (v == std::string::npos) continue;
        if (line.find("->") != std::string::npos) {
            int from = 0, to = 0;
            if (std::sscanf(line.c_str(), " v%d -> v%d", &from, &to) != 2)
                throw input_error("unparseable decomposition edge line: " + line);
            edges.emplace_back(from, to);
            max_vertex = std::max({max_vertex, from, to});
        } else if (line.find("label=") != std::string::npos) {
            int vertex = 0;
            if (std::sscanf(line.c_str(), " v%d [label=", &vertex) != 1)
                throw input_error("unparseable decomposition node line: " + line);
            std::vector<int> elements;
            std::size_t colon = line.find(':');
            if (colon != std::string::npos) {
                std::istringstream rest(line.substr(colon + 1, line.find('"', colon) - colon - 1));
                int e;
                while (rest >> e) elements.push_back(e);
            }
            nodes.emplace_back(vertex, std::move(elements));
            max_vertex = std::max(max_vertex, vertex);
        }
    }
    if (max_vertex < 0) throw input_error("decomposition dot contains no vertices");
    std::vector<int> parent(max_vertex + 1, -1);
    std::vector<bool> is_child(max_vertex + 1, false);
    for (auto [from, to] : edges) {
        parent[to] = from;
        is_child[to] = true;
    }
    int root = -1;
    for (int v = 0; v <= max_vertex; ++v)
        if (!is_child[v]) {
            if (root >= 0) throw input_error("decomposition dot has more than one root");
            root = v;
        }
    RootedTree tree(std::move(parent), root);
    int ground = 0;
    for (const auto& [vertex, elements] : nodes) ground += static_cast<int>(elements.size());
    std::vector<int> leaf_of(ground, -1);
    for (const auto& [vertex, elements] : nodes)
        for (int e : elements) {
            if (e < 0 || e >= ground || leaf_of[e] != -1)
                throw input_error("decomposition dot assigns element " + std::to_string(e) + " twice");
            leaf_of[e] = vertex;
        }
    for (int e = 0; e < ground; ++e)
        if (leaf_of[e] == -1)
            throw input_error("decomposition dot element ids are not dense 0.." + std::to_string(ground - 1));
    return StarDecomposition{std::move(tree), std::move(leaf_of)};
}

}  // namespace mdepth
