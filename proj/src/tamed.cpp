#include "mdepth/tamed.hpp"

#include <algorithm>
#include <bit>

namespace mdepth {

TamedContext::TamedContext(Matroid m, StarDecomposition d, TamedOptions options)
    : base_(std::move(m)), decomp_(std::move(d)), options_(options), base_rank_(base_) {
    if (!is_valid(base_, decomp_))
        throw input_error("tamed construction requires a valid decomposition");

    const RootedTree& tree = decomp_.tree;
    int vertices = tree.vertex_count();
    edge_element_of_vertex_.assign(vertices, -1);
    for (int v = 0; v < vertices; ++v) {
        if (v == tree.root()) continue;
        edge_element_of_vertex_[v] = base_size() + static_cast<int>(edge_vertices_.size());
        edge_vertices_.push_back(v);
    }

    path_mask_.assign(vertices, 0);
    under_mask_.assign(vertices, 0);
    complement_rank_.assign(vertices, 0);
    child_reps_.assign(vertices, {});
    std::uint64_t all = base_size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << base_size()) - 1;
    for (int v = 0; v < vertices; ++v) {
        // The root receives no tokens even when it is a leaf (rank-0 case).
        if (v == tree.root() || (!tree.is_leaf(v) && !tree.is_internal_branching(v))) continue;
        token_vertices_.push_back(v);
        path_mask_[v] = tree.path_to_branching_edge_mask(v);
        under_mask_[v] = elements_under(decomp_, v).mask();
        complement_rank_[v] = base_.rank_mask(all & ~under_mask_[v]);
        if (tree.is_internal_branching(v)) child_reps_[v] = tree.max_branching_or_leaf_descendants(v);
    }
}

int TamedContext::edge_element_of_vertex(int bottom_vertex) const {
    int id = edge_element_of_vertex_.at(bottom_vertex);
    if (id < 0) throw input_error("the root names no edge");
    return id;
}

int TamedContext::bottom_vertex_of(int edge_element) const {
    int i = edge_element - base_size();
    if (i < 0 || i >= edge_count()) throw input_error("not an edge element index");
    return edge_vertices_[i];
}

ExtendedSet TamedContext::split(std::uint64_t combined_mask) const {
    ExtendedSet x{ElementSet(base_size()), ElementSet(decomp_.tree.vertex_count())};
    std::uint64_t matroid_bits =
        combined_mask & ((base_size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << base_size()) - 1));
    x.matroid_part = ElementSet::from_mask(base_size(), matroid_bits);
    for (int i = 0; i < edge_count(); ++i)
        if ((combined_mask >> (base_size() + i)) & 1) x.edge_part.insert(edge_vertices_[i]);
    return x;
}

std::uint64_t TamedContext::combine(const ExtendedSet& x) const {
    if (x.matroid_part.universe() != base_size() ||
        x.edge_part.universe() != decomp_.tree.vertex_count())
        throw input_error("extended set over the wrong ground sets");
    std::uint64_t mask = x.matroid_part.mask();
    for (int v : x.edge_part) mask |= std::uint64_t{1} << edge_element_of_vertex(v);
    return mask;
}

int TamedContext::rank_in_complement_contraction(int vertex, std::uint64_t matroid_mask) const {
    std::uint64_t all = base_size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << base_size()) - 1;
    std::uint64_t complement = all & ~under_mask_[vertex];
    ++rank_calls_;
    return base_rank_((matroid_mask & under_mask_[vertex]) | complement) - complement_rank_[vertex];
}

std::vector<int> TamedContext::token_assignment(const ExtendedSet& x) const {
    if (x.matroid_part.universe() != base_size() ||
        x.edge_part.universe() != decomp_.tree.vertex_count())
        throw input_error("extended set over the wrong ground sets");
    std::uint64_t edge_bits = x.edge_part.mask();
    std::uint64_t matroid_bits = x.matroid_part.mask();

    std::vector<int> assigned(decomp_.tree.vertex_count(), 0);
    std::vector<int> rank_term(decomp_.tree.vertex_count(), 0);
    for (int v : token_vertices_) rank_term[v] = rank_in_complement_contraction(v, matroid_bits);
    for (int v : token_vertices_) {
        int tokens = std::popcount(edge_bits & path_mask_[v]) + rank_term[v];
        if (options_.branch_subtraction)
            for (int rep : child_reps_[v]) tokens -= rank_term[rep];
        assigned[v] = tokens;
    }
    return assigned;
}

TokenLedger TamedContext::distribute(const std::vector<int>& assigned) const {
    const RootedTree& tree = decomp_.tree;
    if (assigned.size() != static_cast<std::size_t>(tree.vertex_count()))
        throw input_error("token vector has the wrong length");
    TokenLedger ledger;
    ledger.assigned = assigned;
    ledger.kept.assign(tree.vertex_count(), 0);
    std::vector<int> carry = assigned;
    for (int v : tree.postorder()) {
        if (v == tree.root()) continue;
        int kept = options_.keep_one ? std::min(carry[v], 1) : 0;
        ledger.kept[v] = kept;
        carry[tree.parent(v)] += carry[v] - kept;
    }
    ledger.root_surplus = carry[tree.root()];
    return ledger;
}

TokenLedger TamedContext::distribute_marking(const std::vector<int>& assigned,
                                             std::mt19937_64& rng) const {
    const RootedTree& tree = decomp_.tree;
    if (assigned.size() != static_cast<std::size_t>(tree.vertex_count()))
        throw input_error("token vector has the wrong length");
    TokenLedger ledger;
    ledger.assigned = assigned;
    ledger.kept.assign(tree.vertex_count(), 0);
    std::vector<int> held = assigned;
    std::vector<bool> marked(tree.vertex_count(), false);
    std::vector<int> unmarked_descendants(tree.vertex_count(), 0);
    for (int v = 0; v < tree.vertex_count(); ++v)
        for (int a = v; a != tree.root();) {
            a = tree.parent(a);
            ++unmarked_descendants[a];
        }
    while (true) {
        std::vector<int> eligible;
        for (int v = 0; v < tree.vertex_count(); ++v)
            if (v != tree.root() && !marked[v] && unmarked_descendants[v] == 0) eligible.push_back(v);
        if (eligible.empty()) break;
        int v = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)];
        int k = held[v];
        int kept = options_.keep_one ? std::min(k, 1) : 0;
        ledger.kept[v] = kept;
        held[tree.parent(v)] += k - kept;
        held[v] = kept;
        marked[v] = true;
        for (int a = v; a != tree.root();) {
            a = tree.parent(a);
            --unmarked_descendants[a];
        }
    }
    ledger.root_surplus = held[tree.root()];
    return ledger;
}

TokenLedger TamedContext::ledger(const ExtendedSet& x) const {
    return distribute(token_assignment(x));
}

bool TamedContext::is_tamed(const ExtendedSet& x) const {
    if (options_.require_independent) {
        ++rank_calls_;
        if (base_rank_(x.matroid_part.mask()) != x.matroid_part.count()) return false;
    }
    return ledger(x).root_surplus == 0;
}

bool TamedContext::is_tamed_mask(std::uint64_t combined_mask) const {
    return is_tamed(split(combined_mask));
}

namespace {

class TamedExtensionImpl final : public detail::MatroidImpl {
  public:
    TamedExtensionImpl(const TamedContext& context) : n_(context.combined_size()) {
        std::size_t total = std::size_t{1} << n_;
        rank_.assign(total, 0);
        std::vector<bool> tamed(total, false);
        for (std::uint64_t mask = 0; mask < total; ++mask) tamed[mask] = context.is_tamed_mask(mask);
        // Greedy augmentation in ascending combined index; exact because the
        // tamed sets form a matroid.
        for (std::uint64_t mask = 1; mask < total; ++mask) {
            std::uint64_t grown = 0;
            for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
                std::uint64_t bit = rest & -rest;
                if (tamed[grown | bit]) grown |= bit;
            }
            rank_[mask] = static_cast<std::int8_t>(std::popcount(grown));
        }
    }

    int size() const override { return n_; }
    int rank_mask(std::uint64_t mask) const override { return rank_[mask]; }
    MatroidKind kind() const override { return MatroidKind::tamed_extension; }

  private:
    int n_;
    std::vector<std::int8_t> rank_;
};

}  // namespace

TamedExtension build_extension(const Matroid& m, const StarDecomposition& d, TamedOptions options,
                               const Caps& caps) {
    TamedContext context(m, d, options);
    if (context.combined_size() > caps.extension_size)
        throw resource_error("extension over " + std::to_string(context.combined_size()) +
                             " elements exceeds the cap of " + std::to_string(caps.extension_size));
    Matroid extension{std::make_shared<TamedExtensionImpl>(context)};
    return TamedExtension{m, d, std::move(extension)};
}

}  // namespace mdepth
