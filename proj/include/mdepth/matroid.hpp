#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mdepth/common.hpp"
#include "mdepth/element_set.hpp"

namespace mdepth {

enum class ElementClass { loop, coloop, ordinary };

enum class MatroidKind { uniform, graphic, gf2, explicit_bases, minor, dual, tamed_extension };

// Connected components of a matroid: disjoint blocks covering the ground set,
// every circuit inside one block.  A block is trivial iff it is a single loop.
struct ComponentPartition {
    std::vector<ElementSet> blocks;
    std::vector<bool> trivial;

    int block_of(int element) const;
};

struct Gf2Columns {
    int rows = 0;
    std::vector<std::uint64_t> cols;  // bit i = row i
};

struct GraphicData {
    int vertices = 0;
    std::vector<std::pair<int, int>> edges;
};

namespace detail {

// Rank oracle interface over bit masks of the ground set.  Backends are
// immutable after construction; all queries are pure.
class MatroidImpl {
  public:
    virtual ~MatroidImpl() = default;
    virtual int size() const = 0;
    virtual int rank_mask(std::uint64_t mask) const = 0;
    virtual MatroidKind kind() const = 0;
};

}  // namespace detail

// Value-semantic matroid handle: a ground set of dense element ids 0..n-1
// plus a rank oracle.  Minor and dual are lazy views over the parent oracle;
// both carry index maps so callers can translate sets across views.
class Matroid {
  public:
    Matroid() = default;

    static Matroid uniform(int n, int r);
    static Matroid graphic(int vertices, std::vector<std::pair<int, int>> edges);
    static Matroid gf2(int rows, std::vector<std::uint64_t> columns);
    static Matroid from_bases(int n, const std::vector<ElementSet>& bases);
    static Matroid from_basis_masks(int n, std::vector<std::uint64_t> bases);

    // Wraps a custom backend (used by the tamed-extension module).
    explicit Matroid(std::shared_ptr<const detail::MatroidImpl> impl);

    int size() const { return impl_->size(); }
    MatroidKind kind() const { return impl_->kind(); }

    int rank(const ElementSet& set) const;
    int rank_mask(std::uint64_t mask) const;
    int rank() const { return full_rank_; }

    bool is_independent(const ElementSet& set) const { return rank(set) == set.count(); }
    bool is_independent_mask(std::uint64_t mask) const;

    ElementSet ground_set() const { return ElementSet::full(size()); }

    ElementClass classify(int element) const;
    bool is_loop(int element) const { return classify(element) == ElementClass::loop; }
    bool is_coloop(int element) const { return classify(element) == ElementClass::coloop; }

    // All inclusion-wise minimal dependent sets, sorted by (size, low bits
    // first).  Subset enumeration; refuses ground sets beyond the cap.
    std::vector<ElementSet> circuits(int cap = default_caps().subset_enumeration) const;

    // Blocks of the "share a circuit" relation; loops and coloops end up as
    // singleton blocks.
    ComponentPartition components(int cap = default_caps().subset_enumeration) const;

    Matroid dual() const;
    Matroid minor(const ElementSet& contract, const ElementSet& remove) const;
    Matroid contract(const ElementSet& set) const { return minor(set, ElementSet(size())); }
    Matroid contract(int element) const;
    Matroid remove(int element) const;
    Matroid restrict_to(const ElementSet& keep) const { return minor(ElementSet(size()), keep.complement()); }

    // View translation.  For a minor view, local id -> parent id; for a dual
    // view the map is the identity; for base matroids there is no parent.
    bool is_view() const;
    Matroid parent() const;
    int parent_index_of(int local) const;
    ElementSet to_parent(const ElementSet& local) const;

    // Backend construction data, when the backend has it.
    const Gf2Columns* gf2_columns() const;
    const GraphicData* graphic_data() const;

    // Maximal independent sets.  Desk-scale enumeration, guarded by the cap.
    std::vector<ElementSet> bases(int cap = default_caps().subset_enumeration) const;

    std::string describe() const;

  private:
    std::shared_ptr<const detail::MatroidImpl> impl_;
    int full_rank_ = 0;
};

// Direct sum over explicit ground-set blocks: elements of `a` keep their ids,
// elements of `b` are shifted by |a|.
Matroid direct_sum(const Matroid& a, const Matroid& b);

// Memoizes rank-by-mask queries against one matroid.  Not shared across
// threads; computations that need a cache own one locally.
class MaskRankCache {
  public:
    explicit MaskRankCache(Matroid m) : m_(std::move(m)) {
        if (m_.size() <= 20) table_.assign(std::size_t{1} << m_.size(), -1);
    }

    int operator()(std::uint64_t mask) {
        if (!table_.empty()) {
            int& slot = table_[mask];
            if (slot < 0) slot = m_.rank_mask(mask);
            return slot;
        }
        auto [it, inserted] = map_.try_emplace(mask, -1);
        if (inserted) it->second = m_.rank_mask(mask);
        return it->second;
    }

    const Matroid& matroid() const { return m_; }

  private:
    Matroid m_;
    std::vector<int> table_;
    std::unordered_map<std::uint64_t, int> map_;
};

}  // namespace mdepth
