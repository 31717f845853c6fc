#include "mdepth/depth.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <unordered_map>
#include <vector>

#include "mdepth/mask_ops.hpp"

namespace mdepth {
namespace {

std::uint64_t full_mask(int n) {
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

struct MinorKey {
    std::uint64_t contracted;
    std::uint64_t removed;
    bool operator==(const MinorKey&) const = default;
};

struct MinorKeyHash {
    std::size_t operator()(const MinorKey& k) const {
        std::uint64_t h = k.contracted * 0x9e3779b97f4a7c15ULL;
        h ^= k.removed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};

// One depth computation anchored at a root matroid.  Minors are tracked as
// (contract, delete) masks over the root ground set; ranks of root subsets
// are cached so that every minor rank is two table lookups.
class DepthEngine {
  public:
    DepthEngine(const Matroid& root, DepthKind kind, const Caps& caps, bool use_memo)
        : root_(root), rank_(root), kind_(kind), caps_(caps), use_memo_(use_memo) {}

    DepthResult run() {
        DepthResult result;
        result.value = value(0, 0);
        std::uint64_t ground = full_mask(root_.size());
        if (std::popcount(ground) >= 2 && is_connected(0, ground)) {
            int best = result.value - 1;
            for (std::uint64_t rest = ground; rest != 0; rest &= rest - 1) {
                std::uint64_t bit = rest & -rest;
                bool contracts = kind_ == DepthKind::contraction || kind_ == DepthKind::altered_contraction;
                int sub = contracts ? value(bit, 0) : value(0, bit);
                if (sub == best) {
                    result.chosen_element = std::countr_zero(bit);
                    break;
                }
            }
        }
        return result;
    }

  private:
    int minor_rank(std::uint64_t contracted, std::uint64_t subset) {
        return rank_(subset | contracted) - rank_(contracted);
    }

    bool is_connected(std::uint64_t contracted, std::uint64_t ground) {
        auto rank = [&](std::uint64_t m) { return minor_rank(contracted, m); };
        return component_masks(ground, rank, caps_.subset_enumeration).size() == 1;
    }

    int singleton_value(std::uint64_t contracted, std::uint64_t bit) {
        bool loop = minor_rank(contracted, bit) == 0;
        switch (kind_) {
            case DepthKind::contraction:
            case DepthKind::deletion:
                return 1;
            case DepthKind::altered_contraction:
                return loop ? 0 : 1;
            case DepthKind::altered_deletion:
                return loop ? 1 : 0;
        }
        return 0;
    }

    int value(std::uint64_t contracted, std::uint64_t removed) {
        MinorKey key{contracted, removed};
        if (use_memo_) {
            auto it = memo_.find(key);
            if (it != memo_.end()) return it->second;
        }
        int result = compute(contracted, removed);
        if (use_memo_) memo_.emplace(key, result);
        return result;
    }

    int compute(std::uint64_t contracted, std::uint64_t removed) {
        std::uint64_t ground = full_mask(root_.size()) & ~contracted & ~removed;
        if (ground == 0) return 0;

        // Loops and coloops are always singleton components; peel them off
        // before enumerating circuits of what remains.
        int full = minor_rank(contracted, ground);
        int peeled = 0;
        std::uint64_t rest = ground;
        for (std::uint64_t scan = ground; scan != 0; scan &= scan - 1) {
            std::uint64_t bit = scan & -scan;
            bool loop = minor_rank(contracted, bit) == 0;
            bool coloop = !loop && minor_rank(contracted, ground & ~bit) == full - 1;
            if (loop || coloop) {
                peeled = std::max(peeled, singleton_value(contracted, bit));
                rest &= ~bit;
            }
        }
        if (rest == 0) return peeled;

        auto rank = [&](std::uint64_t m) { return minor_rank(contracted, m); };
        std::vector<std::uint64_t> blocks = component_masks(rest, rank, caps_.subset_enumeration);
        if (blocks.size() > 1 || peeled > 0) {
            int best = peeled;
            for (std::uint64_t block : blocks)
                best = std::max(best, value(contracted, removed | (ground & ~block)));
            return best;
        }

        // Connected with at least two elements.
        bool contracts = kind_ == DepthKind::contraction || kind_ == DepthKind::altered_contraction;
        int best = -1;
        for (std::uint64_t scan = rest; scan != 0; scan &= scan - 1) {
            std::uint64_t bit = scan & -scan;
            int sub = contracts ? value(contracted | bit, removed) : value(contracted, removed | bit);
            if (best < 0 || sub < best) best = sub;
        }
        return 1 + best;
    }

    Matroid root_;
    MaskRankCache rank_;
    DepthKind kind_;
    Caps caps_;
    bool use_memo_;
    std::unordered_map<MinorKey, int, MinorKeyHash> memo_;
};

}  // namespace

DepthResult depth_detail(const Matroid& m, DepthKind kind, const Caps& caps, bool use_memo) {
    return DepthEngine(m, kind, caps, use_memo).run();
}

int contraction_depth(const Matroid& m, const Caps& caps) {
    return depth_detail(m, DepthKind::contraction, caps).value;
}

int deletion_depth(const Matroid& m, const Caps& caps) {
    return depth_detail(m, DepthKind::deletion, caps).value;
}

int altered_contraction_depth(const Matroid& m, const Caps& caps) {
    return depth_detail(m, DepthKind::altered_contraction, caps).value;
}

int altered_deletion_depth(const Matroid& m, const Caps& caps) {
    return depth_detail(m, DepthKind::altered_deletion, caps).value;
}

namespace {

std::vector<std::uint64_t> gf2_basis(const std::vector<std::uint64_t>& cols) {
    std::uint64_t basis[64] = {0};
    std::vector<std::uint64_t> out;
    for (std::uint64_t col : cols) {
        std::uint64_t x = col;
        while (x != 0) {
            int lead = 63 - std::countl_zero(x);
            if (basis[lead] == 0) {
                basis[lead] = x;
                out.push_back(x);
                break;
            }
            x ^= basis[lead];
        }
    }
    return out;
}

class QuotientEngine {
  public:
    QuotientEngine(int rows, const Caps& caps) : rows_(rows), caps_(caps) {}

    int run(std::vector<std::uint64_t> cols) {
        if (cols.empty()) return 0;
        std::vector<std::uint64_t> key = cols;
        std::sort(key.begin(), key.end());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        int result;
        if (cols.size() == 1) {
            result = cols.front() == 0 ? 0 : 1;
        } else {
            Matroid m = Matroid::gf2(rows_, cols);
            ComponentPartition parts = m.components(caps_.subset_enumeration);
            if (parts.blocks.size() > 1) {
                result = 0;
                for (const ElementSet& block : parts.blocks) {
                    std::vector<std::uint64_t> sub;
                    for (int e : block) sub.push_back(cols[e]);
                    result = std::max(result, run(std::move(sub)));
                }
            } else {
                // Connected: contract each one-dimensional subspace of the
                // span, i.e. each nonzero vector it contains.
                std::vector<std::uint64_t> basis = gf2_basis(cols);
                int best = -1;
                for (std::uint64_t combo = 1; combo < (std::uint64_t{1} << basis.size()); ++combo) {
                    std::uint64_t g = 0;
                    for (std::size_t i = 0; i < basis.size(); ++i)
                        if ((combo >> i) & 1) g ^= basis[i];
                    int pivot = std::countr_zero(g);
                    std::vector<std::uint64_t> projected;
                    projected.reserve(cols.size());
                    for (std::uint64_t c : cols) projected.push_back(((c >> pivot) & 1) ? c ^ g : c);
                    int sub = run(std::move(projected));
                    if (best < 0 || sub < best) best = sub;
                }
                result = 1 + best;
            }
        }
        memo_.emplace(std::move(key), result);
        return result;
    }

  private:
    int rows_;
    Caps caps_;
    std::map<std::vector<std::uint64_t>, int> memo_;
};

}  // namespace

int csd_gf2_quotient(const Matroid& m, const Caps& caps) {
    const Gf2Columns* data = m.gf2_columns();
    if (data == nullptr)
        throw input_error("quotient-space recursion needs a gf2 backend, got " + m.describe());
    if (gf2_basis(data->cols).size() > 6)
        throw resource_error("quotient-space recursion capped at dimension 6");
    return QuotientEngine(data->rows, caps).run(data->cols);
}

}  // namespace mdepth
