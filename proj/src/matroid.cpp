#include "mdepth/matroid.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "mdepth/mask_ops.hpp"

namespace mdepth {

int ComponentPartition::block_of(int element) const {
    for (std::size_t i = 0; i < blocks.size(); ++i)
        if (blocks[i].contains(element)) return static_cast<int>(i);
    throw input_error("element " + std::to_string(element) + " is in no component block");
}

namespace detail {
namespace {

std::uint64_t full_mask(int n) {
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

class UniformImpl final : public MatroidImpl {
  public:
    UniformImpl(int n, int r) : n_(n), r_(r) {
        if (n < 0 || r < 0 || r > n)
            throw input_error("uniform matroid needs 0 <= r <= n, got n=" + std::to_string(n) +
                              " r=" + std::to_string(r));
    }
    int size() const override { return n_; }
    int rank_mask(std::uint64_t mask) const override { return std::min(std::popcount(mask), r_); }
    MatroidKind kind() const override { return MatroidKind::uniform; }

  private:
    int n_;
    int r_;
};

class GraphicImpl final : public MatroidImpl {
  public:
    GraphicImpl(int vertices, std::vector<std::pair<int, int>> edges)
        : data_{vertices, std::move(edges)} {
        if (vertices < 0) throw input_error("graphic matroid needs a non-negative vertex count");
        if (data_.edges.size() > 64) throw input_error("graphic matroid limited to 64 edges");
        for (auto [u, v] : data_.edges)
            if (u < 0 || v < 0 || u >= vertices || v >= vertices)
                throw input_error("graphic matroid edge endpoint out of range");
    }

    int size() const override { return static_cast<int>(data_.edges.size()); }

    // Rank of an edge subset = number of union-find merges it performs.
    int rank_mask(std::uint64_t mask) const override {
        std::vector<int> uf(data_.vertices);
        std::iota(uf.begin(), uf.end(), 0);
        auto find = [&](int x) {
            while (uf[x] != x) x = uf[x] = uf[uf[x]];
            return x;
        };
        int rank = 0;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
            auto [u, v] = data_.edges[std::countr_zero(rest)];
            int ru = find(u), rv = find(v);
            if (ru != rv) {
                uf[ru] = rv;
                ++rank;
            }
        }
        return rank;
    }

    MatroidKind kind() const override { return MatroidKind::graphic; }
    const GraphicData& data() const { return data_; }

  private:
    GraphicData data_;
};

class Gf2Impl final : public MatroidImpl {
  public:
    Gf2Impl(int rows, std::vector<std::uint64_t> columns) : data_{rows, std::move(columns)} {
        if (rows < 0 || rows > 64) throw input_error("gf2 matroid needs 0 <= rows <= 64");
        if (data_.cols.size() > 64) throw input_error("gf2 matroid limited to 64 columns");
        for (std::uint64_t col : data_.cols)
            if (rows < 64 && (col >> rows) != 0)
                throw input_error("gf2 column has bits beyond the row count");
    }

    int size() const override { return static_cast<int>(data_.cols.size()); }

    int rank_mask(std::uint64_t mask) const override {
        std::uint64_t basis[64] = {0};
        int rank = 0;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
            std::uint64_t x = data_.cols[std::countr_zero(rest)];
            while (x != 0) {
                int lead = 63 - std::countl_zero(x);
                if (basis[lead] == 0) {
                    basis[lead] = x;
                    ++rank;
                    break;
                }
                x ^= basis[lead];
            }
        }
        return rank;
    }

    MatroidKind kind() const override { return MatroidKind::gf2; }
    const Gf2Columns& data() const { return data_; }

  private:
    Gf2Columns data_;
};

class ExplicitImpl final : public MatroidImpl {
  public:
    ExplicitImpl(int n, std::vector<std::uint64_t> bases) : n_(n), bases_(std::move(bases)) {
        if (n < 0 || n > 64) throw input_error("explicit matroid needs 0 <= n <= 64");
        if (bases_.empty()) throw input_error("explicit matroid needs at least one basis");
        int cardinality = std::popcount(bases_.front());
        for (std::uint64_t b : bases_) {
            if ((b & ~full_mask(n_)) != 0) throw input_error("basis element out of range");
            if (std::popcount(b) != cardinality)
                throw input_error("explicit matroid bases must share one cardinality");
        }
    }

    int size() const override { return n_; }

    int rank_mask(std::uint64_t mask) const override {
        int best = 0;
        for (std::uint64_t b : bases_) best = std::max(best, std::popcount(mask & b));
        return best;
    }

    MatroidKind kind() const override { return MatroidKind::explicit_bases; }

  private:
    int n_;
    std::vector<std::uint64_t> bases_;
};

class MinorImpl final : public MatroidImpl {
  public:
    MinorImpl(Matroid parent, std::uint64_t contract, std::uint64_t removed)
        : parent_(std::move(parent)), contract_(contract) {
        std::uint64_t keep = full_mask(parent_.size()) & ~(contract | removed);
        for (std::uint64_t rest = keep; rest != 0; rest &= rest - 1)
            parent_of_local_.push_back(std::countr_zero(rest));
        contract_rank_ = parent_.rank_mask(contract_);
    }

    int size() const override { return static_cast<int>(parent_of_local_.size()); }

    int rank_mask(std::uint64_t mask) const override {
        return parent_.rank_mask(to_parent_mask(mask) | contract_) - contract_rank_;
    }

    MatroidKind kind() const override { return MatroidKind::minor; }

    const Matroid& parent() const { return parent_; }
    int parent_index_of(int local) const { return parent_of_local_.at(local); }

    std::uint64_t to_parent_mask(std::uint64_t mask) const {
        std::uint64_t out = 0;
        for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1)
            out |= std::uint64_t{1} << parent_of_local_[std::countr_zero(rest)];
        return out;
    }

  private:
    Matroid parent_;
    std::uint64_t contract_;
    int contract_rank_;
    std::vector<int> parent_of_local_;
};

class DualImpl final : public MatroidImpl {
  public:
    explicit DualImpl(Matroid parent) : parent_(std::move(parent)) {
        parent_rank_ = parent_.rank_mask(full_mask(parent_.size()));
    }

    int size() const override { return parent_.size(); }

    // rank*(X) = rank(complement of X) + |X| - rank(M)
    int rank_mask(std::uint64_t mask) const override {
        std::uint64_t co = full_mask(size()) & ~mask;
        return parent_.rank_mask(co) + std::popcount(mask) - parent_rank_;
    }

    MatroidKind kind() const override { return MatroidKind::dual; }
    const Matroid& parent() const { return parent_; }

  private:
    Matroid parent_;
    int parent_rank_;
};

}  // namespace
}  // namespace detail

Matroid::Matroid(std::shared_ptr<const detail::MatroidImpl> impl) : impl_(std::move(impl)) {
    full_rank_ = impl_->rank_mask(detail::full_mask(impl_->size()));
}

Matroid Matroid::uniform(int n, int r) {
    return Matroid(std::make_shared<detail::UniformImpl>(n, r));
}

Matroid Matroid::graphic(int vertices, std::vector<std::pair<int, int>> edges) {
    return Matroid(std::make_shared<detail::GraphicImpl>(vertices, std::move(edges)));
}

Matroid Matroid::gf2(int rows, std::vector<std::uint64_t> columns) {
    return Matroid(std::make_shared<detail::Gf2Impl>(rows, std::move(columns)));
}

Matroid Matroid::from_basis_masks(int n, std::vector<std::uint64_t> bases) {
    return Matroid(std::make_shared<detail::ExplicitImpl>(n, std::move(bases)));
}

Matroid Matroid::from_bases(int n, const std::vector<ElementSet>& bases) {
    std::vector<std::uint64_t> masks;
    masks.reserve(bases.size());
    for (const ElementSet& b : bases) {
        if (b.universe() != n) throw input_error("basis over the wrong ground set");
        masks.push_back(b.mask());
    }
    return from_basis_masks(n, std::move(masks));
}

int Matroid::rank(const ElementSet& set) const {
    if (set.universe() != size())
        throw input_error("rank query with a set over ground set of size " +
                          std::to_string(set.universe()) + ", matroid has " + std::to_string(size()));
    return impl_->rank_mask(set.mask());
}

int Matroid::rank_mask(std::uint64_t mask) const {
    if ((mask & ~detail::full_mask(size())) != 0)
        throw input_error("rank query mask has elements outside the ground set");
    return impl_->rank_mask(mask);
}

bool Matroid::is_independent_mask(std::uint64_t mask) const {
    return rank_mask(mask) == std::popcount(mask);
}

ElementClass Matroid::classify(int element) const {
    if (element < 0 || element >= size())
        throw input_error("element " + std::to_string(element) + " out of range");
    std::uint64_t bit = std::uint64_t{1} << element;
    if (impl_->rank_mask(bit) == 0) return ElementClass::loop;
    if (impl_->rank_mask(detail::full_mask(size()) & ~bit) == full_rank_ - 1) return ElementClass::coloop;
    return ElementClass::ordinary;
}

std::vector<ElementSet> Matroid::circuits(int cap) const {
    auto rank = [this](std::uint64_t m) { return impl_->rank_mask(m); };
    std::vector<std::uint64_t> masks = circuit_masks(detail::full_mask(size()), rank, cap);
    std::vector<ElementSet> out;
    out.reserve(masks.size());
    for (std::uint64_t m : masks) out.push_back(ElementSet::from_mask(size(), m));
    std::sort(out.begin(), out.end(), ElementSet::size_lex_less);
    return out;
}

ComponentPartition Matroid::components(int cap) const {
    auto rank = [this](std::uint64_t m) { return impl_->rank_mask(m); };
    std::vector<std::uint64_t> blocks = component_masks(detail::full_mask(size()), rank, cap);
    ComponentPartition part;
    for (std::uint64_t b : blocks) {
        part.blocks.push_back(ElementSet::from_mask(size(), b));
        part.trivial.push_back(std::popcount(b) == 1 && impl_->rank_mask(b) == 0);
    }
    return part;
}

Matroid Matroid::dual() const {
    return Matroid(std::make_shared<detail::DualImpl>(*this));
}

Matroid Matroid::minor(const ElementSet& contract, const ElementSet& remove) const {
    if (contract.universe() != size() || remove.universe() != size())
        throw input_error("minor sets over the wrong ground set");
    if (!(contract & remove).empty())
        throw input_error("contract and delete sets overlap: " + (contract & remove).to_string());
    return Matroid(std::make_shared<detail::MinorImpl>(*this, contract.mask(), remove.mask()));
}

Matroid Matroid::contract(int element) const {
    ElementSet c(size());
    c.insert(element);
    return minor(c, ElementSet(size()));
}

Matroid Matroid::remove(int element) const {
    ElementSet d(size());
    d.insert(element);
    return minor(ElementSet(size()), d);
}

bool Matroid::is_view() const {
    return kind() == MatroidKind::minor || kind() == MatroidKind::dual;
}

Matroid Matroid::parent() const {
    if (kind() == MatroidKind::minor)
        return static_cast<const detail::MinorImpl&>(*impl_).parent();
    if (kind() == MatroidKind::dual)
        return static_cast<const detail::DualImpl&>(*impl_).parent();
    throw input_error("parent() called on a base matroid");
}

int Matroid::parent_index_of(int local) const {
    if (local < 0 || local >= size()) throw input_error("view index out of range");
    if (kind() == MatroidKind::minor)
        return static_cast<const detail::MinorImpl&>(*impl_).parent_index_of(local);
    if (kind() == MatroidKind::dual) return local;
    throw input_error("parent_index_of() called on a base matroid");
}

ElementSet Matroid::to_parent(const ElementSet& local) const {
    if (local.universe() != size()) throw input_error("view set over the wrong ground set");
    ElementSet out(parent().size());
    for (int e : local) out.insert(parent_index_of(e));
    return out;
}

const Gf2Columns* Matroid::gf2_columns() const {
    if (kind() != MatroidKind::gf2) return nullptr;
    return &static_cast<const detail::Gf2Impl&>(*impl_).data();
}

const GraphicData* Matroid::graphic_data() const {
    if (kind() != MatroidKind::graphic) return nullptr;
    return &static_cast<const detail::GraphicImpl&>(*impl_).data();
}

std::vector<ElementSet> Matroid::bases(int cap) const {
    if (size() > cap)
        throw resource_error("basis enumeration over " + std::to_string(size()) +
                             " elements exceeds the cap of " + std::to_string(cap));
    std::vector<ElementSet> out;
    for_each_submask(detail::full_mask(size()), [&](std::uint64_t sub) {
        if (std::popcount(sub) == full_rank_ && impl_->rank_mask(sub) == full_rank_)
            out.push_back(ElementSet::from_mask(size(), sub));
    });
    std::sort(out.begin(), out.end(), ElementSet::size_lex_less);
    return out;
}

std::string Matroid::describe() const {
    switch (kind()) {
        case MatroidKind::uniform:
            return "uniform(" + std::to_string(size()) + "," + std::to_string(rank()) + ")";
        case MatroidKind::graphic:
            return "graphic(" + std::to_string(graphic_data()->vertices) + " vertices, " +
                   std::to_string(size()) + " edges)";
        case MatroidKind::gf2:
            return "gf2(" + std::to_string(gf2_columns()->rows) + " rows, " + std::to_string(size()) +
                   " cols)";
        case MatroidKind::explicit_bases:
            return "explicit(" + std::to_string(size()) + " elements)";
        case MatroidKind::minor:
            return "minor of " + parent().describe();
        case MatroidKind::dual:
            return "dual of " + parent().describe();
        case MatroidKind::tamed_extension:
            return "tamed extension (" + std::to_string(size()) + " elements)";
    }
    return "matroid";
}

Matroid direct_sum(const Matroid& a, const Matroid& b) {
    int n = a.size() + b.size();
    std::vector<std::uint64_t> bases;
    for (const ElementSet& ba : a.bases())
        for (const ElementSet& bb : b.bases())
            bases.push_back(ba.mask() | (bb.mask() << a.size()));
    return Matroid::from_basis_masks(n, std::move(bases));
}

}  // namespace mdepth
