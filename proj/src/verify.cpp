#include "mdepth/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>

#include "mdepth/mask_ops.hpp"
#include "mdepth/matroid_io.hpp"

namespace mdepth {
namespace {

std::uint64_t full(int n) {
    return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::string mask_str(std::uint64_t mask) {
    std::string out = "{";
    bool first = true;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
        if (!first) out += ",";
        out += std::to_string(std::countr_zero(rest));
        first = false;
    }
    return out + "}";
}

TheoremReport start(const std::string& check, const std::string& instance) {
    return TheoremReport{check, instance, 0, true, std::nullopt};
}

void record_failure(TheoremReport& report, const Matroid& m, const std::string& dot,
                    const std::string& subset, const std::string& note) {
    report.passed = false;
    if (!report.counterexample)
        report.counterexample = Counterexample{to_text(m), dot, subset, note};
}

std::mt19937_64 seeded_rng(std::uint64_t seed, const std::string& salt) {
    std::uint64_t h = seed;
    for (char c : salt) h = h * 1099511628211ULL + static_cast<unsigned char>(c);
    return std::mt19937_64(h);
}

std::vector<int> rank_table(const Matroid& m) {
    std::vector<int> table(std::size_t{1} << m.size());
    for (std::uint64_t x = 0; x < table.size(); ++x) table[x] = m.rank_mask(x);
    return table;
}

bool has_ordinary_element(const Matroid& m) {
    for (int e = 0; e < m.size(); ++e)
        if (m.classify(e) == ElementClass::ordinary) return true;
    return false;
}

StarDecomposition optimal_decomposition(const Matroid& m, const Caps& caps) {
    SearchReport report = csd_search(m, std::nullopt, caps);
    return *report.decomposition;
}

// Independent-part sampler: random combined subset with the matroid part
// thinned greedily to an independent set.
std::uint64_t random_tame_candidate(const TamedContext& ctx, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> dist(0, full(ctx.combined_size()));
    std::uint64_t mask = dist(rng);
    std::uint64_t matroid_bits = mask & full(ctx.base_size());
    std::uint64_t kept = 0;
    for (std::uint64_t rest = matroid_bits; rest != 0; rest &= rest - 1) {
        std::uint64_t bit = rest & -rest;
        if (ctx.base().rank_mask(kept | bit) == std::popcount(kept | bit)) kept |= bit;
    }
    return kept | (mask & ~full(ctx.base_size()));
}

}  // namespace

TheoremReport check_rank_axioms(const std::string& name, const Matroid& m) {
    TheoremReport report = start("rank-axioms", name);
    std::vector<int> r = rank_table(m);
    if (r[0] != 0) record_failure(report, m, "", "{}", "rank of the empty set is not zero");
    for (std::uint64_t x = 0; x < r.size(); ++x) {
        ++report.cases;
        if (r[x] > std::popcount(x))
            record_failure(report, m, "", mask_str(x), "rank exceeds cardinality");
        for (int e = 0; e < m.size(); ++e) {
            if ((x >> e) & 1) continue;
            int step = r[x | (std::uint64_t{1} << e)] - r[x];
            if (step < 0 || step > 1)
                record_failure(report, m, "", mask_str(x),
                               "adding element " + std::to_string(e) + " changes rank by " +
                                   std::to_string(step));
        }
    }
    for (std::uint64_t x = 0; x < r.size(); ++x)
        for (std::uint64_t y = x; y < r.size(); ++y) {
            ++report.cases;
            if (r[x | y] + r[x & y] > r[x] + r[y])
                record_failure(report, m, "", mask_str(x) + " and " + mask_str(y),
                               "rank is not submodular");
        }
    return report;
}

TheoremReport check_dual_formula(const std::string& name, const Matroid& m) {
    TheoremReport report = start("dual-rank-formula", name);
    Matroid dual = m.dual();
    Matroid dual2 = dual.dual();
    std::uint64_t all = full(m.size());
    for (std::uint64_t x = 0; x <= all && all != 0; ++x) {
        ++report.cases;
        int expected = m.rank_mask(all & ~x) + std::popcount(x) - m.rank();
        if (dual.rank_mask(x) != expected)
            record_failure(report, m, "", mask_str(x), "dual rank formula violated");
        if (dual2.rank_mask(x) != m.rank_mask(x))
            record_failure(report, m, "", mask_str(x), "double dual does not agree with the matroid");
        if (x == all) break;
    }
    return report;
}

TheoremReport check_minor_composition(const std::string& name, const Matroid& m, std::uint64_t seed) {
    TheoremReport report = start("minor-composition", name);
    std::mt19937_64 rng = seeded_rng(seed, name + "/minor");
    std::uniform_int_distribution<std::uint64_t> dist(0, full(m.size()));
    for (int trial = 0; trial < 20; ++trial) {
        std::uint64_t c1 = dist(rng);
        std::uint64_t d1 = dist(rng) & ~c1;
        Matroid inner = m.minor(ElementSet::from_mask(m.size(), c1), ElementSet::from_mask(m.size(), d1));
        std::uniform_int_distribution<std::uint64_t> inner_dist(0, full(inner.size()));
        std::uint64_t c2 = inner_dist(rng);
        std::uint64_t d2 = inner_dist(rng) & ~c2;
        Matroid twice = inner.minor(ElementSet::from_mask(inner.size(), c2),
                                    ElementSet::from_mask(inner.size(), d2));
        ElementSet c2_up = inner.to_parent(ElementSet::from_mask(inner.size(), c2));
        ElementSet d2_up = inner.to_parent(ElementSet::from_mask(inner.size(), d2));
        Matroid once = m.minor(ElementSet::from_mask(m.size(), c1) | c2_up,
                               ElementSet::from_mask(m.size(), d1) | d2_up);
        for (int l = 0; l < twice.size(); ++l)
            if (inner.parent_index_of(twice.parent_index_of(l)) != once.parent_index_of(l)) {
                record_failure(report, m, "", std::to_string(l), "index maps do not compose");
                return report;
            }
        for (std::uint64_t x = 0; x <= full(twice.size()); ++x) {
            ++report.cases;
            if (twice.rank_mask(x) != once.rank_mask(x))
                record_failure(report, m, "", mask_str(x), "composed minors disagree on rank");
            if (x == full(twice.size())) break;
        }
    }
    return report;
}

TheoremReport check_components(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("component-partition", name);
    ComponentPartition parts = m.components(caps.subset_enumeration);
    ElementSet seen(m.size());
    int rank_sum = 0;
    for (std::size_t i = 0; i < parts.blocks.size(); ++i) {
        const ElementSet& block = parts.blocks[i];
        if (!(seen & block).empty())
            record_failure(report, m, "", block.to_string(), "component blocks overlap");
        seen = seen | block;
        rank_sum += m.rank(block);
        bool trivial_expected = block.count() == 1 && m.rank(block) == 0;
        if (parts.trivial[i] != trivial_expected)
            record_failure(report, m, "", block.to_string(), "trivial flag is wrong");
        // A connected block admits no split into two parts with additive rank.
        std::uint64_t b = block.mask();
        for (std::uint64_t sub = (b - 1) & b; sub != 0; sub = (sub - 1) & b) {
            ++report.cases;
            if (m.rank_mask(sub) + m.rank_mask(b & ~sub) == m.rank_mask(b)) {
                record_failure(report, m, "", mask_str(sub), "component block splits additively");
                break;
            }
        }
    }
    ++report.cases;
    if (!(seen == ElementSet::full(m.size())))
        record_failure(report, m, "", seen.to_string(), "component blocks do not cover the ground set");
    if (rank_sum != m.rank())
        record_failure(report, m, "", "", "component ranks do not sum to the matroid rank");
    return report;
}

TheoremReport check_bridge(const std::string& name, const Matroid& m) {
    TheoremReport report = start("coloops-survive-contraction", name);
    std::vector<bool> coloop(m.size());
    for (int e = 0; e < m.size(); ++e) coloop[e] = m.classify(e) == ElementClass::coloop;
    for (std::uint64_t x = 0; x <= full(m.size()); ++x) {
        Matroid view = m.minor(ElementSet::from_mask(m.size(), x), ElementSet(m.size()));
        for (int l = 0; l < view.size(); ++l) {
            int e = view.parent_index_of(l);
            ++report.cases;
            if (!coloop[e] && view.classify(l) == ElementClass::coloop)
                record_failure(report, m, "", mask_str(x),
                               "element " + std::to_string(e) + " became a coloop after contraction");
        }
        if (x == full(m.size())) break;
    }
    return report;
}

TheoremReport check_duality_and_bounds(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("depth-duality-and-bounds", name);
    Matroid dual = m.dual();
    report.cases += 2;
    if (contraction_depth(m, caps) != deletion_depth(dual, caps))
        record_failure(report, m, "", "", "contraction-depth differs from dual deletion-depth");
    if (deletion_depth(m, caps) != contraction_depth(dual, caps))
        record_failure(report, m, "", "", "deletion-depth differs from dual contraction-depth");
    int star = csd(m, caps);
    int cd = contraction_depth(m, caps);
    ++report.cases;
    long long upper = 1;
    for (int i = 0; i < star; ++i) upper *= 4;
    if (!(star <= cd && cd <= upper + 1))
        record_failure(report, m, "", "",
                       "functional-equivalence sandwich violated: csd=" + std::to_string(star) +
                           " cd=" + std::to_string(cd));
    return report;
}

TheoremReport check_memo_agreement(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("memo-agreement", name);
    for (DepthKind kind : {DepthKind::contraction, DepthKind::deletion, DepthKind::altered_contraction,
                           DepthKind::altered_deletion}) {
        ++report.cases;
        if (depth_detail(m, kind, caps, true).value != depth_detail(m, kind, caps, false).value)
            record_failure(report, m, "", "", "memoized and memo-free recursions disagree");
    }
    return report;
}

TheoremReport check_upper(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("upper-bound", name);
    int star = csd(m, caps);
    int cd = contraction_depth(m, caps);
    ++report.cases;
    if (has_ordinary_element(m)) {
        if (!(star <= cd - 1))
            record_failure(report, m, "", "",
                           "csd=" + std::to_string(star) + " exceeds cd-1=" + std::to_string(cd - 1));
    } else if (m.rank() == 0) {
        // Loops only: the single-vertex decomposition is optimal.
        if (m.size() > 0 && !(star == 0 && cd == 1))
            record_failure(report, m, "", "", "loops-only matroid should have csd=0 and cd=1");
    } else {
        if (!(star == 1 && cd == 1))
            record_failure(report, m, "", "", "loop/coloop-only matroid should have csd=cd=1");
    }
    return report;
}

TheoremReport check_search_validity(const std::string& name, const Matroid& m, const VerifyOptions& o) {
    TheoremReport report = start("decomposition-validity", name);
    SearchReport search = csd_search(m, std::nullopt, o.caps);
    const StarDecomposition& d = *search.decomposition;
    ++report.cases;
    if (!is_valid(m, d))
        record_failure(report, m, decomposition_to_dot(d), "", "search returned an invalid decomposition");
    if (m.rank() == 0) return report;
    std::mt19937_64 rng = seeded_rng(o.seed, name + "/validity");
    std::uniform_int_distribution<std::uint64_t> dist(1, full(m.size()));
    for (int i = 0; i < o.token_samples; ++i) {
        std::uint64_t x = dist(rng);
        std::uint64_t leaf_vertices = 0;
        for (std::uint64_t rest = x; rest != 0; rest &= rest - 1)
            leaf_vertices |= std::uint64_t{1} << d.leaf_of[std::countr_zero(rest)];
        ++report.cases;
        int closure = std::popcount(d.tree.upward_closure_edge_mask(leaf_vertices));
        if (closure < m.rank_mask(x))
            record_failure(report, m, decomposition_to_dot(d), mask_str(x),
                           "upward closure smaller than rank");
    }
    return report;
}

TheoremReport check_rank_partition(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("root-subtree-partition", name);
    StarDecomposition d = optimal_decomposition(m, caps);
    if (m.rank() == 0) return report;
    std::vector<int> reps = d.tree.max_branching_or_leaf_descendants(d.tree.root());
    std::vector<std::uint64_t> under;
    for (int v : reps) under.push_back(elements_under(d, v).mask());
    ComponentPartition parts = m.components(caps.subset_enumeration);
    for (const ElementSet& block : parts.blocks) {
        ++report.cases;
        bool inside_one = false;
        for (std::uint64_t u : under)
            if ((block.mask() & ~u) == 0) inside_one = true;
        if (!inside_one)
            record_failure(report, m, decomposition_to_dot(d), block.to_string(),
                           "component crosses root subtrees");
    }
    for (std::uint64_t x = 0; x <= full(m.size()); ++x) {
        ++report.cases;
        int sum = 0;
        for (std::uint64_t u : under) sum += m.rank_mask(x & u);
        if (sum != m.rank_mask(x))
            record_failure(report, m, decomposition_to_dot(d), mask_str(x),
                           "rank is not additive across root subtrees");
        if (x == full(m.size())) break;
    }
    return report;
}

TheoremReport check_edges_bound(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("subtree-edge-bound", name);
    StarDecomposition d = optimal_decomposition(m, caps);
    const RootedTree& tree = d.tree;
    if (m.rank() == 0) return report;
    for (int v = 0; v < tree.vertex_count(); ++v) {
        if (v == tree.root() || (!tree.is_leaf(v) && !tree.is_internal_branching(v))) continue;
        ++report.cases;
        std::uint64_t f = tree.subtree_edge_mask(v) | tree.path_to_branching_edge_mask(v);
        std::uint64_t under = elements_under(d, v).mask();
        std::uint64_t co = full(m.size()) & ~under;
        int bound = m.rank_mask(full(m.size())) - m.rank_mask(co);
        if (std::popcount(f) > bound)
            record_failure(report, m, decomposition_to_dot(d), "vertex " + std::to_string(v),
                           "subtree-plus-path edge set exceeds the contraction rank");
    }
    return report;
}

TheoremReport check_monotonicity(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("csd-minor-monotone", name);
    int star = csd(m, caps);
    for (int e = 0; e < m.size(); ++e) {
        report.cases += 2;
        if (csd(m.contract(e), caps) > star)
            record_failure(report, m, "", "/" + std::to_string(e), "contraction increased csd");
        if (csd(m.remove(e), caps) > star)
            record_failure(report, m, "", "\\" + std::to_string(e), "deletion increased csd");
    }
    return report;
}

TheoremReport check_cross_oracle(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("csd-cross-oracle", name);
    if (m.kind() != MatroidKind::gf2) return report;
    ++report.cases;
    int by_search = csd(m, caps);
    int by_quotient = csd_gf2_quotient(m, caps);
    if (by_search != by_quotient)
        record_failure(report, m, "", "",
                       "search csd=" + std::to_string(by_search) + " quotient csd=" +
                           std::to_string(by_quotient));
    return report;
}

TheoremReport check_token_laws(const std::string& name, const TamedExtension& ext,
                               const VerifyOptions& o) {
    TheoremReport report = start("token-laws", name);
    TamedContext ctx(ext.base, ext.decomposition);
    const RootedTree& tree = ext.decomposition.tree;
    std::mt19937_64 rng = seeded_rng(o.seed, name + "/tokens");
    std::uint64_t base_all = full(ctx.base_size());
    for (int i = 0; i < o.token_samples; ++i) {
        std::uint64_t mask = random_tame_candidate(ctx, rng);
        ExtendedSet x = ctx.split(mask);
        std::vector<int> assigned = ctx.token_assignment(x);
        int total = 0;
        for (int v = 0; v < tree.vertex_count(); ++v) {
            ++report.cases;
            if (assigned[v] < 0)
                record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(mask),
                               "negative token count at vertex " + std::to_string(v));
            total += assigned[v];
        }
        ++report.cases;
        if (total != std::popcount(mask))
            record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(mask),
                           "token total " + std::to_string(total) + " differs from |X|");
        // Subtree totals: tokens inside T[v] match the edge and rank terms.
        for (int v = 0; v < tree.vertex_count(); ++v) {
            if (v == tree.root() || (!tree.is_leaf(v) && !tree.is_internal_branching(v))) continue;
            ++report.cases;
            std::uint64_t subtree = tree.subtree_vertex_mask(v);
            int inside = 0;
            for (std::uint64_t rest = subtree; rest != 0; rest &= rest - 1)
                inside += assigned[std::countr_zero(rest)];
            std::uint64_t f = tree.subtree_edge_mask(v) | tree.path_to_branching_edge_mask(v);
            std::uint64_t under = elements_under(ext.decomposition, v).mask();
            std::uint64_t co = base_all & ~under;
            int expected = std::popcount(x.edge_part.mask() & f) +
                           ext.base.rank_mask((x.matroid_part.mask() & under) | co) -
                           ext.base.rank_mask(co);
            if (inside != expected)
                record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(mask),
                               "subtree token total mismatch at vertex " + std::to_string(v));
        }
    }
    return report;
}

TheoremReport check_distribution_order(const std::string& name, const TamedExtension& ext,
                                       const VerifyOptions& o) {
    TheoremReport report = start("distribution-order-independence", name);
    TamedContext ctx(ext.base, ext.decomposition);
    std::mt19937_64 rng = seeded_rng(o.seed, name + "/order");
    const RootedTree& tree = ext.decomposition.tree;
    for (int i = 0; i < 40; ++i) {
        std::vector<int> assigned(tree.vertex_count(), 0);
        if (i % 2 == 0) {
            ExtendedSet x = ctx.split(random_tame_candidate(ctx, rng));
            assigned = ctx.token_assignment(x);
        } else {
            for (int v = 0; v < tree.vertex_count(); ++v)
                if (v != tree.root())
                    assigned[v] = std::uniform_int_distribution<int>(0, 3)(rng);
        }
        TokenLedger direct = ctx.distribute(assigned);
        for (int round = 0; round < 4; ++round) {
            ++report.cases;
            TokenLedger marked = ctx.distribute_marking(assigned, rng);
            if (marked.kept != direct.kept || marked.root_surplus != direct.root_surplus)
                record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), "",
                               "marking-loop distribution disagrees with the bottom-up pass");
        }
    }
    return report;
}

TheoremReport check_call_bound(const std::string& name, const TamedExtension& ext,
                               const VerifyOptions& o) {
    TheoremReport report = start("tamed-check-call-bound", name);
    TamedContext ctx(ext.base, ext.decomposition);
    std::mt19937_64 rng = seeded_rng(o.seed, name + "/calls");
    long long bound = 2LL * ext.decomposition.tree.vertex_count();
    std::uniform_int_distribution<std::uint64_t> dist(0, full(ctx.combined_size()));
    for (int i = 0; i < 50; ++i) {
        ++report.cases;
        ctx.reset_rank_calls();
        ctx.is_tamed_mask(dist(rng));
        if (ctx.rank_calls() > bound)
            record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), "",
                           "tamed check used " + std::to_string(ctx.rank_calls()) +
                               " rank calls, bound is " + std::to_string(bound));
    }
    return report;
}

TheoremReport check_matroid_axioms(const std::string& name, const TamedExtension& ext,
                                   TamedOptions mutation) {
    TheoremReport report = start("tamed-family-axioms", name);
    TamedContext ctx(ext.base, ext.decomposition, mutation);
    int n = ctx.combined_size();
    std::vector<std::uint64_t> tamed;
    for (std::uint64_t mask = 0; mask <= full(n) && n > 0; ++mask) {
        if (ctx.is_tamed_mask(mask)) tamed.push_back(mask);
        if (mask == full(n)) break;
    }
    ++report.cases;
    if (tamed.empty() || tamed.front() != 0) {
        record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), "{}",
                       "the empty set is not tamed");
        return report;
    }
    std::vector<bool> is_tamed_mask(std::size_t{1} << n, false);
    for (std::uint64_t t : tamed) is_tamed_mask[t] = true;
    for (std::uint64_t t : tamed)
        for (std::uint64_t rest = t; rest != 0; rest &= rest - 1) {
            ++report.cases;
            std::uint64_t smaller = t & ~(rest & -rest);
            if (!is_tamed_mask[smaller]) {
                record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(t),
                               "heredity fails when removing " +
                                   std::to_string(std::countr_zero(rest & -rest)));
                return report;
            }
        }
    for (std::uint64_t small : tamed)
        for (std::uint64_t big : tamed) {
            if (std::popcount(small) >= std::popcount(big)) continue;
            ++report.cases;
            bool extended = false;
            for (std::uint64_t rest = big & ~small; rest != 0; rest &= rest - 1)
                if (is_tamed_mask[small | (rest & -rest)]) {
                    extended = true;
                    break;
                }
            if (!extended) {
                record_failure(report, ext.base, decomposition_to_dot(ext.decomposition),
                               mask_str(small) + " vs " + mask_str(big), "augmentation fails");
                return report;
            }
        }
    return report;
}

TheoremReport check_greedy_rank(const std::string& name, const TamedExtension& ext) {
    TheoremReport report = start("greedy-rank-vs-bruteforce", name);
    TamedContext ctx(ext.base, ext.decomposition);
    int n = ctx.combined_size();
    std::vector<std::uint64_t> tamed;
    for (std::uint64_t mask = 0; mask <= full(n) && n > 0; ++mask) {
        if (ctx.is_tamed_mask(mask)) tamed.push_back(mask);
        if (mask == full(n)) break;
    }
    for (std::uint64_t s = 0; s <= full(n) && n > 0; ++s) {
        ++report.cases;
        int best = 0;
        for (std::uint64_t t : tamed)
            if ((t & ~s) == 0) best = std::max(best, std::popcount(t));
        if (ext.matroid.rank_mask(s) != best)
            record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(s),
                           "greedy rank differs from the largest tamed subset");
        if (s == full(n)) break;
    }
    return report;
}

TheoremReport check_restriction(const std::string& name, const TamedExtension& ext,
                                TamedOptions mutation) {
    TheoremReport report = start("restriction-is-base", name);
    TamedContext ctx(ext.base, ext.decomposition, mutation);
    for (std::uint64_t x = 0; x <= full(ext.base_size()); ++x) {
        ++report.cases;
        bool tamed = ctx.is_tamed_mask(x);
        bool independent = ext.base.rank_mask(x) == std::popcount(x);
        if (tamed != independent) {
            record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(x),
                           tamed ? "dependent base subset is tamed" : "independent base subset is not tamed");
            return report;
        }
        if (ext.matroid.rank_mask(x) != ext.base.rank_mask(x)) {
            record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(x),
                           "extension restricted to the base disagrees on rank");
            return report;
        }
        if (x == full(ext.base_size())) break;
    }
    return report;
}

TheoremReport check_extension_basics(const std::string& name, const TamedExtension& ext) {
    TheoremReport report = start("extension-ground-and-basis", name);
    TamedContext ctx(ext.base, ext.decomposition);
    report.cases += 3;
    if (ext.matroid.size() != ext.base.size() + ext.base.rank())
        record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), "",
                       "combined ground set is not |M| + rank(M)");
    if (ext.matroid.rank() != ext.base.rank())
        record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), "",
                       "extension rank differs from |E(T)|");
    std::uint64_t edges_mask = full(ext.matroid.size()) & ~full(ext.base_size());
    if (ext.matroid.rank_mask(edges_mask) != std::popcount(edges_mask))
        record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(edges_mask),
                       "the edge set is not a basis of the extension");
    for (std::uint64_t x = 0; x <= full(ext.matroid.size()); ++x) {
        ++report.cases;
        if (ctx.is_tamed_mask(x) && std::popcount(x) > ext.base.rank()) {
            record_failure(report, ext.base, decomposition_to_dot(ext.decomposition), mask_str(x),
                           "tamed set larger than rank(M)");
            break;
        }
        if (x == full(ext.matroid.size())) break;
    }
    return report;
}

TheoremReport check_structure(const std::string& name, const TamedExtension& ext, const Caps& caps) {
    TheoremReport report = start("contracted-structure", name);
    const RootedTree& tree = ext.decomposition.tree;
    TamedContext ctx(ext.base, ext.decomposition);
    int n = ext.matroid.size();

    auto combined_edges = [&](std::uint64_t vertex_mask) {
        std::uint64_t out = 0;
        for (std::uint64_t rest = vertex_mask; rest != 0; rest &= rest - 1)
            out |= std::uint64_t{1} << ctx.edge_element_of_vertex(std::countr_zero(rest));
        return out;
    };

    // After contracting a leaf's root path, everything assigned to the leaf
    // is a loop.
    for (int v : tree.leaves()) {
        if (v == tree.root()) continue;
        std::uint64_t path = combined_edges(tree.root_path_edge_mask(v));
        Matroid contracted = ext.matroid.minor(ElementSet::from_mask(n, path), ElementSet(n));
        for (int e : elements_under(ext.decomposition, v)) {
            ++report.cases;
            int local = -1;
            for (int l = 0; l < contracted.size(); ++l)
                if (contracted.parent_index_of(l) == e) local = l;
            if (local < 0 || contracted.rank_mask(std::uint64_t{1} << local) != 0)
                record_failure(report, ext.base, decomposition_to_dot(ext.decomposition),
                               "element " + std::to_string(e),
                               "leaf element is not a loop after contracting its root path");
        }
    }

    // Contracting the root path of a branching vertex (or the root) splits
    // the subtree blocks into unions of components.
    for (int v : tree.preorder()) {
        if (!(v == tree.root() || tree.is_branching(v))) continue;
        std::uint64_t path = combined_edges(tree.root_path_edge_mask(v));
        std::vector<int> reps = tree.max_branching_or_leaf_descendants(v);
        if (reps.empty()) continue;
        std::vector<std::uint64_t> blocks;
        for (int rep : reps) {
            std::uint64_t block = elements_under(ext.decomposition, rep).mask();
            std::uint64_t f = tree.subtree_edge_mask(rep);
            for (int u = rep; u != v; u = tree.parent(u)) f |= std::uint64_t{1} << u;
            blocks.push_back(block | combined_edges(f));
        }
        Matroid contracted = ext.matroid.minor(ElementSet::from_mask(n, path), ElementSet(n));
        ComponentPartition parts = contracted.components(caps.subset_enumeration);
        for (const ElementSet& comp_local : parts.blocks) {
            std::uint64_t comp = contracted.to_parent(comp_local).mask();
            for (std::uint64_t block : blocks) {
                ++report.cases;
                if ((comp & block) != 0 && (comp & ~block) != 0)
                    record_failure(report, ext.base, decomposition_to_dot(ext.decomposition),
                                   mask_str(comp),
                                   "component crosses a subtree block below vertex " + std::to_string(v));
            }
        }
    }
    return report;
}

TheoremReport check_main(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("extension-attains-csd-plus-one", name);
    if (!has_ordinary_element(m)) return report;
    SearchReport search = csd_search(m, std::nullopt, caps);
    TamedExtension ext = build_extension(m, *search.decomposition, {}, caps);
    ++report.cases;
    int cd_ext = contraction_depth(ext.matroid, caps);
    if (cd_ext != search.depth + 1)
        record_failure(report, m, decomposition_to_dot(*search.decomposition), "",
                       "cd(extension)=" + std::to_string(cd_ext) + " but csd+1=" +
                           std::to_string(search.depth + 1));
    return report;
}

TheoremReport check_depth_bound(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("extension-depth-bound", name);
    for (const StarDecomposition& d : first_valid_per_tree(m, caps)) {
        ++report.cases;
        TamedExtension ext = build_extension(m, d, {}, caps);
        int cd_ext = contraction_depth(ext.matroid, caps);
        if (cd_ext > d.height())
            record_failure(report, m, decomposition_to_dot(d), "",
                           "cd(extension)=" + std::to_string(cd_ext) + " exceeds tree height " +
                               std::to_string(d.height()));
    }
    return report;
}

TheoremReport check_altered(const std::string& name, const Matroid& m, const Caps& caps) {
    TheoremReport report = start("altered-extension-attains-csd", name);
    SearchReport search = csd_search(m, std::nullopt, caps);
    TamedExtension ext = build_extension(m, *search.decomposition, {}, caps);
    ++report.cases;
    int alt = altered_contraction_depth(ext.matroid, caps);
    if (alt != search.depth)
        record_failure(report, m, decomposition_to_dot(*search.decomposition), "",
                       "cd'(extension)=" + std::to_string(alt) + " but csd=" +
                           std::to_string(search.depth));
    return report;
}

TheoremReport check_loop_placement(const std::string& name, const Matroid& m, const VerifyOptions& o) {
    TheoremReport report = start("loop-placement-arbitrary", name);
    StarDecomposition d = optimal_decomposition(m, o.caps);
    std::vector<int> loops;
    for (int e = 0; e < m.size(); ++e)
        if (m.rank_mask(std::uint64_t{1} << e) == 0) loops.push_back(e);
    if (loops.empty() || m.rank() == 0) return report;
    std::vector<int> leaves = d.tree.leaves();
    std::mt19937_64 rng = seeded_rng(o.seed, name + "/loops");
    for (int trial = 0; trial < 10; ++trial) {
        StarDecomposition shuffled = d;
        for (int e : loops)
            shuffled.leaf_of[e] =
                leaves[std::uniform_int_distribution<std::size_t>(0, leaves.size() - 1)(rng)];
        ++report.cases;
        if (!is_valid(m, shuffled))
            record_failure(report, m, decomposition_to_dot(shuffled), "",
                           "moving loops to other leaves broke validity");
    }
    return report;
}

std::vector<TheoremReport> check_mutations(const Corpus& corpus, const VerifyOptions& o) {
    struct Mutation {
        std::string id;
        TamedOptions options;
    };
    std::vector<Mutation> mutations = {
        {"mutation-no-branch-subtraction", {.branch_subtraction = false}},
        {"mutation-no-keep-one", {.keep_one = false}},
        {"mutation-no-independence", {.require_independent = false}},
    };
    std::vector<TheoremReport> out;
    for (const Mutation& mutation : mutations) {
        TheoremReport report = start(mutation.id, "corpus");
        bool tripped = false;
        for (const CorpusEntry& entry : corpus.entries) {
            if (entry.matroid.rank() == 0 || entry.matroid.rank() > o.pipeline_rank_cap ||
                entry.matroid.size() > o.pipeline_size_cap)
                continue;
            ++report.cases;
            StarDecomposition d = optimal_decomposition(entry.matroid, o.caps);
            TamedExtension ext = build_extension(entry.matroid, d, {}, o.caps);
            TamedContext mutated(entry.matroid, d, mutation.options);

            // The full edge set must be tamed; token totals must match |X|.
            std::uint64_t edges_mask = full(ext.matroid.size()) & ~full(entry.matroid.size());
            if (!mutated.is_tamed_mask(edges_mask)) {
                tripped = true;
            } else {
                std::mt19937_64 rng = seeded_rng(o.seed, mutation.id + entry.name);
                for (int i = 0; i < 50 && !tripped; ++i) {
                    std::uint64_t mask = random_tame_candidate(mutated, rng);
                    std::vector<int> assigned = mutated.token_assignment(mutated.split(mask));
                    int total = 0;
                    for (int t : assigned) total += t;
                    if (total != std::popcount(mask)) tripped = true;
                }
            }
            if (!tripped && !check_matroid_axioms(entry.name, ext, mutation.options).passed)
                tripped = true;
            if (!tripped && !check_restriction(entry.name, ext, mutation.options).passed)
                tripped = true;
            if (tripped) break;
        }
        report.passed = tripped;
        if (!tripped)
            report.counterexample = Counterexample{
                "", "", "", "mutated token machinery passed every check; the tests are vacuous"};
        out.push_back(std::move(report));
    }
    return out;
}

std::vector<std::string> suite_names() {
    return {"core", "depth", "search", "tokens", "axioms", "structure", "main", "cross", "mutation",
            "all"};
}

namespace {

struct ExtensionCache {
    const Corpus& corpus;
    const VerifyOptions& options;
    std::map<std::size_t, TamedExtension> cache;

    bool eligible(const CorpusEntry& e) const {
        return e.matroid.rank() <= options.caps.search_rank &&
               e.matroid.size() <= options.caps.search_size &&
               e.matroid.size() + e.matroid.rank() <= options.axioms_ground_cap;
    }

    const TamedExtension& get(std::size_t index) {
        auto it = cache.find(index);
        if (it == cache.end()) {
            const Matroid& m = corpus.entries[index].matroid;
            StarDecomposition d = optimal_decomposition(m, options.caps);
            it = cache.emplace(index, build_extension(m, d, {}, options.caps)).first;
        }
        return it->second;
    }
};

}  // namespace

std::vector<TheoremReport> run_suite(const Corpus& corpus, const std::string& suite,
                                     const VerifyOptions& options) {
    auto want = [&](const std::string& s) { return suite == s || suite == "all"; };
    std::vector<TheoremReport> reports;
    ExtensionCache extensions{corpus, options, {}};

    for (std::size_t i = 0; i < corpus.entries.size(); ++i) {
        const CorpusEntry& entry = corpus.entries[i];
        const Matroid& m = entry.matroid;
        if (want("core")) {
            reports.push_back(check_rank_axioms(entry.name, m));
            reports.push_back(check_dual_formula(entry.name, m));
            reports.push_back(check_minor_composition(entry.name, m, options.seed));
            reports.push_back(check_components(entry.name, m, options.caps));
            reports.push_back(check_bridge(entry.name, m));
        }
        if (want("depth")) {
            reports.push_back(check_duality_and_bounds(entry.name, m, options.caps));
            reports.push_back(check_memo_agreement(entry.name, m, options.caps));
            reports.push_back(check_upper(entry.name, m, options.caps));
        }
        if (want("search")) {
            reports.push_back(check_search_validity(entry.name, m, options));
            reports.push_back(check_rank_partition(entry.name, m, options.caps));
            reports.push_back(check_edges_bound(entry.name, m, options.caps));
            reports.push_back(check_monotonicity(entry.name, m, options.caps));
            reports.push_back(check_loop_placement(entry.name, m, options));
        }
        if (want("cross") && m.kind() == MatroidKind::gf2)
            reports.push_back(check_cross_oracle(entry.name, m, options.caps));
        if (extensions.eligible(entry)) {
            if (want("tokens")) {
                reports.push_back(check_token_laws(entry.name, extensions.get(i), options));
                reports.push_back(check_distribution_order(entry.name, extensions.get(i), options));
                reports.push_back(check_call_bound(entry.name, extensions.get(i), options));
            }
            if (want("axioms")) {
                reports.push_back(check_matroid_axioms(entry.name, extensions.get(i)));
                reports.push_back(check_greedy_rank(entry.name, extensions.get(i)));
                reports.push_back(check_restriction(entry.name, extensions.get(i)));
                reports.push_back(check_extension_basics(entry.name, extensions.get(i)));
            }
            if (want("structure"))
                reports.push_back(check_structure(entry.name, extensions.get(i), options.caps));
        }
        if (want("main") && m.rank() <= options.pipeline_rank_cap &&
            m.size() <= options.pipeline_size_cap) {
            reports.push_back(check_main(entry.name, m, options.caps));
            reports.push_back(check_depth_bound(entry.name, m, options.caps));
            reports.push_back(check_altered(entry.name, m, options.caps));
        }
    }
    if (want("mutation"))
        for (TheoremReport& r : check_mutations(corpus, options)) reports.push_back(std::move(r));
    return reports;
}

}  // namespace mdepth
