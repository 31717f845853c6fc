#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdepth/corpus.hpp"
#include "mdepth/decomposition.hpp"
#include "mdepth/depth.hpp"
#include "mdepth/tamed.hpp"

namespace mdepth {

// A failed check carries a replayable witness: the matroid file text, the
// decomposition (when one is involved) and the offending subset.
struct Counterexample {
    std::string matroid_text;
    std::string decomposition_dot;
    std::string subset;
    std::string note;
};

struct TheoremReport {
    std::string check;     // which statement was exercised
    std::string instance;  // corpus entry name
    long long cases = 0;   // individual assertions evaluated
    bool passed = true;
    std::optional<Counterexample> counterexample;
};

struct VerifyOptions {
    Caps caps;
    std::uint64_t seed = 1;
    int token_samples = 200;    // random subsets per instance for token laws
    int pipeline_rank_cap = 4;  // instance filter for the extension pipeline checks
    int pipeline_size_cap = 8;
    int axioms_ground_cap = 12;  // |M| + rank(M) bound for exhaustive axiom checks
};

// Per-instance checks.  Each returns one report and never throws on a
// counterexample; it is recorded in the report instead.
TheoremReport check_rank_axioms(const std::string& name, const Matroid& m);
TheoremReport check_dual_formula(const std::string& name, const Matroid& m);
TheoremReport check_minor_composition(const std::string& name, const Matroid& m, std::uint64_t seed);
TheoremReport check_components(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_bridge(const std::string& name, const Matroid& m);
TheoremReport check_duality_and_bounds(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_memo_agreement(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_upper(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_search_validity(const std::string& name, const Matroid& m, const VerifyOptions& o);
TheoremReport check_rank_partition(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_edges_bound(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_monotonicity(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_cross_oracle(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_token_laws(const std::string& name, const TamedExtension& ext,
                               const VerifyOptions& o);
TheoremReport check_distribution_order(const std::string& name, const TamedExtension& ext,
                                       const VerifyOptions& o);
TheoremReport check_call_bound(const std::string& name, const TamedExtension& ext,
                               const VerifyOptions& o);
TheoremReport check_matroid_axioms(const std::string& name, const TamedExtension& ext,
                                   TamedOptions mutation = {});
TheoremReport check_greedy_rank(const std::string& name, const TamedExtension& ext);
TheoremReport check_restriction(const std::string& name, const TamedExtension& ext,
                                TamedOptions mutation = {});
TheoremReport check_extension_basics(const std::string& name, const TamedExtension& ext);
TheoremReport check_structure(const std::string& name, const TamedExtension& ext, const Caps& caps);
TheoremReport check_main(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_depth_bound(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_altered(const std::string& name, const Matroid& m, const Caps& caps);
TheoremReport check_loop_placement(const std::string& name, const Matroid& m, const VerifyOptions& o);

// Each listed mutation must break at least one check somewhere on the corpus.
std::vector<TheoremReport> check_mutations(const Corpus& corpus, const VerifyOptions& o);

// Suite names: core, depth, search, tokens, axioms, structure, main, cross,
// mutation, all.
std::vector<std::string> suite_names();
std::vector<TheoremReport> run_suite(const Corpus& corpus, const std::string& suite,
                                     const VerifyOptions& options);

}  // namespace mdepth
