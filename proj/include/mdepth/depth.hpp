#pragma once

#include <optional>

#include "mdepth/matroid.hpp"

namespace mdepth {

enum class DepthKind {
    contraction,          // 1 / max over components / 1 + min_e over contractions
    deletion,             // 1 / max over components / 1 + min_e over deletions
    altered_contraction,  // single element contributes its rank instead of 1
    altered_deletion      // single loop 1, single coloop 0, deletions otherwise
};

struct DepthResult {
    int value = 0;
    // Smallest element index attaining the minimum at the top level, present
    // when the matroid is connected with at least two elements.
    std::optional<int> chosen_element;
};

// All four parameters use one memoized recursion over minors of the given
// matroid; the empty matroid has depth 0 under every kind.  Connectivity
// checks share the subset-enumeration cap.
DepthResult depth_detail(const Matroid& m, DepthKind kind, const Caps& caps = default_caps(),
                         bool use_memo = true);

int contraction_depth(const Matroid& m, const Caps& caps = default_caps());
int deletion_depth(const Matroid& m, const Caps& caps = default_caps());
int altered_contraction_depth(const Matroid& m, const Caps& caps = default_caps());
int altered_deletion_depth(const Matroid& m, const Caps& caps = default_caps());

// Contraction*-depth of a GF(2)-represented matroid via the quotient-space
// recursion: connected case takes 1 + min over all one-dimensional subspaces
// of the span, where contracting a subspace projects every column to the
// quotient.  Independent of the decomposition search; requires a gf2 backend.
int csd_gf2_quotient(const Matroid& m, const Caps& caps = default_caps());

}  // namespace mdepth
