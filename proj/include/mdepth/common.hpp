#pragma once

#include <stdexcept>
#include <string>

namespace mdepth {

// Bad arguments: out-of-range elements, malformed files, mismatched universes.
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A configurable enumeration cap was exceeded (the library is exact and
// desk-scale by design; caps make the exponential cost explicit).
struct resource_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shared default caps.  All exponential enumerations are guarded by one of
// these; the CLI exposes them as flags.
struct Caps {
    int subset_enumeration = 16;  // max ground-set size for circuit/component enumeration
    int search_rank = 6;          // max rank(M) for decomposition search
    int search_size = 10;         // max |M| for decomposition search
    int extension_size = 20;      // max |M| + rank(M) for extension construction
};

inline const Caps& default_caps() {
    static const Caps caps{};
    return caps;
}

}  // namespace mdepth
