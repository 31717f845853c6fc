#pragma once

#include <iosfwd>
#include <string>

#include "mdepth/matroid.hpp"

namespace mdepth {

// Line-oriented matroid text format ('#' starts a comment):
//
//   matroid uniform        matroid graphic         matroid gf2        matroid explicit
//   n 3                    vertices 3              rows 2             n 4
//   r 2                    edge 0 1                col 10             basis 0 1
//                          edge 1 2                col 01             basis 2 3
//                          edge 0 2                col 11
//
// Element ids follow file order for graphic edges and gf2 columns.  In a gf2
// column bitstring the leftmost character is row 0.  Parse errors report the
// offending line number.
Matroid parse_matroid(std::istream& in);
Matroid parse_matroid_text(const std::string& text);
Matroid read_matroid_file(const std::string& path);

// Serializes in the same format.  Uniform, graphic, gf2 and explicit backends
// keep their native form; views and tamed extensions are written as explicit
// matroids by listing all bases.
std::string to_text(const Matroid& m);
void write_matroid_file(const Matroid& m, const std::string& path);

}  // namespace mdepth
