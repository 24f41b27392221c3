#pragma once

#include "mapbij/loops.hpp"
#include "mapbij/mobile.hpp"

#include <vector>

namespace mapbij {

// Output of the map-to-mobile direction. selected[j] is the exit flag of
// the map corner carrying mobile edge j; the correspondences give, per map
// flag, the mobile white vertex of the flag's map vertex (-1 at the point)
// and the mobile green vertex of its face. Flags are those of the map as
// rooted after any initial flip, which shares the flag set of the input.
struct PhiResult {
    Mobile mobile;
    std::vector<int> selected;
    std::vector<int> white_of_vertex;
    std::vector<int> green_of_face;
};

// Builds the labeled mobile of a pointed bipartite map whose labels are
// the distances from the point. If the root vertex carries the larger
// label of the root edge, the map is root flipped first and epsilon is
// recorded as -1; otherwise epsilon stays +1. The policy picks the loop
// orientations; every choice yields a valid mobile.
PhiResult phi_bipartite(const PointedMap& pm, const OrientationPolicy& policy = {});

} // namespace mapbij
